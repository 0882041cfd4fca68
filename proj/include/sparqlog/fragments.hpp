#pragma once

#include <optional>

#include "sparqlog/ast.hpp"

namespace sparqlog {

/// Fragment membership of a query body.
struct FragmentProfile {
  bool is_aof = false;  // only triples, And, Opt, Filter
  bool is_cq = false;   // only triples and And
  bool is_cpf = false;  // only triples, And, Filter
  bool is_cqf = false;  // CPF with simple filters only
  std::optional<bool> is_well_designed;       // defined for AOF patterns
  std::optional<int> interface_width;         // of the pattern tree; AOF only
  bool is_cqfo = false;  // well-designed, simple filters, interface width <= 1
};

/// True iff the constraint has at most one variable or is a top-level
/// equality between two variables.
bool filter_is_simple(const FilterConstraint& c);

/// A tree of conjunctive blocks obtained from the OPT-normal form by the
/// Currying encoding; the root holds the mandatory part.
struct PatternTree {
  struct Node {
    std::vector<TriplePattern> triples;  // multiset, document order
    std::vector<FilterConstraint> filters;
    std::vector<Node> children;

    std::set<std::string> vars() const;
  };
  Node root;
};

/// True iff the body uses only triple patterns and And/Opt/Filter.
/// Property paths and EXISTS filters disqualify.
bool is_aof(const GraphPatternNode& pattern);

FragmentProfile classify_fragments(const GraphPatternNode& pattern);

/// Pattern tree of an AOF pattern (the Currying encoding applied to the
/// OPT-normal form; filters attach to their enclosing block).
PatternTree build_pattern_tree(const GraphPatternNode& aof_pattern);

/// Equivalent pattern with no Opt inside a left argument of And; idempotent.
/// Throws std::invalid_argument for non-AOF input.
GraphPatternNode opt_normal_form(const GraphPatternNode& aof_pattern);

/// Well-designedness of an AOF pattern, checked on the syntactic definition:
/// for every occurrence of (P1 Opt P2), the variables of P2 not in P1 occur
/// nowhere outside that occurrence.
bool is_well_designed(const GraphPatternNode& aof_pattern);

/// The same condition phrased on a pattern tree: every variable's node set
/// is connected.
bool tree_is_well_designed(const PatternTree& t);

/// Max number of shared variables across a tree edge; 0 for a single node.
int interface_width(const PatternTree& t);

}  // namespace sparqlog
