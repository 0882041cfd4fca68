#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "sparqlog/ast.hpp"

namespace sparqlog {

/// Union-find over variables driven by top-level ?x = ?y equality filters.
class EqualityClasses {
 public:
  /// Representative variable name for v (v itself when uncollapsed).
  const std::string& find(const std::string& var) const;

  void unite(const std::string& a, const std::string& b);

  bool empty() const { return parent_.empty(); }

 private:
  std::string& root(const std::string& var) const;
  mutable std::map<std::string, std::string> parent_;
};

/// Collapse mapping from the pattern's simple equality filters.
EqualityClasses apply_equality_collapse(const GraphPatternNode& pattern);

/// Undirected simple graph of a graph pattern: one node per subject/object
/// term class, one edge per triple. Self-loops are kept apart from proper
/// edges since girth and the shape catalog treat them specially.
struct CanonicalGraph {
  std::vector<std::string> node_names;          // node id -> display name
  std::vector<std::pair<int, int>> edges;       // proper edges, a < b, deduped
  std::vector<int> loops;                       // nodes with a self-loop
  bool include_constants = true;

  int node_count() const { return static_cast<int>(node_names.size()); }
  std::vector<std::vector<int>> adjacency() const;
};

struct NotAGraphPattern {
  std::string reason;
};

using CanonicalGraphResult = std::variant<CanonicalGraph, NotAGraphPattern>;

/// Build the canonical graph. Patterns with a variable or path in predicate
/// position are not graph patterns. With include_constants = false, edges
/// touching a constant vanish and their variable endpoints stay as nodes.
CanonicalGraphResult canonical_graph(const GraphPatternNode& pattern, bool include_constants);

/// Hypergraph whose hyperedges are the variables and blank nodes of each
/// triple; ground triples contribute nothing.
struct CanonicalHypergraph {
  std::vector<std::string> vertex_names;
  std::vector<std::vector<int>> edges;  // each sorted; deduped

  int vertex_count() const { return static_cast<int>(vertex_names.size()); }
};

CanonicalHypergraph canonical_hypergraph(const GraphPatternNode& pattern);

/// DOT rendering for inspection.
std::string to_dot(const CanonicalGraph& g);
std::string to_dot(const CanonicalHypergraph& h);

}  // namespace sparqlog
