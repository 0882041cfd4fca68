#include "sparqlog/fragments.hpp"

#include <stdexcept>

namespace sparqlog {

bool filter_is_simple(const FilterConstraint& c) {
  if (c.vars.size() <= 1) return true;
  const Expression& e = c.expr;
  if (e.kind == Expression::Kind::Equal && e.args.size() == 2 &&
      e.args[0].kind == Expression::Kind::TermValue && e.args[0].term->is_var() &&
      e.args[1].kind == Expression::Kind::TermValue && e.args[1].term->is_var()) {
    return true;
  }
  return false;
}

namespace {

bool expression_has_exists(const Expression& e) {
  if (e.kind == Expression::Kind::Exists || e.kind == Expression::Kind::NotExists) return true;
  for (const Expression& a : e.args) {
    if (expression_has_exists(a)) return true;
  }
  return false;
}

struct FragmentScan {
  bool only_triples_and = true;        // CQ shape
  bool only_triples_and_filter = true; // CPF shape
  bool aof = true;                     // CPF plus Opt
  bool all_filters_simple = true;

  void walk(const GraphPatternNode& n) {
    using K = GraphPatternNode::Kind;
    switch (n.kind) {
      case K::Triple:
        if (n.triple->has_path()) {
          only_triples_and = only_triples_and_filter = aof = false;
        }
        break;
      case K::And:
      case K::Empty:
        break;
      case K::Filter:
        only_triples_and = false;
        if (expression_has_exists(n.constraint->expr)) {
          only_triples_and_filter = aof = false;
        }
        if (!filter_is_simple(*n.constraint)) all_filters_simple = false;
        break;
      case K::Optional:
        only_triples_and = only_triples_and_filter = false;
        break;
      default:
        only_triples_and = only_triples_and_filter = aof = false;
        break;
    }
    for (const GraphPatternNode& c : n.children) walk(c);
  }
};

void collect_triple_vars(const TriplePattern& t, std::set<std::string>& out) {
  if (const Var* v = t.subject.as_var()) out.insert(v->name);
  if (const Term* p = t.predicate_term()) {
    if (const Var* v = p->as_var()) out.insert(v->name);
  }
  if (const Var* v = t.object.as_var()) out.insert(v->name);
}

// -- pattern tree construction ---------------------------------------------
//
// normalize() builds the Currying tree directly: And merges the root blocks
// and concatenates their child lists, Opt hangs the right tree under the
// left root, Filter attaches at the root block of its group.

PatternTree::Node tree_of(const GraphPatternNode& n) {
  using K = GraphPatternNode::Kind;
  switch (n.kind) {
    case K::Triple: {
      PatternTree::Node node;
      node.triples.push_back(*n.triple);
      return node;
    }
    case K::Empty:
      return PatternTree::Node{};
    case K::And: {
      PatternTree::Node l = tree_of(n.children[0]);
      PatternTree::Node r = tree_of(n.children[1]);
      for (TriplePattern& t : r.triples) l.triples.push_back(std::move(t));
      for (FilterConstraint& f : r.filters) l.filters.push_back(std::move(f));
      for (PatternTree::Node& c : r.children) l.children.push_back(std::move(c));
      return l;
    }
    case K::Optional: {
      PatternTree::Node l = tree_of(n.children[0]);
      l.children.push_back(tree_of(n.children[1]));
      return l;
    }
    case K::Filter: {
      PatternTree::Node inner = tree_of(n.children[0]);
      inner.filters.push_back(*n.constraint);
      return inner;
    }
    default:
      throw std::invalid_argument("pattern is not an And/Opt/Filter pattern");
  }
}

GraphPatternNode render_node(const PatternTree::Node& node) {
  GraphPatternNode base;
  if (node.triples.empty()) {
    base.kind = GraphPatternNode::Kind::Empty;
  } else {
    base = GraphPatternNode::triple_node(node.triples[0]);
    for (std::size_t i = 1; i < node.triples.size(); ++i) {
      base = GraphPatternNode::binary(GraphPatternNode::Kind::And, std::move(base),
                                      GraphPatternNode::triple_node(node.triples[i]));
    }
  }
  for (const FilterConstraint& f : node.filters) {
    base = GraphPatternNode::filter(std::move(base), f);
  }
  for (const PatternTree::Node& c : node.children) {
    base = GraphPatternNode::binary(GraphPatternNode::Kind::Optional, std::move(base),
                                    render_node(c));
  }
  return base;
}

// -- well-designedness --------------------------------------------------------

void node_var_sets(const GraphPatternNode& n, std::set<std::string>& out) {
  using K = GraphPatternNode::Kind;
  switch (n.kind) {
    case K::Triple:
      collect_triple_vars(*n.triple, out);
      break;
    case K::Filter:
      out.insert(n.constraint->vars.begin(), n.constraint->vars.end());
      break;
    default:
      break;
  }
  for (const GraphPatternNode& c : n.children) node_var_sets(c, out);
}

std::set<std::string> aof_vars(const GraphPatternNode& n) {
  std::set<std::string> out;
  node_var_sets(n, out);
  return out;
}

/// Checks each Opt occurrence inside `n`. `outside` holds the variables
/// occurring in the pattern outside the currently inspected subtree.
bool check_well_designed(const GraphPatternNode& n, const GraphPatternNode& whole) {
  using K = GraphPatternNode::Kind;
  if (n.kind == K::Optional) {
    std::set<std::string> left = aof_vars(n.children[0]);
    std::set<std::string> right = aof_vars(n.children[1]);

    // vars(P2) \ vars(P1)
    std::set<std::string> fresh;
    for (const std::string& v : right) {
      if (!left.count(v)) fresh.insert(v);
    }

    if (!fresh.empty()) {
      // Count occurrences of each fresh variable outside this subtree by
      // walking the whole pattern and skipping this node.
      struct Scan {
        const GraphPatternNode* skip;
        const std::set<std::string>* fresh;
        bool violated = false;
        void walk(const GraphPatternNode& x) {
          if (&x == skip || violated) return;
          std::set<std::string> here;
          if (x.kind == K::Triple) {
            collect_triple_vars(*x.triple, here);
          } else if (x.kind == K::Filter) {
            here.insert(x.constraint->vars.begin(), x.constraint->vars.end());
          }
          for (const std::string& v : here) {
            if (fresh->count(v)) {
              violated = true;
              return;
            }
          }
          for (const GraphPatternNode& c : x.children) walk(c);
        }
      } scan{&n, &fresh};
      scan.walk(whole);
      if (scan.violated) return false;
    }
  }
  for (const GraphPatternNode& c : n.children) {
    if (!check_well_designed(c, whole)) return false;
  }
  return true;
}

void tree_nodes(const PatternTree::Node& n, std::vector<const PatternTree::Node*>& out) {
  out.push_back(&n);
  for (const PatternTree::Node& c : n.children) tree_nodes(c, out);
}

}  // namespace

std::set<std::string> PatternTree::Node::vars() const {
  std::set<std::string> out;
  for (const TriplePattern& t : triples) collect_triple_vars(t, out);
  for (const FilterConstraint& f : filters) out.insert(f.vars.begin(), f.vars.end());
  return out;
}

bool is_aof(const GraphPatternNode& pattern) {
  FragmentScan scan;
  scan.walk(pattern);
  return scan.aof;
}

FragmentProfile classify_fragments(const GraphPatternNode& pattern) {
  FragmentScan scan;
  scan.walk(pattern);

  FragmentProfile f;
  f.is_aof = scan.aof;
  f.is_cq = scan.only_triples_and;
  f.is_cpf = scan.only_triples_and_filter;
  f.is_cqf = scan.only_triples_and_filter && scan.all_filters_simple;

  if (f.is_aof) {
    f.is_well_designed = is_well_designed(pattern);
    PatternTree t = build_pattern_tree(pattern);
    f.interface_width = interface_width(t);
    f.is_cqfo = *f.is_well_designed && scan.all_filters_simple && *f.interface_width <= 1;
  }
  return f;
}

PatternTree build_pattern_tree(const GraphPatternNode& aof_pattern) {
  PatternTree t;
  t.root = tree_of(aof_pattern);
  return t;
}

GraphPatternNode opt_normal_form(const GraphPatternNode& aof_pattern) {
  return render_node(tree_of(aof_pattern));
}

bool is_well_designed(const GraphPatternNode& aof_pattern) {
  return check_well_designed(aof_pattern, aof_pattern);
}

bool tree_is_well_designed(const PatternTree& t) {
  std::vector<const PatternTree::Node*> nodes;
  tree_nodes(t.root, nodes);

  // parent indices for connectivity checks
  std::vector<int> parent(nodes.size(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const PatternTree::Node& c : nodes[i]->children) {
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (nodes[j] == &c) parent[j] = static_cast<int>(i);
      }
    }
  }

  std::set<std::string> all_vars;
  std::vector<std::set<std::string>> node_vars(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    node_vars[i] = nodes[i]->vars();
    all_vars.insert(node_vars[i].begin(), node_vars[i].end());
  }

  for (const std::string& v : all_vars) {
    // The occurrence set is connected iff every occurrence node's parent
    // chain reaches a unique topmost occurrence through occurrence nodes.
    std::vector<std::size_t> occ;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (node_vars[i].count(v)) occ.push_back(i);
    }
    if (occ.size() <= 1) continue;
    // topmost occurrence = the one whose parent does not contain v
    std::size_t top_count = 0;
    for (std::size_t i : occ) {
      int p = parent[i];
      if (p < 0 || !node_vars[static_cast<std::size_t>(p)].count(v)) ++top_count;
    }
    if (top_count != 1) return false;
  }
  return true;
}

int interface_width(const PatternTree& t) {
  int width = 0;
  struct Walk {
    int* width;
    void visit(const PatternTree::Node& n) {
      std::set<std::string> nv = n.vars();
      for (const PatternTree::Node& c : n.children) {
        std::set<std::string> cv = c.vars();
        int shared = 0;
        for (const std::string& v : cv) {
          if (nv.count(v)) ++shared;
        }
        if (shared > *width) *width = shared;
        visit(c);
      }
    }
  } walk{&width};
  walk.visit(t.root);
  return width;
}

}  // namespace sparqlog
