#include "sparqlog/canonical.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sparqlog {

std::string& EqualityClasses::root(const std::string& var) const {
  auto it = parent_.find(var);
  if (it == parent_.end()) {
    it = parent_.emplace(var, var).first;
  }
  if (it->second == var) return it->second;
  std::string& r = root(it->second);
  it->second = r;  // path compression
  return r;
}

const std::string& EqualityClasses::find(const std::string& var) const { return root(var); }

void EqualityClasses::unite(const std::string& a, const std::string& b) {
  std::string ra = root(a);
  std::string rb = root(b);
  if (ra == rb) return;
  // Keep the lexicographically smaller representative.
  if (rb < ra) std::swap(ra, rb);
  parent_[rb] = ra;
}

namespace {

void collect_triples(const GraphPatternNode& n, std::vector<const TriplePattern*>& out) {
  if (n.kind == GraphPatternNode::Kind::Triple) out.push_back(&*n.triple);
  for (const GraphPatternNode& c : n.children) collect_triples(c, out);
}

void collect_equalities(const GraphPatternNode& n, EqualityClasses& eq) {
  if (n.kind == GraphPatternNode::Kind::Filter) {
    const Expression& e = n.constraint->expr;
    if (e.kind == Expression::Kind::Equal && e.args.size() == 2 &&
        e.args[0].kind == Expression::Kind::TermValue && e.args[0].term->is_var() &&
        e.args[1].kind == Expression::Kind::TermValue && e.args[1].term->is_var()) {
      eq.unite(e.args[0].term->as_var()->name, e.args[1].term->as_var()->name);
    }
  }
  for (const GraphPatternNode& c : n.children) collect_equalities(c, eq);
}

bool is_constant(const Term& t) { return t.is_iri() || t.is_literal(); }

/// Stable key for a term class; variables go through the collapse mapping.
std::string term_key(const Term& t, const EqualityClasses& eq) {
  if (const Var* v = t.as_var()) return "?" + eq.find(v->name);
  if (const BlankNode* b = t.as_blank()) return "_:" + b->label;
  if (const Iri* i = t.as_iri()) return "<" + i->value + ">";
  const Literal* l = t.as_literal();
  std::string key = "\"" + l->lexical + "\"";
  if (!l->lang.empty()) key += "@" + l->lang;
  if (!l->datatype.empty()) key += "^^" + l->datatype;
  return key;
}

}  // namespace

EqualityClasses apply_equality_collapse(const GraphPatternNode& pattern) {
  EqualityClasses eq;
  collect_equalities(pattern, eq);
  return eq;
}

std::vector<std::vector<int>> CanonicalGraph::adjacency() const {
  std::vector<std::vector<int>> adj(node_names.size());
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

CanonicalGraphResult canonical_graph(const GraphPatternNode& pattern, bool include_constants) {
  std::vector<const TriplePattern*> triples;
  collect_triples(pattern, triples);

  for (const TriplePattern* t : triples) {
    if (t->has_path()) return NotAGraphPattern{"property path in predicate position"};
    if (t->predicate_term()->is_var()) return NotAGraphPattern{"variable in predicate position"};
  }

  EqualityClasses eq = apply_equality_collapse(pattern);

  CanonicalGraph g;
  g.include_constants = include_constants;
  std::map<std::string, int> node_ids;
  auto node_of = [&](const Term& t) {
    std::string key = term_key(t, eq);
    auto it = node_ids.find(key);
    if (it == node_ids.end()) {
      it = node_ids.emplace(key, static_cast<int>(g.node_names.size())).first;
      g.node_names.push_back(key);
    }
    return it->second;
  };

  std::set<std::pair<int, int>> edge_set;
  std::set<int> loop_set;
  for (const TriplePattern* t : triples) {
    bool s_const = is_constant(t->subject);
    bool o_const = is_constant(t->object);
    if (!include_constants) {
      if (!s_const) node_of(t->subject);
      if (!o_const) node_of(t->object);
      if (s_const || o_const) continue;  // the edge vanishes
    }
    int a = node_of(t->subject);
    int b = node_of(t->object);
    if (a == b) {
      loop_set.insert(a);
    } else {
      edge_set.insert({std::min(a, b), std::max(a, b)});
    }
  }
  g.edges.assign(edge_set.begin(), edge_set.end());
  g.loops.assign(loop_set.begin(), loop_set.end());
  return g;
}

CanonicalHypergraph canonical_hypergraph(const GraphPatternNode& pattern) {
  std::vector<const TriplePattern*> triples;
  collect_triples(pattern, triples);
  EqualityClasses eq = apply_equality_collapse(pattern);

  CanonicalHypergraph h;
  std::map<std::string, int> vertex_ids;
  auto vertex_of = [&](const Term& t) {
    std::string key = term_key(t, eq);
    auto it = vertex_ids.find(key);
    if (it == vertex_ids.end()) {
      it = vertex_ids.emplace(key, static_cast<int>(h.vertex_names.size())).first;
      h.vertex_names.push_back(key);
    }
    return it->second;
  };

  std::set<std::vector<int>> edge_set;
  for (const TriplePattern* t : triples) {
    std::set<int> edge;
    auto add = [&](const Term& term) {
      if (term.is_var() || term.is_blank()) edge.insert(vertex_of(term));
    };
    add(t->subject);
    if (const Term* p = t->predicate_term()) add(*p);
    add(t->object);
    if (!edge.empty()) edge_set.insert(std::vector<int>(edge.begin(), edge.end()));
  }
  h.edges.assign(edge_set.begin(), edge_set.end());
  return h;
}

std::string to_dot(const CanonicalGraph& g) {
  std::ostringstream out;
  out << "graph canonical {\n";
  for (int i = 0; i < g.node_count(); ++i) {
    out << "  n" << i << " [label=\"" << g.node_names[i] << "\"];\n";
  }
  for (const auto& [a, b] : g.edges) out << "  n" << a << " -- n" << b << ";\n";
  for (int v : g.loops) out << "  n" << v << " -- n" << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const CanonicalHypergraph& h) {
  std::ostringstream out;
  out << "graph hypergraph {\n";
  for (int i = 0; i < h.vertex_count(); ++i) {
    out << "  v" << i << " [label=\"" << h.vertex_names[i] << "\"];\n";
  }
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    out << "  e" << e << " [shape=box,label=\"e" << e << "\"];\n";
    for (int v : h.edges[e]) out << "  e" << e << " -- v" << v << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace sparqlog
