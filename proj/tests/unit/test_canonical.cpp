#include "doctest.h"

#include "helpers.hpp"
#include "sparqlog/canonical.hpp"

using namespace sparqlog;
using sparqlog::test::body_of;

namespace {

const char* kPrefix = "PREFIX : <http://e/> ";

CanonicalGraph graph_of(const std::string& query, bool include_constants = true) {
  GraphPatternNode body = body_of(kPrefix + query);
  CanonicalGraphResult r = canonical_graph(body, include_constants);
  REQUIRE(std::holds_alternative<CanonicalGraph>(r));
  return std::get<CanonicalGraph>(std::move(r));
}

std::set<std::set<std::string>> named_edges(const CanonicalHypergraph& h) {
  std::set<std::set<std::string>> out;
  for (const std::vector<int>& e : h.edges) {
    std::set<std::string> edge;
    for (int v : e) edge.insert(h.vertex_names[v]);
    out.insert(std::move(edge));
  }
  return out;
}

}  // namespace

TEST_CASE("chain query gives a 4-node path") {
  CanonicalGraph g = graph_of("ASK WHERE {?x1 :a ?x2 . ?x2 :b ?x3 . ?x3 :c ?x4}");
  CHECK(g.node_count() == 4);
  CHECK(g.edges.size() == 3);
  CHECK(g.loops.empty());
}

TEST_CASE("variable predicates are not graph patterns") {
  GraphPatternNode body = body_of("ASK WHERE {?x1 ?x2 ?x3 . ?x3 <http://e/a> ?x4 . ?x4 ?x2 ?x5}");
  CanonicalGraphResult r = canonical_graph(body, true);
  REQUIRE(std::holds_alternative<NotAGraphPattern>(r));
  CHECK(std::get<NotAGraphPattern>(r).reason == "variable in predicate position");

  GraphPatternNode path_body = body_of("ASK WHERE {?a <http://e/p>* ?b}");
  CHECK(std::holds_alternative<NotAGraphPattern>(canonical_graph(path_body, true)));
}

TEST_CASE("self-loop for equal endpoints") {
  CanonicalGraph g = graph_of("ASK WHERE {?x :p ?x}");
  CHECK(g.node_count() == 1);
  CHECK(g.edges.empty());
  CHECK(g.loops == std::vector<int>{0});
}

TEST_CASE("constants become nodes unless excluded") {
  CanonicalGraph with = graph_of("ASK WHERE {?x :p :c . ?x :q ?y}");
  CHECK(with.node_count() == 3);
  CHECK(with.edges.size() == 2);

  CanonicalGraph without = graph_of("ASK WHERE {?x :p :c . ?x :q ?y}", false);
  CHECK(without.node_count() == 2);  // ?x and ?y survive
  CHECK(without.edges.size() == 1);  // only the all-variable edge

  // a fully ground triple leaves nothing behind
  CanonicalGraph ground = graph_of("ASK WHERE {:a :p :b}", false);
  CHECK(ground.node_count() == 0);
  CHECK(ground.edges.empty());
}

TEST_CASE("parallel edges collapse, so there are no 2-cycles") {
  CanonicalGraph g = graph_of("ASK WHERE {?a :p ?b . ?a :q ?b . ?b :r ?a}");
  CHECK(g.node_count() == 2);
  CHECK(g.edges.size() == 1);
}

TEST_CASE("equality collapse merges variable classes") {
  GraphPatternNode body = body_of(
      "SELECT * WHERE { ?a <http://e/p> ?x . ?b <http://e/q> ?y FILTER(?a = ?b) }");
  EqualityClasses eq = apply_equality_collapse(body);
  CHECK(eq.find("a") == eq.find("b"));
  CHECK(eq.find("x") != eq.find("y"));

  CanonicalGraphResult r = canonical_graph(body, true);
  const CanonicalGraph& g = std::get<CanonicalGraph>(r);
  CHECK(g.node_count() == 3);  // {a,b}, x, y
  CHECK(g.edges.size() == 2);
}

TEST_CASE("chained equalities form one class") {
  GraphPatternNode body = body_of(
      "SELECT * WHERE { ?a <http://e/p> ?o FILTER(?a = ?b) FILTER(?b = ?c) }");
  EqualityClasses eq = apply_equality_collapse(body);
  // brute-force transitive closure over the two pairs
  CHECK(eq.find("a") == eq.find("b"));
  CHECK(eq.find("b") == eq.find("c"));
  CHECK(eq.find("a") == eq.find("c"));
  CHECK(eq.find("o") != eq.find("a"));
}

TEST_CASE("no filters means the identity mapping") {
  GraphPatternNode body = body_of("SELECT * WHERE { ?a <http://e/p> ?b }");
  EqualityClasses eq = apply_equality_collapse(body);
  CHECK(eq.find("a") == "a");
  CHECK(eq.find("b") == "b");
}

TEST_CASE("hypergraph of the variable-predicate query") {
  GraphPatternNode body = body_of("ASK WHERE {?x1 ?x2 ?x3 . ?x3 <http://e/a> ?x4 . ?x4 ?x2 ?x5}");
  CanonicalHypergraph h = canonical_hypergraph(body);
  CHECK(h.vertex_count() == 5);
  CHECK(named_edges(h) == std::set<std::set<std::string>>{
                              {"?x1", "?x2", "?x3"}, {"?x3", "?x4"}, {"?x2", "?x4", "?x5"}});
}

TEST_CASE("ground queries give the empty hypergraph") {
  GraphPatternNode body = body_of("ASK WHERE {<http://e/a> <http://e/p> <http://e/b>}");
  CanonicalHypergraph h = canonical_hypergraph(body);
  CHECK(h.edges.empty());
}

TEST_CASE("binary hypergraph matches the canonical graph on plain chains") {
  GraphPatternNode body = body_of("ASK WHERE {?x <http://e/p> ?y . ?y <http://e/q> ?z}");
  CanonicalHypergraph h = canonical_hypergraph(body);
  CHECK(named_edges(h) == std::set<std::set<std::string>>{{"?x", "?y"}, {"?y", "?z"}});

  CanonicalGraphResult r = canonical_graph(body, true);
  const CanonicalGraph& g = std::get<CanonicalGraph>(r);
  CHECK(g.node_count() == static_cast<int>(h.vertex_names.size()));
  CHECK(g.edges.size() == h.edges.size());
}

TEST_CASE("duplicate hyperedges are deduplicated") {
  GraphPatternNode body = body_of("ASK WHERE {?x <http://e/p> ?y . ?x <http://e/q> ?y}");
  CanonicalHypergraph h = canonical_hypergraph(body);
  CHECK(h.edges.size() == 1);
}

TEST_CASE("canonical graph is stable under variable renaming") {
  CanonicalGraph a = graph_of("ASK WHERE {?x :a ?y . ?y :b ?z}");
  CanonicalGraph b = graph_of("ASK WHERE {?q :a ?r . ?r :b ?s}");
  CHECK(a.node_count() == b.node_count());
  CHECK(a.edges == b.edges);  // node ids are assigned in first-seen order
}

TEST_CASE("dot export mentions every node") {
  CanonicalGraph g = graph_of("ASK WHERE {?x :p ?y}");
  std::string dot = to_dot(g);
  CHECK(dot.find("?x") != std::string::npos);
  CHECK(dot.find("?y") != std::string::npos);
  CHECK(dot.find("n0 -- n1") != std::string::npos);
}
