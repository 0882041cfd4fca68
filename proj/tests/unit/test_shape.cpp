#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "sparqlog/shape.hpp"

using namespace sparqlog;
using sparqlog::test::graph_from_edges;

namespace {

// Edge list of the flower query figure: a hub with four petals (one of them
// three paths wide), ten stamens, and no stems. Vertices are 1-based there.
std::vector<std::pair<int, int>> flower_edges() {
  std::vector<std::pair<int, int>> e = {
      {4, 1},  {5, 4},  {5, 2},  {5, 6},  {6, 3},  {5, 7},  {5, 9},  {7, 8},  {9, 8},
      {5, 10}, {5, 11}, {5, 12}, {10, 13}, {11, 13}, {12, 13},
      {5, 16}, {16, 17}, {5, 14}, {14, 15},
      {5, 18}, {5, 20}, {18, 19}, {20, 19},
      {5, 21}, {5, 22}, {5, 24}, {22, 23}, {24, 23},
      {5, 25}, {25, 26}, {5, 27}, {5, 28}, {5, 29}, {28, 30}, {29, 31}};
  for (auto& [a, b] : e) {
    --a;
    --b;
  }
  return e;
}

CanonicalGraph path_graph(int nodes) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < nodes; ++i) edges.push_back({i, i + 1});
  return graph_from_edges(nodes, edges);
}

CanonicalGraph cycle_graph(int nodes) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < nodes; ++i) edges.push_back({i, (i + 1) % nodes});
  return graph_from_edges(nodes, edges);
}

}  // namespace

TEST_CASE("four-node path is a chain and everything above it") {
  ShapeClass s = classify_shape(path_graph(4));
  CHECK(s.most_specific == Shape::Chain);
  CHECK(s.member(Shape::Chain));
  CHECK(s.member(Shape::ChainSet));
  CHECK(s.member(Shape::Tree));
  CHECK(s.member(Shape::Forest));
  CHECK(s.member(Shape::Flower));
  CHECK(s.member(Shape::FlowerSet));
  CHECK_FALSE(s.member(Shape::Star));
  CHECK_FALSE(s.member(Shape::Cycle));
  CHECK_FALSE(s.girth.has_value());
}

TEST_CASE("single edge and single node") {
  ShapeClass edge = classify_shape(path_graph(2));
  CHECK(edge.most_specific == Shape::SingleEdge);

  ShapeClass node = classify_shape(path_graph(1));
  CHECK(node.most_specific == Shape::Chain);  // a chain of length zero

  ShapeClass empty = classify_shape(path_graph(0));
  CHECK(empty.most_specific == Shape::Empty);
  CHECK(empty.member(Shape::ChainSet));
  CHECK(empty.member(Shape::Forest));
  CHECK(empty.member(Shape::FlowerSet));
}

TEST_CASE("triangle is a cycle with girth 3") {
  ShapeClass s = classify_shape(cycle_graph(3));
  CHECK(s.most_specific == Shape::Cycle);
  CHECK(s.member(Shape::Petal));
  CHECK(s.member(Shape::Flower));
  CHECK(s.girth == 3);
  CHECK_FALSE(s.member(Shape::Forest));
}

TEST_CASE("girth finds the shortest cycle") {
  CHECK(girth(cycle_graph(14)) == 14);
  CHECK_FALSE(girth(path_graph(5)).has_value());

  // two cycles sharing a path: 4-cycle plus a chord splitting it into triangles
  CanonicalGraph g = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  CHECK(girth(g) == 3);
}

TEST_CASE("stars") {
  CanonicalGraph star = graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  ShapeClass s = classify_shape(star);
  CHECK(s.most_specific == Shape::Star);
  CHECK(s.member(Shape::Tree));
  CHECK_FALSE(s.member(Shape::Chain));

  // two high-degree nodes: a tree but not a star
  CanonicalGraph caterpillar =
      graph_from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {3, 5}});
  ShapeClass c = classify_shape(caterpillar);
  CHECK(c.most_specific == Shape::Tree);
  CHECK_FALSE(c.member(Shape::Star));
}

TEST_CASE("chain sets and forests") {
  // two disjoint paths
  CanonicalGraph chains = graph_from_edges(5, {{0, 1}, {2, 3}, {3, 4}});
  ShapeClass s = classify_shape(chains);
  CHECK(s.most_specific == Shape::ChainSet);
  CHECK(s.member(Shape::Forest));
  CHECK_FALSE(s.member(Shape::Chain));

  // a path plus a star: a forest but not a chain set
  CanonicalGraph mixed = graph_from_edges(7, {{0, 1}, {2, 3}, {2, 4}, {2, 5}, {5, 6}});
  ShapeClass f = classify_shape(mixed);
  CHECK(f.most_specific == Shape::Forest);
}

TEST_CASE("theta graph is a petal") {
  // two vertices joined by three node-disjoint paths
  CanonicalGraph theta = graph_from_edges(5, {{0, 1}, {1, 2}, {0, 3}, {3, 2}, {0, 4}, {4, 2}});
  ShapeClass s = classify_shape(theta);
  CHECK(s.most_specific == Shape::Petal);
  CHECK(s.member(Shape::Flower));
  CHECK_FALSE(s.member(Shape::Cycle));
}

TEST_CASE("the flower figure decomposes into 4 petals, 10 stamens, 0 stems") {
  CanonicalGraph g = graph_from_edges(31, flower_edges());
  ShapeClass s = classify_shape(g);
  CHECK(s.most_specific == Shape::Flower);
  REQUIRE(s.flower_stats.has_value());
  CHECK(s.flower_stats->petal_count == 4);
  CHECK(s.flower_stats->stamen_count == 10);
  CHECK(s.flower_stats->stem_count == 0);

  auto res = decompose_flower(g);
  REQUIRE(std::holds_alternative<FlowerDecomposition>(res));
  const FlowerDecomposition& d = std::get<FlowerDecomposition>(res);
  CHECK(d.center == 4);  // the hub (vertex 5 in 1-based labels)
}

TEST_CASE("flower with a stem") {
  // center 0 with a fork at 1: 0-1, 1-2, 1-3 is a tree that is not a chain
  CanonicalGraph g = graph_from_edges(6, {{0, 1}, {1, 2}, {1, 3}, {0, 4}, {0, 5}, {4, 5}});
  // the 0-4-5 triangle pins the center at 0
  auto res = decompose_flower(g);
  REQUIRE(std::holds_alternative<FlowerDecomposition>(res));
  const FlowerDecomposition& d = std::get<FlowerDecomposition>(res);
  CHECK(d.center == 0);
  CHECK(d.stats.petal_count == 1);
  CHECK(d.stats.stamen_count == 0);
  CHECK(d.stats.stem_count == 1);
}

TEST_CASE("two disjoint cycles joined by a path are not a flower") {
  std::vector<std::pair<int, int>> edges = {
      {0, 1}, {1, 2}, {2, 0},            // triangle A
      {3, 4}, {4, 5}, {5, 3},            // triangle B
      {2, 6}, {6, 3}};                   // connecting path
  CanonicalGraph g = graph_from_edges(7, edges);
  auto res = decompose_flower(g);
  REQUIRE(std::holds_alternative<NotAFlower>(res));
  ShapeClass s = classify_shape(g);
  CHECK(s.most_specific == Shape::BeyondFlowerSet);
}

TEST_CASE("a cycle petal lets the attachment node serve as center") {
  // triangle 0-1-2 with a pendant at 1: any cycle node may be the terminal,
  // so 1 becomes the center and the pendant is a stamen
  CanonicalGraph g = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {1, 3}});
  auto res = decompose_flower(g);
  REQUIRE(std::holds_alternative<FlowerDecomposition>(res));
  const FlowerDecomposition& d = std::get<FlowerDecomposition>(res);
  CHECK(d.center == 1);
  CHECK(d.stats.petal_count == 1);
  CHECK(d.stats.stamen_count == 1);
}

TEST_CASE("attachments below a petal are rejected in strict mode only") {
  // theta graph with terminals 0 and 2 (three disjoint paths through 1, 3, 4)
  // plus a pendant at the internal path node 1
  CanonicalGraph g =
      graph_from_edges(6, {{0, 1}, {1, 2}, {0, 3}, {3, 2}, {0, 4}, {4, 2}, {1, 5}});
  CHECK(std::holds_alternative<NotAFlower>(decompose_flower(g, /*strict_petals=*/true)));

  auto relaxed = decompose_flower(g, /*strict_petals=*/false);
  REQUIRE(std::holds_alternative<FlowerDecomposition>(relaxed));
  CHECK(std::get<FlowerDecomposition>(relaxed).stats.stamen_count == 1);
}

TEST_CASE("figure-eight shares only the center") {
  CanonicalGraph g = graph_from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  auto res = decompose_flower(g);
  REQUIRE(std::holds_alternative<FlowerDecomposition>(res));
  const FlowerDecomposition& d = std::get<FlowerDecomposition>(res);
  CHECK(d.center == 0);
  CHECK(d.stats.petal_count == 2);
}

TEST_CASE("self-loops") {
  CanonicalGraph lone = graph_from_edges(1, {}, {0});
  ShapeClass s = classify_shape(lone);
  CHECK(s.member(Shape::Cycle));
  CHECK(s.member(Shape::Flower));
  CHECK(s.most_specific == Shape::Cycle);
  CHECK_FALSE(s.girth.has_value());  // loops stay out of girth statistics
  CHECK(s.self_loop_count == 1);

  // a loop somewhere on a chain keeps the flower at that node
  CanonicalGraph mid = graph_from_edges(3, {{0, 1}, {1, 2}}, {1});
  ShapeClass m = classify_shape(mid);
  CHECK_FALSE(m.member(Shape::Forest));
  CHECK(m.member(Shape::Flower));

  // loops at two different nodes cannot share a center
  CanonicalGraph two = graph_from_edges(2, {{0, 1}}, {0, 1});
  CHECK_FALSE(classify_shape(two).member(Shape::Flower));
  CHECK(classify_shape(two).most_specific == Shape::BeyondFlowerSet);
}

TEST_CASE("flower sets") {
  // a flower (triangle at hub) plus a tree in another component
  std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {2, 0}, {0, 3},
                                            {4, 5}, {5, 6}, {5, 7}};
  CanonicalGraph g = graph_from_edges(8, edges);
  ShapeClass s = classify_shape(g);
  CHECK(s.most_specific == Shape::FlowerSet);
  CHECK_FALSE(s.member(Shape::Flower));
  CHECK_FALSE(s.member(Shape::Forest));

  // K4 is beyond the catalog
  CanonicalGraph k4 = graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(classify_shape(k4).most_specific == Shape::BeyondFlowerSet);
}

TEST_CASE("classification is invariant under vertex relabeling") {
  std::mt19937_64 rng(5);
  std::vector<std::pair<int, int>> edges = flower_edges();
  CanonicalGraph base = graph_from_edges(31, edges);
  ShapeClass expect = classify_shape(base);

  for (int round = 0; round < 20; ++round) {
    std::vector<int> perm(31);
    for (int i = 0; i < 31; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<int, int>> relabeled;
    for (auto [a, b] : edges) relabeled.push_back({perm[a], perm[b]});
    ShapeClass got = classify_shape(graph_from_edges(31, relabeled));
    CHECK(got.most_specific == expect.most_specific);
    CHECK(got.memberships == expect.memberships);
    CHECK(got.flower_stats == expect.flower_stats);
  }
}
