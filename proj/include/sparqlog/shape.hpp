#pragma once

#include <array>
#include <optional>
#include <string>

#include "sparqlog/canonical.hpp"

namespace sparqlog {

enum class Shape : std::uint8_t {
  Empty,
  SingleEdge,
  Chain,
  ChainSet,
  Star,
  Tree,
  Forest,
  Cycle,
  Petal,
  Flower,
  FlowerSet,
  BeyondFlowerSet,
  kCount
};

constexpr std::size_t kShapeCount = static_cast<std::size_t>(Shape::kCount);

const char* shape_name(Shape s);

struct FlowerStats {
  int petal_count = 0;
  int stamen_count = 0;
  int stem_count = 0;
  bool operator==(const FlowerStats&) const = default;
};

/// Flower decomposition of a connected graph.
struct FlowerDecomposition {
  int center = -1;
  std::vector<std::vector<int>> petals;  // vertex sets of the petal components
  FlowerStats stats;
  int loop_count = 0;  // self-loops at the center
};

struct NotAFlower {
  std::string witness;
};

/// Shape memberships plus the most specific class in the catalog.
struct ShapeClass {
  Shape most_specific = Shape::Empty;
  std::array<bool, kShapeCount> memberships{};
  std::optional<int> girth;  // length >= 3 of the shortest proper cycle
  std::optional<FlowerStats> flower_stats;  // when the graph is one flower
  int self_loop_count = 0;

  bool member(Shape s) const { return memberships[static_cast<std::size_t>(s)]; }
};

/// Classify against the whole catalog. With strict_petals = false, tree
/// attachments may hang off non-center petal vertices (a relaxed reading
/// of the flower definition, reported separately).
ShapeClass classify_shape(const CanonicalGraph& g, bool strict_petals = true);

/// Shortest proper cycle (>= 3); nullopt iff the graph has none.
std::optional<int> girth(const CanonicalGraph& g);

/// Flower decomposition of a connected graph.
std::variant<FlowerDecomposition, NotAFlower> decompose_flower(const CanonicalGraph& g,
                                                               bool strict_petals = true);

}  // namespace sparqlog
