#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sparqlog/canonical.hpp"

namespace sparqlog {

struct TreewidthResult {
  int width = 0;
  bool exceeded = false;  // treewidth > bound; width then holds the bound
};

/// Exact treewidth up to `bound`: degree reductions decide width <= 1,
/// series-parallel reduction decides width <= 2, branch and bound over
/// elimination orderings decides the rest.
TreewidthResult treewidth(const CanonicalGraph& g, int bound);

/// GYO ear removal; true iff the hypergraph is alpha-acyclic.
bool gyo_is_acyclic(const CanonicalHypergraph& h);

/// A hypertree decomposition in normal form; node 0 is the root of its tree.
struct HypertreeDecomposition {
  struct Node {
    std::vector<int> bag;     // vertex ids
    std::vector<int> lambda;  // covering edge ids (indices into the input)
    int parent = -1;
  };
  std::vector<Node> nodes;
};

struct HypertreeResult {
  int width = 0;          // smallest k <= k_max admitting a decomposition
  bool exceeded = false;  // no decomposition within k_max
  bool timed_out = false; // search budget exhausted before an answer
  int node_count = 0;
  HypertreeDecomposition decomposition;
  std::vector<std::vector<int>> normalized_edges;  // what lambda indexes refer to
};

/// Top-down det-k-decomp style search over <=k hyperedge separators.
/// The budget counts candidate separators tried across the whole search.
HypertreeResult hypertree_width(const CanonicalHypergraph& h, int k_max = 3,
                                std::uint64_t budget = 1000000);

/// Text export: one line per decomposition node with its bag and edges.
std::string decomposition_to_text(const CanonicalHypergraph& h, const HypertreeDecomposition& d);

}  // namespace sparqlog
