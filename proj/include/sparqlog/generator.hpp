#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparqlog/ast.hpp"
#include "sparqlog/shape.hpp"

namespace sparqlog {

enum class GenShape { Chain, Cycle, Star, Tree, Petal, Flower, FlowerSet };

const char* gen_shape_name(GenShape s);
std::optional<GenShape> gen_shape_from_name(const std::string& name);

/// Parameters for synthetic conjunctive queries of a declared shape.
struct GenSpec {
  GenShape shape = GenShape::Chain;
  int length = 3;    // chain/cycle length, star branches, tree edges, petal path cap
  int paths = 2;     // node-disjoint paths of a petal
  int petals = 2;    // flower attachments
  int stamens = 2;
  int stems = 0;
  int flowers = 2;   // components of a flower set
  int count = 1;
  std::uint64_t seed = 0;
  QueryType query_type = QueryType::Ask;  // Ask or Select
  int predicate_vocabulary = 0;           // 0 = a fresh predicate per edge
};

struct GeneratedQuery {
  std::string text;
  Shape declared;  // membership the canonical graph is guaranteed to have
};

/// Deterministic for a fixed seed. Every emitted query parses, is a CQ, and
/// its canonical graph belongs to the declared shape class.
/// Throws std::invalid_argument for out-of-range parameters.
std::vector<GeneratedQuery> generate(const GenSpec& spec);

}  // namespace sparqlog
