#include "sparqlog/generator.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace sparqlog {

const char* gen_shape_name(GenShape s) {
  switch (s) {
    case GenShape::Chain: return "chain";
    case GenShape::Cycle: return "cycle";
    case GenShape::Star: return "star";
    case GenShape::Tree: return "tree";
    case GenShape::Petal: return "petal";
    case GenShape::Flower: return "flower";
    case GenShape::FlowerSet: return "flowerset";
  }
  return "?";
}

std::optional<GenShape> gen_shape_from_name(const std::string& name) {
  if (name == "chain") return GenShape::Chain;
  if (name == "cycle") return GenShape::Cycle;
  if (name == "star") return GenShape::Star;
  if (name == "tree") return GenShape::Tree;
  if (name == "petal") return GenShape::Petal;
  if (name == "flower") return GenShape::Flower;
  if (name == "flowerset") return GenShape::FlowerSet;
  return std::nullopt;
}

namespace {

using Rng = std::mt19937_64;
using EdgeList = std::vector<std::pair<int, int>>;

int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Path of `len` edges from `from`; returns the last vertex.
int grow_chain(EdgeList& edges, int& next_vertex, int from, int len) {
  int cur = from;
  for (int i = 0; i < len; ++i) {
    int fresh = next_vertex++;
    edges.push_back({cur, fresh});
    cur = fresh;
  }
  return cur;
}

/// Petal at `s`: `paths` node-disjoint walks to a fresh target. At most one
/// walk may be a single edge, otherwise the parallel edges would collapse.
void grow_petal(EdgeList& edges, int& next_vertex, Rng& rng, int s, int paths, int max_len) {
  int t = next_vertex++;
  bool used_direct = false;
  for (int p = 0; p < paths; ++p) {
    int len = rand_int(rng, 1, std::max(1, max_len));
    if (len == 1 && used_direct) len = 2;
    if (len == 1) {
      edges.push_back({s, t});
      used_direct = true;
    } else {
      int mid = grow_chain(edges, next_vertex, s, len - 1);
      edges.push_back({mid, t});
    }
  }
}

/// A tree hanging at `at` that is not a chain: the first vertex forks.
void grow_stem(EdgeList& edges, int& next_vertex, Rng& rng, int at, int max_len) {
  int fork = next_vertex++;
  edges.push_back({at, fork});
  int arms = rand_int(rng, 2, 3);
  for (int a = 0; a < arms; ++a) {
    grow_chain(edges, next_vertex, fork, rand_int(rng, 1, std::max(1, max_len)));
  }
}

void grow_flower(EdgeList& edges, int& next_vertex, Rng& rng, int center, int petals, int stamens,
                 int stems, int max_len) {
  for (int i = 0; i < petals; ++i) {
    grow_petal(edges, next_vertex, rng, center, rand_int(rng, 2, 3), max_len);
  }
  for (int i = 0; i < stamens; ++i) {
    grow_chain(edges, next_vertex, center, rand_int(rng, 1, std::max(1, max_len)));
  }
  for (int i = 0; i < stems; ++i) {
    grow_stem(edges, next_vertex, rng, center, max_len);
  }
}

EdgeList build_edges(const GenSpec& spec, Rng& rng, int& vertex_count) {
  EdgeList edges;
  int next_vertex = 0;
  switch (spec.shape) {
    case GenShape::Chain: {
      next_vertex = 1;
      grow_chain(edges, next_vertex, 0, spec.length);
      break;
    }
    case GenShape::Cycle: {
      next_vertex = spec.length;
      for (int i = 0; i < spec.length; ++i) edges.push_back({i, (i + 1) % spec.length});
      break;
    }
    case GenShape::Star: {
      next_vertex = 1;
      for (int i = 0; i < spec.length; ++i) edges.push_back({0, next_vertex++});
      break;
    }
    case GenShape::Tree: {
      next_vertex = 1;
      for (int i = 0; i < spec.length; ++i) {
        int parent = rand_int(rng, 0, next_vertex - 1);
        edges.push_back({parent, next_vertex++});
      }
      break;
    }
    case GenShape::Petal: {
      next_vertex = 1;
      grow_petal(edges, next_vertex, rng, 0, spec.paths, spec.length);
      break;
    }
    case GenShape::Flower: {
      next_vertex = 1;
      grow_flower(edges, next_vertex, rng, 0, spec.petals, spec.stamens, spec.stems, spec.length);
      break;
    }
    case GenShape::FlowerSet: {
      for (int f = 0; f < spec.flowers; ++f) {
        int center = next_vertex++;
        grow_flower(edges, next_vertex, rng, center, rand_int(rng, 0, 2), rand_int(rng, 1, 3),
                    rand_int(rng, 0, 1), spec.length);
      }
      break;
    }
  }
  vertex_count = next_vertex;
  return edges;
}

Shape declared_shape(GenShape s) {
  switch (s) {
    case GenShape::Chain: return Shape::Chain;
    case GenShape::Cycle: return Shape::Cycle;
    case GenShape::Star: return Shape::Star;
    case GenShape::Tree: return Shape::Tree;
    case GenShape::Petal: return Shape::Petal;
    case GenShape::Flower: return Shape::Flower;
    case GenShape::FlowerSet: return Shape::FlowerSet;
  }
  return Shape::BeyondFlowerSet;
}

void validate(const GenSpec& spec) {
  auto reject = [](const std::string& reason) { throw std::invalid_argument(reason); };
  if (spec.count < 1) reject("count must be positive");
  if (spec.length < 1) reject("length must be at least 1");
  if (spec.query_type != QueryType::Ask && spec.query_type != QueryType::Select) {
    reject("generator emits Ask or Select queries");
  }
  switch (spec.shape) {
    case GenShape::Cycle:
      if (spec.length < 3) reject("cycles need length at least 3");
      break;
    case GenShape::Star:
      if (spec.length < 3) reject("stars need at least 3 branches");
      break;
    case GenShape::Petal:
      if (spec.paths < 2) reject("petals need at least 2 paths");
      break;
    case GenShape::Flower:
      if (spec.petals < 0 || spec.stamens < 0 || spec.stems < 0) reject("negative attachment count");
      break;
    case GenShape::FlowerSet:
      if (spec.flowers < 1) reject("flower sets need at least one component");
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<GeneratedQuery> generate(const GenSpec& spec) {
  validate(spec);

  std::vector<GeneratedQuery> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int item = 0; item < spec.count; ++item) {
    // derived per-item seed keeps parallel generation reproducible
    Rng rng(spec.seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(item) + 1);
    int vertex_count = 0;
    EdgeList edges = build_edges(spec, rng, vertex_count);
    (void)vertex_count;

    std::ostringstream text;
    text << (spec.query_type == QueryType::Ask ? "ASK WHERE {" : "SELECT * WHERE {");
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto [a, b] = edges[e];
      if (rand_int(rng, 0, 1)) std::swap(a, b);  // edge direction is immaterial
      std::string predicate;
      if (spec.predicate_vocabulary > 0) {
        predicate = "http://gen.invalid/p" +
                    std::to_string(rand_int(rng, 0, spec.predicate_vocabulary - 1));
      } else {
        predicate = "http://gen.invalid/p" + std::to_string(e);
      }
      if (e) text << " .";
      text << " ?x" << a << " <" << predicate << "> ?x" << b;
    }
    text << " }";
    out.push_back(GeneratedQuery{text.str(), declared_shape(spec.shape)});
  }
  return out;
}

}  // namespace sparqlog
