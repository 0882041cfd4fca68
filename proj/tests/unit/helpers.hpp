#pragma once

#include <string>
#include <vector>

#include "doctest.h"
#include "sparqlog/ast.hpp"
#include "sparqlog/canonical.hpp"
#include "sparqlog/parser.hpp"

namespace sparqlog::test {

inline Query parse_ok(const std::string& text) {
  ParseResult r = parse_query(text);
  if (const ParseError* err = parse_error(r)) {
    FAIL("parse failed at ", err->offset, ": ", err->message, "\n  in: ", text);
  }
  return std::get<Query>(std::move(r));
}

inline GraphPatternNode body_of(const std::string& text) {
  Query q = parse_ok(text);
  REQUIRE(q.pattern.has_value());
  return std::move(*q.pattern);
}

inline CanonicalGraph graph_from_edges(int n, std::vector<std::pair<int, int>> edges,
                                       std::vector<int> loops = {}) {
  CanonicalGraph g;
  for (int i = 0; i < n; ++i) g.node_names.push_back("v" + std::to_string(i));
  std::set<std::pair<int, int>> set;
  for (auto [a, b] : edges) set.insert({std::min(a, b), std::max(a, b)});
  g.edges.assign(set.begin(), set.end());
  g.loops = std::move(loops);
  return g;
}

inline CanonicalHypergraph hypergraph_from(int n, std::vector<std::vector<int>> edges) {
  CanonicalHypergraph h;
  for (int i = 0; i < n; ++i) h.vertex_names.push_back("x" + std::to_string(i));
  std::set<std::vector<int>> set;
  for (std::vector<int>& e : edges) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    if (!e.empty()) set.insert(e);
  }
  h.edges.assign(set.begin(), set.end());
  return h;
}

}  // namespace sparqlog::test
