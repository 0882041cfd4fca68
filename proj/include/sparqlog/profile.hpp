#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "sparqlog/ast.hpp"

namespace sparqlog {

/// Keywords tallied per query (a query contributes at most once per keyword).
enum class Keyword : std::uint8_t {
  Select, Ask, Describe, Construct,
  Distinct, Reduced, Limit, Offset, OrderBy,
  Filter, And, Union, Opt, Graph, NotExists, Minus, Exists,
  Count, Max, Min, Avg, Sum, GroupBy, Having,
  Service, Bind, Values, Sample, GroupConcat,
  kCount
};

constexpr std::size_t kKeywordCount = static_cast<std::size_t>(Keyword::kCount);

const char* keyword_name(Keyword k);

/// Operator bits over O = {Filter, And, Opt, Graph, Union}.
struct OperatorSet {
  enum : unsigned { F = 1, A = 2, O = 4, G = 8, U = 16 };
  unsigned mask = 0;
  bool other = false;  // body uses a feature outside O

  bool operator==(const OperatorSet&) const = default;
};

/// Render an operator set as e.g. "A,F" / "none" / "other".
std::string operator_set_label(const OperatorSet& s);

enum class Projection : std::uint8_t { Yes, No, Unknown };

/// Per-query syntactic profile.
struct ShallowProfile {
  QueryType query_type = QueryType::Select;
  std::array<bool, kKeywordCount> keywords{};
  std::uint32_t triple_count = 0;        // triple patterns incl. path patterns
  std::uint32_t path_pattern_count = 0;  // triple patterns whose predicate is a path
  OperatorSet operator_set;
  Projection projection = Projection::No;
  std::uint32_t subquery_count = 0;
  bool has_body = false;

  bool keyword(Keyword k) const { return keywords[static_cast<std::size_t>(k)]; }
};

/// Keyword flags for every construct occurring anywhere in q, subqueries included.
ShallowProfile keyword_profile(const Query& q);

/// Triple patterns in the body (Construct templates are not counted).
std::uint32_t triple_count(const Query& q);

/// Exact operator set of the body, or Other for any feature outside O.
OperatorSet operator_set(const Query& q);

/// Projection test following the recommendation's in-scope variable rules.
Projection projection_status(const Query& q);

/// Full shallow profile (all of the above in one pass).
ShallowProfile shallow_profile(const Query& q);

/// All property-path expressions in the body, in document order.
std::vector<const PropertyPath*> collect_paths(const Query& q);

}  // namespace sparqlog
