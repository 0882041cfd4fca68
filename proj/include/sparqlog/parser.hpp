#pragma once

#include <string_view>

#include "sparqlog/ast.hpp"

namespace sparqlog {

/// Parse a SPARQL 1.1 query. Update operations are rejected. A query is
/// counted "valid" downstream iff this returns a Query.
ParseResult parse_query(std::string_view text);

}  // namespace sparqlog
