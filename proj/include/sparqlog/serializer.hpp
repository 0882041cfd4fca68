#pragma once

#include <string>

#include "sparqlog/ast.hpp"

namespace sparqlog {

/// Render a query back to SPARQL text with all IRIs in expanded <...> form.
/// parse(serialize(q)) yields a structurally equal AST for every parsed q.
std::string serialize(const Query& q);

std::string serialize(const Term& t);
std::string serialize(const PropertyPath& p);
std::string serialize(const TriplePattern& t);
std::string serialize(const Expression& e);
std::string serialize(const GraphPatternNode& n);

}  // namespace sparqlog
