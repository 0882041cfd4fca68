#include "sparqlog/parser.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "sparqlog/lexer.hpp"

namespace sparqlog {

namespace {

constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
constexpr const char* kRdfFirst = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
constexpr const char* kRdfRest = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
constexpr const char* kRdfNil = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
constexpr const char* kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
constexpr const char* kXsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
constexpr const char* kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";
constexpr const char* kXsdBoolean = "http://www.w3.org/2001/XMLSchema#boolean";

struct ParseFailure {
  std::size_t offset;
  std::string message;
};

[[noreturn]] void fail(std::size_t offset, std::string message) {
  throw ParseFailure{offset, std::move(message)};
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

bool has_scheme(const std::string& iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
  for (std::size_t i = 1; i < iri.size(); ++i) {
    char c = iri[i];
    if (c == ':') return true;
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

const char* kUpdateKeywords[] = {"INSERT", "DELETE", "LOAD",   "CLEAR", "CREATE",
                                 "DROP",   "COPY",   "MOVE",   "ADD",   "WITH"};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), lexer_(text) { advance(); }

  Query parse() {
    Query q;
    parse_prologue(q);

    std::string kw = keyword();
    for (const char* u : kUpdateKeywords) {
      if (kw == u) fail(cur_.offset, "update operations are not supported");
    }
    if (kw == "SELECT") {
      q.type = QueryType::Select;
      parse_select_query(q, /*subquery=*/false);
    } else if (kw == "ASK") {
      q.type = QueryType::Ask;
      advance();
      parse_dataset_clauses(q);
      if (keyword() == "WHERE") advance();
      q.pattern = parse_group_graph_pattern();
      parse_solution_modifiers(q.modifiers);
    } else if (kw == "CONSTRUCT") {
      q.type = QueryType::Construct;
      advance();
      parse_construct(q);
    } else if (kw == "DESCRIBE") {
      q.type = QueryType::Describe;
      advance();
      parse_describe(q);
    } else {
      fail(cur_.offset, "expected SELECT, ASK, CONSTRUCT, or DESCRIBE");
    }

    parse_values_clause(q);
    if (cur_.type != TT::End) fail(cur_.offset, "unexpected input after query");

    q.prefixes = prefixes_;
    q.base = base_;
    return q;
  }

 private:
  using TT = Lexer::TokenType;
  using Token = Lexer::Token;

  // -- token plumbing ---------------------------------------------------------

  void advance() {
    cur_ = lexer_.next();
    if (cur_.type == TT::Error) fail(cur_.offset, cur_.value);
  }

  bool at(TT t) const { return cur_.type == t; }

  void expect(TT t, const char* what) {
    if (!at(t)) fail(cur_.offset, std::string("expected ") + what);
    advance();
  }

  /// Upper-cased identifier text, or empty when the current token is not one.
  std::string keyword() const {
    return cur_.type == TT::Identifier ? upper(cur_.value) : std::string();
  }

  bool accept_keyword(const char* kw) {
    if (keyword() == kw) {
      advance();
      return true;
    }
    return false;
  }

  void expect_keyword(const char* kw) {
    if (!accept_keyword(kw)) fail(cur_.offset, std::string("expected ") + kw);
  }

  // -- prologue ---------------------------------------------------------------

  void parse_prologue(Query&) {
    for (;;) {
      std::string kw = keyword();
      if (kw == "PREFIX") {
        advance();
        if (!at(TT::PrefixedName)) fail(cur_.offset, "expected prefix name");
        std::string decl = cur_.value;
        std::size_t colon = decl.find(':');
        if (colon == std::string::npos || colon + 1 != decl.size())
          fail(cur_.offset, "malformed prefix declaration");
        std::string prefix = decl.substr(0, colon);
        advance();
        if (!at(TT::IriRef)) fail(cur_.offset, "expected IRI in prefix declaration");
        prefixes_[prefix] = resolve_iri(cur_.value);
        advance();
      } else if (kw == "BASE") {
        advance();
        if (!at(TT::IriRef)) fail(cur_.offset, "expected IRI in BASE declaration");
        base_ = resolve_iri(cur_.value);
        advance();
      } else {
        break;
      }
    }
  }

  std::string resolve_iri(const std::string& raw) const {
    if (!base_ || has_scheme(raw)) return raw;
    return *base_ + raw;
  }

  std::string expand_prefixed(const Token& tok) const {
    std::size_t colon = tok.value.find(':');
    std::string prefix = tok.value.substr(0, colon);
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail(tok.offset, "unknown prefix '" + prefix + ":'");
    return it->second + tok.value.substr(colon + 1);
  }

  /// Current token as an IRI (IRIREF or prefixed name); advances past it.
  std::string parse_iri() {
    if (at(TT::IriRef)) {
      std::string v = resolve_iri(cur_.value);
      advance();
      return v;
    }
    if (at(TT::PrefixedName)) {
      std::string v = expand_prefixed(cur_);
      advance();
      return v;
    }
    fail(cur_.offset, "expected an IRI");
  }

  bool at_iri() const { return at(TT::IriRef) || at(TT::PrefixedName); }

  std::string fresh_blank() { return "b" + std::to_string(blank_counter_++); }

  // -- SELECT -----------------------------------------------------------------

  void parse_select_query(Query& q, bool subquery) {
    expect_keyword("SELECT");
    if (accept_keyword("DISTINCT")) {
      q.distinct = true;
    } else if (accept_keyword("REDUCED")) {
      q.reduced = true;
    }
    if (at(TT::Star)) {
      q.star_projection = true;
      advance();
    } else {
      while (at(TT::Variable) || at(TT::LParen)) {
        if (at(TT::Variable)) {
          q.projection.push_back(ProjectionItem{std::nullopt, cur_.value});
          advance();
        } else {
          advance();  // (
          Expression e = parse_expression();
          expect_keyword("AS");
          if (!at(TT::Variable)) fail(cur_.offset, "expected variable after AS");
          q.projection.push_back(ProjectionItem{std::move(e), cur_.value});
          advance();
          expect(TT::RParen, "')'");
        }
      }
      if (q.projection.empty()) fail(cur_.offset, "empty SELECT clause");
    }
    if (!subquery) parse_dataset_clauses(q);
    if (keyword() == "WHERE") advance();
    q.pattern = parse_group_graph_pattern();
    parse_solution_modifiers(q.modifiers);
  }

  void parse_dataset_clauses(Query& q) {
    while (accept_keyword("FROM")) {
      bool named = accept_keyword("NAMED");
      q.datasets.emplace_back(named, parse_iri());
    }
  }

  void parse_construct(Query& q) {
    if (at(TT::LBrace)) {
      q.construct_template = parse_construct_template();
      parse_dataset_clauses(q);
      expect_keyword("WHERE");
      q.pattern = parse_group_graph_pattern();
    } else {
      // CONSTRUCT WHERE { triples }: the template is the pattern itself.
      parse_dataset_clauses(q);
      expect_keyword("WHERE");
      expect(TT::LBrace, "'{'");
      std::vector<GraphPatternNode> elements;
      if (!at(TT::RBrace)) parse_triples_block(elements, /*paths_allowed=*/false);
      expect(TT::RBrace, "'}'");
      for (const GraphPatternNode& n : elements) q.construct_template.push_back(*n.triple);
      q.pattern = combine_elements(std::move(elements), {});
    }
    parse_solution_modifiers(q.modifiers);
  }

  std::vector<TriplePattern> parse_construct_template() {
    expect(TT::LBrace, "'{'");
    std::vector<GraphPatternNode> elements;
    if (!at(TT::RBrace)) parse_triples_block(elements, /*paths_allowed=*/false);
    expect(TT::RBrace, "'}'");
    std::vector<TriplePattern> out;
    out.reserve(elements.size());
    for (GraphPatternNode& n : elements) out.push_back(std::move(*n.triple));
    return out;
  }

  void parse_describe(Query& q) {
    if (at(TT::Star)) {
      q.describe_all = true;
      advance();
    } else {
      while (at(TT::Variable) || at_iri()) {
        if (at(TT::Variable)) {
          q.describe_targets.push_back(Term::var(cur_.value));
          advance();
        } else {
          q.describe_targets.push_back(Term::iri(parse_iri()));
        }
      }
      if (q.describe_targets.empty()) fail(cur_.offset, "DESCRIBE needs targets or '*'");
    }
    parse_dataset_clauses(q);
    if (keyword() == "WHERE" || at(TT::LBrace)) {
      if (keyword() == "WHERE") advance();
      q.pattern = parse_group_graph_pattern();
    }
    parse_solution_modifiers(q.modifiers);
  }

  // -- solution modifiers -------------------------------------------------------

  /// Keywords that end a modifier element list rather than start a new element.
  bool at_clause_boundary() const {
    std::string kw = keyword();
    return kw == "GROUP" || kw == "HAVING" || kw == "ORDER" || kw == "LIMIT" ||
           kw == "OFFSET" || kw == "VALUES";
  }

  void parse_solution_modifiers(SolutionModifiers& m) {
    if (accept_keyword("GROUP")) {
      expect_keyword("BY");
      bool any = false;
      for (;;) {
        if (at(TT::Variable)) {
          m.group_by.push_back(GroupCondition{Expression::term_value(Term::var(cur_.value)), {}});
          advance();
        } else if (at(TT::LParen)) {
          advance();
          Expression e = parse_expression();
          std::string alias;
          if (accept_keyword("AS")) {
            if (!at(TT::Variable)) fail(cur_.offset, "expected variable after AS");
            alias = cur_.value;
            advance();
          }
          expect(TT::RParen, "')'");
          m.group_by.push_back(GroupCondition{std::move(e), std::move(alias)});
        } else if ((at(TT::Identifier) && !at_clause_boundary()) || at_iri()) {
          m.group_by.push_back(GroupCondition{parse_call_expression(), {}});
        } else {
          break;
        }
        any = true;
      }
      if (!any) fail(cur_.offset, "empty GROUP BY clause");
    }
    if (accept_keyword("HAVING")) {
      bool any = false;
      while (at(TT::LParen) || (at(TT::Identifier) && !at_clause_boundary()) || at_iri()) {
        m.having.push_back(make_constraint(parse_constraint()));
        any = true;
      }
      if (!any) fail(cur_.offset, "empty HAVING clause");
    }
    if (accept_keyword("ORDER")) {
      expect_keyword("BY");
      bool any = false;
      for (;;) {
        if (keyword() == "ASC" || keyword() == "DESC") {
          bool desc = keyword() == "DESC";
          advance();
          if (!at(TT::LParen)) fail(cur_.offset, "expected '(' after ASC/DESC");
          advance();
          Expression e = parse_expression();
          expect(TT::RParen, "')'");
          m.order_by.push_back(OrderCondition{std::move(e), desc});
        } else if (at(TT::Variable)) {
          m.order_by.push_back(
              OrderCondition{Expression::term_value(Term::var(cur_.value)), false});
          advance();
        } else if (at(TT::LParen) || (at(TT::Identifier) && !at_clause_boundary()) || at_iri()) {
          m.order_by.push_back(OrderCondition{parse_constraint(), false});
        } else {
          break;
        }
        any = true;
      }
      if (!any) fail(cur_.offset, "empty ORDER BY clause");
    }
    // LIMIT and OFFSET may come in either order.
    for (int i = 0; i < 2; ++i) {
      if (accept_keyword("LIMIT")) {
        if (m.limit) fail(cur_.offset, "duplicate LIMIT");
        m.limit = parse_nonneg_int();
      } else if (accept_keyword("OFFSET")) {
        if (m.offset) fail(cur_.offset, "duplicate OFFSET");
        m.offset = parse_nonneg_int();
      }
    }
  }

  std::uint64_t parse_nonneg_int() {
    if (!at(TT::Integer)) fail(cur_.offset, "expected a non-negative integer");
    std::uint64_t v = 0;
    try {
      v = std::stoull(cur_.value);
    } catch (const std::exception&) {
      fail(cur_.offset, "integer out of range");
    }
    advance();
    return v;
  }

  void parse_values_clause(Query& q) {
    if (!accept_keyword("VALUES")) return;
    parse_data_block(q.trailing_values_vars, q.trailing_values_rows);
  }

  // -- graph patterns -----------------------------------------------------------

  GraphPatternNode parse_group_graph_pattern() {
    expect(TT::LBrace, "'{'");

    if (keyword() == "SELECT") {
      // SubSelect
      auto sub = std::make_shared<Query>();
      sub->type = QueryType::Select;
      parse_select_query(*sub, /*subquery=*/true);
      parse_values_clause(*sub);
      expect(TT::RBrace, "'}'");
      GraphPatternNode n;
      n.kind = GraphPatternNode::Kind::SubQuery;
      n.subquery = std::move(sub);
      return n;
    }

    std::vector<GraphPatternNode> elements;  // joined with And
    std::vector<FilterConstraint> filters;   // applied to the whole group, in order

    for (;;) {
      if (at(TT::RBrace)) break;
      std::string kw = keyword();

      if (kw == "FILTER") {
        advance();
        filters.push_back(make_constraint(parse_constraint()));
      } else if (kw == "OPTIONAL") {
        advance();
        GraphPatternNode right = parse_group_graph_pattern();
        GraphPatternNode left = combine_elements(std::move(elements), {});
        elements.clear();
        elements.push_back(
            GraphPatternNode::binary(GraphPatternNode::Kind::Optional, std::move(left), std::move(right)));
      } else if (kw == "MINUS") {
        advance();
        GraphPatternNode right = parse_group_graph_pattern();
        GraphPatternNode left = combine_elements(std::move(elements), {});
        elements.clear();
        elements.push_back(
            GraphPatternNode::binary(GraphPatternNode::Kind::Minus, std::move(left), std::move(right)));
      } else if (kw == "BIND") {
        advance();
        expect(TT::LParen, "'('");
        Expression e = parse_expression();
        expect_keyword("AS");
        if (!at(TT::Variable)) fail(cur_.offset, "expected variable after AS");
        std::string var = cur_.value;
        advance();
        expect(TT::RParen, "')'");
        GraphPatternNode left = combine_elements(std::move(elements), {});
        elements.clear();
        GraphPatternNode n;
        n.kind = GraphPatternNode::Kind::Bind;
        n.children.push_back(std::move(left));
        n.bind_expr = std::move(e);
        n.bind_var = std::move(var);
        elements.push_back(std::move(n));
      } else if (kw == "VALUES") {
        advance();
        GraphPatternNode n;
        n.kind = GraphPatternNode::Kind::Values;
        parse_data_block(n.values_vars, n.values_rows);
        elements.push_back(std::move(n));
      } else if (kw == "GRAPH") {
        advance();
        GraphPatternNode n;
        n.kind = GraphPatternNode::Kind::GraphScope;
        n.scope = parse_var_or_iri();
        n.children.push_back(parse_group_graph_pattern());
        elements.push_back(std::move(n));
      } else if (kw == "SERVICE") {
        advance();
        GraphPatternNode n;
        n.kind = GraphPatternNode::Kind::Service;
        n.silent = accept_keyword("SILENT");
        n.scope = parse_var_or_iri();
        n.children.push_back(parse_group_graph_pattern());
        elements.push_back(std::move(n));
      } else if (at(TT::LBrace)) {
        elements.push_back(parse_group_or_union());
      } else if (at(TT::Dot)) {
        advance();  // stray separator
      } else {
        parse_triples_block(elements, /*paths_allowed=*/true);
      }
    }
    expect(TT::RBrace, "'}'");
    return combine_elements(std::move(elements), std::move(filters));
  }

  GraphPatternNode parse_group_or_union() {
    GraphPatternNode node = parse_group_graph_pattern();
    while (accept_keyword("UNION")) {
      GraphPatternNode rhs = parse_group_graph_pattern();
      node = GraphPatternNode::binary(GraphPatternNode::Kind::Union, std::move(node), std::move(rhs));
    }
    return node;
  }

  /// And-fold the group elements and wrap the collected filters (in source order).
  static GraphPatternNode combine_elements(std::vector<GraphPatternNode> elements,
                                           std::vector<FilterConstraint> filters) {
    GraphPatternNode node;
    if (elements.empty()) {
      node.kind = GraphPatternNode::Kind::Empty;
    } else {
      node = std::move(elements.front());
      for (std::size_t i = 1; i < elements.size(); ++i) {
        node = GraphPatternNode::binary(GraphPatternNode::Kind::And, std::move(node),
                                        std::move(elements[i]));
      }
    }
    for (FilterConstraint& f : filters) {
      node = GraphPatternNode::filter(std::move(node), std::move(f));
    }
    return node;
  }

  Term parse_var_or_iri() {
    if (at(TT::Variable)) {
      Term t = Term::var(cur_.value);
      advance();
      return t;
    }
    return Term::iri(parse_iri());
  }

  void parse_data_block(std::vector<std::string>& vars, std::vector<ValuesRow>& rows) {
    if (at(TT::Variable)) {
      // single-variable short form: VALUES ?x { v1 v2 ... }
      vars.push_back(cur_.value);
      advance();
      expect(TT::LBrace, "'{'");
      while (!at(TT::RBrace)) {
        ValuesRow row;
        row.cells.push_back(parse_data_value());
        rows.push_back(std::move(row));
      }
      advance();
      return;
    }
    expect(TT::LParen, "'('");
    while (at(TT::Variable)) {
      vars.push_back(cur_.value);
      advance();
    }
    expect(TT::RParen, "')'");
    expect(TT::LBrace, "'{'");
    while (at(TT::LParen)) {
      advance();
      ValuesRow row;
      while (!at(TT::RParen)) row.cells.push_back(parse_data_value());
      advance();
      if (row.cells.size() != vars.size())
        fail(cur_.offset, "VALUES row width does not match variable list");
      rows.push_back(std::move(row));
    }
    expect(TT::RBrace, "'}'");
  }

  std::optional<Term> parse_data_value() {
    if (keyword() == "UNDEF") {
      advance();
      return std::nullopt;
    }
    return parse_graph_term(/*allow_var=*/false);
  }

  // -- triples ------------------------------------------------------------------

  void parse_triples_block(std::vector<GraphPatternNode>& out, bool paths_allowed) {
    for (;;) {
      parse_triples_same_subject(out, paths_allowed);
      if (at(TT::Dot)) {
        advance();
        // A '.' may be followed by more triples or by a non-triples element.
        if (at(TT::RBrace) || at(TT::End)) break;
        if (at(TT::Variable) || at_iri() || at(TT::BlankLabel) || at(TT::LBracket) ||
            at(TT::LParen) || at(TT::String) || at(TT::Integer) || at(TT::Decimal) ||
            at(TT::Double) || at(TT::Minus) || at(TT::Plus) || keyword() == "TRUE" ||
            keyword() == "FALSE") {
          continue;
        }
        break;
      }
      break;
    }
  }

  void parse_triples_same_subject(std::vector<GraphPatternNode>& out, bool paths_allowed) {
    Term subject;
    if (at(TT::LBracket) || at(TT::LParen)) {
      // Blank node property list or collection in subject position; it may
      // carry its own property list afterwards.
      subject = parse_triples_node(out, paths_allowed);
      if (at(TT::Variable) || at_iri() || keyword() == "A" || at(TT::Caret) || at(TT::Bang) ||
          at(TT::LParen)) {
        parse_property_list(subject, out, paths_allowed);
      }
      return;
    }
    subject = parse_graph_term(/*allow_var=*/true);
    if (subject.is_literal()) fail(cur_.offset, "literal subjects are not allowed");
    parse_property_list(subject, out, paths_allowed);
  }

  void parse_property_list(const Term& subject, std::vector<GraphPatternNode>& out,
                           bool paths_allowed) {
    for (;;) {
      std::variant<Term, PropertyPath> predicate = parse_verb(paths_allowed);
      // object list
      for (;;) {
        Term object = parse_object(out, paths_allowed);
        TriplePattern tp{subject, predicate, object};
        out.push_back(GraphPatternNode::triple_node(std::move(tp)));
        if (at(TT::Comma)) {
          advance();
          continue;
        }
        break;
      }
      if (at(TT::Semicolon)) {
        advance();
        // Allow trailing ';' before '.' or '}'.
        while (at(TT::Semicolon)) advance();
        if (at(TT::Dot) || at(TT::RBrace) || at(TT::End)) break;
        continue;
      }
      break;
    }
  }

  Term parse_object(std::vector<GraphPatternNode>& out, bool paths_allowed) {
    if (at(TT::LBracket) || at(TT::LParen)) return parse_triples_node(out, paths_allowed);
    return parse_graph_term(/*allow_var=*/true);
  }

  /// Blank node property lists and collections desugar into plain triples.
  Term parse_triples_node(std::vector<GraphPatternNode>& out, bool paths_allowed) {
    if (at(TT::LBracket)) {
      advance();
      Term node = Term::blank(fresh_blank());
      if (at(TT::RBracket)) {  // ANON
        advance();
        return node;
      }
      parse_property_list(node, out, paths_allowed);
      expect(TT::RBracket, "']'");
      return node;
    }
    // collection
    expect(TT::LParen, "'('");
    if (at(TT::RParen)) {
      advance();
      return Term::iri(kRdfNil);
    }
    std::vector<Term> items;
    while (!at(TT::RParen)) items.push_back(parse_object(out, paths_allowed));
    advance();
    Term head = Term::blank(fresh_blank());
    Term cursor = head;
    for (std::size_t i = 0; i < items.size(); ++i) {
      out.push_back(GraphPatternNode::triple_node(
          TriplePattern{cursor, Term::iri(kRdfFirst), items[i]}));
      Term rest = (i + 1 == items.size()) ? Term::iri(kRdfNil) : Term::blank(fresh_blank());
      out.push_back(
          GraphPatternNode::triple_node(TriplePattern{cursor, Term::iri(kRdfRest), rest}));
      cursor = rest;
    }
    return head;
  }

  std::variant<Term, PropertyPath> parse_verb(bool paths_allowed) {
    if (at(TT::Variable)) {
      Term t = Term::var(cur_.value);
      advance();
      return t;
    }
    if (cur_.type == TT::Identifier && cur_.value == "a") {
      advance();
      return Term::iri(kRdfType);
    }
    if (!paths_allowed) return Term::iri(parse_iri());

    std::size_t start_offset = cur_.offset;
    PropertyPath path = parse_path_alternative();
    // A path consisting of a bare IRI stays a plain Term predicate.
    if (path.kind == PropertyPath::Kind::Link) return Term::iri(std::move(path.iri));
    (void)start_offset;
    return path;
  }

  // Path ::= PathAlternative
  PropertyPath parse_path_alternative() {
    PropertyPath p = parse_path_sequence();
    while (at(TT::Pipe)) {
      advance();
      PropertyPath rhs = parse_path_sequence();
      p = PropertyPath::binary(PropertyPath::Kind::Alternative, std::move(p), std::move(rhs));
    }
    return p;
  }

  PropertyPath parse_path_sequence() {
    PropertyPath p = parse_path_elt_or_inverse();
    while (at(TT::Slash)) {
      advance();
      PropertyPath rhs = parse_path_elt_or_inverse();
      p = PropertyPath::binary(PropertyPath::Kind::Sequence, std::move(p), std::move(rhs));
    }
    return p;
  }

  PropertyPath parse_path_elt_or_inverse() {
    if (at(TT::Caret)) {
      advance();
      PropertyPath inner = parse_path_elt();
      return PropertyPath::unary(PropertyPath::Kind::Inverse, std::move(inner));
    }
    return parse_path_elt();
  }

  PropertyPath parse_path_elt() {
    PropertyPath p = parse_path_primary();
    if (at(TT::Question)) {
      advance();
      return PropertyPath::unary(PropertyPath::Kind::ZeroOrOne, std::move(p));
    }
    if (at(TT::Star)) {
      advance();
      return PropertyPath::unary(PropertyPath::Kind::ZeroOrMore, std::move(p));
    }
    if (at(TT::Plus)) {
      advance();
      return PropertyPath::unary(PropertyPath::Kind::OneOrMore, std::move(p));
    }
    return p;
  }

  PropertyPath parse_path_primary() {
    if (at(TT::Bang)) {
      advance();
      return parse_negated_property_set();
    }
    if (at(TT::LParen)) {
      advance();
      PropertyPath p = parse_path_alternative();
      expect(TT::RParen, "')'");
      return p;
    }
    if (cur_.type == TT::Identifier && cur_.value == "a") {
      advance();
      return PropertyPath::link(kRdfType);
    }
    return PropertyPath::link(parse_iri());
  }

  PropertyPath parse_negated_property_set() {
    PropertyPath p;
    p.kind = PropertyPath::Kind::NegatedSet;
    auto one = [&]() {
      PropertyPath::NegatedAtom atom;
      if (at(TT::Caret)) {
        advance();
        atom.inverted = true;
      }
      if (cur_.type == TT::Identifier && cur_.value == "a") {
        atom.iri = kRdfType;
        advance();
      } else {
        atom.iri = parse_iri();
      }
      p.negated.push_back(std::move(atom));
    };
    if (at(TT::LParen)) {
      advance();
      if (!at(TT::RParen)) {
        one();
        while (at(TT::Pipe)) {
          advance();
          one();
        }
      }
      expect(TT::RParen, "')'");
      if (p.negated.empty()) fail(cur_.offset, "empty negated property set");
    } else {
      one();
    }
    return p;
  }

  // -- terms --------------------------------------------------------------------

  Term parse_graph_term(bool allow_var) {
    switch (cur_.type) {
      case TT::Variable: {
        if (!allow_var) fail(cur_.offset, "variable not allowed here");
        Term t = Term::var(cur_.value);
        advance();
        return t;
      }
      case TT::IriRef:
      case TT::PrefixedName:
        return Term::iri(parse_iri());
      case TT::BlankLabel: {
        Term t = Term::blank(cur_.value);
        advance();
        return t;
      }
      case TT::String:
        return parse_rdf_literal();
      case TT::Integer:
      case TT::Decimal:
      case TT::Double:
        return parse_numeric_literal(/*sign=*/0);
      case TT::Plus:
      case TT::Minus: {
        int sign = at(TT::Minus) ? -1 : 1;
        advance();
        if (!at(TT::Integer) && !at(TT::Decimal) && !at(TT::Double))
          fail(cur_.offset, "expected numeric literal after sign");
        return parse_numeric_literal(sign);
      }
      case TT::Identifier: {
        std::string kw = upper(cur_.value);
        if (kw == "TRUE" || kw == "FALSE") {
          advance();
          return Term::literal(kw == "TRUE" ? "true" : "false", kXsdBoolean);
        }
        break;
      }
      default:
        break;
    }
    fail(cur_.offset, std::string("expected a term, found ") + token_type_name(cur_.type));
  }

  Term parse_rdf_literal() {
    std::string lex = cur_.value;
    advance();
    if (at(TT::LangTag)) {
      std::string lang = cur_.value;
      advance();
      return Term::literal(std::move(lex), {}, std::move(lang));
    }
    if (at(TT::CaretCaret)) {
      advance();
      return Term::literal(std::move(lex), parse_iri());
    }
    return Term::literal(std::move(lex));
  }

  Term parse_numeric_literal(int sign) {
    std::string lex = cur_.value;
    const char* dt = at(TT::Integer) ? kXsdInteger : (at(TT::Decimal) ? kXsdDecimal : kXsdDouble);
    advance();
    if (sign < 0) lex.insert(lex.begin(), '-');
    return Term::literal(std::move(lex), dt);
  }

  // -- expressions ----------------------------------------------------------------

  FilterConstraint make_constraint(Expression e) {
    FilterConstraint c;
    c.expr = std::move(e);
    collect_expression_vars(c.expr, c.vars);
    return c;
  }

  /// Constraint ::= BrackettedExpression | BuiltInCall | FunctionCall
  Expression parse_constraint() {
    if (at(TT::LParen)) {
      advance();
      Expression e = parse_expression();
      expect(TT::RParen, "')'");
      return e;
    }
    return parse_call_expression();
  }

  Expression parse_expression() { return parse_or_expression(); }

  Expression parse_or_expression() {
    Expression e = parse_and_expression();
    while (at(TT::OrOr)) {
      advance();
      Expression rhs = parse_and_expression();
      Expression node;
      node.kind = Expression::Kind::LogicalOr;
      node.args.push_back(std::move(e));
      node.args.push_back(std::move(rhs));
      e = std::move(node);
    }
    return e;
  }

  Expression parse_and_expression() {
    Expression e = parse_relational_expression();
    while (at(TT::AndAnd)) {
      advance();
      Expression rhs = parse_relational_expression();
      Expression node;
      node.kind = Expression::Kind::LogicalAnd;
      node.args.push_back(std::move(e));
      node.args.push_back(std::move(rhs));
      e = std::move(node);
    }
    return e;
  }

  Expression parse_relational_expression() {
    Expression e = parse_additive_expression();
    Expression::Kind k;
    switch (cur_.type) {
      case TT::Eq: k = Expression::Kind::Equal; break;
      case TT::NotEq: k = Expression::Kind::NotEqual; break;
      case TT::Less: k = Expression::Kind::Less; break;
      case TT::LessEq: k = Expression::Kind::LessEqual; break;
      case TT::Greater: k = Expression::Kind::Greater; break;
      case TT::GreaterEq: k = Expression::Kind::GreaterEqual; break;
      default: {
        std::string kw = keyword();
        if (kw == "IN" || kw == "NOT") {
          bool negated = kw == "NOT";
          if (negated) {
            advance();
            expect_keyword("IN");
          } else {
            advance();
          }
          Expression node;
          node.kind = negated ? Expression::Kind::NotIn : Expression::Kind::In;
          node.args.push_back(std::move(e));
          expect(TT::LParen, "'('");
          if (!at(TT::RParen)) {
            node.args.push_back(parse_expression());
            while (at(TT::Comma)) {
              advance();
              node.args.push_back(parse_expression());
            }
          }
          expect(TT::RParen, "')'");
          return node;
        }
        return e;
      }
    }
    advance();
    Expression rhs = parse_additive_expression();
    Expression node;
    node.kind = k;
    node.args.push_back(std::move(e));
    node.args.push_back(std::move(rhs));
    return node;
  }

  Expression parse_additive_expression() {
    Expression e = parse_multiplicative_expression();
    for (;;) {
      if (at(TT::Plus) || at(TT::Minus)) {
        Expression::Kind k = at(TT::Plus) ? Expression::Kind::Add : Expression::Kind::Subtract;
        advance();
        Expression rhs = parse_multiplicative_expression();
        Expression node;
        node.kind = k;
        node.args.push_back(std::move(e));
        node.args.push_back(std::move(rhs));
        e = std::move(node);
      } else {
        break;
      }
    }
    return e;
  }

  Expression parse_multiplicative_expression() {
    Expression e = parse_unary_expression();
    for (;;) {
      if (at(TT::Star) || at(TT::Slash)) {
        Expression::Kind k = at(TT::Star) ? Expression::Kind::Multiply : Expression::Kind::Divide;
        advance();
        Expression rhs = parse_unary_expression();
        Expression node;
        node.kind = k;
        node.args.push_back(std::move(e));
        node.args.push_back(std::move(rhs));
        e = std::move(node);
      } else {
        break;
      }
    }
    return e;
  }

  Expression parse_unary_expression() {
    if (at(TT::Bang)) {
      advance();
      Expression node;
      node.kind = Expression::Kind::Not;
      node.args.push_back(parse_unary_expression());
      return node;
    }
    if (at(TT::Plus)) {
      advance();
      Expression node;
      node.kind = Expression::Kind::UnaryPlus;
      node.args.push_back(parse_unary_expression());
      return node;
    }
    if (at(TT::Minus)) {
      advance();
      Expression node;
      node.kind = Expression::Kind::UnaryMinus;
      node.args.push_back(parse_unary_expression());
      return node;
    }
    return parse_primary_expression();
  }

  Expression parse_primary_expression() {
    switch (cur_.type) {
      case TT::LParen: {
        advance();
        Expression e = parse_expression();
        expect(TT::RParen, "')'");
        return e;
      }
      case TT::Variable: {
        Expression e = Expression::term_value(Term::var(cur_.value));
        advance();
        return e;
      }
      case TT::String:
        return Expression::term_value(parse_rdf_literal());
      case TT::Integer:
      case TT::Decimal:
      case TT::Double:
        return Expression::term_value(parse_numeric_literal(0));
      case TT::Identifier:
        return parse_call_expression();
      case TT::IriRef:
      case TT::PrefixedName:
        return parse_iri_or_function();
      default:
        fail(cur_.offset, std::string("expected an expression, found ") + token_type_name(cur_.type));
    }
  }

  Expression parse_iri_or_function() {
    std::string iri = parse_iri();
    if (at(TT::LParen)) {
      Expression e;
      e.kind = Expression::Kind::FunctionCall;
      e.name = std::move(iri);
      parse_argument_list(e);
      return e;
    }
    return Expression::term_value(Term::iri(std::move(iri)));
  }

  void parse_argument_list(Expression& e) {
    expect(TT::LParen, "'('");
    if (accept_keyword("DISTINCT")) e.distinct = true;
    if (!at(TT::RParen)) {
      e.args.push_back(parse_expression());
      while (at(TT::Comma)) {
        advance();
        e.args.push_back(parse_expression());
      }
    }
    expect(TT::RParen, "')'");
  }

  bool is_aggregate_name(const std::string& kw) const {
    return kw == "COUNT" || kw == "SUM" || kw == "MIN" || kw == "MAX" || kw == "AVG" ||
           kw == "SAMPLE" || kw == "GROUP_CONCAT";
  }

  Expression parse_call_expression() {
    if (at_iri()) return parse_iri_or_function();

    std::string kw = keyword();
    if (kw == "TRUE" || kw == "FALSE") {
      advance();
      return Expression::term_value(Term::literal(kw == "TRUE" ? "true" : "false", kXsdBoolean));
    }
    if (kw == "EXISTS" || kw == "NOT") {
      bool negated = kw == "NOT";
      advance();
      if (negated) expect_keyword("EXISTS");
      Expression e;
      e.kind = negated ? Expression::Kind::NotExists : Expression::Kind::Exists;
      e.pattern = std::make_shared<GraphPatternNode>(parse_group_graph_pattern());
      return e;
    }
    if (is_aggregate_name(kw)) {
      advance();
      Expression e;
      e.kind = Expression::Kind::Aggregate;
      e.name = kw;
      expect(TT::LParen, "'('");
      if (accept_keyword("DISTINCT")) e.distinct = true;
      if (at(TT::Star)) {
        advance();
        Expression star;
        star.kind = Expression::Kind::Star;
        e.args.push_back(std::move(star));
      } else {
        e.args.push_back(parse_expression());
        if (kw == "GROUP_CONCAT" && at(TT::Semicolon)) {
          advance();
          expect_keyword("SEPARATOR");
          expect(TT::Eq, "'='");
          if (!at(TT::String)) fail(cur_.offset, "expected separator string");
          e.separator = cur_.value;
          advance();
        }
      }
      expect(TT::RParen, "')'");
      return e;
    }
    // Generic built-in call: NAME(args). Includes BOUND, LANG, REGEX, IF, ...
    if (kw.empty()) fail(cur_.offset, "expected a function name");
    advance();
    Expression e;
    e.kind = Expression::Kind::FunctionCall;
    e.name = kw;
    if (at(TT::LParen)) {
      parse_argument_list(e);
    } else {
      fail(cur_.offset, "expected '(' after " + kw);
    }
    return e;
  }

  std::string_view text_;
  Lexer lexer_;
  Token cur_;
  std::map<std::string, std::string> prefixes_;
  std::optional<std::string> base_;
  unsigned blank_counter_ = 0;
};

}  // namespace

ParseResult parse_query(std::string_view text) {
  try {
    Parser parser(text);
    Query q = parser.parse();
    q.raw_text.assign(text.data(), text.size());
    return q;
  } catch (const ParseFailure& f) {
    return ParseError{f.offset, f.message};
  }
}

}  // namespace sparqlog
