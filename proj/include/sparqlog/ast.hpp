#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace sparqlog {

/// An IRI with prefixes already expanded to the absolute form.
struct Iri {
  std::string value;
  bool operator==(const Iri&) const = default;
};

/// A blank node; anonymous nodes get fresh labels _:b0, _:b1, ... in document order.
struct BlankNode {
  std::string label;
  bool operator==(const BlankNode&) const = default;
};

/// An RDF literal. datatype/lang are empty when absent.
struct Literal {
  std::string lexical;
  std::string datatype;
  std::string lang;
  bool operator==(const Literal&) const = default;
};

/// A query variable; the name carries no ?/$ sigil.
struct Var {
  std::string name;
  bool operator==(const Var&) const = default;
};

/// One term of a triple pattern.
struct Term {
  std::variant<Iri, BlankNode, Literal, Var> node;

  bool is_iri() const { return std::holds_alternative<Iri>(node); }
  bool is_blank() const { return std::holds_alternative<BlankNode>(node); }
  bool is_literal() const { return std::holds_alternative<Literal>(node); }
  bool is_var() const { return std::holds_alternative<Var>(node); }

  const Iri* as_iri() const { return std::get_if<Iri>(&node); }
  const BlankNode* as_blank() const { return std::get_if<BlankNode>(&node); }
  const Literal* as_literal() const { return std::get_if<Literal>(&node); }
  const Var* as_var() const { return std::get_if<Var>(&node); }

  bool operator==(const Term&) const = default;

  static Term iri(std::string v) { return Term{Iri{std::move(v)}}; }
  static Term blank(std::string l) { return Term{BlankNode{std::move(l)}}; }
  static Term var(std::string n) { return Term{Var{std::move(n)}}; }
  static Term literal(std::string lex, std::string dt = {}, std::string lang = {}) {
    return Term{Literal{std::move(lex), std::move(dt), std::move(lang)}};
  }
};

/// A property path expression over IRIs (predicate position only).
struct PropertyPath {
  enum class Kind {
    Link,         ///< plain iri (only below other operators; a bare iri predicate stays a Term)
    Inverse,      ///< ^p
    NegatedSet,   ///< !iri or !(iri|^iri|...)
    Sequence,     ///< p1 / p2
    Alternative,  ///< p1 | p2
    ZeroOrMore,   ///< p*
    OneOrMore,    ///< p+
    ZeroOrOne     ///< p?
  };

  /// One member of a negated property set.
  struct NegatedAtom {
    std::string iri;
    bool inverted = false;
    bool operator==(const NegatedAtom&) const = default;
  };

  Kind kind = Kind::Link;
  std::string iri;                     // Link
  std::vector<NegatedAtom> negated;    // NegatedSet (non-empty)
  std::vector<PropertyPath> children;  // 2 for Sequence/Alternative, 1 for the rest

  bool operator==(const PropertyPath&) const = default;

  static PropertyPath link(std::string v) {
    PropertyPath p;
    p.kind = Kind::Link;
    p.iri = std::move(v);
    return p;
  }
  static PropertyPath unary(Kind k, PropertyPath inner) {
    PropertyPath p;
    p.kind = k;
    p.children.push_back(std::move(inner));
    return p;
  }
  static PropertyPath binary(Kind k, PropertyPath lhs, PropertyPath rhs) {
    PropertyPath p;
    p.kind = k;
    p.children.push_back(std::move(lhs));
    p.children.push_back(std::move(rhs));
    return p;
  }
};

/// A triple or property-path pattern. The predicate is a Term (Iri or Var)
/// unless actual path syntax was used.
struct TriplePattern {
  Term subject;
  std::variant<Term, PropertyPath> predicate;
  Term object;

  bool has_path() const { return std::holds_alternative<PropertyPath>(predicate); }
  const Term* predicate_term() const { return std::get_if<Term>(&predicate); }
  const PropertyPath* predicate_path() const { return std::get_if<PropertyPath>(&predicate); }

  bool operator==(const TriplePattern&) const = default;
};

struct GraphPatternNode;
struct Query;

/// A SPARQL expression (filter constraints, BIND, projection, HAVING, ORDER BY).
struct Expression {
  enum class Kind {
    LogicalOr,
    LogicalAnd,
    Equal,
    NotEqual,
    Less,
    LessEqual,
    Greater,
    GreaterEqual,
    In,
    NotIn,
    Add,
    Subtract,
    Multiply,
    Divide,
    Not,
    UnaryPlus,
    UnaryMinus,
    FunctionCall,  ///< builtin or iri function; name holds the (upper-cased) builtin or iri
    Aggregate,     ///< COUNT/SUM/MIN/MAX/AVG/SAMPLE/GROUP_CONCAT
    Exists,
    NotExists,
    TermValue,
    Star  ///< the '*' of COUNT(*)
  };

  Kind kind = Kind::TermValue;
  std::string name;        // FunctionCall / Aggregate
  bool distinct = false;   // aggregates
  std::string separator;   // GROUP_CONCAT
  std::vector<Expression> args;
  std::optional<Term> term;                          // TermValue
  std::shared_ptr<const GraphPatternNode> pattern;   // Exists / NotExists

  static Expression term_value(Term t) {
    Expression e;
    e.kind = Kind::TermValue;
    e.term = std::move(t);
    return e;
  }
};

/// A filter constraint plus its syntactically occurring variables.
struct FilterConstraint {
  Expression expr;
  std::set<std::string> vars;
};

/// One row of a VALUES block; std::nullopt encodes UNDEF.
struct ValuesRow {
  std::vector<std::optional<Term>> cells;
};

/// A node of the pattern tree of a query body.
///
/// Children layout: And/Union/Optional/Minus hold two children;
/// Filter/GraphScope/Service/Bind hold one; Triple/Values/SubQuery/Empty none.
struct GraphPatternNode {
  enum class Kind {
    Triple,
    And,
    Filter,
    Union,
    Optional,
    GraphScope,
    Minus,
    Bind,
    Values,
    SubQuery,
    Service,
    Empty  ///< the empty group {}
  };

  Kind kind = Kind::Empty;
  std::vector<GraphPatternNode> children;
  std::optional<TriplePattern> triple;
  std::optional<FilterConstraint> constraint;  // Filter
  std::optional<Term> scope;                   // GraphScope / Service (Iri or Var)
  bool silent = false;                         // Service
  std::optional<Expression> bind_expr;
  std::string bind_var;
  std::vector<std::string> values_vars;
  std::vector<ValuesRow> values_rows;
  std::shared_ptr<const Query> subquery;

  static GraphPatternNode triple_node(TriplePattern t) {
    GraphPatternNode n;
    n.kind = Kind::Triple;
    n.triple = std::move(t);
    return n;
  }
  static GraphPatternNode binary(Kind k, GraphPatternNode lhs, GraphPatternNode rhs) {
    GraphPatternNode n;
    n.kind = k;
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
  }
  static GraphPatternNode filter(GraphPatternNode inner, FilterConstraint c) {
    GraphPatternNode n;
    n.kind = Kind::Filter;
    n.children.push_back(std::move(inner));
    n.constraint = std::move(c);
    return n;
  }
};

enum class QueryType { Select, Ask, Construct, Describe };

/// One element of a SELECT projection: a plain variable or (expression AS var).
struct ProjectionItem {
  std::optional<Expression> expr;  // nullopt for a plain variable
  std::string var;
};

struct OrderCondition {
  Expression expr;
  bool descending = false;
};

struct GroupCondition {
  Expression expr;
  std::string alias;  // empty unless (expr AS var)
};

struct SolutionModifiers {
  std::vector<GroupCondition> group_by;
  std::vector<FilterConstraint> having;
  std::vector<OrderCondition> order_by;
  std::optional<std::uint64_t> limit;
  std::optional<std::uint64_t> offset;
};

/// A parsed SPARQL query.
struct Query {
  QueryType type = QueryType::Select;

  bool distinct = false;
  bool reduced = false;
  bool star_projection = false;
  std::vector<ProjectionItem> projection;

  std::map<std::string, std::string> prefixes;
  std::optional<std::string> base;
  std::vector<std::pair<bool, std::string>> datasets;  // (named, iri)

  std::optional<GraphPatternNode> pattern;

  std::vector<TriplePattern> construct_template;
  std::vector<Term> describe_targets;
  bool describe_all = false;

  SolutionModifiers modifiers;

  // trailing VALUES clause (after the solution modifiers)
  std::vector<std::string> trailing_values_vars;
  std::vector<ValuesRow> trailing_values_rows;

  std::string raw_text;
};

/// A parse failure with the byte offset of the offending token.
struct ParseError {
  std::size_t offset = 0;
  std::string message;
};

using ParseResult = std::variant<Query, ParseError>;

inline const Query* parsed_query(const ParseResult& r) { return std::get_if<Query>(&r); }
inline const ParseError* parse_error(const ParseResult& r) { return std::get_if<ParseError>(&r); }

// -- Variable extraction ----------------------------------------------------

/// All variables syntactically occurring in an expression (EXISTS patterns included).
void collect_expression_vars(const Expression& e, std::set<std::string>& out);

/// All variables occurring anywhere in the pattern, including filters, binds,
/// values, and subqueries.
std::set<std::string> vars_of(const GraphPatternNode& pattern);

/// Variables of the whole query (body plus projection/modifier expressions).
std::set<std::string> vars_of(const Query& q);

/// In-scope variables per the SPARQL algebra scoping rules: subquery
/// projections shield inner variables, MINUS right sides do not bind.
std::set<std::string> in_scope_vars(const GraphPatternNode& pattern);

// -- Structural equality (ignores raw text and prologue) ---------------------

bool ast_equal(const Expression& a, const Expression& b);
bool ast_equal(const GraphPatternNode& a, const GraphPatternNode& b);
bool ast_equal(const Query& a, const Query& b);

}  // namespace sparqlog
