#include "sparqlog/ast.hpp"

namespace sparqlog {

namespace {

void collect_pattern_vars(const GraphPatternNode& n, std::set<std::string>& out);

void collect_term_var(const Term& t, std::set<std::string>& out) {
  if (const Var* v = t.as_var()) out.insert(v->name);
}

void collect_triple_vars(const TriplePattern& t, std::set<std::string>& out) {
  collect_term_var(t.subject, out);
  if (const Term* p = t.predicate_term()) collect_term_var(*p, out);
  collect_term_var(t.object, out);
}

void collect_query_vars(const Query& q, std::set<std::string>& out) {
  if (q.pattern) collect_pattern_vars(*q.pattern, out);
  for (const ProjectionItem& item : q.projection) {
    out.insert(item.var);
    if (item.expr) collect_expression_vars(*item.expr, out);
  }
  for (const TriplePattern& t : q.construct_template) collect_triple_vars(t, out);
  for (const Term& t : q.describe_targets) collect_term_var(t, out);
  for (const GroupCondition& g : q.modifiers.group_by) {
    collect_expression_vars(g.expr, out);
    if (!g.alias.empty()) out.insert(g.alias);
  }
  for (const FilterConstraint& h : q.modifiers.having) out.insert(h.vars.begin(), h.vars.end());
  for (const OrderCondition& o : q.modifiers.order_by) collect_expression_vars(o.expr, out);
  for (const std::string& v : q.trailing_values_vars) out.insert(v);
}

void collect_pattern_vars(const GraphPatternNode& n, std::set<std::string>& out) {
  using K = GraphPatternNode::Kind;
  switch (n.kind) {
    case K::Triple:
      collect_triple_vars(*n.triple, out);
      break;
    case K::Filter:
      out.insert(n.constraint->vars.begin(), n.constraint->vars.end());
      break;
    case K::GraphScope:
    case K::Service:
      collect_term_var(*n.scope, out);
      break;
    case K::Bind:
      collect_expression_vars(*n.bind_expr, out);
      out.insert(n.bind_var);
      break;
    case K::Values:
      out.insert(n.values_vars.begin(), n.values_vars.end());
      break;
    case K::SubQuery:
      collect_query_vars(*n.subquery, out);
      break;
    default:
      break;
  }
  for (const GraphPatternNode& c : n.children) collect_pattern_vars(c, out);
}

}  // namespace

void collect_expression_vars(const Expression& e, std::set<std::string>& out) {
  if (e.term) collect_term_var(*e.term, out);
  if (e.pattern) collect_pattern_vars(*e.pattern, out);
  for (const Expression& a : e.args) collect_expression_vars(a, out);
}

std::set<std::string> vars_of(const GraphPatternNode& pattern) {
  std::set<std::string> out;
  collect_pattern_vars(pattern, out);
  return out;
}

std::set<std::string> vars_of(const Query& q) {
  std::set<std::string> out;
  collect_query_vars(q, out);
  return out;
}

std::set<std::string> in_scope_vars(const GraphPatternNode& n) {
  using K = GraphPatternNode::Kind;
  std::set<std::string> out;
  switch (n.kind) {
    case K::Triple:
      collect_triple_vars(*n.triple, out);
      break;
    case K::And:
    case K::Union:
    case K::Optional:
      for (const GraphPatternNode& c : n.children) {
        std::set<std::string> s = in_scope_vars(c);
        out.insert(s.begin(), s.end());
      }
      break;
    case K::Filter:
      out = in_scope_vars(n.children[0]);
      break;
    case K::Minus:
      // The right-hand side of MINUS binds nothing.
      out = in_scope_vars(n.children[0]);
      break;
    case K::GraphScope:
    case K::Service:
      out = in_scope_vars(n.children[0]);
      collect_term_var(*n.scope, out);
      break;
    case K::Bind:
      out = in_scope_vars(n.children[0]);
      out.insert(n.bind_var);
      break;
    case K::Values:
      out.insert(n.values_vars.begin(), n.values_vars.end());
      break;
    case K::SubQuery: {
      const Query& sub = *n.subquery;
      if (sub.star_projection) {
        if (sub.pattern) out = in_scope_vars(*sub.pattern);
      } else {
        for (const ProjectionItem& item : sub.projection) out.insert(item.var);
      }
      for (const GroupCondition& g : sub.modifiers.group_by) {
        if (!g.alias.empty()) out.insert(g.alias);
      }
      break;
    }
    case K::Empty:
      break;
  }
  return out;
}

// -- structural equality ------------------------------------------------------

bool ast_equal(const Expression& a, const Expression& b) {
  if (a.kind != b.kind || a.name != b.name || a.distinct != b.distinct ||
      a.separator != b.separator || a.args.size() != b.args.size())
    return false;
  if (a.term.has_value() != b.term.has_value()) return false;
  if (a.term && !(*a.term == *b.term)) return false;
  if ((a.pattern == nullptr) != (b.pattern == nullptr)) return false;
  if (a.pattern && !ast_equal(*a.pattern, *b.pattern)) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!ast_equal(a.args[i], b.args[i])) return false;
  }
  return true;
}

namespace {

bool constraint_equal(const FilterConstraint& a, const FilterConstraint& b) {
  return ast_equal(a.expr, b.expr);
}

bool values_equal(const GraphPatternNode& a, const GraphPatternNode& b) {
  if (a.values_vars != b.values_vars || a.values_rows.size() != b.values_rows.size()) return false;
  for (std::size_t i = 0; i < a.values_rows.size(); ++i) {
    if (a.values_rows[i].cells != b.values_rows[i].cells) return false;
  }
  return true;
}

}  // namespace

bool ast_equal(const GraphPatternNode& a, const GraphPatternNode& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  if (a.triple.has_value() != b.triple.has_value()) return false;
  if (a.triple && !(*a.triple == *b.triple)) return false;
  if (a.constraint.has_value() != b.constraint.has_value()) return false;
  if (a.constraint && !constraint_equal(*a.constraint, *b.constraint)) return false;
  if (a.scope.has_value() != b.scope.has_value()) return false;
  if (a.scope && !(*a.scope == *b.scope)) return false;
  if (a.silent != b.silent || a.bind_var != b.bind_var) return false;
  if (a.bind_expr.has_value() != b.bind_expr.has_value()) return false;
  if (a.bind_expr && !ast_equal(*a.bind_expr, *b.bind_expr)) return false;
  if (!values_equal(a, b)) return false;
  if ((a.subquery == nullptr) != (b.subquery == nullptr)) return false;
  if (a.subquery && !ast_equal(*a.subquery, *b.subquery)) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!ast_equal(a.children[i], b.children[i])) return false;
  }
  return true;
}

bool ast_equal(const Query& a, const Query& b) {
  if (a.type != b.type || a.distinct != b.distinct || a.reduced != b.reduced ||
      a.star_projection != b.star_projection)
    return false;
  if (a.projection.size() != b.projection.size()) return false;
  for (std::size_t i = 0; i < a.projection.size(); ++i) {
    const ProjectionItem& x = a.projection[i];
    const ProjectionItem& y = b.projection[i];
    if (x.var != y.var || x.expr.has_value() != y.expr.has_value()) return false;
    if (x.expr && !ast_equal(*x.expr, *y.expr)) return false;
  }
  if (a.datasets != b.datasets) return false;
  if (a.pattern.has_value() != b.pattern.has_value()) return false;
  if (a.pattern && !ast_equal(*a.pattern, *b.pattern)) return false;
  if (a.construct_template != b.construct_template) return false;
  if (a.describe_targets != b.describe_targets || a.describe_all != b.describe_all) return false;

  const SolutionModifiers& m = a.modifiers;
  const SolutionModifiers& n = b.modifiers;
  if (m.limit != n.limit || m.offset != n.offset) return false;
  if (m.group_by.size() != n.group_by.size() || m.having.size() != n.having.size() ||
      m.order_by.size() != n.order_by.size())
    return false;
  for (std::size_t i = 0; i < m.group_by.size(); ++i) {
    if (m.group_by[i].alias != n.group_by[i].alias) return false;
    if (!ast_equal(m.group_by[i].expr, n.group_by[i].expr)) return false;
  }
  for (std::size_t i = 0; i < m.having.size(); ++i) {
    if (!constraint_equal(m.having[i], n.having[i])) return false;
  }
  for (std::size_t i = 0; i < m.order_by.size(); ++i) {
    if (m.order_by[i].descending != n.order_by[i].descending) return false;
    if (!ast_equal(m.order_by[i].expr, n.order_by[i].expr)) return false;
  }
  if (a.trailing_values_vars != b.trailing_values_vars) return false;
  if (a.trailing_values_rows.size() != b.trailing_values_rows.size()) return false;
  for (std::size_t i = 0; i < a.trailing_values_rows.size(); ++i) {
    if (a.trailing_values_rows[i].cells != b.trailing_values_rows[i].cells) return false;
  }
  return true;
}

}  // namespace sparqlog
