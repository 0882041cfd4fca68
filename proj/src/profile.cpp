#include "sparqlog/profile.hpp"

#include <algorithm>

namespace sparqlog {

const char* keyword_name(Keyword k) {
  switch (k) {
    case Keyword::Select: return "Select";
    case Keyword::Ask: return "Ask";
    case Keyword::Describe: return "Describe";
    case Keyword::Construct: return "Construct";
    case Keyword::Distinct: return "Distinct";
    case Keyword::Reduced: return "Reduced";
    case Keyword::Limit: return "Limit";
    case Keyword::Offset: return "Offset";
    case Keyword::OrderBy: return "OrderBy";
    case Keyword::Filter: return "Filter";
    case Keyword::And: return "And";
    case Keyword::Union: return "Union";
    case Keyword::Opt: return "Opt";
    case Keyword::Graph: return "Graph";
    case Keyword::NotExists: return "NotExists";
    case Keyword::Minus: return "Minus";
    case Keyword::Exists: return "Exists";
    case Keyword::Count: return "Count";
    case Keyword::Max: return "Max";
    case Keyword::Min: return "Min";
    case Keyword::Avg: return "Avg";
    case Keyword::Sum: return "Sum";
    case Keyword::GroupBy: return "GroupBy";
    case Keyword::Having: return "Having";
    case Keyword::Service: return "Service";
    case Keyword::Bind: return "Bind";
    case Keyword::Values: return "Values";
    case Keyword::Sample: return "Sample";
    case Keyword::GroupConcat: return "GroupConcat";
    case Keyword::kCount: break;
  }
  return "?";
}

std::string operator_set_label(const OperatorSet& s) {
  if (s.other) return "other";
  if (s.mask == 0) return "none";
  std::string out;
  auto add = [&](unsigned bit, char c) {
    if (s.mask & bit) {
      if (!out.empty()) out.push_back(',');
      out.push_back(c);
    }
  };
  add(OperatorSet::A, 'A');
  add(OperatorSet::F, 'F');
  add(OperatorSet::O, 'O');
  add(OperatorSet::G, 'G');
  add(OperatorSet::U, 'U');
  return out;
}

namespace {

struct ProfileWalker {
  ShallowProfile p;

  void flag(Keyword k) { p.keywords[static_cast<std::size_t>(k)] = true; }

  void walk_expression(const Expression& e) {
    using K = Expression::Kind;
    switch (e.kind) {
      case K::Exists:
        flag(Keyword::Exists);
        walk_pattern(*e.pattern, /*top=*/false);
        break;
      case K::NotExists:
        flag(Keyword::NotExists);
        walk_pattern(*e.pattern, /*top=*/false);
        break;
      case K::Aggregate:
        if (e.name == "COUNT") flag(Keyword::Count);
        else if (e.name == "MAX") flag(Keyword::Max);
        else if (e.name == "MIN") flag(Keyword::Min);
        else if (e.name == "AVG") flag(Keyword::Avg);
        else if (e.name == "SUM") flag(Keyword::Sum);
        else if (e.name == "SAMPLE") flag(Keyword::Sample);
        else if (e.name == "GROUP_CONCAT") flag(Keyword::GroupConcat);
        break;
      default:
        break;
    }
    for (const Expression& a : e.args) walk_expression(a);
  }

  void walk_pattern(const GraphPatternNode& n, bool top) {
    using K = GraphPatternNode::Kind;
    switch (n.kind) {
      case K::Triple:
        if (top) {
          ++p.triple_count;
          if (n.triple->has_path()) ++p.path_pattern_count;
        } else {
          // triples inside EXISTS patterns are features, not body size
          if (n.triple->has_path()) ++p.path_pattern_count;
        }
        break;
      case K::And: flag(Keyword::And); break;
      case K::Filter:
        flag(Keyword::Filter);
        walk_expression(n.constraint->expr);
        break;
      case K::Union: flag(Keyword::Union); break;
      case K::Optional: flag(Keyword::Opt); break;
      case K::GraphScope: flag(Keyword::Graph); break;
      case K::Minus: flag(Keyword::Minus); break;
      case K::Bind:
        flag(Keyword::Bind);
        walk_expression(*n.bind_expr);
        break;
      case K::Values: flag(Keyword::Values); break;
      case K::Service: flag(Keyword::Service); break;
      case K::SubQuery:
        ++p.subquery_count;
        walk_query(*n.subquery, top);
        break;
      case K::Empty: break;
    }
    for (const GraphPatternNode& c : n.children) walk_pattern(c, top);
  }

  void walk_query(const Query& q, bool top) {
    switch (q.type) {
      case QueryType::Select: flag(Keyword::Select); break;
      case QueryType::Ask: flag(Keyword::Ask); break;
      case QueryType::Describe: flag(Keyword::Describe); break;
      case QueryType::Construct: flag(Keyword::Construct); break;
    }
    if (q.distinct) flag(Keyword::Distinct);
    if (q.reduced) flag(Keyword::Reduced);
    if (q.modifiers.limit) flag(Keyword::Limit);
    if (q.modifiers.offset) flag(Keyword::Offset);
    if (!q.modifiers.order_by.empty()) flag(Keyword::OrderBy);
    if (!q.modifiers.group_by.empty()) flag(Keyword::GroupBy);
    if (!q.modifiers.having.empty()) flag(Keyword::Having);
    if (!q.trailing_values_vars.empty()) flag(Keyword::Values);

    for (const ProjectionItem& item : q.projection) {
      if (item.expr) walk_expression(*item.expr);
    }
    for (const GroupCondition& g : q.modifiers.group_by) walk_expression(g.expr);
    for (const FilterConstraint& h : q.modifiers.having) walk_expression(h.expr);
    for (const OrderCondition& o : q.modifiers.order_by) walk_expression(o.expr);

    if (q.pattern) walk_pattern(*q.pattern, top);
  }
};

struct OperatorWalker {
  OperatorSet s;

  void check_expression(const Expression& e) {
    using K = Expression::Kind;
    if (e.kind == K::Exists || e.kind == K::NotExists) s.other = true;
    for (const Expression& a : e.args) check_expression(a);
  }

  void walk(const GraphPatternNode& n) {
    using K = GraphPatternNode::Kind;
    switch (n.kind) {
      case K::Triple:
        if (n.triple->has_path()) s.other = true;
        break;
      case K::And: s.mask |= OperatorSet::A; break;
      case K::Filter:
        s.mask |= OperatorSet::F;
        check_expression(n.constraint->expr);
        break;
      case K::Union: s.mask |= OperatorSet::U; break;
      case K::Optional: s.mask |= OperatorSet::O; break;
      case K::GraphScope: s.mask |= OperatorSet::G; break;
      case K::Minus:
      case K::Bind:
      case K::Values:
      case K::SubQuery:
      case K::Service:
        s.other = true;
        break;
      case K::Empty: break;
    }
    for (const GraphPatternNode& c : n.children) walk(c);
  }
};

/// Bind occurrences in the projection-visible region (stops at subqueries).
bool scope_region_has_bind(const GraphPatternNode& n) {
  using K = GraphPatternNode::Kind;
  if (n.kind == K::Bind) return true;
  if (n.kind == K::SubQuery) return false;
  for (const GraphPatternNode& c : n.children) {
    if (scope_region_has_bind(c)) return true;
  }
  return false;
}

}  // namespace

ShallowProfile keyword_profile(const Query& q) {
  ProfileWalker w;
  w.p.query_type = q.type;
  w.p.has_body = q.pattern.has_value();
  w.walk_query(q, /*top=*/true);
  return w.p;
}

std::uint32_t triple_count(const Query& q) { return keyword_profile(q).triple_count; }

OperatorSet operator_set(const Query& q) {
  OperatorWalker w;
  if (q.pattern) w.walk(*q.pattern);
  if (!q.trailing_values_vars.empty()) w.s.other = true;
  return w.s;
}

Projection projection_status(const Query& q) {
  if (q.type == QueryType::Ask) {
    if (!q.pattern) return Projection::No;
    return vars_of(*q.pattern).empty() ? Projection::No : Projection::Yes;
  }
  if (q.type != QueryType::Select) return Projection::No;

  if (q.pattern && scope_region_has_bind(*q.pattern)) return Projection::Unknown;
  for (const ProjectionItem& item : q.projection) {
    if (item.expr) return Projection::Unknown;  // computed bindings, like Bind
  }
  for (const GroupCondition& g : q.modifiers.group_by) {
    if (!g.alias.empty()) return Projection::Unknown;
  }
  if (q.star_projection) return Projection::No;

  std::set<std::string> listed;
  for (const ProjectionItem& item : q.projection) listed.insert(item.var);
  std::set<std::string> scope;
  if (q.pattern) scope = in_scope_vars(*q.pattern);
  bool subset = std::includes(scope.begin(), scope.end(), listed.begin(), listed.end());
  return (subset && listed != scope) ? Projection::Yes : Projection::No;
}

ShallowProfile shallow_profile(const Query& q) {
  ShallowProfile p = keyword_profile(q);
  p.operator_set = operator_set(q);
  p.projection = projection_status(q);
  return p;
}

namespace {

void collect_paths_pattern(const GraphPatternNode& n, std::vector<const PropertyPath*>& out);

void collect_paths_expression(const Expression& e, std::vector<const PropertyPath*>& out) {
  if (e.pattern) collect_paths_pattern(*e.pattern, out);
  for (const Expression& a : e.args) collect_paths_expression(a, out);
}

void collect_paths_pattern(const GraphPatternNode& n, std::vector<const PropertyPath*>& out) {
  using K = GraphPatternNode::Kind;
  if (n.kind == K::Triple && n.triple->has_path()) {
    out.push_back(n.triple->predicate_path());
  } else if (n.kind == K::Filter) {
    collect_paths_expression(n.constraint->expr, out);
  } else if (n.kind == K::Bind) {
    collect_paths_expression(*n.bind_expr, out);
  } else if (n.kind == K::SubQuery && n.subquery->pattern) {
    collect_paths_pattern(*n.subquery->pattern, out);
  }
  for (const GraphPatternNode& c : n.children) collect_paths_pattern(c, out);
}

}  // namespace

std::vector<const PropertyPath*> collect_paths(const Query& q) {
  std::vector<const PropertyPath*> out;
  if (q.pattern) collect_paths_pattern(*q.pattern, out);
  for (const ProjectionItem& item : q.projection) {
    if (item.expr) collect_paths_expression(*item.expr, out);
  }
  for (const GroupCondition& g : q.modifiers.group_by) collect_paths_expression(g.expr, out);
  for (const FilterConstraint& h : q.modifiers.having) collect_paths_expression(h.expr, out);
  for (const OrderCondition& o : q.modifiers.order_by) collect_paths_expression(o.expr, out);
  return out;
}

}  // namespace sparqlog
