#include "sparqlog/serializer.hpp"

#include <sstream>

namespace sparqlog {

namespace {

void escape_into(std::ostringstream& out, const std::string& s) {
  for (char c : s) {
    switch (c) {
      case '\\': out << "\\\\"; break;
      case '"': out << "\\\""; break;
      case '\n': out << "\\n"; break;
      case '\r': out << "\\r"; break;
      case '\t': out << "\\t"; break;
      case '\b': out << "\\b"; break;
      case '\f': out << "\\f"; break;
      default: out << c; break;
    }
  }
}

void write_term(std::ostringstream& out, const Term& t) {
  if (const Iri* i = t.as_iri()) {
    out << '<' << i->value << '>';
  } else if (const BlankNode* b = t.as_blank()) {
    out << "_:" << b->label;
  } else if (const Var* v = t.as_var()) {
    out << '?' << v->name;
  } else if (const Literal* l = t.as_literal()) {
    out << '"';
    escape_into(out, l->lexical);
    out << '"';
    if (!l->lang.empty()) {
      out << '@' << l->lang;
    } else if (!l->datatype.empty()) {
      out << "^^<" << l->datatype << '>';
    }
  }
}

void write_path(std::ostringstream& out, const PropertyPath& p) {
  using K = PropertyPath::Kind;
  switch (p.kind) {
    case K::Link:
      out << '<' << p.iri << '>';
      break;
    case K::Inverse:
      out << "^(";
      write_path(out, p.children[0]);
      out << ')';
      break;
    case K::NegatedSet:
      out << "!(";
      for (std::size_t i = 0; i < p.negated.size(); ++i) {
        if (i) out << '|';
        if (p.negated[i].inverted) out << '^';
        out << '<' << p.negated[i].iri << '>';
      }
      out << ')';
      break;
    case K::Sequence:
    case K::Alternative:
      out << '(';
      write_path(out, p.children[0]);
      out << (p.kind == K::Sequence ? '/' : '|');
      write_path(out, p.children[1]);
      out << ')';
      break;
    case K::ZeroOrMore:
    case K::OneOrMore:
    case K::ZeroOrOne:
      out << '(';
      write_path(out, p.children[0]);
      out << ')';
      out << (p.kind == K::ZeroOrMore ? '*' : p.kind == K::OneOrMore ? '+' : '?');
      break;
  }
}

void write_triple(std::ostringstream& out, const TriplePattern& t) {
  write_term(out, t.subject);
  out << ' ';
  if (const Term* pt = t.predicate_term()) {
    write_term(out, *pt);
  } else {
    write_path(out, *t.predicate_path());
  }
  out << ' ';
  write_term(out, t.object);
  out << " . ";
}

void write_expression(std::ostringstream& out, const Expression& e);
void write_group(std::ostringstream& out, const GraphPatternNode& n);

void write_arg_list(std::ostringstream& out, const Expression& e) {
  out << '(';
  if (e.distinct) out << "DISTINCT ";
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    if (i) out << ", ";
    write_expression(out, e.args[i]);
  }
  out << ')';
}

void write_expression(std::ostringstream& out, const Expression& e) {
  using K = Expression::Kind;
  auto binary = [&](const char* op) {
    out << '(';
    write_expression(out, e.args[0]);
    out << ' ' << op << ' ';
    write_expression(out, e.args[1]);
    out << ')';
  };
  switch (e.kind) {
    case K::LogicalOr: binary("||"); break;
    case K::LogicalAnd: binary("&&"); break;
    case K::Equal: binary("="); break;
    case K::NotEqual: binary("!="); break;
    case K::Less: binary("<"); break;
    case K::LessEqual: binary("<="); break;
    case K::Greater: binary(">"); break;
    case K::GreaterEqual: binary(">="); break;
    case K::Add: binary("+"); break;
    case K::Subtract: binary("-"); break;
    case K::Multiply: binary("*"); break;
    case K::Divide: binary("/"); break;
    case K::In:
    case K::NotIn:
      out << '(';
      write_expression(out, e.args[0]);
      out << (e.kind == K::NotIn ? " NOT IN (" : " IN (");
      for (std::size_t i = 1; i < e.args.size(); ++i) {
        if (i > 1) out << ", ";
        write_expression(out, e.args[i]);
      }
      out << "))";
      break;
    case K::Not:
      out << "(!";
      write_expression(out, e.args[0]);
      out << ')';
      break;
    case K::UnaryPlus:
      out << "(+";
      write_expression(out, e.args[0]);
      out << ')';
      break;
    case K::UnaryMinus:
      out << "(-";
      write_expression(out, e.args[0]);
      out << ')';
      break;
    case K::FunctionCall:
      if (e.name.find(':') != std::string::npos) {
        out << '<' << e.name << '>';
      } else {
        out << e.name;
      }
      write_arg_list(out, e);
      break;
    case K::Aggregate:
      out << e.name << '(';
      if (e.distinct) out << "DISTINCT ";
      if (!e.args.empty() && e.args[0].kind == K::Star) {
        out << '*';
      } else if (!e.args.empty()) {
        write_expression(out, e.args[0]);
      }
      if (!e.separator.empty()) {
        out << "; SEPARATOR=\"";
        escape_into(out, e.separator);
        out << '"';
      }
      out << ')';
      break;
    case K::Exists:
    case K::NotExists:
      out << (e.kind == K::NotExists ? "NOT EXISTS " : "EXISTS ");
      write_group(out, *e.pattern);
      break;
    case K::TermValue:
      write_term(out, *e.term);
      break;
    case K::Star:
      out << '*';
      break;
  }
}

void write_values(std::ostringstream& out, const std::vector<std::string>& vars,
                  const std::vector<ValuesRow>& rows) {
  out << "VALUES (";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out << ' ';
    out << '?' << vars[i];
  }
  out << ") { ";
  for (const ValuesRow& row : rows) {
    out << '(';
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      if (i) out << ' ';
      if (row.cells[i]) {
        write_term(out, *row.cells[i]);
      } else {
        out << "UNDEF";
      }
    }
    out << ") ";
  }
  out << "} ";
}

void write_query_body(std::ostringstream& out, const Query& q);

/// Emit one group element; wraps in braces whatever would otherwise merge
/// with its siblings when reparsed.
void write_element(std::ostringstream& out, const GraphPatternNode& n) {
  using K = GraphPatternNode::Kind;
  switch (n.kind) {
    case K::Triple:
      write_triple(out, *n.triple);
      break;
    case K::Union: {
      // Left-nested unions flatten back to the same shape.
      if (n.children[0].kind == K::Union) {
        write_element(out, n.children[0]);
      } else {
        write_group(out, n.children[0]);
      }
      out << " UNION ";
      write_group(out, n.children[1]);
      out << ' ';
      break;
    }
    case K::GraphScope:
      out << "GRAPH ";
      write_term(out, *n.scope);
      out << ' ';
      write_group(out, n.children[0]);
      out << ' ';
      break;
    case K::Service:
      out << "SERVICE ";
      if (n.silent) out << "SILENT ";
      write_term(out, *n.scope);
      out << ' ';
      write_group(out, n.children[0]);
      out << ' ';
      break;
    case K::Values:
      write_values(out, n.values_vars, n.values_rows);
      break;
    case K::SubQuery:
      out << "{ ";
      write_query_body(out, *n.subquery);
      out << "} ";
      break;
    default:
      write_group(out, n);
      out << ' ';
      break;
  }
}

/// Emit the content of a group so that reparsing the braced content yields n.
void write_group_content(std::ostringstream& out, const GraphPatternNode& n) {
  using K = GraphPatternNode::Kind;
  switch (n.kind) {
    case K::And: {
      const GraphPatternNode& l = n.children[0];
      // A Filter on the left would be hoisted to the group end; keep it scoped.
      if (l.kind == K::Filter || l.kind == K::Empty) {
        write_element(out, l);
      } else {
        write_group_content(out, l);
      }
      write_element(out, n.children[1]);
      break;
    }
    case K::Optional:
    case K::Minus: {
      const GraphPatternNode& l = n.children[0];
      if (l.kind == K::Filter || l.kind == K::Empty) {
        write_element(out, l);
      } else {
        write_group_content(out, l);
      }
      out << (n.kind == K::Optional ? "OPTIONAL " : "MINUS ");
      write_group(out, n.children[1]);
      out << ' ';
      break;
    }
    case K::Bind: {
      const GraphPatternNode& l = n.children[0];
      if (l.kind == K::Filter) {
        write_element(out, l);
      } else if (l.kind != K::Empty) {
        write_group_content(out, l);
      }
      out << "BIND (";
      write_expression(out, *n.bind_expr);
      out << " AS ?" << n.bind_var << ") ";
      break;
    }
    case K::Filter:
      write_group_content(out, n.children[0]);
      out << "FILTER (";
      write_expression(out, n.constraint->expr);
      out << ") ";
      break;
    case K::Empty:
      break;
    default:
      write_element(out, n);
      break;
  }
}

void write_group(std::ostringstream& out, const GraphPatternNode& n) {
  out << "{ ";
  write_group_content(out, n);
  out << '}';
}

void write_modifiers(std::ostringstream& out, const SolutionModifiers& m) {
  if (!m.group_by.empty()) {
    out << "GROUP BY ";
    for (const GroupCondition& g : m.group_by) {
      if (!g.alias.empty()) {
        out << '(';
        write_expression(out, g.expr);
        out << " AS ?" << g.alias << ") ";
      } else if (g.expr.kind == Expression::Kind::TermValue && g.expr.term->is_var()) {
        write_expression(out, g.expr);
        out << ' ';
      } else {
        out << '(';
        write_expression(out, g.expr);
        out << ") ";
      }
    }
  }
  if (!m.having.empty()) {
    out << "HAVING ";
    for (const FilterConstraint& h : m.having) {
      out << '(';
      write_expression(out, h.expr);
      out << ") ";
    }
  }
  if (!m.order_by.empty()) {
    out << "ORDER BY ";
    for (const OrderCondition& o : m.order_by) {
      if (o.descending) {
        out << "DESC(";
        write_expression(out, o.expr);
        out << ") ";
      } else if (o.expr.kind == Expression::Kind::TermValue && o.expr.term->is_var()) {
        write_expression(out, o.expr);
        out << ' ';
      } else {
        out << "ASC(";
        write_expression(out, o.expr);
        out << ") ";
      }
    }
  }
  if (m.limit) out << "LIMIT " << *m.limit << ' ';
  if (m.offset) out << "OFFSET " << *m.offset << ' ';
}

void write_query_body(std::ostringstream& out, const Query& q) {
  switch (q.type) {
    case QueryType::Select: {
      out << "SELECT ";
      if (q.distinct) out << "DISTINCT ";
      if (q.reduced) out << "REDUCED ";
      if (q.star_projection) {
        out << "* ";
      } else {
        for (const ProjectionItem& item : q.projection) {
          if (item.expr) {
            out << '(';
            write_expression(out, *item.expr);
            out << " AS ?" << item.var << ") ";
          } else {
            out << '?' << item.var << ' ';
          }
        }
      }
      for (const auto& [named, iri] : q.datasets) {
        out << "FROM " << (named ? "NAMED " : "") << '<' << iri << "> ";
      }
      out << "WHERE ";
      write_group(out, *q.pattern);
      out << ' ';
      write_modifiers(out, q.modifiers);
      break;
    }
    case QueryType::Ask: {
      out << "ASK ";
      for (const auto& [named, iri] : q.datasets) {
        out << "FROM " << (named ? "NAMED " : "") << '<' << iri << "> ";
      }
      out << "WHERE ";
      write_group(out, *q.pattern);
      out << ' ';
      write_modifiers(out, q.modifiers);
      break;
    }
    case QueryType::Construct: {
      out << "CONSTRUCT { ";
      for (const TriplePattern& t : q.construct_template) write_triple(out, t);
      out << "} ";
      for (const auto& [named, iri] : q.datasets) {
        out << "FROM " << (named ? "NAMED " : "") << '<' << iri << "> ";
      }
      out << "WHERE ";
      write_group(out, *q.pattern);
      out << ' ';
      write_modifiers(out, q.modifiers);
      break;
    }
    case QueryType::Describe: {
      out << "DESCRIBE ";
      if (q.describe_all) {
        out << "* ";
      } else {
        for (const Term& t : q.describe_targets) {
          write_term(out, t);
          out << ' ';
        }
      }
      for (const auto& [named, iri] : q.datasets) {
        out << "FROM " << (named ? "NAMED " : "") << '<' << iri << "> ";
      }
      if (q.pattern) {
        out << "WHERE ";
        write_group(out, *q.pattern);
        out << ' ';
      }
      write_modifiers(out, q.modifiers);
      break;
    }
  }
  if (!q.trailing_values_vars.empty()) {
    write_values(out, q.trailing_values_vars, q.trailing_values_rows);
  }
}

}  // namespace

std::string serialize(const Term& t) {
  std::ostringstream out;
  write_term(out, t);
  return out.str();
}

std::string serialize(const PropertyPath& p) {
  std::ostringstream out;
  write_path(out, p);
  return out.str();
}

std::string serialize(const TriplePattern& t) {
  std::ostringstream out;
  write_triple(out, t);
  return out.str();
}

std::string serialize(const Expression& e) {
  std::ostringstream out;
  write_expression(out, e);
  return out.str();
}

std::string serialize(const GraphPatternNode& n) {
  std::ostringstream out;
  write_group(out, n);
  return out.str();
}

std::string serialize(const Query& q) {
  std::ostringstream out;
  write_query_body(out, q);
  std::string s = out.str();
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace sparqlog
