#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace sparqlog::oracle {

namespace {

std::string ground_key(const Term& t) {
  if (const Iri* i = t.as_iri()) return "<" + i->value + ">";
  if (const Literal* l = t.as_literal()) {
    return "\"" + l->lexical + "\"@" + l->lang + "^" + l->datatype;
  }
  if (const BlankNode* b = t.as_blank()) return "_:" + b->label;
  throw std::invalid_argument("variable is not ground");
}

bool compatible(const Mapping& a, const Mapping& b) {
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it != b.end() && it->second != v) return false;
  }
  return true;
}

Mapping merge(const Mapping& a, const Mapping& b) {
  Mapping out = a;
  out.insert(b.begin(), b.end());
  return out;
}

MappingSet join(const MappingSet& l, const MappingSet& r) {
  MappingSet out;
  for (const Mapping& a : l) {
    for (const Mapping& b : r) {
      if (compatible(a, b)) out.insert(merge(a, b));
    }
  }
  return out;
}

MappingSet left_join(const MappingSet& l, const MappingSet& r) {
  MappingSet out;
  for (const Mapping& a : l) {
    bool extended = false;
    for (const Mapping& b : r) {
      if (compatible(a, b)) {
        out.insert(merge(a, b));
        extended = true;
      }
    }
    if (!extended) out.insert(a);
  }
  return out;
}

/// Three-valued filter evaluation: unbound variables yield an error, and
/// errors make the filter drop the mapping.
std::optional<bool> eval_filter(const Expression& e, const Mapping& m) {
  using K = Expression::Kind;
  switch (e.kind) {
    case K::TermValue: {
      if (const Var* v = e.term->as_var()) {
        (void)v;
        return std::nullopt;  // handled by the comparison cases below
      }
      return std::nullopt;
    }
    case K::LogicalAnd: {
      std::optional<bool> a = eval_filter(e.args[0], m);
      std::optional<bool> b = eval_filter(e.args[1], m);
      if (a && b) return *a && *b;
      if ((a && !*a) || (b && !*b)) return false;
      return std::nullopt;
    }
    case K::LogicalOr: {
      std::optional<bool> a = eval_filter(e.args[0], m);
      std::optional<bool> b = eval_filter(e.args[1], m);
      if (a && b) return *a || *b;
      if ((a && *a) || (b && *b)) return true;
      return std::nullopt;
    }
    case K::Not: {
      std::optional<bool> a = eval_filter(e.args[0], m);
      if (!a) return std::nullopt;
      return !*a;
    }
    case K::Equal:
    case K::NotEqual: {
      auto value = [&](const Expression& arg) -> std::optional<std::string> {
        if (arg.kind != K::TermValue) return std::nullopt;
        if (const Var* v = arg.term->as_var()) {
          auto it = m.find(v->name);
          if (it == m.end()) return std::nullopt;
          return it->second;
        }
        return ground_key(*arg.term);
      };
      std::optional<std::string> a = value(e.args[0]);
      std::optional<std::string> b = value(e.args[1]);
      if (!a || !b) return std::nullopt;
      return e.kind == K::Equal ? (*a == *b) : (*a != *b);
    }
    case K::FunctionCall:
      if (e.name == "BOUND" && e.args.size() == 1 &&
          e.args[0].kind == K::TermValue && e.args[0].term->is_var()) {
        return m.count(e.args[0].term->as_var()->name) > 0;
      }
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace

MappingSet evaluate(const GraphPatternNode& pattern, const std::vector<GroundTriple>& graph) {
  using K = GraphPatternNode::Kind;
  switch (pattern.kind) {
    case K::Triple: {
      const TriplePattern& t = *pattern.triple;
      MappingSet out;
      for (const GroundTriple& g : graph) {
        Mapping m;
        bool ok = true;
        auto bind = [&](const Term& term, const std::string& value) {
          if (const Var* v = term.as_var()) {
            auto it = m.find(v->name);
            if (it != m.end() && it->second != value) {
              ok = false;
            } else {
              m[v->name] = value;
            }
          } else if (ground_key(term) != value) {
            ok = false;
          }
        };
        bind(t.subject, g.s);
        if (ok) {
          if (const Term* p = t.predicate_term()) {
            bind(*p, g.p);
          } else {
            ok = false;  // property paths are out of scope for the oracle
          }
        }
        if (ok) bind(t.object, g.o);
        if (ok) out.insert(std::move(m));
      }
      return out;
    }
    case K::Empty:
      return {Mapping{}};
    case K::And:
      return join(evaluate(pattern.children[0], graph), evaluate(pattern.children[1], graph));
    case K::Optional:
      return left_join(evaluate(pattern.children[0], graph),
                       evaluate(pattern.children[1], graph));
    case K::Filter: {
      MappingSet inner = evaluate(pattern.children[0], graph);
      MappingSet out;
      for (const Mapping& m : inner) {
        std::optional<bool> verdict = eval_filter(pattern.constraint->expr, m);
        if (verdict && *verdict) out.insert(m);
      }
      return out;
    }
    default:
      throw std::invalid_argument("oracle evaluates And/Opt/Filter patterns only");
  }
}

// -- treewidth ----------------------------------------------------------------

int treewidth_exact(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n <= 0) return 0;
  if (n > 20) throw std::invalid_argument("oracle treewidth limited to 20 vertices");

  std::vector<std::uint32_t> adj(n, 0);
  for (auto [a, b] : edges) {
    if (a == b) continue;
    adj[a] |= 1u << b;
    adj[b] |= 1u << a;
  }

  std::uint32_t full = (n == 32) ? 0xFFFFFFFFu : ((1u << n) - 1);
  std::vector<int> best(full + 1, 0);

  // q(S, v): neighbors of v outside S, where S is already eliminated and
  // paths through S connect v to further vertices.
  auto q = [&](std::uint32_t s, int v) {
    std::uint32_t reach = 0;
    std::uint32_t frontier = adj[v] & s;
    std::uint32_t seen = frontier | (1u << v);
    std::uint32_t result = adj[v] & ~s & ~(1u << v);
    while (frontier) {
      std::uint32_t next = 0;
      for (int w = 0; w < n; ++w) {
        if (frontier & (1u << w)) next |= adj[w];
      }
      next &= ~seen;
      seen |= next;
      result |= next & ~s;
      frontier = next & s;
      reach |= next;
    }
    (void)reach;
    int count = 0;
    for (int w = 0; w < n; ++w) {
      if ((result & (1u << w)) && w != v) ++count;
    }
    return count;
  };

  for (std::uint32_t s = 1; s <= full; ++s) {
    int value = n + 1;
    for (int v = 0; v < n; ++v) {
      if (!(s & (1u << v))) continue;
      std::uint32_t prev = s & ~(1u << v);
      int width = std::max(best[prev], q(prev, v));
      value = std::min(value, width);
    }
    best[s] = value;
  }
  return best[full];
}

// -- join trees ----------------------------------------------------------------

namespace {

std::vector<std::vector<std::pair<int, int>>> all_trees(int m) {
  // all labeled trees on m nodes via Pruefer sequences
  std::vector<std::vector<std::pair<int, int>>> trees;
  if (m == 1) {
    trees.push_back({});
    return trees;
  }
  if (m == 2) {
    trees.push_back({{0, 1}});
    return trees;
  }
  int len = m - 2;
  std::vector<int> seq(len, 0);
  for (;;) {
    // decode
    std::vector<int> degree(m, 1);
    for (int x : seq) ++degree[x];
    std::vector<std::pair<int, int>> edges;
    std::vector<int> deg = degree;
    std::set<int> leaves;
    for (int i = 0; i < m; ++i) {
      if (deg[i] == 1) leaves.insert(i);
    }
    for (int x : seq) {
      int leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      edges.push_back({leaf, x});
      if (--deg[x] == 1) leaves.insert(x);
    }
    auto it = leaves.begin();
    int u = *it++;
    int v = *it;
    edges.push_back({u, v});
    trees.push_back(std::move(edges));

    int pos = len - 1;
    while (pos >= 0 && seq[pos] == m - 1) {
      seq[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++seq[pos];
  }
  return trees;
}

}  // namespace

bool join_tree_exists(const std::vector<std::vector<int>>& edges) {
  int m = static_cast<int>(edges.size());
  if (m == 0) return true;
  if (m > 7) throw std::invalid_argument("oracle join trees limited to 7 hyperedges");

  std::set<int> vertices;
  for (const std::vector<int>& e : edges) vertices.insert(e.begin(), e.end());

  for (const std::vector<std::pair<int, int>>& tree : all_trees(m)) {
    std::vector<std::vector<int>> adj(m);
    for (auto [a, b] : tree) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    bool ok = true;
    for (int v : vertices) {
      // the hyperedges containing v must induce a connected subtree
      std::vector<int> holders;
      for (int e = 0; e < m; ++e) {
        if (std::binary_search(edges[e].begin(), edges[e].end(), v)) holders.push_back(e);
      }
      if (holders.size() <= 1) continue;
      std::set<int> holder_set(holders.begin(), holders.end());
      std::set<int> reached{holders[0]};
      std::vector<int> stack{holders[0]};
      while (!stack.empty()) {
        int e = stack.back();
        stack.pop_back();
        for (int f : adj[e]) {
          if (holder_set.count(f) && !reached.count(f)) {
            reached.insert(f);
            stack.push_back(f);
          }
        }
      }
      if (reached.size() != holder_set.size()) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

// -- hypertree decompositions ---------------------------------------------------

bool verify_hypertree(const std::vector<std::vector<int>>& edges,
                      const std::vector<DecompositionNode>& nodes, int k) {
  if (nodes.empty()) return edges.empty();

  auto bag_set = [&](int i) {
    return std::set<int>(nodes[i].bag.begin(), nodes[i].bag.end());
  };

  // condition: lambda size and bag coverage (chi subset of union lambda)
  for (const DecompositionNode& n : nodes) {
    if (static_cast<int>(n.lambda.size()) > k) return false;
    std::set<int> cover;
    for (int e : n.lambda) cover.insert(edges[e].begin(), edges[e].end());
    for (int v : n.bag) {
      if (!cover.count(v)) return false;
    }
  }

  // condition: every hyperedge inside some bag
  for (const std::vector<int>& e : edges) {
    bool found = false;
    for (std::size_t i = 0; i < nodes.size() && !found; ++i) {
      std::set<int> bag = bag_set(static_cast<int>(i));
      found = std::all_of(e.begin(), e.end(), [&](int v) { return bag.count(v) > 0; });
    }
    if (!found) return false;
  }

  // condition: connectedness per vertex
  std::vector<std::vector<int>> children(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].parent >= 0) children[nodes[i].parent].push_back(static_cast<int>(i));
  }
  std::set<int> vertices;
  for (const std::vector<int>& e : edges) vertices.insert(e.begin(), e.end());
  for (int v : vertices) {
    std::vector<int> holders;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (bag_set(static_cast<int>(i)).count(v)) holders.push_back(static_cast<int>(i));
    }
    if (holders.empty()) continue;
    int tops = 0;
    std::set<int> holder_set(holders.begin(), holders.end());
    for (int i : holders) {
      if (nodes[i].parent < 0 || !holder_set.count(nodes[i].parent)) ++tops;
    }
    if (tops != 1) return false;
  }

  // special condition: vars of lambda(p) appearing in the subtree of p are in chi(p)
  std::function<std::set<int>(int)> subtree_vars = [&](int i) {
    std::set<int> out = bag_set(i);
    for (int c : children[i]) {
      std::set<int> sub = subtree_vars(c);
      out.insert(sub.begin(), sub.end());
    }
    return out;
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::set<int> lambda_vars;
    for (int e : nodes[i].lambda) lambda_vars.insert(edges[e].begin(), edges[e].end());
    std::set<int> sub = subtree_vars(static_cast<int>(i));
    std::set<int> bag = bag_set(static_cast<int>(i));
    for (int v : lambda_vars) {
      if (sub.count(v) && !bag.count(v)) return false;
    }
  }
  return true;
}

namespace {

struct NormalFormSearch {
  const std::vector<std::vector<int>>& edges;
  int k;
  std::map<std::pair<std::vector<int>, std::vector<int>>, bool> memo;

  std::set<int> vars_of_edges(const std::vector<int>& ids) const {
    std::set<int> out;
    for (int e : ids) out.insert(edges[e].begin(), edges[e].end());
    return out;
  }

  std::vector<std::vector<int>> split(const std::vector<int>& comp,
                                      const std::set<int>& sep) const {
    std::vector<int> rest;
    for (int e : comp) {
      bool covered = std::all_of(edges[e].begin(), edges[e].end(),
                                 [&](int v) { return sep.count(v) > 0; });
      if (!covered) rest.push_back(e);
    }
    std::vector<std::vector<int>> groups;
    std::set<int> assigned;
    for (int seed : rest) {
      if (assigned.count(seed)) continue;
      std::vector<int> group{seed};
      assigned.insert(seed);
      for (bool grew = true; grew;) {
        grew = false;
        for (int e : rest) {
          if (assigned.count(e)) continue;
          for (int g : group) {
            bool linked = false;
            for (int v : edges[e]) {
              if (!sep.count(v) &&
                  std::binary_search(edges[g].begin(), edges[g].end(), v)) {
                linked = true;
                break;
              }
            }
            if (linked) {
              group.push_back(e);
              assigned.insert(e);
              grew = true;
              break;
            }
          }
        }
      }
      std::sort(group.begin(), group.end());
      groups.push_back(std::move(group));
    }
    return groups;
  }

  bool search(std::vector<int> comp, std::vector<int> connector) {
    auto key = std::make_pair(comp, connector);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    std::set<int> comp_vars = vars_of_edges(comp);
    bool found = false;

    // all separators of size <= k drawn from all edges
    int m = static_cast<int>(edges.size());
    std::vector<int> sep;
    std::function<bool(int)> pick = [&](int from) -> bool {
      if (!sep.empty()) {
        std::set<int> sep_vars = vars_of_edges(sep);
        bool covers = std::all_of(connector.begin(), connector.end(),
                                  [&](int v) { return sep_vars.count(v) > 0; });
        if (covers) {
          // weak progress: at least one component edge fully covered
          bool progress = false;
          for (int e : comp) {
            if (std::all_of(edges[e].begin(), edges[e].end(),
                            [&](int v) { return sep_vars.count(v) > 0; })) {
              progress = true;
              break;
            }
          }
          if (progress) {
            std::set<int> chi;
            for (int v : sep_vars) {
              if (comp_vars.count(v) ||
                  std::binary_search(connector.begin(), connector.end(), v)) {
                chi.insert(v);
              }
            }
            bool all_ok = true;
            for (const std::vector<int>& child : split(comp, sep_vars)) {
              std::set<int> child_vars = vars_of_edges(child);
              std::vector<int> child_conn;
              for (int v : child_vars) {
                if (chi.count(v)) child_conn.push_back(v);
              }
              if (!search(child, child_conn)) {
                all_ok = false;
                break;
              }
            }
            if (all_ok) return true;
          }
        }
      }
      if (static_cast<int>(sep.size()) == k) return false;
      for (int e = from; e < m; ++e) {
        sep.push_back(e);
        if (pick(e + 1)) return true;
        sep.pop_back();
      }
      return false;
    };
    found = pick(0);
    memo.emplace(std::move(key), found);
    return found;
  }
};

}  // namespace

bool hypertree_width_at_most(const std::vector<std::vector<int>>& edges, int k) {
  std::vector<std::vector<int>> sorted = edges;
  for (std::vector<int>& e : sorted) std::sort(e.begin(), e.end());
  NormalFormSearch search{sorted, k, {}};
  std::vector<int> all;
  for (std::size_t i = 0; i < sorted.size(); ++i) all.push_back(static_cast<int>(i));
  for (const std::vector<int>& part : search.split(all, {})) {
    if (!search.search(part, {})) return false;
  }
  return true;
}

// -- streaks ---------------------------------------------------------------------

std::size_t levenshtein_brute(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
    }
  }
  return d[a.size()][b.size()];
}

std::vector<StreakRef> detect_streaks_brute(const std::vector<std::string>& stripped,
                                            const std::vector<std::uint64_t>& indices,
                                            std::uint64_t window, double threshold) {
  std::size_t n = stripped.size();
  auto similar = [&](std::size_t i, std::size_t j) {
    const std::string& a = stripped[i];
    const std::string& b = stripped[j];
    std::size_t len = std::max(a.size(), b.size());
    if (len == 0) return true;
    double norm = static_cast<double>(levenshtein_brute(a, b)) / static_cast<double>(len);
    return norm <= threshold;
  };

  // m(i): the first later position similar to i (the unique match partner)
  std::vector<std::optional<std::size_t>> match(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (similar(i, j)) {
        match[i] = j;
        break;
      }
    }
  }

  // extension edges respect the window on original log indices
  std::vector<std::optional<std::size_t>> next(n);
  std::vector<bool> has_pred(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (match[i] && indices[*match[i]] - indices[i] <= window) {
      next[i] = *match[i];
      has_pred[*match[i]] = true;
    }
  }

  std::vector<StreakRef> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (has_pred[i]) continue;
    StreakRef streak;
    std::optional<std::size_t> cur = i;
    while (cur) {
      streak.members.push_back(indices[*cur]);
      cur = next[*cur];
    }
    out.push_back(std::move(streak));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sparqlog::oracle
