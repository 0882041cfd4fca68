#include "sparqlog/width.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace sparqlog {

namespace {

using AdjSets = std::vector<std::set<int>>;

AdjSets adjacency_sets(const CanonicalGraph& g) {
  AdjSets adj(g.node_count());
  for (const auto& [a, b] : g.edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  return adj;
}

int live_vertices(const AdjSets& adj, std::vector<bool>& alive) {
  int n = 0;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (alive[v]) ++n;
  }
  return n;
}

/// Repeatedly delete degree <= 1 vertices and bypass degree-2 vertices.
/// The graph is empty afterwards iff its treewidth is at most 2.
bool series_parallel_reducible(AdjSets adj) {
  std::vector<bool> alive(adj.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if (!alive[v]) continue;
      if (adj[v].size() <= 1) {
        for (int w : adj[v]) adj[w].erase(static_cast<int>(v));
        adj[v].clear();
        alive[v] = false;
        changed = true;
      } else if (adj[v].size() == 2) {
        auto it = adj[v].begin();
        int a = *it++;
        int b = *it;
        adj[a].erase(static_cast<int>(v));
        adj[b].erase(static_cast<int>(v));
        adj[a].insert(b);
        adj[b].insert(a);
        adj[v].clear();
        alive[v] = false;
        changed = true;
      }
    }
  }
  return live_vertices(adj, alive) == 0;
}

bool is_forest(const AdjSets& adj) {
  std::size_t m = 0;
  for (const std::set<int>& nbr : adj) m += nbr.size();
  m /= 2;
  // count components
  std::vector<int> comp(adj.size(), -1);
  int comps = 0;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = comps;
    std::vector<int> stack{static_cast<int>(s)};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (comp[w] < 0) {
          comp[w] = comps;
          stack.push_back(w);
        }
      }
    }
    ++comps;
  }
  return m == adj.size() - static_cast<std::size_t>(comps);
}

/// Branch and bound: does an elimination ordering of width <= k exist?
struct EliminationSearch {
  int k;
  std::set<std::vector<int>> failed;  // canonical encodings of dead graphs

  bool simplicial(const AdjSets& adj, int v) {
    for (int a : adj[v]) {
      for (int b : adj[v]) {
        if (a < b && !adj[a].count(b)) return false;
      }
    }
    return true;
  }

  static void eliminate(AdjSets& adj, int v) {
    std::vector<int> nbrs(adj[v].begin(), adj[v].end());
    for (int a : nbrs) {
      adj[a].erase(v);
    }
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        adj[nbrs[i]].insert(nbrs[j]);
        adj[nbrs[j]].insert(nbrs[i]);
      }
    }
    adj[v].clear();
  }

  static std::vector<int> encode(const AdjSets& adj) {
    std::vector<int> code;
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if (adj[v].empty()) continue;
      code.push_back(static_cast<int>(v));
      code.push_back(-1);
      for (int w : adj[v]) code.push_back(w);
    }
    return code;
  }

  bool search(AdjSets adj, std::vector<int> pending) {
    // safe eliminations first: low degree and simplicial vertices
    bool progressed = true;
    while (progressed) {
      progressed = false;
      for (std::size_t i = 0; i < pending.size(); ++i) {
        int v = pending[i];
        int deg = static_cast<int>(adj[v].size());
        if (deg <= 1 || (deg <= k && simplicial(adj, v))) {
          eliminate(adj, v);
          pending.erase(pending.begin() + static_cast<long>(i));
          progressed = true;
          break;
        }
      }
    }
    if (pending.empty()) return true;

    std::vector<int> code = encode(adj);
    if (failed.count(code)) return false;

    // branch on eliminable vertices, lowest degree first
    std::vector<int> order = pending;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return adj[a].size() < adj[b].size(); });
    for (int v : order) {
      if (static_cast<int>(adj[v].size()) > k) continue;
      AdjSets next = adj;
      eliminate(next, v);
      std::vector<int> rest;
      rest.reserve(pending.size() - 1);
      for (int u : pending) {
        if (u != v) rest.push_back(u);
      }
      if (search(std::move(next), std::move(rest))) return true;
    }
    failed.insert(std::move(code));
    return false;
  }
};

}  // namespace

TreewidthResult treewidth(const CanonicalGraph& g, int bound) {
  TreewidthResult r;
  int floor_width = g.loops.empty() ? 0 : 1;

  if (g.edges.empty()) {
    r.width = floor_width;
    return r;
  }

  AdjSets adj = adjacency_sets(g);
  if (is_forest(adj)) {
    r.width = std::max(1, floor_width);
    return r;
  }
  if (bound < 2) {
    r.width = bound;
    r.exceeded = true;
    return r;
  }
  if (series_parallel_reducible(adj)) {
    r.width = 2;
    return r;
  }
  for (int k = 3; k <= bound; ++k) {
    EliminationSearch search{k, {}};
    std::vector<int> pending;
    for (int v = 0; v < g.node_count(); ++v) {
      if (!adj[v].empty()) pending.push_back(v);
    }
    if (search.search(adj, std::move(pending))) {
      r.width = k;
      return r;
    }
  }
  r.width = bound;
  r.exceeded = true;
  return r;
}

bool gyo_is_acyclic(const CanonicalHypergraph& h) {
  std::vector<std::vector<int>> edges = h.edges;
  bool changed = true;
  while (changed) {
    changed = false;

    // vertices occurring in exactly one hyperedge disappear
    std::map<int, int> occurrences;
    for (const std::vector<int>& e : edges) {
      for (int v : e) ++occurrences[v];
    }
    for (std::vector<int>& e : edges) {
      std::size_t before = e.size();
      e.erase(std::remove_if(e.begin(), e.end(), [&](int v) { return occurrences[v] == 1; }),
              e.end());
      if (e.size() != before) changed = true;
    }

    // emptied hyperedges disappear
    std::size_t before = edges.size();
    edges.erase(std::remove_if(edges.begin(), edges.end(),
                               [](const std::vector<int>& e) { return e.empty(); }),
                edges.end());
    if (edges.size() != before) changed = true;

    // hyperedges contained in another disappear
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (std::size_t j = 0; j < edges.size(); ++j) {
        if (i == j) continue;
        if (edges[i].size() > edges[j].size()) continue;
        if (std::includes(edges[j].begin(), edges[j].end(), edges[i].begin(), edges[i].end())) {
          edges.erase(edges.begin() + static_cast<long>(i));
          changed = true;
          --i;
          break;
        }
      }
    }
  }
  return edges.empty();
}

namespace {

/// det-k-decomp style search for a width-k hypertree decomposition.
struct DetKDecomp {
  const std::vector<std::vector<int>>& edges;  // normalized, each sorted
  int k;
  std::uint64_t budget;
  bool timed_out = false;
  std::map<std::pair<std::vector<int>, std::vector<int>>, bool> failures;
  HypertreeDecomposition result;

  std::set<int> vertex_union(const std::vector<int>& edge_ids) const {
    std::set<int> out;
    for (int e : edge_ids) out.insert(edges[e].begin(), edges[e].end());
    return out;
  }

  /// Split the not-fully-covered edges of comp into components connected
  /// through vertices outside the separator.
  std::vector<std::vector<int>> components(const std::vector<int>& comp,
                                           const std::set<int>& separator_vars) const {
    std::vector<int> remaining;
    for (int e : comp) {
      bool covered = true;
      for (int v : edges[e]) {
        if (!separator_vars.count(v)) {
          covered = false;
          break;
        }
      }
      if (!covered) remaining.push_back(e);
    }
    std::map<int, std::vector<int>> by_vertex;  // open vertex -> edges
    for (int e : remaining) {
      for (int v : edges[e]) {
        if (!separator_vars.count(v)) by_vertex[v].push_back(e);
      }
    }
    std::map<int, int> comp_of;
    std::vector<std::vector<int>> out;
    for (int seed : remaining) {
      if (comp_of.count(seed)) continue;
      std::vector<int> group;
      std::vector<int> stack{seed};
      comp_of[seed] = static_cast<int>(out.size());
      while (!stack.empty()) {
        int e = stack.back();
        stack.pop_back();
        group.push_back(e);
        for (int v : edges[e]) {
          if (separator_vars.count(v)) continue;
          for (int f : by_vertex[v]) {
            if (!comp_of.count(f)) {
              comp_of[f] = static_cast<int>(out.size());
              stack.push_back(f);
            }
          }
        }
      }
      std::sort(group.begin(), group.end());
      out.push_back(std::move(group));
    }
    return out;
  }

  /// Returns the subtree root index in result.nodes, or -1 on failure.
  int decompose(const std::vector<int>& comp, const std::vector<int>& connector) {
    if (timed_out) return -1;
    auto key = std::make_pair(comp, connector);
    if (failures.count(key)) return -1;

    std::set<int> comp_vars = vertex_union(comp);
    std::set<int> comp_set(comp.begin(), comp.end());

    // candidate separator edges: those sharing a vertex with the component
    // or the connector; component edges first
    std::vector<int> pool;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (comp_set.count(static_cast<int>(e))) pool.push_back(static_cast<int>(e));
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (comp_set.count(static_cast<int>(e))) continue;
      bool touches = false;
      for (int v : edges[e]) {
        if (comp_vars.count(v) || std::binary_search(connector.begin(), connector.end(), v)) {
          touches = true;
          break;
        }
      }
      if (touches) pool.push_back(static_cast<int>(e));
    }

    std::vector<int> chosen;
    int root = try_separators(comp, comp_set, comp_vars, connector, pool, 0, chosen, false);
    if (root < 0 && !timed_out) failures.emplace(std::move(key), true);
    return root;
  }

  int try_separators(const std::vector<int>& comp, const std::set<int>& comp_set,
                     const std::set<int>& comp_vars, const std::vector<int>& connector,
                     const std::vector<int>& pool, std::size_t next, std::vector<int>& chosen,
                     bool has_comp_edge) {
    if (!chosen.empty()) {
      if (budget == 0) {
        timed_out = true;
        return -1;
      }
      --budget;
      if (has_comp_edge) {
        int root = evaluate(comp, comp_vars, connector, chosen);
        if (root >= 0) return root;
      }
    }
    if (chosen.size() == static_cast<std::size_t>(k) || next >= pool.size()) return -1;
    for (std::size_t i = next; i < pool.size(); ++i) {
      chosen.push_back(pool[i]);
      bool in_comp = comp_set.count(pool[i]) > 0;
      int root = try_separators(comp, comp_set, comp_vars, connector, pool, i + 1, chosen,
                                has_comp_edge || in_comp);
      chosen.pop_back();
      if (root >= 0) return root;
      if (timed_out) return -1;
    }
    return -1;
  }

  int evaluate(const std::vector<int>& comp, const std::set<int>& comp_vars,
               const std::vector<int>& connector, const std::vector<int>& separator) {
    std::set<int> sep_vars = vertex_union(separator);
    for (int v : connector) {
      if (!sep_vars.count(v)) return -1;  // connector not covered
    }

    // chi = separator vars restricted to component vars plus connector
    std::vector<int> bag;
    for (int v : sep_vars) {
      if (comp_vars.count(v) || std::binary_search(connector.begin(), connector.end(), v)) {
        bag.push_back(v);
      }
    }
    std::set<int> bag_set(bag.begin(), bag.end());

    std::vector<std::vector<int>> children = components(comp, sep_vars);
    std::vector<int> child_roots;
    for (const std::vector<int>& child : children) {
      std::set<int> child_vars = vertex_union(child);
      std::vector<int> child_conn;
      for (int v : child_vars) {
        if (bag_set.count(v)) child_conn.push_back(v);
      }
      int root = decompose(child, child_conn);
      if (root < 0) return -1;
      child_roots.push_back(root);
    }

    HypertreeDecomposition::Node node;
    node.bag = bag;
    node.lambda = separator;
    node.parent = -1;
    int index = static_cast<int>(result.nodes.size());
    result.nodes.push_back(std::move(node));
    for (int child : child_roots) result.nodes[child].parent = index;
    return index;
  }
};

std::vector<std::vector<int>> normalize_edges(const CanonicalHypergraph& h) {
  std::vector<std::vector<int>> edges;
  for (const std::vector<int>& e : h.edges) {
    if (!e.empty()) edges.push_back(e);
  }
  // drop edges contained in another; one of two equal edges survives
  std::vector<std::vector<int>> kept;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < edges.size() && !subsumed; ++j) {
      if (i == j) continue;
      bool strictly_smaller = edges[i].size() < edges[j].size();
      bool equal_later = edges[i] == edges[j] && i > j;
      if (equal_later || (strictly_smaller && std::includes(edges[j].begin(), edges[j].end(),
                                                            edges[i].begin(), edges[i].end()))) {
        subsumed = true;
      }
    }
    if (!subsumed) kept.push_back(edges[i]);
  }
  return kept;
}

}  // namespace

HypertreeResult hypertree_width(const CanonicalHypergraph& h, int k_max, std::uint64_t budget) {
  HypertreeResult r;
  std::vector<std::vector<int>> edges = normalize_edges(h);
  r.normalized_edges = edges;
  if (edges.empty()) {
    r.width = 1;
    return r;
  }

  std::vector<int> all;
  for (std::size_t e = 0; e < edges.size(); ++e) all.push_back(static_cast<int>(e));

  for (int k = 1; k <= k_max; ++k) {
    DetKDecomp search{edges, k, budget, false, {}, {}};
    // decompose each connected part below an implicit root
    std::vector<std::vector<int>> parts = search.components(all, {});
    bool ok = true;
    std::vector<int> roots;
    for (const std::vector<int>& part : parts) {
      int root = search.decompose(part, {});
      if (root < 0) {
        ok = false;
        break;
      }
      roots.push_back(root);
    }
    if (search.timed_out) {
      r.timed_out = true;
      return r;
    }
    if (ok) {
      r.width = k;
      r.node_count = static_cast<int>(search.result.nodes.size());
      r.decomposition = std::move(search.result);
      return r;
    }
  }
  r.exceeded = true;
  r.width = k_max;
  return r;
}

std::string decomposition_to_text(const CanonicalHypergraph& h, const HypertreeDecomposition& d) {
  std::ostringstream out;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const HypertreeDecomposition::Node& n = d.nodes[i];
    out << "node " << i << " parent " << n.parent << " bag {";
    for (std::size_t j = 0; j < n.bag.size(); ++j) {
      if (j) out << ' ';
      out << h.vertex_names[n.bag[j]];
    }
    out << "} edges {";
    for (std::size_t j = 0; j < n.lambda.size(); ++j) {
      if (j) out << ' ';
      out << n.lambda[j];
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace sparqlog
