#include "sparqlog/shape.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace sparqlog {

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Empty: return "empty";
    case Shape::SingleEdge: return "single edge";
    case Shape::Chain: return "chain";
    case Shape::ChainSet: return "chain set";
    case Shape::Star: return "star";
    case Shape::Tree: return "tree";
    case Shape::Forest: return "forest";
    case Shape::Cycle: return "cycle";
    case Shape::Petal: return "petal";
    case Shape::Flower: return "flower";
    case Shape::FlowerSet: return "flower set";
    case Shape::BeyondFlowerSet: return "beyond flower set";
    case Shape::kCount: break;
  }
  return "?";
}

namespace {

struct Adjacency {
  int n = 0;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, edge id)
  const std::vector<std::pair<int, int>>* edges = nullptr;

  explicit Adjacency(const CanonicalGraph& g) : n(g.node_count()), adj(g.node_count()), edges(&g.edges) {
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      auto [a, b] = g.edges[e];
      adj[a].push_back({b, static_cast<int>(e)});
      adj[b].push_back({a, static_cast<int>(e)});
    }
  }

  int degree(int v) const { return static_cast<int>(adj[v].size()); }
};

std::vector<int> component_ids(const Adjacency& a, int& count) {
  std::vector<int> comp(a.n, -1);
  count = 0;
  for (int s = 0; s < a.n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = count;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (auto [w, e] : a.adj[v]) {
        (void)e;
        if (comp[w] < 0) {
          comp[w] = count;
          queue.push_back(w);
        }
      }
    }
    ++count;
  }
  return comp;
}

/// Edge partition into biconnected components (iterative Hopcroft-Tarjan).
std::vector<std::vector<int>> biconnected_components(const Adjacency& a) {
  const int n = a.n;
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::vector<int>> comps;
  std::vector<int> edge_stack;
  int timer = 0;

  struct Frame {
    int v;
    int parent_edge;
    std::size_t next;
  };

  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < a.adj[f.v].size()) {
        auto [w, e] = a.adj[f.v][f.next++];
        if (e == f.parent_edge) continue;
        if (disc[w] < 0) {
          edge_stack.push_back(e);
          disc[w] = low[w] = timer++;
          stack.push_back({w, e, 0});
        } else if (disc[w] < disc[f.v]) {
          edge_stack.push_back(e);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        int w = f.v;
        int pe = f.parent_edge;
        stack.pop_back();
        if (stack.empty()) break;
        Frame& p = stack.back();
        low[p.v] = std::min(low[p.v], low[w]);
        if (low[w] >= disc[p.v]) {
          // pop the component delimited by the tree edge pe
          std::vector<int> comp;
          while (!edge_stack.empty()) {
            int e = edge_stack.back();
            edge_stack.pop_back();
            comp.push_back(e);
            if (e == pe) break;
          }
          comps.push_back(std::move(comp));
        }
      }
    }
  }
  return comps;
}

struct PetalInfo {
  std::vector<int> edge_ids;
  std::set<int> vertices;
  std::vector<int> terminals;  // the two high-degree vertices, or empty for a cycle
};

/// Flower analysis of one connected component (vertex set `members`).
std::variant<FlowerDecomposition, NotAFlower> flower_of_component(
    const CanonicalGraph& g, const Adjacency& a, const std::vector<int>& members,
    bool strict_petals) {
  std::set<int> member_set(members.begin(), members.end());

  std::vector<int> comp_loops;
  for (int v : g.loops) {
    if (member_set.count(v)) comp_loops.push_back(v);
  }

  // biconnected components restricted to this component
  std::vector<std::vector<int>> bicomps_all = biconnected_components(a);
  std::vector<PetalInfo> petals;
  std::vector<int> edge_petal(g.edges.size(), -1);
  for (const std::vector<int>& comp : bicomps_all) {
    if (comp.empty()) continue;
    auto [x0, y0] = g.edges[comp[0]];
    (void)y0;
    if (!member_set.count(x0)) continue;
    if (comp.size() < 2) continue;  // a bridge
    PetalInfo p;
    p.edge_ids = comp;
    std::map<int, int> deg;
    for (int e : comp) {
      auto [x, y] = g.edges[e];
      p.vertices.insert(x);
      p.vertices.insert(y);
      ++deg[x];
      ++deg[y];
    }
    std::vector<int> high;
    for (const auto& [v, d] : deg) {
      if (d >= 3) high.push_back(v);
    }
    if (high.size() != 0 && high.size() != 2) {
      return NotAFlower{"biconnected component is not a petal at node " +
                        g.node_names[high.front()]};
    }
    p.terminals = high;
    for (int e : comp) edge_petal[e] = static_cast<int>(petals.size());
    petals.push_back(std::move(p));
  }

  // candidate centers
  std::set<int> candidates(member_set);
  for (const PetalInfo& p : petals) {
    std::set<int> allowed;
    if (p.terminals.empty()) {
      allowed.insert(p.vertices.begin(), p.vertices.end());
    } else {
      allowed.insert(p.terminals.begin(), p.terminals.end());
    }
    std::set<int> keep;
    std::set_intersection(candidates.begin(), candidates.end(), allowed.begin(), allowed.end(),
                          std::inserter(keep, keep.begin()));
    candidates.swap(keep);
  }
  for (int v : comp_loops) {
    if (candidates.count(v)) {
      candidates = {v};
    } else {
      return NotAFlower{"self-loop away from any admissible center"};
    }
  }
  if (candidates.empty()) return NotAFlower{"petal terminals share no common node"};

  // attachment condition: petal vertices other than the center carry no
  // outside edges (strict mode); two petals may only meet at the center
  std::set<int> forced;
  for (std::size_t pi = 0; pi < petals.size(); ++pi) {
    for (int v : petals[pi].vertices) {
      bool outside = false;
      bool other_petal = false;
      for (auto [w, e] : a.adj[v]) {
        (void)w;
        if (edge_petal[e] == static_cast<int>(pi)) continue;
        if (edge_petal[e] >= 0) other_petal = true;
        outside = true;
      }
      if (other_petal || (strict_petals && outside)) forced.insert(v);
    }
  }
  if (forced.size() > 1) return NotAFlower{"attachments at more than one petal node"};
  if (forced.size() == 1) {
    if (!candidates.count(*forced.begin())) {
      return NotAFlower{"attachment node is not an admissible center"};
    }
    candidates = {*forced.begin()};
  }

  // deterministic center: highest degree, then smallest id
  int center = -1;
  for (int v : candidates) {
    if (center < 0 || a.degree(v) > a.degree(center) ||
        (a.degree(v) == a.degree(center) && v < center)) {
      center = v;
    }
  }

  FlowerDecomposition d;
  d.center = center;
  d.loop_count = static_cast<int>(comp_loops.size());
  d.stats.petal_count = static_cast<int>(petals.size());
  for (const PetalInfo& p : petals) {
    d.petals.emplace_back(p.vertices.begin(), p.vertices.end());
  }

  // bridge forest: edges outside all petals, classified as branches
  std::set<int> petal_vertices;
  for (const PetalInfo& p : petals) petal_vertices.insert(p.vertices.begin(), p.vertices.end());

  std::vector<int> attachment_points{center};
  if (!strict_petals) {
    for (int v : petal_vertices) {
      if (v == center) continue;
      for (auto [w, e] : a.adj[v]) {
        (void)w;
        if (edge_petal[e] < 0) {
          attachment_points.push_back(v);
          break;
        }
      }
    }
  }

  std::set<int> attach_set(attachment_points.begin(), attachment_points.end());
  std::set<int> seen_bridge_edges;
  for (int at : attachment_points) {
    for (auto [b, e0] : a.adj[at]) {
      if (edge_petal[e0] >= 0 || seen_bridge_edges.count(e0)) continue;
      // walk the branch hanging at `at` through bridge edges
      seen_bridge_edges.insert(e0);
      bool is_chain = true;
      std::vector<std::pair<int, int>> walk{{b, at}};  // (vertex, parent)
      std::set<int> branch_seen{at, b};
      while (!walk.empty()) {
        auto [v, parent] = walk.back();
        walk.pop_back();
        if (petal_vertices.count(v) || attach_set.count(v)) {
          return NotAFlower{"tree attachment reaches a petal node"};
        }
        int forward = 0;
        for (auto [w, e] : a.adj[v]) {
          if (w == parent || edge_petal[e] >= 0) continue;
          seen_bridge_edges.insert(e);
          if (branch_seen.count(w)) continue;
          branch_seen.insert(w);
          walk.push_back({w, v});
          ++forward;
        }
        if (forward > 1) is_chain = false;
      }
      if (is_chain) {
        ++d.stats.stamen_count;
      } else {
        ++d.stats.stem_count;
      }
    }
  }

  // any bridge edge never reached hangs off a forbidden node
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (edge_petal[e] >= 0 || seen_bridge_edges.count(static_cast<int>(e))) continue;
    auto [x, y] = g.edges[e];
    if (member_set.count(x) || member_set.count(y)) {
      return NotAFlower{"tree attachment away from the center"};
    }
  }

  return d;
}

}  // namespace

std::optional<int> girth(const CanonicalGraph& g) {
  Adjacency a(g);
  int best = -1;
  std::vector<int> dist(a.n);
  std::vector<int> parent(a.n);
  for (int s = 0; s < a.n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    dist[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      if (best >= 0 && 2 * dist[v] >= best) break;
      for (auto [w, e] : a.adj[v]) {
        (void)e;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        } else if (w != parent[v]) {
          int cycle = dist[v] + dist[w] + 1;
          if (best < 0 || cycle < best) best = cycle;
        }
      }
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

std::variant<FlowerDecomposition, NotAFlower> decompose_flower(const CanonicalGraph& g,
                                                               bool strict_petals) {
  Adjacency a(g);
  int comp_count = 0;
  std::vector<int> comp = component_ids(a, comp_count);
  if (comp_count != 1 || a.n == 0) {
    return NotAFlower{"graph is not connected"};
  }
  std::vector<int> members(a.n);
  for (int i = 0; i < a.n; ++i) members[i] = i;
  return flower_of_component(g, a, members, strict_petals);
}

ShapeClass classify_shape(const CanonicalGraph& g, bool strict_petals) {
  ShapeClass out;
  out.self_loop_count = static_cast<int>(g.loops.size());
  out.girth = girth(g);

  Adjacency a(g);
  const int n = a.n;
  const int m = static_cast<int>(g.edges.size());
  int comp_count = 0;
  std::vector<int> comp = component_ids(a, comp_count);
  bool connected = comp_count == 1 && n > 0;
  bool loop_free = g.loops.empty();
  bool acyclic = loop_free && !out.girth.has_value();

  int max_degree = 0;
  int high_degree_nodes = 0;
  for (int v = 0; v < n; ++v) {
    max_degree = std::max(max_degree, a.degree(v));
    if (a.degree(v) >= 3) ++high_degree_nodes;
  }

  auto set = [&](Shape s, bool value) { out.memberships[static_cast<std::size_t>(s)] = value; };

  bool lone_loop = n == 1 && m == 0 && g.loops.size() == 1;

  set(Shape::Empty, n == 0);
  set(Shape::SingleEdge, n == 2 && m == 1 && loop_free);
  set(Shape::Chain, connected && acyclic && max_degree <= 2);
  set(Shape::ChainSet, acyclic && max_degree <= 2);
  set(Shape::Star, connected && acyclic && high_degree_nodes == 1);
  set(Shape::Tree, connected && acyclic);
  set(Shape::Forest, acyclic);

  bool is_cycle =
      lone_loop || (connected && loop_free && n >= 3 && m == n && max_degree == 2);
  set(Shape::Cycle, is_cycle);

  // petal: one nontrivial biconnected component covering the whole graph
  bool is_petal = lone_loop;
  if (connected && loop_free && n >= 3 && m >= n) {
    std::vector<std::vector<int>> bicomps = biconnected_components(a);
    if (bicomps.size() == 1 && static_cast<int>(bicomps[0].size()) == m) {
      int high = 0;
      for (int v = 0; v < n; ++v) {
        if (a.degree(v) >= 3) ++high;
      }
      std::set<int> covered;
      for (int e : bicomps[0]) {
        covered.insert(g.edges[e].first);
        covered.insert(g.edges[e].second);
      }
      is_petal = static_cast<int>(covered.size()) == n && (high == 0 || high == 2);
    }
  }
  set(Shape::Petal, is_petal);

  bool is_flower = false;
  if (connected) {
    auto res = decompose_flower(g, strict_petals);
    if (const FlowerDecomposition* d = std::get_if<FlowerDecomposition>(&res)) {
      is_flower = true;
      out.flower_stats = d->stats;
    }
  }
  set(Shape::Flower, is_flower);

  // flower set: every component is a flower
  bool flower_set = true;
  if (n > 0) {
    std::vector<std::vector<int>> members(comp_count);
    for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);
    for (int c = 0; c < comp_count && flower_set; ++c) {
      if (comp_count == 1) {
        flower_set = is_flower;
        break;
      }
      auto res = flower_of_component(g, a, members[c], strict_petals);
      if (!std::holds_alternative<FlowerDecomposition>(res)) flower_set = false;
    }
  }
  set(Shape::FlowerSet, flower_set);
  set(Shape::BeyondFlowerSet, !flower_set);

  for (std::size_t i = 0; i < kShapeCount; ++i) {
    if (out.memberships[i]) {
      out.most_specific = static_cast<Shape>(i);
      break;
    }
  }
  return out;
}

}  // namespace sparqlog
