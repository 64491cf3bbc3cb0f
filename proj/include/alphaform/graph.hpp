#ifndef ALPHAFORM_GRAPH_HPP
#define ALPHAFORM_GRAPH_HPP

/// Finite multigraphs with ordered, directed, labeled edges and a
/// distinguished vertex v*.  Vertices and edges are 1-based in the API.
/// Self-loops are rejected; parallel edges are allowed and keep their labels.

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace af {

struct EdgeDef {
  int tail = 0;
  int head = 0;
};

struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<int> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0) {}
  int& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  int at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
  bool operator==(const IntMatrix&) const = default;
};

/// Determinant of a small integer matrix by fraction-free elimination.  All
/// uses here are minors of incidence matrices, whose minors lie in {-1,0,1}.
inline long long det_int(IntMatrix m) {
  if (m.rows != m.cols) throw std::invalid_argument("det of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  std::vector<long long> a(m.data.begin(), m.data.end());
  auto at = [&](int r, int c) -> long long& { return a[static_cast<size_t>(r) * n + c]; };
  long long prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (at(r, k) != 0) { p = r; break; }
      if (p < 0) return 0;
      for (int c = k; c < n; ++c) std::swap(at(k, c), at(p, c));
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r)
      for (int c = k + 1; c < n; ++c)
        at(r, c) = (at(r, c) * at(k, k) - at(r, k) * at(k, c)) / prev;
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

class Graph {
 public:
  Graph(int vertex_count, std::vector<EdgeDef> edges,
        std::optional<int> v_star = std::nullopt)
      : n_(vertex_count), edges_(std::move(edges)),
        v_star_(v_star.value_or(vertex_count)) {
    if (n_ < 1) throw std::invalid_argument("graph needs at least one vertex");
    if (v_star_ < 1 || v_star_ > n_) throw std::invalid_argument("v_star out of range");
    for (const auto& e : edges_) {
      if (e.tail < 1 || e.tail > n_ || e.head < 1 || e.head > n_)
        throw std::invalid_argument("edge endpoint out of range");
      if (e.tail == e.head) throw std::invalid_argument("self-loops are not supported");
    }
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<EdgeDef>& edges() const { return edges_; }
  const EdgeDef& edge(int e) const { return edges_.at(e - 1); }  // 1-based
  int v_star() const { return v_star_; }

  /// 1-based column position of a non-star vertex in the reduced incidence
  /// matrix (vertices ordered increasingly with v* removed).
  int vertex_position(int v) const {
    if (v < 1 || v > n_ || v == v_star_)
      throw std::invalid_argument("vertex_position: invalid vertex");
    return v < v_star_ ? v : v - 1;
  }

  std::vector<int> non_star_vertices() const {
    std::vector<int> out;
    for (int v = 1; v <= n_; ++v)
      if (v != v_star_) out.push_back(v);
    return out;
  }

  int component_count() const {
    std::vector<int> parent(n_ + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& e : edges_) parent[find(e.tail)] = find(e.head);
    int c = 0;
    for (int v = 1; v <= n_; ++v)
      if (find(v) == v) ++c;
    return c;
  }

  bool is_connected() const { return component_count() == 1; }

  /// First Betti number |E| - |V| + (number of components).
  int loop_number() const { return edge_count() - n_ + component_count(); }

 private:
  int n_;
  std::vector<EdgeDef> edges_;
  int v_star_;
};

/// Full incidence matrix, |E| x |V|: row e has -1 at the tail, +1 at the head.
inline IntMatrix incidence_full(const Graph& g) {
  IntMatrix m(g.edge_count(), g.vertex_count());
  for (int e = 1; e <= g.edge_count(); ++e) {
    m.at(e - 1, g.edge(e).tail - 1) = -1;
    m.at(e - 1, g.edge(e).head - 1) = 1;
  }
  return m;
}

/// Reduced incidence matrix, |E| x (|V|-1): the v* column removed.
inline IntMatrix incidence_reduced(const Graph& g) {
  IntMatrix m(g.edge_count(), g.vertex_count() - 1);
  for (int e = 1; e <= g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    if (ed.tail != g.v_star()) m.at(e - 1, g.vertex_position(ed.tail) - 1) = -1;
    if (ed.head != g.v_star()) m.at(e - 1, g.vertex_position(ed.head) - 1) = 1;
  }
  return m;
}

/// Square minor of the reduced incidence matrix on the given edge rows
/// (1-based, will be used sorted increasingly).
inline IntMatrix incidence_rows(const Graph& g, std::vector<int> edge_rows) {
  std::sort(edge_rows.begin(), edge_rows.end());
  IntMatrix full = incidence_reduced(g);
  IntMatrix m(static_cast<int>(edge_rows.size()), full.cols);
  for (size_t i = 0; i < edge_rows.size(); ++i)
    for (int c = 0; c < full.cols; ++c)
      m.at(static_cast<int>(i), c) = full.at(edge_rows[i] - 1, c);
  return m;
}

struct SpanningTree {
  std::vector<int> edges;    // sorted edge labels, |V|-1 of them
  std::vector<int> cobasis;  // sorted complement
  int det_sign = 0;          // det of the reduced incidence minor on the tree rows
};

/// All spanning trees, in lexicographic order of their sorted edge sets.
inline std::vector<SpanningTree> enumerate_spanning_trees(const Graph& g) {
  std::vector<SpanningTree> out;
  int m = g.edge_count(), k = g.vertex_count() - 1;
  if (k > m || !g.is_connected()) return out;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(pick.size()) == k) {
      long long d = det_int(incidence_rows(g, pick));
      if (d != 0) {
        assert(d == 1 || d == -1);
        SpanningTree t;
        t.edges = pick;
        t.det_sign = static_cast<int>(d);
        std::vector<bool> in(m + 1, false);
        for (int e : pick) in[e] = true;
        for (int e = 1; e <= m; ++e)
          if (!in[e]) t.cobasis.push_back(e);
        out.push_back(std::move(t));
      }
      return;
    }
    int need = k - static_cast<int>(pick.size());
    for (int e = from; e + need - 1 <= m; ++e) {
      pick.push_back(e);
      rec(e + 1);
      pick.pop_back();
    }
  };
  rec(1);
  return out;
}

/// Orientation sign of a spanning tree for even loop number L:
/// (-1)^(sum of cobasis labels - L/2) * det of the tree incidence minor.
inline int tree_sign(const Graph& g, const SpanningTree& t) {
  int L = g.loop_number();
  if (L % 2 != 0) throw std::invalid_argument("tree_sign requires even loop number");
  long s = 0;
  for (int e : t.cobasis) s += e;
  s -= L / 2;
  int par = (s % 2 == 0) ? 1 : -1;
  return par * t.det_sign;
}

struct ConnectivityProfile {
  bool connected = false;
  bool is_1pi = false;
  std::vector<int> bridges;        // edge labels
  std::vector<int> cut_vertices;   // vertex labels
  // Components with maps back to the original labels.
  std::vector<Graph> components;
  std::vector<std::vector<int>> component_vertices;  // new label -> old label
  std::vector<std::vector<int>> component_edges;     // new label -> old label
};

inline ConnectivityProfile connectivity_profile(const Graph& g) {
  ConnectivityProfile p;
  int n = g.vertex_count(), m = g.edge_count();
  std::vector<std::vector<std::pair<int, int>>> adj(n + 1);  // (neighbor, edge id)
  for (int e = 1; e <= m; ++e) {
    adj[g.edge(e).tail].push_back({g.edge(e).head, e});
    adj[g.edge(e).head].push_back({g.edge(e).tail, e});
  }

  std::vector<int> disc(n + 1, 0), low(n + 1, 0), comp(n + 1, 0);
  int timer = 0;
  std::vector<bool> is_cut(n + 1, false);
  std::function<void(int, int, int)> dfs = [&](int v, int pe, int c) {
    disc[v] = low[v] = ++timer;
    comp[v] = c;
    int children = 0;
    for (auto [w, e] : adj[v]) {
      if (e == pe) continue;
      if (disc[w]) {
        low[v] = std::min(low[v], disc[w]);
      } else {
        ++children;
        dfs(w, e, c);
        low[v] = std::min(low[v], low[w]);
        if (low[w] > disc[v]) p.bridges.push_back(e);
        if (pe != 0 && low[w] >= disc[v]) is_cut[v] = true;
      }
    }
    if (pe == 0 && children > 1) is_cut[v] = true;
  };
  int ncomp = 0;
  for (int v = 1; v <= n; ++v)
    if (!disc[v]) dfs(v, 0, ++ncomp);
  for (int v = 1; v <= n; ++v)
    if (is_cut[v]) p.cut_vertices.push_back(v);
  std::sort(p.bridges.begin(), p.bridges.end());
  p.connected = (ncomp == 1);
  p.is_1pi = p.connected && p.bridges.empty() && p.cut_vertices.empty();

  for (int c = 1; c <= ncomp; ++c) {
    std::vector<int> vmap;  // new -> old
    std::vector<int> vinv(n + 1, 0);
    for (int v = 1; v <= n; ++v)
      if (comp[v] == c) {
        vmap.push_back(v);
        vinv[v] = static_cast<int>(vmap.size());
      }
    std::vector<int> emap;
    std::vector<EdgeDef> edges;
    for (int e = 1; e <= m; ++e)
      if (comp[g.edge(e).tail] == c) {
        emap.push_back(e);
        edges.push_back({vinv[g.edge(e).tail], vinv[g.edge(e).head]});
      }
    std::optional<int> vs;
    if (comp[g.v_star()] == c) vs = vinv[g.v_star()];
    p.components.emplace_back(static_cast<int>(vmap.size()), std::move(edges), vs);
    p.component_vertices.push_back(std::move(vmap));
    p.component_edges.push_back(std::move(emap));
  }
  return p;
}

}  // namespace af

#endif
