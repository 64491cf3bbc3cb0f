#ifndef ALPHAFORM_FAMILIES_HPP
#define ALPHAFORM_FAMILIES_HPP

/// Deterministic graph generators for the stress corpus.

#include <random>
#include <stdexcept>

#include "graph.hpp"

namespace af {
namespace families {

/// k parallel edges on two vertices.
inline Graph banana(int k) {
  if (k < 1) throw std::invalid_argument("banana: k >= 1");
  std::vector<EdgeDef> edges(k, {1, 2});
  return Graph(2, std::move(edges));
}

/// Path with k edges (a tree).
inline Graph path(int k) {
  if (k < 1) throw std::invalid_argument("path: k >= 1");
  std::vector<EdgeDef> edges;
  for (int i = 1; i <= k; ++i) edges.push_back({i, i + 1});
  return Graph(k + 1, std::move(edges));
}

inline Graph cycle(int k) {
  if (k < 2) throw std::invalid_argument("cycle: k >= 2");
  std::vector<EdgeDef> edges;
  for (int i = 1; i < k; ++i) edges.push_back({i, i + 1});
  edges.push_back({k, 1});
  return Graph(k, std::move(edges));
}

/// Theta graph with the three strands subdivided into a, b and c edges.
/// Strand order fixes the edge labels: bottom 1..a, middle a+1..a+b, top
/// a+b+1..a+b+c.  Vertex 1 is the start hub, vertex a+b the end hub,
/// interior vertices numbered along each strand in that order.
inline Graph theta_subdivided(int a, int b, int c) {
  if (a < 1 || b < 1 || c < 1) throw std::invalid_argument("theta: strand lengths >= 1");
  int hub = a + b;  // end hub; start hub is 1
  int n = a + b + c - 1;
  std::vector<EdgeDef> edges;
  auto strand = [&](int len, int first_interior) {
    int prev = 1;
    for (int i = 0; i < len - 1; ++i) {
      edges.push_back({prev, first_interior + i});
      prev = first_interior + i;
    }
    edges.push_back({prev, hub});
  };
  strand(a, 2);
  strand(b, a + 1);
  strand(c, a + b + 1);
  return Graph(n, std::move(edges));
}

/// Wheel W_k: rim cycle 1..k plus hub k+1 (the default v*), spokes from the
/// hub.  Rim edges first (labels 1..k), then spokes (k+1..2k).
inline Graph wheel(int k) {
  if (k < 3) throw std::invalid_argument("wheel: k >= 3");
  std::vector<EdgeDef> edges;
  for (int i = 1; i <= k; ++i) edges.push_back({i, i % k + 1});
  for (int i = 1; i <= k; ++i) edges.push_back({k + 1, i});
  return Graph(k + 1, std::move(edges));
}

/// K4 with edge (1,2) doubled: 7 edges, loop number 4.
inline Graph k4_doubled() {
  return Graph(4, {{1, 2}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
}

/// Dunce's cap: vertices 1,2,3 (v* = 3), edges e1 = (2,1), e2 = (3,1),
/// e3 = (3,2), e4 = (3,2).
inline Graph dunce() { return Graph(3, {{2, 1}, {3, 1}, {3, 2}, {3, 2}}); }

/// Dunce's cap with edge e1 subdivided k extra times (k = 0 gives the cap
/// itself).  The subdivided chain keeps the leading labels 1..k+1.
inline Graph dunce_subdivided(int k) {
  if (k < 0) throw std::invalid_argument("dunce_subdivided: k >= 0");
  // chain 2 -> 4 -> 5 -> ... -> 1 replacing e1, then the original e2..e4
  std::vector<EdgeDef> edges;
  int prev = 2;
  for (int i = 0; i < k; ++i) {
    edges.push_back({prev, 4 + i});
    prev = 4 + i;
  }
  edges.push_back({prev, 1});
  edges.push_back({3, 1});
  edges.push_back({3, 2});
  edges.push_back({3, 2});
  return Graph(3 + k, std::move(edges), 3);
}

/// Seeded random connected multigraph: a random spanning tree plus uniform
/// extra edges; deterministic for a fixed seed.
inline Graph random_connected(int v, int e, unsigned seed) {
  if (v < 2) throw std::invalid_argument("random_connected: v >= 2");
  if (e < v - 1) throw std::invalid_argument("random_connected: e >= v-1 for connectivity");
  std::mt19937 rng(seed);
  std::vector<EdgeDef> edges;
  for (int i = 2; i <= v; ++i) {
    int p = std::uniform_int_distribution<int>(1, i - 1)(rng);
    if (std::uniform_int_distribution<int>(0, 1)(rng)) edges.push_back({p, i});
    else edges.push_back({i, p});
  }
  while (static_cast<int>(edges.size()) < e) {
    int t = std::uniform_int_distribution<int>(1, v)(rng);
    int h = std::uniform_int_distribution<int>(1, v - 1)(rng);
    if (h >= t) ++h;
    edges.push_back({t, h});
  }
  return Graph(v, std::move(edges));
}

/// Two dunce's caps glued at one vertex (vertex 3 of the first is vertex 3
/// of the second; the second cap uses fresh vertices 4,5).
inline Graph dunce_pair_shared_vertex() {
  return Graph(5, {{2, 1}, {3, 1}, {3, 2}, {3, 2}, {4, 5}, {3, 5}, {3, 4}, {3, 4}}, 3);
}

/// Two dunce's caps joined by a single bridge edge.
inline Graph dunce_pair_bridge() {
  return Graph(6, {{2, 1}, {3, 1}, {3, 2}, {3, 2},  // first cap on 1,2,3
                   {5, 4}, {6, 4}, {6, 5}, {6, 5},  // second cap on 4,5,6
                   {3, 6}});                        // bridge
}

/// Two disjoint dunce's caps.
inline Graph dunce_pair_disjoint() {
  return Graph(6, {{2, 1}, {3, 1}, {3, 2}, {3, 2}, {5, 4}, {6, 4}, {6, 5}, {6, 5}});
}

}  // namespace families
}  // namespace af

#endif
