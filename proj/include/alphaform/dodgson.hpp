#ifndef ALPHAFORM_DODGSON_HPP
#define ALPHAFORM_DODGSON_HPP

/// Symanzik and Dodgson polynomials of a multigraph, plus the determinant
/// identities relating them.
///
/// Everything is expressed through the expanded Laplacian
///   M = [[D, I], [-I^T, 0]]
/// where D = diag(a_e) and I is the reduced incidence matrix.  Vertex indices
/// entering a Dodgson polynomial are positions among the non-star vertices,
/// shifted by |E| to address rows/columns of M.

#include <map>
#include <utility>

#include "graph.hpp"
#include "mpoly.hpp"
#include "polymatrix.hpp"

namespace af {

/// Registry layout used throughout: variable e-1 is a_e.
inline RegistryPtr schwinger_registry(const Graph& g) {
  return make_schwinger_registry(g.edge_count());
}

inline PolyMatrix expanded_laplacian(const Graph& g, const RegistryPtr& reg) {
  int m = g.edge_count(), k = g.vertex_count() - 1;
  PolyMatrix M(m + k, m + k, reg);
  for (int e = 1; e <= m; ++e)
    M.at(e - 1, e - 1) = MPoly::var(reg, e - 1);
  IntMatrix inc = incidence_reduced(g);
  for (int e = 0; e < m; ++e)
    for (int c = 0; c < k; ++c) {
      if (inc.at(e, c) == 0) continue;
      M.at(e, m + c) = MPoly::constant(reg, inc.at(e, c));
      M.at(m + c, e) = MPoly::constant(reg, -inc.at(e, c));
    }
  return M;
}

/// First Symanzik polynomial as a sum over spanning trees of the product of
/// the non-tree edge variables.
inline MPoly symanzik_tree_sum(const Graph& g, const RegistryPtr& reg) {
  MPoly psi = MPoly::zero(reg);
  for (const auto& t : enumerate_spanning_trees(g)) {
    Mono mono(reg->size(), 0);
    for (int e : t.cobasis) mono[e - 1] = 1;
    psi.add_term(mono, 1);
  }
  return psi;
}

/// First Symanzik polynomial psi = det M, cross-checked against the spanning
/// tree sum.
inline MPoly symanzik_first(const Graph& g, const RegistryPtr& reg) {
  MPoly by_det = det_bareiss(expanded_laplacian(g, reg));
  MPoly by_trees = symanzik_tree_sum(g, reg);
  if (by_det != by_trees)
    throw std::logic_error("Symanzik polynomial mismatch between determinant and tree sum");
  return by_det;
}

inline MPoly symanzik_first(const Graph& g) {
  return symanzik_first(g, schwinger_registry(g));
}

struct IndexSet {
  enum class Kind { Edge, Vertex };
  Kind kind = Kind::Edge;
  std::vector<int> indices;  // edge labels, or vertex labels (not v*)

  static IndexSet edges(std::vector<int> idx) { return {Kind::Edge, std::move(idx)}; }
  static IndexSet vertices(std::vector<int> idx) { return {Kind::Vertex, std::move(idx)}; }
  int size() const { return static_cast<int>(indices.size()); }
};

/// Rows/columns of M addressed by an index set.
inline std::vector<int> m_indices(const Graph& g, const IndexSet& s) {
  std::vector<int> out;
  for (int i : s.indices) {
    if (s.kind == IndexSet::Kind::Edge) {
      if (i < 1 || i > g.edge_count()) throw std::invalid_argument("edge index out of range");
      out.push_back(i - 1);
    } else {
      out.push_back(g.edge_count() + g.vertex_position(i) - 1);
    }
  }
  std::sort(out.begin(), out.end());
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i] == out[i - 1]) throw std::invalid_argument("duplicate index in Dodgson index set");
  return out;
}

struct DodgsonResult {
  MPoly value;
  IndexSet rows, cols;
};

/// psi^{A,B} = det M(A,B), rows A and columns B deleted.
inline DodgsonResult dodgson(const Graph& g, const IndexSet& A, const IndexSet& B,
                             const RegistryPtr& reg) {
  if (A.size() != B.size()) throw std::invalid_argument("dodgson: |A| != |B|");
  PolyMatrix M = expanded_laplacian(g, reg);
  MPoly d = det(M.deleted(m_indices(g, A), m_indices(g, B)));
  return {std::move(d), A, B};
}

inline DodgsonResult dodgson(const Graph& g, const IndexSet& A, const IndexSet& B) {
  return dodgson(g, A, B, schwinger_registry(g));
}

/// Entry (j,k) of the inverse reduced Laplacian, as a (numerator, denominator)
/// pair: ((-1)^{p(j)+p(k)} psi^{j,k}, psi).  j,k are vertex labels != v*.
inline std::pair<MPoly, MPoly> inverse_laplacian_entry(const Graph& g, int j, int k,
                                                       const RegistryPtr& reg) {
  MPoly num = dodgson(g, IndexSet::vertices({j}), IndexSet::vertices({k}), reg).value;
  if ((g.vertex_position(j) + g.vertex_position(k)) % 2 != 0) num = -num;
  return {std::move(num), symanzik_first(g, reg)};
}

/// Reduced Laplacian L = I^T D^{-1} I as (numerator, monomial denominator)
/// pairs.
inline std::vector<std::vector<std::pair<MPoly, MPoly>>> laplacian_reduced(
    const Graph& g, const RegistryPtr& reg) {
  int k = g.vertex_count() - 1, m = g.edge_count();
  IntMatrix inc = incidence_reduced(g);
  std::vector<std::vector<std::pair<MPoly, MPoly>>> L(
      k, std::vector<std::pair<MPoly, MPoly>>(
             k, {MPoly::zero(reg), MPoly::constant(reg, 1)}));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      Mono den(reg->size(), 0);
      std::vector<std::pair<int, int>> contrib;  // (edge, +-1)
      for (int e = 0; e < m; ++e) {
        int w = inc.at(e, r) * inc.at(e, c);
        if (w == 0) continue;
        contrib.push_back({e, w});
        den[e] = 1;
      }
      MPoly num = MPoly::zero(reg);
      for (auto [e, w] : contrib) {
        Mono mono = den;
        mono[e] = 0;
        num.add_term(mono, w);
      }
      L[r][c] = {std::move(num), MPoly::monomial(reg, den, 1)};
    }
  return L;
}

struct IdentityCheck {
  MPoly lhs, rhs;
  bool ok = false;
};

/// Jacobi expansion: psi^{A,B} * psi^{n-1} equals the signed sum over all n!
/// matchings of A with B of products of single-entry Dodgson polynomials.
inline IdentityCheck jacobi_expand(const Graph& g, const IndexSet& A, const IndexSet& B,
                                   const RegistryPtr& reg) {
  if (A.size() != B.size()) throw std::invalid_argument("jacobi_expand: |A| != |B|");
  int n = A.size();
  MPoly psi = symanzik_first(g, reg);
  IdentityCheck out;
  out.lhs = dodgson(g, A, B, reg).value * psi.pow(n - 1);

  std::vector<int> As = A.indices, Bs = B.indices;
  std::sort(As.begin(), As.end());
  std::sort(Bs.begin(), Bs.end());
  std::map<std::pair<int, int>, MPoly> cache;
  auto single = [&](int a, int b) -> const MPoly& {
    auto key = std::make_pair(a, b);
    auto it = cache.find(key);
    if (it == cache.end()) {
      IndexSet ia{A.kind, {a}}, ib{B.kind, {b}};
      it = cache.emplace(key, dodgson(g, ia, ib, reg).value).first;
    }
    return it->second;
  };

  out.rhs = MPoly::zero(reg);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    MPoly prod = MPoly::constant(reg, inv % 2 == 0 ? 1 : -1);
    for (int i = 0; i < n; ++i) prod *= single(As[i], Bs[perm[i]]);
    out.rhs += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.ok = (out.lhs == out.rhs);
  return out;
}

/// Determinant of the reduced incidence matrix with the edge rows in `del`
/// (1-based labels) deleted; square only when |del| = L.
inline long long incidence_deleted_det(const Graph& g, const std::vector<int>& del) {
  std::vector<bool> drop(g.edge_count() + 1, false);
  for (int e : del) drop[e] = true;
  std::vector<int> keep;
  for (int e = 1; e <= g.edge_count(); ++e)
    if (!drop[e]) keep.push_back(e);
  if (static_cast<int>(keep.size()) != g.vertex_count() - 1)
    throw std::invalid_argument("incidence_deleted_det: minor not square");
  return det_int(incidence_rows(g, keep));
}

/// Forest expansion of psi^{A,B} for disjoint edge sets A,B: sum over edge
/// sets R of size L-|A| disjoint from A and B of
/// (-1)^{eps(R)} det I(R+A) * det I(R+B) * prod_{e in R} a_e,
/// eps(R) = sum_{r in R} #{a in A : a < r} + #{b in B : b < r}.
inline IdentityCheck forest_expansion(const Graph& g, const IndexSet& A, const IndexSet& B,
                                      const RegistryPtr& reg) {
  if (A.kind != IndexSet::Kind::Edge || B.kind != IndexSet::Kind::Edge)
    throw std::invalid_argument("forest_expansion needs edge index sets");
  if (A.size() != B.size()) throw std::invalid_argument("forest_expansion: |A| != |B|");
  std::vector<bool> used(g.edge_count() + 1, false);
  for (int e : A.indices) used[e] = true;
  for (int e : B.indices) {
    if (used[e]) throw std::invalid_argument("forest_expansion: A and B must be disjoint");
    used[e] = true;
  }
  int r_size = g.loop_number() - A.size();
  if (r_size < 0) throw std::invalid_argument("forest_expansion: |A| exceeds loop number");
  std::vector<int> free_edges;
  for (int e = 1; e <= g.edge_count(); ++e)
    if (!used[e]) free_edges.push_back(e);

  MPoly acc = MPoly::zero(reg);
  std::vector<int> pick;
  std::function<void(size_t)> rec = [&](size_t from) {
    if (static_cast<int>(pick.size()) == r_size) {
      std::vector<int> ra = pick, rb = pick;
      ra.insert(ra.end(), A.indices.begin(), A.indices.end());
      rb.insert(rb.end(), B.indices.begin(), B.indices.end());
      long long da = incidence_deleted_det(g, ra);
      if (da == 0) return;
      long long db = incidence_deleted_det(g, rb);
      if (db == 0) return;
      // interleaving sign from moving the R rows/cols past A and B
      int eps = 0;
      for (int r : pick) {
        for (int a : A.indices) eps += a < r;
        for (int b : B.indices) eps += b < r;
      }
      Mono mono(reg->size(), 0);
      for (int e : pick) mono[e - 1] = 1;
      acc.add_term(mono, Rational((eps % 2 == 0 ? 1 : -1) * da * db));
      return;
    }
    for (size_t i = from; i < free_edges.size(); ++i) {
      pick.push_back(free_edges[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);

  IdentityCheck chk;
  chk.lhs = dodgson(g, A, B, reg).value;
  chk.rhs = std::move(acc);
  chk.ok = chk.lhs == chk.rhs;
  return chk;
}

/// Vertex-edge combination: for e = v1 -> v2 and a vertex v != v*,
///   -(-1)^{p(v1)} psi^{v1,v} + (-1)^{p(v2)} psi^{v2,v}
///     = (-1)^{e+|E|} a_e psi^{e,v},
/// where a summand is dropped when its endpoint is v*.
inline IdentityCheck vertex_edge_combine(const Graph& g, int e, int v,
                                         const RegistryPtr& reg) {
  const auto& ed = g.edge(e);
  IdentityCheck out;
  out.lhs = MPoly::zero(reg);
  IndexSet col = IndexSet::vertices({v});
  if (ed.tail != g.v_star()) {
    MPoly t = dodgson(g, IndexSet::vertices({ed.tail}), col, reg).value;
    if (g.vertex_position(ed.tail) % 2 == 0) t = -t;  // -(-1)^p
    out.lhs += t;
  }
  if (ed.head != g.v_star()) {
    MPoly t = dodgson(g, IndexSet::vertices({ed.head}), col, reg).value;
    if (g.vertex_position(ed.head) % 2 != 0) t = -t;  // +(-1)^p
    out.lhs += t;
  }
  out.rhs = dodgson(g, IndexSet::edges({e}), col, reg).value * MPoly::var(reg, e - 1);
  if ((e + g.edge_count()) % 2 != 0) out.rhs = -out.rhs;
  out.ok = (out.lhs == out.rhs);
  return out;
}

/// Edge-edge combination: for e1 = v1 -> v2 and e2 = v3 -> v4,
///   (-1)^{p2+p4} psi^{v2,v4} - (-1)^{p1+p4} psi^{v1,v4}
///     + (-1)^{p1+p3} psi^{v1,v3} - (-1)^{p2+p3} psi^{v2,v3}
///   = (-1)^{e1+e2+1} a_{e1} a_{e2} psi^{e1,e2},
/// with summands containing v* dropped.
inline IdentityCheck edge_edge_combine(const Graph& g, int e1, int e2,
                                       const RegistryPtr& reg) {
  if (e1 == e2) throw std::invalid_argument("edge_edge_combine: edges must differ");
  const auto& a = g.edge(e1);
  const auto& b = g.edge(e2);
  IdentityCheck out;
  out.lhs = MPoly::zero(reg);
  auto term = [&](int vr, int vc, int base_sign) {
    if (vr == g.v_star() || vc == g.v_star()) return;
    MPoly t = dodgson(g, IndexSet::vertices({vr}), IndexSet::vertices({vc}), reg).value;
    int s = base_sign;
    if ((g.vertex_position(vr) + g.vertex_position(vc)) % 2 != 0) s = -s;
    out.lhs += (s > 0) ? t : -t;
  };
  term(a.head, b.head, +1);   // (v2, v4)
  term(a.tail, b.head, -1);   // (v1, v4)
  term(a.tail, b.tail, +1);   // (v1, v3)
  term(a.head, b.tail, -1);   // (v2, v3)

  out.rhs = dodgson(g, IndexSet::edges({e1}), IndexSet::edges({e2}), reg).value
            * MPoly::var(reg, e1 - 1) * MPoly::var(reg, e2 - 1);
  if ((e1 + e2 + 1) % 2 != 0) out.rhs = -out.rhs;
  out.ok = (out.lhs == out.rhs);
  return out;
}

struct SecondSymanzik {
  RegistryPtr registry;  // a_e, then s_{jk}, then mu_e
  MPoly phi;
};

/// Second Symanzik-type polynomial
///   phi = sum_{j,k != v*} (-1)^{p(j)+p(k)} psi^{j,k} s_{jk}
///         - psi * sum_e a_e mu_e,
/// with opaque symbols s_{jk} = s_{kj} (momentum dot products q_j.q_k) and
/// mu_e (squared masses).  Vertices in `momentum_vertices` carry nonzero
/// momentum; edges in `massive_edges` carry nonzero mass.
inline SecondSymanzik symanzik_second(const Graph& g,
                                      const std::vector<int>& momentum_vertices,
                                      const std::vector<int>& massive_edges) {
  auto reg = std::make_shared<VarRegistry>();
  int m = g.edge_count();
  for (int e = 1; e <= m; ++e) reg->add("a" + std::to_string(e), VarClass::Schwinger);
  std::vector<int> mv = momentum_vertices;
  std::sort(mv.begin(), mv.end());
  for (int v : mv)
    if (v == g.v_star())
      throw std::invalid_argument("momentum at v* is fixed by conservation; list only other vertices");
  std::map<std::pair<int, int>, int> s_idx;
  for (size_t i = 0; i < mv.size(); ++i)
    for (size_t j = i; j < mv.size(); ++j)
      s_idx[{mv[i], mv[j]}] =
          reg->add("s" + std::to_string(mv[i]) + "_" + std::to_string(mv[j]), VarClass::Dot);
  std::map<int, int> mu_idx;
  for (int e : massive_edges)
    mu_idx[e] = reg->add("mu" + std::to_string(e), VarClass::Mass);
  RegistryPtr creg = reg;

  MPoly phi = MPoly::zero(creg);
  for (size_t i = 0; i < mv.size(); ++i)
    for (size_t j = 0; j < mv.size(); ++j) {
      int vj = mv[i], vk = mv[j];
      MPoly num = dodgson(g, IndexSet::vertices({vj}), IndexSet::vertices({vk}), creg).value;
      if ((g.vertex_position(vj) + g.vertex_position(vk)) % 2 != 0) num = -num;
      int a = std::min(vj, vk), b = std::max(vj, vk);
      phi += num * MPoly::var(creg, s_idx[{a, b}]);
    }
  MPoly psi = symanzik_first(g, creg);
  for (auto [e, idx] : mu_idx)
    phi -= psi * MPoly::var(creg, e - 1) * MPoly::var(creg, idx);
  return {creg, std::move(phi)};
}

/// Superficial degree of divergence d = L*D/2 - sum_e nu_e for spacetime
/// dimension D and edge propagator powers nu_e.
inline Rational superficial_degree(const Graph& g, const Rational& dim,
                                   const std::vector<Rational>& nu) {
  if (static_cast<int>(nu.size()) != g.edge_count())
    throw std::invalid_argument("superficial_degree: need one exponent per edge");
  Rational d = Rational(g.loop_number()) * dim / 2;
  for (const auto& v : nu) d -= v;
  return d;
}

}  // namespace af

#endif
