#ifndef ALPHAFORM_ALPHA_HPP
#define ALPHAFORM_ALPHA_HPP

/// The two alpha pipelines (spanning-tree closed form and brute-force
/// Gaussian integration), the wedge-nilpotency verifier, the formal Q_E
/// cancellation sum, and the cancellation-certificate involution.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "dodgson.hpp"
#include "forms.hpp"
#include "graph.hpp"

namespace af {

inline int sgn_perm(const std::vector<int>& word) {
  int inv = 0;
  for (size_t i = 0; i < word.size(); ++i)
    for (size_t j = i + 1; j < word.size(); ++j)
      if (word[i] > word[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

/// All perfect matchings of {0,..,k-1} as lists of index pairs (first<second).
inline std::vector<std::vector<std::pair<int, int>>> perfect_matchings(int k) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (k % 2 != 0) return out;
  std::vector<std::pair<int, int>> cur;
  std::vector<bool> used(k, false);
  std::function<void()> rec = [&]() {
    int first = -1;
    for (int i = 0; i < k; ++i)
      if (!used[i]) { first = i; break; }
    if (first < 0) { out.push_back(cur); return; }
    used[first] = true;
    for (int j = first + 1; j < k; ++j) {
      if (used[j]) continue;
      used[j] = true;
      cur.push_back({first, j});
      rec();
      cur.pop_back();
      used[j] = false;
    }
    used[first] = false;
  };
  rec();
  return out;
}

inline std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) { h ^= v; h *= 1099511628211ull; };
  mix(static_cast<std::uint64_t>(g.vertex_count()));
  mix(static_cast<std::uint64_t>(g.v_star()));
  for (const auto& e : g.edges()) {
    mix(static_cast<std::uint64_t>(e.tail));
    mix(static_cast<std::uint64_t>(e.head));
  }
  return h;
}

/// Shared cache of single-index Dodgson polynomials of one graph.
class DodgsonCache {
 public:
  DodgsonCache(const Graph& g, RegistryPtr reg)
      : g_(g), reg_(std::move(reg)), M_(expanded_laplacian(g, reg_)) {}

  const RegistryPtr& registry() const { return reg_; }

  /// psi^{e_i, e_j} for edge labels (symmetric).
  const MPoly& edge_pair(int i, int j) {
    auto key = std::minmax(i, j);
    auto it = edge_.find(key);
    if (it == edge_.end())
      it = edge_.emplace(key, det(M_.deleted({key.first - 1}, {key.second - 1}))).first;
    return it->second;
  }

  /// psi^{v_p, v_q} for vertex *positions* (symmetric).
  const MPoly& vertex_pair(int p, int q) {
    auto key = std::minmax(p, q);
    auto it = vertex_.find(key);
    if (it == vertex_.end()) {
      int m = g_.edge_count();
      it = vertex_.emplace(key, det(M_.deleted({m + key.first - 1}, {m + key.second - 1})))
               .first;
    }
    return it->second;
  }

 private:
  const Graph& g_;
  RegistryPtr reg_;
  PolyMatrix M_;
  std::map<std::pair<int, int>, MPoly> edge_, vertex_;
};

// ---------------------------------------------------------------------------
// Brute-force pipeline
// ---------------------------------------------------------------------------

/// rho_e = (I x)_e da_e - 2 a_e (I dx)_e over the mixed registry
/// (a_1..a_m, x_1..x_{n-1}).
inline DiffForm rho_edge(const Graph& g, int e, const RegistryPtr& mixed) {
  int m = g.edge_count();
  DiffForm f(mixed, m);
  const auto& ed = g.edge(e);
  MPoly ix = MPoly::zero(mixed);
  if (ed.head != g.v_star())
    ix += MPoly::var(mixed, m + g.vertex_position(ed.head) - 1);
  if (ed.tail != g.v_star())
    ix -= MPoly::var(mixed, m + g.vertex_position(ed.tail) - 1);
  f.add_canonical({e}, ix);
  MPoly two_a = MPoly::var(mixed, e - 1, 1, 2);
  if (ed.head != g.v_star())
    f.add_canonical({m + g.vertex_position(ed.head)}, -two_a);
  if (ed.tail != g.v_star())
    f.add_canonical({m + g.vertex_position(ed.tail)}, two_a);
  return f;
}

inline RegistryPtr mixed_registry(const Graph& g) {
  return make_mixed_registry(g.edge_count(), g.vertex_count() - 1);
}

/// Pbar = rho_1 ^ ... ^ rho_m; guard: at most 2^20 expansion terms.
inline DiffForm pbar_expand(const Graph& g, const RegistryPtr& mixed) {
  if (g.edge_count() > 20)
    throw std::invalid_argument("pbar_expand: 2^|E| term guard exceeded");
  DiffForm acc = DiffForm::scalar(mixed, g.edge_count(), MPoly::constant(mixed, 1));
  for (int e = 1; e <= g.edge_count(); ++e) acc = wedge(acc, rho_edge(g, e, mixed));
  return acc;
}

inline DiffForm pbar_expand(const Graph& g) { return pbar_expand(g, mixed_registry(g)); }

/// Keeps the terms of Pbar that contain all |V|-1 vertex differentials.
inline DiffForm p_select(const DiffForm& pbar, const Graph& g) {
  int m = g.edge_count(), k = g.vertex_count() - 1;
  DiffForm out(pbar.registry(), pbar.da_limit());
  for (const auto& [w, c] : pbar.terms()) {
    int dx_count = 0;
    for (int code : w)
      if (code > m) ++dx_count;
    if (dx_count == k) out.add_canonical(w, c);
  }
  return out;
}

namespace detail {

/// Isserlis numerator: sum over pairings of the factor list (vertex
/// positions, repetitions allowed) of products of (-1)^{p+q} psi^{v_p,v_q}.
inline MPoly isserlis_numerator(const std::vector<int>& factors, DodgsonCache& cache) {
  const RegistryPtr& reg = cache.registry();
  size_t k = factors.size();
  if (k == 0) return MPoly::constant(reg, 1);
  if (k % 2 != 0) return MPoly::zero(reg);
  MPoly acc = MPoly::zero(reg);
  for (const auto& matching : perfect_matchings(static_cast<int>(k))) {
    MPoly prod = MPoly::constant(reg, 1);
    for (auto [i, j] : matching) {
      int p = factors[i], q = factors[j];
      MPoly cov = cache.vertex_pair(p, q);
      if ((p + q) % 2 != 0) cov = -cov;
      prod *= cov;
    }
    acc += prod;
  }
  return acc;
}

/// Truncates an x-free polynomial over the mixed registry down to the
/// Schwinger-only registry.
inline MPoly project_schwinger(const MPoly& p, const RegistryPtr& areg) {
  int m = areg->size();
  MPoly out(areg);
  for (const auto& [mono, c] : p.terms()) {
    for (size_t i = m; i < mono.size(); ++i)
      if (mono[i] != 0) throw std::logic_error("project_schwinger: residual x variable");
    Mono am(mono.begin(), mono.begin() + m);
    out.add_term(am, c);
  }
  return out;
}

inline ScalarPrefactor canonical_prefactor(const Graph& g) {
  int L = g.loop_number();
  ScalarPrefactor pf = ScalarPrefactor::one(g.edge_count());
  pf.pi_half = g.vertex_count() - 1;
  pf.psi_half = -(L + 1);
  if (L % 2 == 0) {
    Rational c = 1;
    for (int i = 0; i < L; ++i) c /= 4;
    for (int i = 2; i <= L / 2; ++i) c /= i;
    pf.coeff = c;
  }
  return pf;
}

}  // namespace detail

/// Brute-force pipeline: expand Pbar, select P, integrate the Gaussian by
/// Isserlis with covariance (L^{-1})_{jk}/2, and normalize to the canonical
/// prefactor  1/(4^L (L/2)!) * pi^{(|V|-1)/2} * psi^{-(L+1)/2}  with a
/// polynomial body.
inline AlphaForm alpha_brute(const Graph& g, const RegistryPtr& areg) {
  if (!g.is_connected()) throw std::invalid_argument("alpha_brute: graph must be connected");
  int m = g.edge_count(), k = g.vertex_count() - 1, L = g.loop_number();

  AlphaForm out;
  out.prefactor = detail::canonical_prefactor(g);
  out.body = DiffForm(areg, m);
  out.pipeline = "brute";
  out.graph_hash = graph_hash(g);
  out.v_star = g.v_star();
  out.loops = L;

  RegistryPtr mixed = mixed_registry(g);
  DodgsonCache cache(g, mixed);
  DiffForm p = p_select(pbar_expand(g, mixed), g);

  // Per da word: N_W = sum over monomials of (a-part) * Isserlis numerator of
  // the x-part.  The final body is 2^{3L/2-|E|} (L/2)! * N_W / prod a_e.
  std::map<Word, MPoly> raw;
  for (const auto& [w, c] : p.terms()) {
    Word da_word;
    for (int code : w)
      if (code <= m) da_word.push_back(code);
    MPoly n_w(mixed);
    for (const auto& [mono, coeff] : c.terms()) {
      std::vector<int> factors;
      for (int j = 1; j <= k; ++j)
        for (int r = 0; r < mono[m + j - 1]; ++r) factors.push_back(j);
      if (static_cast<int>(factors.size()) != L)
        throw std::logic_error("alpha_brute: unexpected x-degree");
      if (L % 2 != 0) continue;  // odd moments vanish
      Mono amono(mono);
      for (int j = 0; j < k; ++j) amono[m + j] = 0;
      n_w += MPoly::monomial(mixed, amono, coeff) * detail::isserlis_numerator(factors, cache);
    }
    if (n_w.is_zero()) continue;
    auto it = raw.find(da_word);
    if (it == raw.end()) raw.emplace(std::move(da_word), std::move(n_w));
    else it->second += n_w;
  }
  if (L % 2 != 0) {
    if (!raw.empty()) throw std::logic_error("alpha_brute: odd loop number residue");
    return out;
  }

  // ds_e = -rho_e / (2 a_e^{3/2}), so the wedge of all ds_e carries (-1)^|E|
  Rational scale = (m % 2 == 0) ? 1 : -1;
  {
    int two_exp = 3 * L / 2 - m;
    for (int i = 0; i < two_exp; ++i) scale *= 2;
    for (int i = 0; i > two_exp; --i) scale /= 2;
    for (int i = 2; i <= L / 2; ++i) scale *= i;
  }
  MPoly all_a = MPoly::constant(mixed, 1);
  for (int e = 1; e <= m; ++e) all_a *= MPoly::var(mixed, e - 1);
  for (auto& [w, n_w] : raw) {
    MPoly b = exact_div(n_w, all_a) * scale;
    out.body.add_canonical(w, detail::project_schwinger(b, areg));
  }
  return out;
}

inline AlphaForm alpha_brute(const Graph& g) {
  return alpha_brute(g, schwinger_registry(g));
}

// ---------------------------------------------------------------------------
// Spanning-tree pipeline
// ---------------------------------------------------------------------------

struct TreeTerm {
  SpanningTree tree;
  std::vector<int> cobasis;
  int sign = 0;            // orientation sign of tree_sign()
  MPoly dodgson_sum;       // sum over S_L of edge-Dodgson products
  int distinct_matchings = 0;
};

/// Per spanning tree, the deduplicated permutation sum
///   sum_{sigma in S_L(cobasis)} psi^{s(e1),s(e2)} ... psi^{s(e_{L-1}),s(e_L)}
///   = 2^{L/2} (L/2)! * sum over the (L-1)!! distinct matchings.
/// Requires even L.
inline std::vector<TreeTerm> tree_terms(const Graph& g, DodgsonCache& cache) {
  int L = g.loop_number();
  if (L % 2 != 0) throw std::invalid_argument("tree_terms requires even loop number");
  const RegistryPtr& reg = cache.registry();
  Rational mult = 1;
  for (int i = 0; i < L / 2; ++i) mult *= 2;
  for (int i = 2; i <= L / 2; ++i) mult *= i;
  std::vector<TreeTerm> out;
  auto matchings = perfect_matchings(L);
  for (const auto& t : enumerate_spanning_trees(g)) {
    TreeTerm tt;
    tt.tree = t;
    tt.cobasis = t.cobasis;
    tt.sign = tree_sign(g, t);
    MPoly sum = MPoly::zero(reg);
    for (const auto& matching : matchings) {
      MPoly prod = MPoly::constant(reg, 1);
      for (auto [i, j] : matching)
        prod *= cache.edge_pair(t.cobasis[i], t.cobasis[j]);
      sum += prod;
    }
    tt.dodgson_sum = sum * mult;
    tt.distinct_matchings = static_cast<int>(matchings.size());
    out.push_back(std::move(tt));
  }
  return out;
}

/// Closed-form pipeline: [dTbar]alpha = det(I[T]) * dodgson_sum over the
/// canonical prefactor 1/(4^L (L/2)!) * pi^{(|V|-1)/2} * psi^{-(L+1)/2}.
inline AlphaForm alpha_tree_sum(const Graph& g, const RegistryPtr& areg) {
  int L = g.loop_number();
  AlphaForm out;
  out.prefactor = detail::canonical_prefactor(g);
  out.body = DiffForm(areg, g.edge_count());
  out.pipeline = "tree-sum";
  out.graph_hash = graph_hash(g);
  out.v_star = g.v_star();
  out.loops = L;
  if (!g.is_connected()) {
    out.note = "disconnected graph: no spanning trees, alpha = 0";
    return out;
  }
  if (L % 2 != 0) {
    out.note = "odd loop number: alpha = 0";
    return out;
  }
  DodgsonCache cache(g, areg);
  for (const auto& tt : tree_terms(g, cache)) {
    MPoly coeff = tt.dodgson_sum;
    if (tt.tree.det_sign < 0) coeff = -coeff;
    out.body.add_canonical(tt.cobasis, std::move(coeff));
  }
  return out;
}

inline AlphaForm alpha_tree_sum(const Graph& g) {
  return alpha_tree_sum(g, schwinger_registry(g));
}

struct AgreementResult {
  bool ok = false;
  std::string witness;
};

/// Exact coefficient-by-coefficient comparison of the two pipelines over the
/// shared canonical prefactor.
inline AgreementResult pipelines_agree(const Graph& g) {
  RegistryPtr areg = schwinger_registry(g);
  AlphaForm a = alpha_tree_sum(g, areg);
  AlphaForm b = alpha_brute(g, areg);
  AgreementResult r;
  if (!(a.prefactor == b.prefactor)) {
    r.witness = "prefactor mismatch";
    return r;
  }
  if (a.body == b.body) {
    r.ok = true;
    return r;
  }
  for (const auto& [w, c] : a.body.terms()) {
    auto it = b.body.terms().find(w);
    if (it == b.body.terms().end() || !(it->second == c)) {
      std::ostringstream os;
      os << "word {";
      for (int x : w) os << " " << x;
      os << " }: tree-sum " << c.to_string() << " vs brute "
         << (it == b.body.terms().end() ? std::string("0") : it->second.to_string());
      r.witness = os.str();
      return r;
    }
  }
  for (const auto& [w, c] : b.body.terms())
    if (!a.body.terms().count(w)) {
      std::ostringstream os;
      os << "extra brute word with coefficient " << c.to_string();
      r.witness = os.str();
      return r;
    }
  r.witness = "unknown mismatch";
  return r;
}

// ---------------------------------------------------------------------------
// Wedge nilpotency
// ---------------------------------------------------------------------------

struct QECoefficient {
  std::vector<int> edge_set;  // sorted 2L edges
  MPoly value;
};

inline bool edge_bound_check(const Graph& g) {
  return 2 * g.loop_number() > g.edge_count();
}

/// alpha ^ alpha, reported per 2L-edge subset after clearing the squared
/// prefactor.  Empty when 2L > |E| (no admissible subset exists).
inline std::vector<QECoefficient> wedge_self(const AlphaForm& alpha) {
  std::vector<QECoefficient> out;
  int m = alpha.body.da_limit();
  int L = alpha.loops;
  if (2 * L > m) return out;
  DiffForm sq = wedge(alpha.body, alpha.body);
  // every 2L-subset, in lexicographic order
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(pick.size()) == 2 * L) {
      QECoefficient qe;
      qe.edge_set = pick;
      auto it = sq.terms().find(pick);
      qe.value = (it != sq.terms().end())
                     ? it->second
                     : MPoly::zero(alpha.body.registry());
      out.push_back(std::move(qe));
      return;
    }
    int need = 2 * L - static_cast<int>(pick.size());
    for (int e = from; e + need - 1 <= m; ++e) {
      pick.push_back(e);
      rec(e + 1);
      pick.pop_back();
    }
  };
  rec(1);
  return out;
}

/// Q_E by the explicit triple sum: partitions E = E1 u E2, signed matchings
/// between E1 and E2, and the deduplicated permutation sums within each part.
inline MPoly qe_graph(const Graph& g, const std::vector<int>& edge_set,
                      const RegistryPtr& areg) {
  int L = g.loop_number();
  if (static_cast<int>(edge_set.size()) != 2 * L)
    throw std::invalid_argument("qe_graph: need exactly 2L distinct edges");
  std::vector<int> E = edge_set;
  std::sort(E.begin(), E.end());
  for (size_t i = 0; i < E.size(); ++i) {
    if (E[i] < 1 || E[i] > g.edge_count())
      throw std::invalid_argument("qe_graph: edge out of range");
    if (i > 0 && E[i] == E[i - 1])
      throw std::invalid_argument("qe_graph: repeated edge index");
  }
  DodgsonCache cache(g, areg);
  Rational mult = 1;  // deduplication weight of one sigma-sum
  for (int i = 0; i < L / 2; ++i) mult *= 2;
  for (int i = 2; i <= L / 2; ++i) mult *= i;
  auto intra_matchings = perfect_matchings(L);
  auto sigma_sum = [&](const std::vector<int>& part) {
    MPoly sum = MPoly::zero(areg);
    for (const auto& matching : intra_matchings) {
      MPoly prod = MPoly::constant(areg, 1);
      for (auto [i, j] : matching) prod *= cache.edge_pair(part[i], part[j]);
      sum += prod;
    }
    return sum * mult;
  };

  MPoly q = MPoly::zero(areg);
  std::vector<bool> in_e1(2 * L, false);
  std::vector<int> idx;
  std::function<void(int)> parts = [&](int from) {
    if (static_cast<int>(idx.size()) == L) {
      std::vector<int> e1, e2;
      for (int i = 0; i < 2 * L; ++i)
        (in_e1[i] ? e1 : e2).push_back(E[i]);
      std::vector<int> word = e1;
      word.insert(word.end(), e2.begin(), e2.end());
      int part_sign = sgn_perm(word);
      // signed matchings of E1 with E2
      std::vector<int> perm(L);
      std::iota(perm.begin(), perm.end(), 0);
      MPoly matched = MPoly::zero(areg);
      do {
        MPoly prod = MPoly::constant(areg, sgn_perm(perm));
        for (int i = 0; i < L; ++i) prod *= cache.edge_pair(e1[i], e2[perm[i]]);
        matched += prod;
      } while (std::next_permutation(perm.begin(), perm.end()));
      MPoly contrib = matched * sigma_sum(e1) * sigma_sum(e2);
      q += (part_sign > 0) ? contrib : -contrib;
      return;
    }
    int need = L - static_cast<int>(idx.size());
    for (int i = from; i + need - 1 < 2 * L; ++i) {
      in_e1[i] = true;
      idx.push_back(i);
      parts(i + 1);
      idx.pop_back();
      in_e1[i] = false;
    }
  };
  parts(0);
  return q;
}

inline MPoly qe_graph(const Graph& g, const std::vector<int>& edge_set) {
  return qe_graph(g, edge_set, schwinger_registry(g));
}

// ---------------------------------------------------------------------------
// Formal Q_E and cancellation certificate
// ---------------------------------------------------------------------------

/// Registry of formal symbols D_{i,j} = D_{j,i} for 1 <= i < j <= 2L.
inline RegistryPtr formal_registry(int L, std::map<std::pair<int, int>, int>* index_out) {
  auto reg = std::make_shared<VarRegistry>();
  for (int i = 1; i <= 2 * L; ++i)
    for (int j = i + 1; j <= 2 * L; ++j) {
      int id = reg->add("D" + std::to_string(i) + "_" + std::to_string(j), VarClass::Formal);
      if (index_out) (*index_out)[{i, j}] = id;
    }
  return reg;
}

namespace detail {

struct FormalContext {
  int L;
  RegistryPtr reg;
  std::map<std::pair<int, int>, int> dvar;

  explicit FormalContext(int L_) : L(L_) { reg = formal_registry(L_, &dvar); }

  int var(int i, int j) const {
    auto it = dvar.find(std::minmax(i, j));
    if (it == dvar.end()) throw std::logic_error("formal symbol index out of range");
    return it->second;
  }
};

}  // namespace detail

/// One term family of the formal sum: E1 sorted ascending and containing the
/// label 1, the dashed cross-matching E1 -> E2, and the solid matchings
/// inside E1 and E2.  Pairs and pair lists are kept sorted for canonical
/// identity.
struct QETerm {
  std::vector<int> e1;                          // sorted, e1[0] == 1
  std::vector<std::pair<int, int>> dashed;      // (e1[i], image), by e1 order
  std::vector<std::pair<int, int>> solid1, solid2;
  int sign = 0;  // sgn_perm(e1 + dashed images)

  std::vector<int> word() const {
    std::vector<int> w = e1;
    for (const auto& [a, b] : dashed) w.push_back(b);
    return w;
  }

  auto key() const { return std::tie(e1, dashed, solid1, solid2); }
  bool operator<(const QETerm& o) const { return key() < o.key(); }
  bool operator==(const QETerm& o) const { return key() == o.key(); }

  /// Multiset of all 2L factor index pairs.
  std::vector<std::pair<int, int>> factor_multiset() const {
    std::vector<std::pair<int, int>> f;
    for (auto [a, b] : dashed) f.push_back(std::minmax(a, b));
    for (auto p : solid1) f.push_back(p);
    for (auto p : solid2) f.push_back(p);
    std::sort(f.begin(), f.end());
    return f;
  }
};

/// All term families of Q_E over E = {1,..,2L}, quotiented by the
/// simultaneous E1/E2 relabeling symmetry and the exchange of the two
/// factors (canonicalized by: E1 sorted, 1 in E1).
inline std::vector<QETerm> qe_term_families(int L) {
  if (L % 2 != 0 || L < 2) throw std::invalid_argument("qe_term_families: L must be even >= 2");
  std::vector<QETerm> out;
  std::vector<int> rest;
  for (int i = 2; i <= 2 * L; ++i) rest.push_back(i);
  std::vector<int> pick;
  auto intra = perfect_matchings(L);
  std::function<void(size_t)> rec = [&](size_t from) {
    if (static_cast<int>(pick.size()) == L - 1) {
      std::vector<int> e1 = {1};
      e1.insert(e1.end(), pick.begin(), pick.end());
      std::vector<int> e2;
      std::set<int> in1(e1.begin(), e1.end());
      for (int i = 1; i <= 2 * L; ++i)
        if (!in1.count(i)) e2.push_back(i);
      std::vector<int> perm = e2;
      std::sort(perm.begin(), perm.end());
      do {
        QETerm t;
        t.e1 = e1;
        for (int i = 0; i < L; ++i) t.dashed.push_back({e1[i], perm[i]});
        std::vector<int> w = e1;
        w.insert(w.end(), perm.begin(), perm.end());
        t.sign = sgn_perm(w);
        for (const auto& m1 : intra) {
          t.solid1.clear();
          for (auto [i, j] : m1) t.solid1.push_back(std::minmax(e1[i], e1[j]));
          std::sort(t.solid1.begin(), t.solid1.end());
          for (const auto& m2 : intra) {
            t.solid2.clear();
            for (auto [i, j] : m2) t.solid2.push_back(std::minmax(e2[i], e2[j]));
            std::sort(t.solid2.begin(), t.solid2.end());
            out.push_back(t);
          }
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    for (size_t i = from; i < rest.size(); ++i) {
      pick.push_back(rest[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

/// The full formal sum with psi^{i,j} replaced by commuting symbols D_{i,j}.
/// Enumerates term families (quotient) and multiplies by the orbit weight
/// 2 * L! * (2^{L/2} (L/2)!)^2; must be the zero polynomial.
inline MPoly qe_formal(int L) {
  if (L % 2 != 0) throw std::invalid_argument("qe_formal: L must be even");
  if (L < 2 || L > 4) throw std::invalid_argument("qe_formal: guard requires 2 <= L <= 4");
  detail::FormalContext ctx(L);
  Rational weight = 2;
  for (int i = 2; i <= L; ++i) weight *= i;
  Rational dedup = 1;
  for (int i = 0; i < L / 2; ++i) dedup *= 2;
  for (int i = 2; i <= L / 2; ++i) dedup *= i;
  weight *= dedup * dedup;

  MPoly q = MPoly::zero(ctx.reg);
  for (const auto& t : qe_term_families(L)) {
    Mono mono(ctx.reg->size(), 0);
    for (auto [a, b] : t.dashed) ++mono[ctx.var(a, b)];
    for (auto [a, b] : t.solid1) ++mono[ctx.var(a, b)];
    for (auto [a, b] : t.solid2) ++mono[ctx.var(a, b)];
    q.add_term(mono, t.sign > 0 ? weight : -weight);
  }
  return q;
}

/// Literal unquotiented enumeration over all (2L)! permutations with full
/// sigma sums; used to cross-check the quotient at L = 2.
inline MPoly qe_formal_full(int L) {
  if (L % 2 != 0) throw std::invalid_argument("qe_formal_full: L must be even");
  if (L != 2) throw std::invalid_argument("qe_formal_full: only L = 2 is enumerated literally");
  detail::FormalContext ctx(L);
  MPoly q = MPoly::zero(ctx.reg);
  std::vector<int> s(2 * L);
  std::iota(s.begin(), s.end(), 1);
  std::vector<int> sigma(L);
  do {
    int sign = sgn_perm(s);
    Mono dashed(ctx.reg->size(), 0);
    for (int i = 0; i < L; ++i) ++dashed[ctx.var(s[i], s[L + i])];
    // full sigma sums within each block
    MPoly block1 = MPoly::zero(ctx.reg), block2 = MPoly::zero(ctx.reg);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      Mono m1(ctx.reg->size(), 0), m2(ctx.reg->size(), 0);
      for (int i = 0; i < L; i += 2) {
        ++m1[ctx.var(s[sigma[i]], s[sigma[i + 1]])];
        ++m2[ctx.var(s[L + sigma[i]], s[L + sigma[i + 1]])];
      }
      block1.add_term(m1, 1);
      block2.add_term(m2, 1);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    MPoly term = MPoly::monomial(ctx.reg, dashed, sign) * block1 * block2;
    q += term;
  } while (std::next_permutation(s.begin(), s.end()));
  return q;
}

struct CertificateEntry {
  QETerm term, partner;
  std::vector<int> fixed;                       // anchor and antipodal labels
  std::vector<std::pair<int, int>> swapped;     // label swaps across the axis
};

struct CancellationCertificate {
  int L = 0;
  int total_terms = 0;
  int pairs = 0;
  bool complete = false;       // every term paired, no fixed points
  bool involution_ok = false;  // partner(partner(t)) == t
  bool signs_ok = false;       // partner sign opposite
  bool multisets_ok = false;   // identical factor multiset
  std::string failure;
  std::vector<CertificateEntry> entries;  // one per unordered pair

  bool valid() const { return complete && involution_ok && signs_ok && multisets_ok; }
};

namespace detail {

/// Applies the cycle involution to one term: walk the alternating cycle that
/// contains the lowest label, anchor that label, and swap the remaining
/// labels pairwise across the anchor-antipode axis.
inline CertificateEntry certificate_partner(const QETerm& t, int L) {
  std::map<int, int> dash, solid;
  for (auto [a, b] : t.dashed) { dash[a] = b; dash[b] = a; }
  for (auto [a, b] : t.solid1) { solid[a] = b; solid[b] = a; }
  for (auto [a, b] : t.solid2) { solid[a] = b; solid[b] = a; }

  // cycle containing the lowest label (always 1), alternating dashed/solid
  std::vector<int> seq;
  int start = 1, cur = 1;
  bool use_dash = true;
  do {
    seq.push_back(cur);
    cur = use_dash ? dash[cur] : solid[cur];
    use_dash = !use_dash;
  } while (cur != start);
  if (seq.size() % 4 != 0)
    throw std::logic_error("auxiliary cycle length not divisible by 4");

  size_t len = seq.size();
  std::map<int, int> swap_map;
  for (int i = 1; i <= 2 * L; ++i) swap_map[i] = i;
  CertificateEntry entry;
  entry.term = t;
  entry.fixed = {seq[0], seq[len / 2]};
  for (size_t i = 1; i < len / 2; ++i) {
    int a = seq[i], b = seq[len - i];
    swap_map[a] = b;
    swap_map[b] = a;
    entry.swapped.push_back(std::minmax(a, b));
  }
  std::sort(entry.swapped.begin(), entry.swapped.end());

  // rebuild the partner term from the relabeled auxiliary graph
  std::set<int> new_e1;
  for (int x : t.e1) new_e1.insert(swap_map[x]);
  QETerm p;
  p.e1.assign(new_e1.begin(), new_e1.end());
  std::map<int, int> new_dash;
  for (auto [a, b] : t.dashed) {
    int x = swap_map[a], y = swap_map[b];
    if (!new_e1.count(x)) std::swap(x, y);
    new_dash[x] = y;
  }
  for (int x : p.e1) p.dashed.push_back({x, new_dash.at(x)});
  auto classify = [&](std::pair<int, int> pr) {
    std::pair<int, int> q = std::minmax(swap_map[pr.first], swap_map[pr.second]);
    bool in1 = new_e1.count(q.first) != 0;
    if (new_e1.count(q.second) != (in1 ? 1u : 0u))
      throw std::logic_error("solid edge crosses the bipartition after relabeling");
    (in1 ? p.solid1 : p.solid2).push_back(q);
  };
  for (auto pr : t.solid1) classify(pr);
  for (auto pr : t.solid2) classify(pr);
  std::sort(p.solid1.begin(), p.solid1.end());
  std::sort(p.solid2.begin(), p.solid2.end());
  p.sign = sgn_perm(p.word());
  entry.partner = std::move(p);
  return entry;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Factorization over bridges and cut vertices
// ---------------------------------------------------------------------------

/// Rewrites a polynomial into a bigger registry, sending source variable i to
/// target variable var_map[i] (both 0-based).
inline MPoly embed_vars(const MPoly& p, const std::vector<int>& var_map,
                        const RegistryPtr& target) {
  MPoly out(target);
  for (const auto& [mono, c] : p.terms()) {
    Mono m(target->size(), 0);
    for (size_t i = 0; i < mono.size(); ++i)
      if (mono[i] != 0) m[var_map.at(i)] = mono[i];
    out.add_term(m, c);
  }
  return out;
}

struct FactorizationReport {
  enum class Kind { OnePI, Disconnected, Bridge, CutVertex };
  Kind kind = Kind::OnePI;
  bool ok = false;
  int sign = 0;               // global sign s in alpha = s * pi^{off/2} a1^a2
  int split_edge = 0;         // bridge label, when Kind::Bridge
  int join_vertex = 0;        // cut vertex label, when Kind::CutVertex
  int pi_half_offset = 0;     // 1 for a bridge, 0 for a vertex join
  bool integrand_factor_ok = true;  // bridge: every spanning tree uses it
  std::string detail;
};

namespace detail {

struct Piece {
  Graph graph;
  std::vector<int> edge_map;    // new edge label -> old edge label, ascending
  std::vector<int> vertex_map;  // new vertex label -> old vertex label
};

inline Piece build_piece(const Graph& g, const std::vector<int>& vertices,
                         const std::vector<int>& edge_labels, int fallback_v_star) {
  std::vector<int> vs = vertices;
  std::sort(vs.begin(), vs.end());
  std::vector<int> vinv(g.vertex_count() + 1, 0);
  for (size_t i = 0; i < vs.size(); ++i) vinv[vs[i]] = static_cast<int>(i) + 1;
  std::vector<EdgeDef> edges;
  for (int e : edge_labels)
    edges.push_back({vinv[g.edge(e).tail], vinv[g.edge(e).head]});
  int star = vinv[g.v_star()] != 0 ? vinv[g.v_star()] : vinv[fallback_v_star];
  return {Graph(static_cast<int>(vs.size()), std::move(edges), star), edge_labels, vs};
}

}  // namespace detail

/// Verifies the factorization of alpha over the first bridge or cut vertex:
/// alpha_G = s * pi^{1/2} * alpha_1 ^ alpha_2 across a bridge, and
/// alpha_G = s * alpha_1 ^ alpha_2 across a vertex join, with s in {-1,+1}.
/// Coefficient bodies are compared exactly after clearing denominators with
/// psi_G = psi_1 * psi_2.
inline FactorizationReport factorization_check(const Graph& g) {
  FactorizationReport rep;
  ConnectivityProfile prof = connectivity_profile(g);
  if (!prof.connected) {
    rep.kind = FactorizationReport::Kind::Disconnected;
    rep.ok = alpha_tree_sum(g).is_zero();
    rep.detail = "disconnected: alpha vanishes (no spanning tree)";
    return rep;
  }
  if (prof.is_1pi) {
    rep.kind = FactorizationReport::Kind::OnePI;
    rep.ok = true;
    rep.detail = "graph is 2-connected: nothing to factor";
    return rep;
  }

  detail::Piece p1{Graph(1, {}), {}, {}}, p2{Graph(1, {}), {}, {}};
  if (!prof.bridges.empty()) {
    rep.kind = FactorizationReport::Kind::Bridge;
    rep.split_edge = prof.bridges.front();
    rep.pi_half_offset = 1;
    int be = rep.split_edge;
    // components of g with the bridge removed
    std::vector<EdgeDef> rest;
    std::vector<int> rest_labels;
    for (int e = 1; e <= g.edge_count(); ++e)
      if (e != be) {
        rest.push_back(g.edge(e));
        rest_labels.push_back(e);
      }
    Graph cut(g.vertex_count(), rest, g.v_star());
    ConnectivityProfile halves = connectivity_profile(cut);
    if (halves.components.size() != 2)
      throw std::logic_error("bridge removal must leave two components");
    std::vector<std::vector<int>> vsets(2), esets(2);
    for (int c = 0; c < 2; ++c) {
      vsets[c] = halves.component_vertices[c];
      for (int ne : halves.component_edges[c]) esets[c].push_back(rest_labels[ne - 1]);
    }
    auto side_of = [&](int v) {
      return std::count(vsets[0].begin(), vsets[0].end(), v) ? 0 : 1;
    };
    int t = g.edge(be).tail, h = g.edge(be).head;
    int fb0 = side_of(t) == 0 ? t : h;
    int fb1 = side_of(t) == 1 ? t : h;
    p1 = detail::build_piece(g, vsets[0], esets[0], fb0);
    p2 = detail::build_piece(g, vsets[1], esets[1], fb1);

    rep.integrand_factor_ok = true;
    for (const auto& tree : enumerate_spanning_trees(g))
      if (!std::binary_search(tree.edges.begin(), tree.edges.end(), be))
        rep.integrand_factor_ok = false;
  } else {
    rep.kind = FactorizationReport::Kind::CutVertex;
    int v = prof.cut_vertices.front();
    rep.join_vertex = v;
    // blocks around v: union-find over the other vertices
    int n = g.vertex_count();
    std::vector<int> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : g.edges())
      if (e.tail != v && e.head != v) parent[find(e.tail)] = find(e.head);
    auto block_root = [&](int e) {
      const auto& ed = g.edge(e);
      return find(ed.tail != v ? ed.tail : ed.head);
    };
    int first_root = block_root(1);
    std::vector<int> e1, e2, v1{v}, v2{v};
    for (int e = 1; e <= g.edge_count(); ++e)
      (block_root(e) == first_root ? e1 : e2).push_back(e);
    for (int u = 1; u <= n; ++u)
      if (u != v) (find(u) == first_root ? v1 : v2).push_back(u);
    if (e2.empty()) throw std::logic_error("cut vertex split produced one block");
    p1 = detail::build_piece(g, v1, e1, v);
    p2 = detail::build_piece(g, v2, e2, v);
  }

  RegistryPtr areg = schwinger_registry(g);
  AlphaForm whole = alpha_tree_sum(g, areg);
  AlphaForm a1 = alpha_tree_sum(p1.graph);
  AlphaForm a2 = alpha_tree_sum(p2.graph);
  int l1 = p1.graph.loop_number(), l2 = p2.graph.loop_number();

  if (a1.is_zero() || a2.is_zero()) {
    rep.ok = whole.is_zero();
    rep.detail = "a factor vanishes; whole form " +
                 std::string(whole.is_zero() ? "vanishes too" : "does not vanish");
    return rep;
  }

  // embed both factors into the edge labels of g
  auto embed_form = [&](const AlphaForm& a, const detail::Piece& p) {
    std::vector<int> vmap;
    for (int old_e : p.edge_map) vmap.push_back(old_e - 1);
    DiffForm out(areg, g.edge_count());
    for (const auto& [w, c] : a.body.terms()) {
      Word nw;
      for (int e : w) nw.push_back(p.edge_map[e - 1]);
      out.add_canonical(nw, embed_vars(c, vmap, areg));
    }
    return out;
  };
  std::vector<int> vmap1, vmap2;
  for (int e : p1.edge_map) vmap1.push_back(e - 1);
  for (int e : p2.edge_map) vmap2.push_back(e - 1);
  MPoly psi1 = embed_vars(symanzik_first(p1.graph), vmap1, areg);
  MPoly psi2 = embed_vars(symanzik_first(p2.graph), vmap2, areg);
  if (!(psi1 * psi2 == symanzik_first(g, areg)))
    throw std::logic_error("psi does not factor across the split");

  DiffForm product = wedge(embed_form(a1, p1), embed_form(a2, p2));
  MPoly clear = psi1.pow(l2 / 2) * psi2.pow(l1 / 2);
  Rational c_ratio = whole.prefactor.coeff;  // compare c_G B_W vs c1 c2 psi-shift P_W
  Rational c_parts = a1.prefactor.coeff * a2.prefactor.coeff;

  int sign = 0;
  for (const auto& [w, bw] : whole.body.terms()) {
    auto it = product.terms().find(w);
    MPoly lhs = bw * c_ratio;
    MPoly rhs = (it == product.terms().end()) ? MPoly::zero(areg)
                                              : it->second * clear * c_parts;
    int s;
    if (lhs == rhs) s = 1;
    else if (lhs == -rhs) s = -1;
    else {
      rep.ok = false;
      rep.detail = "coefficient mismatch beyond a global sign";
      return rep;
    }
    if (rhs.is_zero()) continue;
    if (sign == 0) sign = s;
    else if (sign != s) {
      rep.ok = false;
      rep.detail = "sign is not globally constant";
      return rep;
    }
  }
  for (const auto& [w, c] : product.terms())
    if (!whole.body.terms().count(w) && !c.is_zero()) {
      rep.ok = false;
      rep.detail = "product has a word missing from alpha";
      return rep;
    }
  rep.ok = true;
  rep.sign = sign;
  rep.detail = rep.kind == FactorizationReport::Kind::Bridge
                   ? "alpha = s * pi^{1/2} * alpha_1 ^ alpha_2"
                   : "alpha = s * alpha_1 ^ alpha_2";
  return rep;
}

inline CancellationCertificate cancellation_certificate(int L) {
  if (L % 2 != 0 || L < 2 || L > 4)
    throw std::invalid_argument("cancellation_certificate: L must be 2 or 4");
  CancellationCertificate cert;
  cert.L = L;
  auto families = qe_term_families(L);
  cert.total_terms = static_cast<int>(families.size());
  std::map<QETerm, int> index;
  for (size_t i = 0; i < families.size(); ++i) index.emplace(families[i], static_cast<int>(i));

  cert.complete = cert.involution_ok = cert.signs_ok = cert.multisets_ok = true;
  std::vector<int> partner_of(families.size(), -1);
  std::vector<CertificateEntry> all(families.size());
  for (size_t i = 0; i < families.size(); ++i) {
    all[i] = detail::certificate_partner(families[i], L);
    auto it = index.find(all[i].partner);
    if (it == index.end() || it->second == static_cast<int>(i)) {
      cert.complete = false;
      cert.failure = "unpaired term at index " + std::to_string(i);
      continue;
    }
    partner_of[i] = it->second;
    if (all[i].partner.sign != -families[i].sign) {
      cert.signs_ok = false;
      cert.failure = "sign not reversed at index " + std::to_string(i);
    }
    if (all[i].partner.factor_multiset() != families[i].factor_multiset()) {
      cert.multisets_ok = false;
      cert.failure = "factor multiset changed at index " + std::to_string(i);
    }
  }
  for (size_t i = 0; i < families.size(); ++i) {
    if (partner_of[i] < 0) continue;
    if (partner_of[partner_of[i]] != static_cast<int>(i)) {
      cert.involution_ok = false;
      cert.failure = "involution broken at index " + std::to_string(i);
    }
    if (partner_of[i] > static_cast<int>(i)) {
      cert.entries.push_back(all[i]);
      ++cert.pairs;
    }
  }
  if (cert.pairs * 2 != cert.total_terms) cert.complete = false;
  return cert;
}

}  // namespace af

#endif
