#ifndef ALPHAFORM_FORMS_HPP
#define ALPHAFORM_FORMS_HPP

/// Exterior algebra with MPoly coefficients, plus the scalar prefactor group
/// for half-integer powers of pi, psi and the edge variables.
///
/// Generators are encoded as integers with the hard-coded total order
/// "all da before all dx": da_e -> e (1..m), dx at position p -> m + p.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mpoly.hpp"

namespace af {

struct Generator {
  bool is_da = true;
  int index = 0;  // edge label, or vertex position

  static int encode(const Generator& g, int da_limit) {
    return g.is_da ? g.index : da_limit + g.index;
  }
  static Generator decode(int code, int da_limit) {
    if (code <= da_limit) return {true, code};
    return {false, code - da_limit};
  }
};

using Word = std::vector<int>;  // strictly ascending generator codes

/// Sign of sorting the concatenation of two ascending words; 0 on overlap.
inline int shuffle_sign(const Word& w1, const Word& w2) {
  int sign = 1;
  size_t i = 0, j = 0;
  while (i < w1.size() && j < w2.size()) {
    if (w1[i] == w2[j]) return 0;
    if (w1[i] < w2[j]) {
      ++i;
    } else {
      // w2[j] jumps over the remaining entries of w1
      if ((w1.size() - i) % 2 != 0) sign = -sign;
      ++j;
    }
  }
  return sign;
}

/// Sorts an arbitrary generator word, returning (sign, ascending word);
/// sign 0 when a generator repeats.
inline std::pair<int, Word> canonicalize(Word w) {
  int sign = 1;
  for (size_t i = 1; i < w.size(); ++i)
    for (size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
      std::swap(w[j], w[j - 1]);
      sign = -sign;
    }
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return {0, {}};
  return {sign, std::move(w)};
}

class DiffForm {
 public:
  DiffForm() = default;
  DiffForm(RegistryPtr reg, int da_limit) : reg_(std::move(reg)), da_limit_(da_limit) {}

  const RegistryPtr& registry() const { return reg_; }
  int da_limit() const { return da_limit_; }
  const std::map<Word, MPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  static DiffForm scalar(RegistryPtr reg, int da_limit, MPoly c) {
    DiffForm f(std::move(reg), da_limit);
    f.add_canonical({}, std::move(c));
    return f;
  }

  /// Adds coeff * (ascending word); drops zero results.
  void add_canonical(Word w, MPoly coeff) {
    if (coeff.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(std::move(w), std::move(coeff));
    } else {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Adds coeff * (arbitrary word), canonicalizing with sign.
  void add_term(const Word& w, const MPoly& coeff) {
    auto [sign, cw] = canonicalize(w);
    if (sign == 0) return;
    add_canonical(std::move(cw), sign > 0 ? coeff : -coeff);
  }

  DiffForm& operator+=(const DiffForm& o) {
    for (const auto& [w, c] : o.terms_) add_canonical(w, c);
    return *this;
  }
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { a += b; return a; }

  DiffForm operator-() const {
    DiffForm r(reg_, da_limit_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
  }

  DiffForm operator*(const MPoly& p) const {
    DiffForm r(reg_, da_limit_);
    for (const auto& [w, c] : terms_) r.add_canonical(w, c * p);
    return r;
  }

  bool operator==(const DiffForm& o) const { return terms_ == o.terms_; }

 private:
  RegistryPtr reg_;
  int da_limit_ = 0;
  std::map<Word, MPoly> terms_;
};

inline DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  if (a.registry() != b.registry())
    throw std::invalid_argument("wedge: registry mismatch");
  DiffForm r(a.registry(), a.da_limit());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      int s = shuffle_sign(wa, wb);
      if (s == 0) continue;
      Word w;
      w.reserve(wa.size() + wb.size());
      std::merge(wa.begin(), wa.end(), wb.begin(), wb.end(), std::back_inserter(w));
      MPoly c = ca * cb;
      r.add_canonical(std::move(w), s > 0 ? std::move(c) : -c);
    }
  return r;
}

/// Exact scalar c * pi^{pi_half/2} * psi^{psi_half/2} * prod a_e^{a_half/2};
/// all exponents stored doubled so no radical ever materializes.
struct ScalarPrefactor {
  Rational coeff = 1;
  int pi_half = 0;
  int psi_half = 0;
  std::vector<int> a_half;  // per edge, doubled exponents

  static ScalarPrefactor one(int edge_count) {
    ScalarPrefactor p;
    p.a_half.assign(edge_count, 0);
    return p;
  }

  bool operator==(const ScalarPrefactor&) const = default;

  std::string to_string(bool with_pi = false) const {
    auto half = [](int h) {
      if (h % 2 == 0) return std::to_string(h / 2);
      return std::to_string(h) + "/2";
    };
    std::string out = "(" + coeff.str() + ")";
    if (with_pi && pi_half != 0) out += " * pi^" + half(pi_half);
    if (psi_half != 0) out += " * psi^" + half(psi_half);
    for (size_t e = 0; e < a_half.size(); ++e)
      if (a_half[e] != 0)
        out += " * a" + std::to_string(e + 1) + "^" + half(a_half[e]);
    return out;
  }
};

inline ScalarPrefactor prefactor_mul(const ScalarPrefactor& x, const ScalarPrefactor& y) {
  if (x.a_half.size() != y.a_half.size())
    throw std::invalid_argument("prefactor_mul: edge count mismatch");
  ScalarPrefactor r = x;
  r.coeff *= y.coeff;
  r.pi_half += y.pi_half;
  r.psi_half += y.psi_half;
  for (size_t i = 0; i < r.a_half.size(); ++i) r.a_half[i] += y.a_half[i];
  return r;
}

inline ScalarPrefactor prefactor_square(const ScalarPrefactor& x) {
  return prefactor_mul(x, x);
}

struct AlphaForm {
  ScalarPrefactor prefactor;
  DiffForm body;  // dA generators only
  std::string pipeline;
  std::string note;  // e.g. why the form is identically zero
  std::uint64_t graph_hash = 0;
  int v_star = 0;
  int loops = 0;

  bool is_zero() const { return body.is_zero(); }
};

}  // namespace af

#endif
