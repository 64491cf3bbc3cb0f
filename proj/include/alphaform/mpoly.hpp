#ifndef ALPHAFORM_MPOLY_HPP
#define ALPHAFORM_MPOLY_HPP

/// Sparse multivariate polynomials over arbitrary-precision rationals.
///
/// Monomials are dense exponent vectors against a shared VarRegistry and are
/// ordered graded-lexicographically, which fixes a canonical term order for
/// serialization and for leading-term division.  No floating point anywhere.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace af {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class VarClass {
  Schwinger,   // edge variable a_e
  Position,    // integration variable x_j
  Dot,         // opaque momentum dot product s_{jk}
  Mass,        // opaque squared mass mu_e
  Formal,      // formal Dodgson symbol D_{i,j}
};

/// Registry of named variables; polynomials refer to it by shared pointer and
/// refuse mixed-registry arithmetic.
class VarRegistry {
 public:
  int add(std::string name, VarClass cls) {
    if (index_.count(name)) throw std::invalid_argument("duplicate variable: " + name);
    int id = static_cast<int>(names_.size());
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    classes_.push_back(cls);
    return id;
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  VarClass cls(int i) const { return classes_.at(i); }

  int index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::out_of_range("unknown variable: " + name);
    return it->second;
  }
  bool has(const std::string& name) const { return index_.count(name) != 0; }

 private:
  std::vector<std::string> names_;
  std::vector<VarClass> classes_;
  std::map<std::string, int> index_;
};

using RegistryPtr = std::shared_ptr<const VarRegistry>;

/// a_1..a_m
inline RegistryPtr make_schwinger_registry(int m) {
  auto reg = std::make_shared<VarRegistry>();
  for (int e = 1; e <= m; ++e) reg->add("a" + std::to_string(e), VarClass::Schwinger);
  return reg;
}

/// a_1..a_m, x_1..x_n (positions of non-star vertices)
inline RegistryPtr make_mixed_registry(int m, int n) {
  auto reg = std::make_shared<VarRegistry>();
  for (int e = 1; e <= m; ++e) reg->add("a" + std::to_string(e), VarClass::Schwinger);
  for (int j = 1; j <= n; ++j) reg->add("x" + std::to_string(j), VarClass::Position);
  return reg;
}

using Mono = std::vector<int32_t>;

struct GradedLex {
  bool operator()(const Mono& a, const Mono& b) const {
    long da = std::accumulate(a.begin(), a.end(), 0L);
    long db = std::accumulate(b.begin(), b.end(), 0L);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

class MPoly;
MPoly exact_div(const MPoly& num, const MPoly& den);

struct DivisionError : std::runtime_error {
  explicit DivisionError(std::string witness)
      : std::runtime_error("inexact polynomial division; remainder witness: " + witness),
        remainder_witness(std::move(witness)) {}
  std::string remainder_witness;
};

class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(RegistryPtr reg) : reg_(std::move(reg)) {}

  static MPoly zero(RegistryPtr reg) { return MPoly(std::move(reg)); }

  static MPoly constant(RegistryPtr reg, Rational c) {
    MPoly p(std::move(reg));
    if (c != 0) p.terms_.emplace(Mono(p.reg_->size(), 0), std::move(c));
    return p;
  }

  static MPoly var(RegistryPtr reg, int idx, int exp = 1, Rational c = 1) {
    MPoly p(std::move(reg));
    if (c != 0) {
      Mono m(p.reg_->size(), 0);
      m.at(idx) = exp;
      p.terms_.emplace(std::move(m), std::move(c));
    }
    return p;
  }

  static MPoly monomial(RegistryPtr reg, Mono m, Rational c) {
    MPoly p(std::move(reg));
    if (static_cast<int>(m.size()) != p.reg_->size())
      throw std::invalid_argument("monomial width mismatch");
    if (c != 0) p.terms_.emplace(std::move(m), std::move(c));
    return p;
  }

  const RegistryPtr& registry() const { return reg_; }
  const std::map<Mono, Rational, GradedLex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  long total_degree() const {
    long d = -1;
    for (const auto& [m, c] : terms_)
      d = std::max(d, std::accumulate(m.begin(), m.end(), 0L));
    return d;
  }

  bool is_homogeneous() const {
    long d = -2;
    for (const auto& [m, c] : terms_) {
      long t = std::accumulate(m.begin(), m.end(), 0L);
      if (d == -2) d = t;
      else if (t != d) return false;
    }
    return true;
  }

  void add_term(const Mono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MPoly& operator+=(const MPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { a += b; return a; }
  friend MPoly operator-(MPoly a, const MPoly& b) { a -= b; return a; }
  MPoly operator-() const {
    MPoly r(reg_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check(b);
    MPoly r(a.reg_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Mono m(ma);
        for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  MPoly& operator*=(const MPoly& o) { *this = *this * o; return *this; }

  MPoly& operator*=(const Rational& c) {
    if (c == 0) { terms_.clear(); return *this; }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }
  friend MPoly operator*(MPoly a, const Rational& c) { a *= c; return a; }
  friend MPoly operator*(const Rational& c, MPoly a) { a *= c; return a; }

  MPoly pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative power");
    MPoly r = constant(reg_, 1);
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
  }

  bool operator==(const MPoly& o) const {
    check(o);
    return terms_ == o.terms_;
  }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  /// Exact evaluation; `values[i]` substitutes variable i.
  Rational eval(const std::vector<Rational>& values) const {
    if (static_cast<int>(values.size()) != reg_->size())
      throw std::invalid_argument("eval: value count mismatch");
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (size_t i = 0; i < m.size(); ++i)
        for (int32_t k = 0; k < m[i]; ++k) t *= values[i];
      acc += t;
    }
    return acc;
  }

  /// Canonical text form, graded-lex descending, e.g. "3*a1^2*a2 - 1/2*a3".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      bool neg = c < 0;
      Rational ac = neg ? Rational(-c) : c;
      if (out.empty()) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      std::string vars;
      for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += reg_->name(static_cast<int>(i));
        if (m[i] != 1) vars += "^" + std::to_string(m[i]);
      }
      if (vars.empty()) out += ac.str();
      else if (ac == 1) out += vars;
      else out += ac.str() + "*" + vars;
    }
    return out;
  }

  friend MPoly exact_div(const MPoly& num, const MPoly& den);

 private:
  void check(const MPoly& o) const {
    if (reg_ != o.reg_) throw std::invalid_argument("registry mismatch in polynomial arithmetic");
  }

  RegistryPtr reg_;
  std::map<Mono, Rational, GradedLex> terms_;
};

/// Exact division num / den; throws DivisionError carrying the nonzero
/// remainder reached when the division is not exact.
inline MPoly exact_div(const MPoly& num, const MPoly& den) {
  if (num.registry() != den.registry())
    throw std::invalid_argument("registry mismatch in exact_div");
  if (den.is_zero()) throw std::invalid_argument("division by zero polynomial");
  MPoly q(num.registry());
  MPoly r = num;
  const auto& dlt = *den.terms_.rbegin();
  while (!r.is_zero()) {
    const auto& rlt = *r.terms_.rbegin();
    Mono qm(rlt.first);
    bool divisible = true;
    for (size_t i = 0; i < qm.size(); ++i) {
      qm[i] -= dlt.first[i];
      if (qm[i] < 0) { divisible = false; break; }
    }
    if (!divisible) throw DivisionError(r.to_string());
    Rational qc = rlt.second / dlt.second;
    MPoly t = MPoly::monomial(num.registry(), qm, qc);
    q += t;
    r -= t * den;
  }
  return q;
}

}  // namespace af

#endif
