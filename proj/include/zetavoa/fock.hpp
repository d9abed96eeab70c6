#pragma once

/**
 * @file fock.hpp
 * @brief The bosonic Fock space S = Q[h(-1), h(-2), ...] and the Heisenberg action.
 *
 * Basis monomials h(-j1)...h(-jk).1 are indexed by partitions stored in
 * descending order, so each monomial has exactly one representation and can
 * serve as an ordered map key. Weight is the sum of the parts.
 *
 * h(n) acts by multiplication for n < 0, by n d/dh(-n) for n > 0, and as
 * zero for n = 0.
 */

#include "zetavoa/rational.hpp"
#include "zetavoa/report.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace zetavoa {

class FockMonomial {
public:
  FockMonomial() = default;
  explicit FockMonomial(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p < 1) throw std::invalid_argument("FockMonomial: parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
    for (int p : parts_) weight_ += p;
  }

  std::span<const int> parts() const { return parts_; }
  int weight() const { return weight_; }
  std::size_t length() const { return parts_.size(); }
  bool is_vacuum() const { return parts_.empty(); }

  int multiplicity(int j) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), j));
  }

  /// The monomial times h(-j).
  FockMonomial with_part(int j) const {
    FockMonomial m;
    m.parts_.reserve(parts_.size() + 1);
    auto pos = std::find_if(parts_.begin(), parts_.end(), [j](int p) { return p < j; });
    m.parts_.insert(m.parts_.end(), parts_.begin(), pos);
    m.parts_.push_back(j);
    m.parts_.insert(m.parts_.end(), pos, parts_.end());
    m.weight_ = weight_ + j;
    return m;
  }
  /// The monomial with one factor h(-j) removed; j must be present.
  FockMonomial without_part(int j) const {
    FockMonomial m(*this);
    auto it = std::find(m.parts_.begin(), m.parts_.end(), j);
    if (it == m.parts_.end()) throw std::invalid_argument("FockMonomial: part not present");
    m.parts_.erase(it);
    m.weight_ -= j;
    return m;
  }

  /// Weight first; within a weight, larger leading parts come first.
  friend bool operator<(const FockMonomial& a, const FockMonomial& b) {
    if (a.weight_ != b.weight_) return a.weight_ < b.weight_;
    return std::lexicographical_compare(b.parts_.begin(), b.parts_.end(), a.parts_.begin(), a.parts_.end());
  }
  friend bool operator==(const FockMonomial& a, const FockMonomial& b) { return a.parts_ == b.parts_; }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s + "]";
  }

private:
  std::vector<int> parts_;
  int weight_ = 0;
};

inline Json to_json(const FockMonomial& m) {
  Json a = Json::array();
  for (int p : m.parts()) a.push_back(p);
  return a;
}

class FockVector {
public:
  using Terms = std::map<FockMonomial, Rational>;

  FockVector() = default;
  explicit FockVector(const FockMonomial& m, Rational c = Rational(1)) { add_term(m, std::move(c)); }

  static FockVector vacuum() { return FockVector(FockMonomial{}); }
  static FockVector monomial(std::vector<int> parts) { return FockVector(FockMonomial(std::move(parts))); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const FockMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const FockMonomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// this += c * other
  void add_scaled(const FockVector& other, const Rational& c) {
    if (c.is_zero()) return;
    for (const auto& [m, x] : other.terms_) add_term(m, x * c);
  }

  FockVector& operator+=(const FockVector& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  FockVector& operator*=(const Rational& c) {
    if (c.is_zero()) { terms_.clear(); return *this; }
    for (auto& [m, x] : terms_) x *= c;
    return *this;
  }
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(const Rational& c, FockVector a) { return a *= c; }
  friend FockVector operator-(FockVector a) { return a *= Rational(-1); }
  friend bool operator==(const FockVector& a, const FockVector& b) { return a.terms_ == b.terms_; }

  /// Largest weight among the terms; 0 for the zero vector.
  int max_weight() const { return terms_.empty() ? 0 : terms_.rbegin()->first.weight(); }
  int min_weight() const { return terms_.empty() ? 0 : terms_.begin()->first.weight(); }

  /// Splits into weight-homogeneous pieces.
  std::map<int, FockVector> homogeneous_components() const {
    std::map<int, FockVector> out;
    for (const auto& [m, c] : terms_) out[m.weight()].add_term(m, c);
    return out;
  }

private:
  Terms terms_;
};

/// [{"monomial": [..], "coefficient": "p/q"}, ...] in basis order.
inline Json to_json(const FockVector& v) {
  Json a = Json::array();
  for (const auto& [m, c] : v.terms()) a.push_back({{"monomial", to_json(m)}, {"coefficient", c.str()}});
  return a;
}

inline FockVector fock_vector_from_json(const Json& j) {
  FockVector v;
  for (const auto& t : j) {
    std::vector<int> parts = t.at("monomial").get<std::vector<int>>();
    v.add_term(FockMonomial(parts), Rational::parse(t.at("coefficient").get<std::string>()));
  }
  return v;
}

/// h(n) on a single monomial, accumulated into `out` with factor c.
inline void h_apply_monomial(int n, const FockMonomial& m, const Rational& c, FockVector& out) {
  if (n == 0 || c.is_zero()) return;
  if (n < 0) {
    out.add_term(m.with_part(-n), c);
    return;
  }
  int mult = m.multiplicity(n);
  if (mult == 0) return;
  out.add_term(m.without_part(n), c * Rational(static_cast<long>(n) * mult));
}

inline FockVector h_apply(int n, const FockVector& v) {
  FockVector out;
  for (const auto& [m, c] : v.terms()) h_apply_monomial(n, m, c, out);
  return out;
}

/// Common weight of a nonzero homogeneous vector.
inline int weight(const FockVector& v) {
  if (v.is_zero()) throw std::invalid_argument("weight: zero vector has no weight");
  int w = v.terms().begin()->first.weight();
  for (const auto& [m, c] : v.terms())
    if (m.weight() != w) throw std::invalid_argument("weight: vector is not homogeneous");
  return w;
}

/// Partitions of w, larger leading parts first.
inline std::vector<FockMonomial> basis_at_weight(int w) {
  std::vector<FockMonomial> out;
  if (w < 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int maxpart) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(w, w);
  return out;
}

/// All monomials of weight <= W, ordered by weight then leading part.
inline std::vector<FockMonomial> basis(int W) {
  if (W < 0) throw std::invalid_argument("basis: W must be >= 0");
  std::vector<FockMonomial> out;
  for (int w = 0; w <= W; ++w) {
    auto b = basis_at_weight(w);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

/// Finitely supported element of Q[t, t^-1].
class LaurentPolyVector {
public:
  using Terms = std::map<int, Rational>;

  LaurentPolyVector() = default;
  static LaurentPolyVector monomial(int power, Rational c = Rational(1)) {
    LaurentPolyVector p;
    p.add_term(power, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int power) const {
    auto it = terms_.find(power);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  void add_term(int power, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(power, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  LaurentPolyVector& operator+=(const LaurentPolyVector& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
  }
  LaurentPolyVector& operator-=(const LaurentPolyVector& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, -c);
    return *this;
  }
  friend LaurentPolyVector operator+(LaurentPolyVector a, const LaurentPolyVector& b) { return a += b; }
  friend LaurentPolyVector operator-(LaurentPolyVector a, const LaurentPolyVector& b) { return a -= b; }
  friend LaurentPolyVector operator*(const Rational& c, LaurentPolyVector a) {
    LaurentPolyVector r;
    for (const auto& [p, x] : a.terms_) r.add_term(p, x * c);
    return r;
  }
  friend bool operator==(const LaurentPolyVector& a, const LaurentPolyVector& b) = default;

private:
  Terms terms_;
};

inline Json to_json(const LaurentPolyVector& p) {
  Json a = Json::array();
  for (const auto& [k, c] : p.terms()) a.push_back({k, c.str()});
  return a;
}

/// D = t d/dt applied `times` times.
inline LaurentPolyVector apply_D(const LaurentPolyVector& p, int times = 1) {
  LaurentPolyVector r;
  for (const auto& [k, c] : p.terms()) r.add_term(k, c * ipow(k, times));
  return r;
}

/// Multiplication by t^n.
inline LaurentPolyVector shift_t(const LaurentPolyVector& p, int n) {
  LaurentPolyVector r;
  for (const auto& [k, c] : p.terms()) r.add_term(k + n, c);
  return r;
}

/// (-1)^{r+1} D^r (t^n D) D^r applied to p.
inline LaurentPolyVector diff_op_apply(int r, int n, const LaurentPolyVector& p) {
  if (r < 0) throw std::invalid_argument("diff_op_apply: r must be >= 0");
  LaurentPolyVector q = apply_D(shift_t(apply_D(p, r + 1), n), r);
  return Rational(r % 2 ? 1 : -1) * q;
}

}  // namespace zetavoa

template <>
struct std::hash<zetavoa::FockMonomial> {
  std::size_t operator()(const zetavoa::FockMonomial& m) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (int p : m.parts()) h = (h ^ static_cast<std::size_t>(p)) * 0x100000001b3ull;
    return h;
  }
};
