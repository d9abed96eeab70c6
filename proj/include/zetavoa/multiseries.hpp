#pragma once

/**
 * @file multiseries.hpp
 * @brief Sparse multivariate formal series with an explicit region of knowledge.
 *
 * Each variable carries a policy:
 *   - truncated: a power-series variable known for exponents 0..order;
 *     negative exponents are known to vanish.
 *   - window: a Laurent variable known exactly on [lo, hi] and unknown
 *     outside (a doubly infinite series restricted to a verified window).
 * Graded variables may additionally share a cap on their total degree.
 *
 * Terms outside the region are never stored, and reading a coefficient
 * outside the region throws UncertifiedRegion. Inside the region an absent
 * key is an exact zero.
 */

#include "zetavoa/errors.hpp"
#include "zetavoa/fock.hpp"
#include "zetavoa/power_series.hpp"
#include "zetavoa/rational.hpp"
#include "zetavoa/report.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zetavoa {

inline bool coeff_is_zero(const Rational& c) { return c.is_zero(); }
inline bool coeff_is_zero(const FockVector& c) { return c.is_zero(); }
inline Rational scaled(const Rational& c, const Rational& k) { return c * k; }
inline FockVector scaled(const FockVector& c, const Rational& k) { return k * c; }
inline Json coeff_to_json(const Rational& c) { return c.str(); }
inline Json coeff_to_json(const FockVector& c) { return to_json(c); }

enum class VarPolicy { truncated, window };

struct VarSpec {
  /// Stand-in for an unbounded window edge (a fully known Laurent polynomial).
  static constexpr int unbounded = std::numeric_limits<int>::max() / 4;

  std::string name;
  VarPolicy policy = VarPolicy::truncated;
  int lo = 0;
  int hi = 0;
  bool graded = true;  // counts toward the total-degree cap

  static VarSpec truncated(std::string name, int order) {
    if (order < 0) throw std::invalid_argument("VarSpec: truncation order must be >= 0");
    return {std::move(name), VarPolicy::truncated, 0, order, true};
  }
  static VarSpec window(std::string name, int lo, int hi, bool graded = false) {
    if (lo > hi) throw std::invalid_argument("VarSpec: window with lo > hi");
    return {std::move(name), VarPolicy::window, lo, hi, graded};
  }
  static VarSpec laurent(std::string name) { return window(std::move(name), -unbounded, unbounded); }

  bool known_zero(int e) const { return policy == VarPolicy::truncated && e < 0; }
  bool contains(int e) const { return e >= lo && e <= hi; }
  /// Same variable with its known range moved by `shift` and narrowed to [lo+a, hi+b].
  VarSpec shifted(int a, int b) const {
    VarSpec v = *this;
    if (lo > -unbounded) v.lo = lo + a;
    if (hi < unbounded) v.hi = hi + b;
    if (policy == VarPolicy::truncated) v.lo = 0;
    if (v.hi < v.lo) throw UncertifiedRegion("VarSpec: region of " + name + " became empty");
    return v;
  }
};

using Exponents = std::vector<int>;

template <class C>
class MultiSeries {
public:
  using Terms = std::map<Exponents, C>;

  MultiSeries() = default;
  explicit MultiSeries(std::vector<VarSpec> vars, std::optional<int> total_cap = std::nullopt)
      : vars_(std::move(vars)), cap_(total_cap) {}

  const std::vector<VarSpec>& vars() const { return vars_; }
  const std::optional<int>& total_cap() const { return cap_; }
  const Terms& terms() const { return terms_; }
  std::size_t arity() const { return vars_.size(); }

  std::size_t var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return i;
    throw std::invalid_argument("MultiSeries: no variable named " + name);
  }

  int graded_total(const Exponents& e) const {
    int t = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].graded) t += e[i];
    return t;
  }

  /// True when the coefficient at e is certainly zero by policy alone.
  bool known_zero(const Exponents& e) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].known_zero(e[i])) return true;
    return false;
  }

  bool in_region(const Exponents& e) const {
    if (e.size() != vars_.size()) throw std::invalid_argument("MultiSeries: exponent arity mismatch");
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (!vars_[i].contains(e[i])) return false;
    return !cap_ || graded_total(e) <= *cap_;
  }

  /// Whether the coefficient at e is exactly determined.
  bool certified(const Exponents& e) const { return known_zero(e) || in_region(e); }

  C coefficient(const Exponents& e) const {
    if (known_zero(e)) return C{};
    if (!in_region(e)) throw UncertifiedRegion("MultiSeries: coefficient " + describe(e) + " outside the certified region");
    auto it = terms_.find(e);
    return it == terms_.end() ? C{} : it->second;
  }

  /// Accumulates c at e. Contributions outside the region are discarded,
  /// since the region already marks those coefficients as unknown.
  void add_term(const Exponents& e, const C& c) {
    if (coeff_is_zero(c) || known_zero(e) || !in_region(e)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  MultiSeries& operator+=(const MultiSeries& o) { return add_scaled(o, Rational(1)); }
  MultiSeries& operator-=(const MultiSeries& o) { return add_scaled(o, Rational(-1)); }

  /// this += k * o; the region becomes the intersection of both regions.
  MultiSeries& add_scaled(const MultiSeries& o, const Rational& k) {
    if (o.vars_.size() != vars_.size()) throw std::invalid_argument("MultiSeries: arity mismatch");
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].name != o.vars_[i].name || vars_[i].policy != o.vars_[i].policy)
        throw std::invalid_argument("MultiSeries: variable mismatch");
      vars_[i].lo = std::max(vars_[i].lo, o.vars_[i].lo);
      vars_[i].hi = std::min(vars_[i].hi, o.vars_[i].hi);
    }
    if (o.cap_) cap_ = cap_ ? std::min(*cap_, *o.cap_) : *o.cap_;
    prune();
    for (const auto& [e, c] : o.terms_) add_term(e, scaled(c, k));
    return *this;
  }

  MultiSeries scaled_by(const Rational& k) const {
    MultiSeries r(vars_, cap_);
    for (const auto& [e, c] : terms_) r.add_term(e, scaled(c, k));
    return r;
  }

  /// d/d(var). The known range moves down by one in that variable.
  MultiSeries derivative(const std::string& var) const {
    std::size_t i = var_index(var);
    std::vector<VarSpec> vars = vars_;
    vars[i] = vars_[i].shifted(-1, -1);
    std::optional<int> cap = cap_;
    if (cap && vars_[i].graded) *cap -= 1;
    MultiSeries r(std::move(vars), cap);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents f = e;
      f[i] -= 1;
      r.add_term(f, scaled(c, Rational(e[i])));
    }
    return r;
  }

  /// var * d/d(var): multiplies the coefficient at e by e[var].
  MultiSeries euler(const std::string& var) const {
    std::size_t i = var_index(var);
    MultiSeries r(vars_, cap_);
    for (const auto& [e, c] : terms_) r.add_term(e, scaled(c, Rational(e[i])));
    return r;
  }

  /// Narrows the region; terms that fall outside are dropped.
  void restrict_var(std::size_t i, int lo, int hi) {
    vars_[i].lo = std::max(vars_[i].lo, lo);
    vars_[i].hi = std::min(vars_[i].hi, hi);
    prune();
  }
  void restrict_cap(int cap) {
    cap_ = cap_ ? std::min(*cap_, cap) : cap;
    prune();
  }

  friend bool operator==(const MultiSeries& a, const MultiSeries& b) {
    return a.terms_ == b.terms_;
  }

  std::string describe(const Exponents& e) const {
    std::string s;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (i) s += " ";
      s += vars_[i].name + "^" + std::to_string(e[i]);
    }
    return s;
  }

  Json exponents_json(const Exponents& e) const {
    Json j = Json::object();
    for (std::size_t i = 0; i < vars_.size(); ++i) j[vars_[i].name] = e[i];
    return j;
  }

  /// [{exponents: {var: int}, coefficient: ...}, ...] in key order.
  Json to_json() const {
    Json a = Json::array();
    for (const auto& [e, c] : terms_) a.push_back({{"exponents", exponents_json(e)}, {"coefficient", coeff_to_json(c)}});
    return a;
  }

private:
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = in_region(it->first) ? std::next(it) : terms_.erase(it);
  }

  std::vector<VarSpec> vars_;
  std::optional<int> cap_;
  Terms terms_;
};

using RationalSeries = MultiSeries<Rational>;
using FockSeries = MultiSeries<FockVector>;

/// Every exponent vector with entries in [0, bound_i] and (graded) total <= cap.
inline void for_each_bounded(const std::vector<int>& bounds, int cap, const std::function<void(const Exponents&)>& fn) {
  Exponents e(bounds.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == bounds.size()) {
      fn(e);
      return;
    }
    for (int k = 0; k <= bounds[i] && used + k <= cap; ++k) {
      e[i] = k;
      rec(i + 1, used + k);
    }
    e[i] = 0;
  };
  rec(0, 0);
}

/**
 * delta(r) = sum_n r^n for the monomial r = prod x_i^{ratio_i} over window
 * variables: coefficient 1 at every n * ratio inside the window, and 0 at
 * every other cell of the window.
 */
inline RationalSeries delta_series(const std::vector<VarSpec>& vars, const Exponents& ratio, bool nonneg_only = false) {
  if (ratio.size() != vars.size()) throw std::invalid_argument("delta_series: ratio arity mismatch");
  if (std::all_of(ratio.begin(), ratio.end(), [](int a) { return a == 0; }))
    throw std::invalid_argument("delta_series: ratio must be a nontrivial monomial");
  for (const auto& v : vars)
    if (v.policy != VarPolicy::window || v.lo <= -VarSpec::unbounded || v.hi >= VarSpec::unbounded)
      throw std::invalid_argument("delta_series: needs bounded window variables");
  RationalSeries s(vars);
  // n ranges over the values that keep every component in its window
  int nlo = std::numeric_limits<int>::min() / 4, nhi = std::numeric_limits<int>::max() / 4;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    int a = ratio[i];
    if (a == 0) {
      if (!vars[i].contains(0)) return s;
      continue;
    }
    int l = a > 0 ? -((-vars[i].lo) / a) : -(vars[i].hi / -a);
    int h = a > 0 ? vars[i].hi / a : (-vars[i].lo) / -a;
    // integer division above truncates toward zero; tighten to the true bounds
    while (static_cast<long>(l) * a < vars[i].lo || static_cast<long>(l) * a > vars[i].hi) ++l;
    while (static_cast<long>(h) * a < vars[i].lo || static_cast<long>(h) * a > vars[i].hi) --h;
    nlo = std::max(nlo, l);
    nhi = std::min(nhi, h);
  }
  if (nonneg_only) nlo = std::max(nlo, 0);
  for (int n = nlo; n <= nhi; ++n) {
    Exponents e(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) e[i] = n * ratio[i];
    s.add_term(e, Rational(1));
  }
  return s;
}

/// 1/(1 - r) expanded in nonnegative powers of the monomial r.
inline RationalSeries geometric_series(const std::vector<VarSpec>& vars, const Exponents& ratio) {
  return delta_series(vars, ratio, true);
}

/**
 * Product with a fully known Laurent polynomial p (finite support). A window
 * [lo, hi] of the series becomes [lo + max p, hi + min p] in each variable,
 * the cells reachable only from known coefficients.
 */
template <class C>
MultiSeries<C> multiply_polynomial(const std::map<Exponents, Rational>& p, const MultiSeries<C>& f) {
  if (p.empty()) throw std::invalid_argument("multiply_polynomial: empty polynomial");
  std::vector<VarSpec> vars = f.vars();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    int pmin = std::numeric_limits<int>::max(), pmax = std::numeric_limits<int>::min();
    for (const auto& [e, c] : p) {
      pmin = std::min(pmin, e[i]);
      pmax = std::max(pmax, e[i]);
    }
    if (vars[i].policy == VarPolicy::truncated && pmin < 0)
      throw std::invalid_argument("multiply_polynomial: negative power of a truncated variable");
    vars[i] = vars[i].shifted(pmax, pmin);
  }
  std::optional<int> cap = f.total_cap();
  if (cap) {
    int tmin = std::numeric_limits<int>::max();
    for (const auto& [e, c] : p) {
      int t = 0;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].graded) t += e[i];
      tmin = std::min(tmin, t);
    }
    *cap += tmin;
  }
  MultiSeries<C> r(std::move(vars), cap);
  for (const auto& [pe, pc] : p)
    for (const auto& [fe, fc] : f.terms()) {
      Exponents e = fe;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += pe[i];
      r.add_term(e, scaled(fc, pc));
    }
  return r;
}

/**
 * Product of a power series (every variable truncated) with any series over
 * the same variables: orders and caps take the minimum.
 */
template <class C>
MultiSeries<C> multiply(const RationalSeries& a, const MultiSeries<C>& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("multiply: arity mismatch");
  std::vector<VarSpec> vars = b.vars();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (a.vars()[i].policy != VarPolicy::truncated || b.vars()[i].policy != VarPolicy::truncated)
      throw std::invalid_argument("multiply: both factors must be power series");
    vars[i].hi = std::min(vars[i].hi, a.vars()[i].hi);
  }
  std::optional<int> cap = b.total_cap();
  if (a.total_cap()) cap = cap ? std::min(*cap, *a.total_cap()) : *a.total_cap();
  MultiSeries<C> r(std::move(vars), cap);
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      if (!r.in_region(e)) continue;
      r.add_term(e, scaled(cb, ca));
    }
  return r;
}

/// exp(sum_i c_i y_i) over truncated variables through total degree `cap`.
inline RationalSeries linear_exponential(const std::vector<VarSpec>& vars, const std::vector<Rational>& c, int cap) {
  if (c.size() != vars.size()) throw std::invalid_argument("linear_exponential: arity mismatch");
  std::vector<int> bounds;
  for (const auto& v : vars) {
    if (v.policy != VarPolicy::truncated) throw std::invalid_argument("linear_exponential: truncated variables only");
    bounds.push_back(v.hi);
  }
  RationalSeries s(vars, cap);
  for_each_bounded(bounds, cap, [&](const Exponents& e) {
    Rational t(1);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (c[i].is_zero()) return;
      t *= c[i].pow(e[i]) / Rational(factorial(static_cast<unsigned long>(e[i])));
    }
    s.add_term(e, t);
  });
  return s;
}

/// f(sum_i c_i y_i) for a univariate power series f, through total degree `cap`.
inline RationalSeries substitute_linear(const PowerSeries& f, const std::vector<VarSpec>& vars,
                                        const std::vector<Rational>& c, int cap) {
  if (cap > f.order()) throw TruncationError("substitute_linear: series order below requested degree");
  // f(L) = sum_t f_t L^t, and L^t = t! [degree-t part of exp(L)]
  RationalSeries e = linear_exponential(vars, c, cap);
  RationalSeries s(vars, cap);
  for (const auto& [ex, v] : e.terms()) {
    int t = e.graded_total(ex);
    s.add_term(ex, v * f.coeff(t) * Rational(factorial(static_cast<unsigned long>(t))));
  }
  return s;
}

namespace detail {

inline std::vector<VarSpec> with_new_var(std::vector<VarSpec> vars, const VarSpec& y) {
  for (const auto& v : vars)
    if (v.name == y.name) throw std::invalid_argument("series already has a variable named " + y.name);
  if (y.policy != VarPolicy::truncated) throw std::invalid_argument("new variable must be truncated");
  vars.push_back(y);
  return vars;
}

}  // namespace detail

/**
 * e^{y d/dx} f = f(x + y), with (x + y)^e expanded in nonnegative powers of
 * y: the coefficient of y^k x^e is C(e + k, k) f_{e+k}. A window [lo, hi]
 * in x shrinks to [lo, hi - order(y)] so every reported cell is exact.
 */
template <class C>
MultiSeries<C> apply_taylor(const VarSpec& y, const MultiSeries<C>& f, const std::string& x) {
  std::size_t xi = f.var_index(x);
  if (f.vars()[xi].policy != VarPolicy::window) throw std::invalid_argument("apply_taylor: x must be a window variable");
  std::vector<VarSpec> vars = detail::with_new_var(f.vars(), y);
  vars[xi] = vars[xi].shifted(0, -y.hi);
  std::optional<int> cap = f.total_cap();
  if (cap) *cap += y.hi;
  MultiSeries<C> r(std::move(vars), cap);
  for (const auto& [e, c] : f.terms())
    for (int k = 0; k <= y.hi; ++k) {
      Exponents g = e;
      g[xi] -= k;
      g.push_back(k);
      r.add_term(g, scaled(c, binomial(e[xi], k)));
    }
  return r;
}

/// e^{y x d/dx} f = f(e^y x): the coefficient of y^k x^n is n^k/k! f_n.
template <class C>
MultiSeries<C> apply_dilation(const VarSpec& y, const MultiSeries<C>& f, const std::string& x) {
  std::size_t xi = f.var_index(x);
  std::vector<VarSpec> vars = detail::with_new_var(f.vars(), y);
  std::optional<int> cap = f.total_cap();
  if (cap) *cap += y.hi;
  MultiSeries<C> r(std::move(vars), cap);
  for (const auto& [e, c] : f.terms())
    for (int k = 0; k <= y.hi; ++k) {
      Exponents g = e;
      g.push_back(k);
      r.add_term(g, scaled(c, ipow(e[xi], k) / Rational(factorial(static_cast<unsigned long>(k)))));
    }
  return r;
}

/// Which variable may carry negative powers when a pole is expanded.
struct ExpansionConvention {
  std::size_t distinguished = 0;  // index into the y-variables
};

/**
 * lambda(y)^{-k} * body(y), where lambda is an integer linear form and body
 * a power series in truncated variables with a total-degree cap. Kept
 * symbolic until expand() is given a convention.
 */
struct LocalizedSeries {
  std::vector<int> pole_form;
  int pole_order = 0;
  RationalSeries body;

  LocalizedSeries multiplied(const RationalSeries& factor) const {
    return {pole_form, pole_order, multiply(factor, body)};
  }

  /**
   * Expands lambda^{-k} as c_d^{-k} y_d^{-k} (1 + sum_{i != d} (c_i/c_d) y_i/y_d)^{-k},
   * negative powers confined to the distinguished variable d. Non-distinguished
   * exponents are kept up to `bound`; the total-degree cap drops by k.
   */
  RationalSeries expand(const ExpansionConvention& conv, int bound) const {
    const std::size_t n = body.arity();
    const std::size_t d = conv.distinguished;
    if (pole_form.size() != n) throw std::invalid_argument("LocalizedSeries: pole form arity mismatch");
    if (d >= n || pole_form[d] == 0)
      throw std::invalid_argument("LocalizedSeries: distinguished variable absent from the pole form");
    if (!body.total_cap()) throw std::invalid_argument("LocalizedSeries: body needs a total-degree cap");
    for (const auto& v : body.vars())
      if (v.policy != VarPolicy::truncated) throw std::invalid_argument("LocalizedSeries: body must be a power series");
    const int T = *body.total_cap();
    const int k = pole_order;

    std::vector<VarSpec> vars = body.vars();
    for (std::size_t i = 0; i < n; ++i)
      if (i != d) vars[i].hi = std::min(vars[i].hi, bound);
    vars[d] = VarSpec::window(vars[d].name, -k - static_cast<int>(n - 1) * bound, T - k, true);
    RationalSeries r(vars, T - k);

    const Rational cd(pole_form[d]);
    const Rational lead = cd.pow(-k);
    std::vector<int> others_bound(n, 0);
    for (const auto& [P, pc] : body.terms()) {
      for (std::size_t i = 0; i < n; ++i)
        others_bound[i] = (i == d || pole_form[i] == 0) ? 0 : std::max(-1, bound - P[i]);
      if (std::any_of(others_bound.begin(), others_bound.end(), [](int b) { return b < 0; })) continue;
      for_each_bounded(others_bound, std::numeric_limits<int>::max() / 4, [&](const Exponents& M) {
        int j = 0;
        Rational t = lead * pc;
        mpz_class multinom = factorial(0);
        for (std::size_t i = 0; i < n; ++i) {
          if (i == d || M[i] == 0) continue;
          j += M[i];
          t *= (Rational(pole_form[i]) / cd).pow(M[i]);
          multinom *= factorial(static_cast<unsigned long>(M[i]));
        }
        t *= binomial(-k, j) * Rational(factorial(static_cast<unsigned long>(j))) / Rational(multinom);
        Exponents e = P;
        for (std::size_t i = 0; i < n; ++i)
          if (i != d) e[i] += M[i];
        e[d] += -k - j;
        r.add_term(e, t);
      });
    }
    return r;
  }
};

}  // namespace zetavoa
