#pragma once

/**
 * @file generating.hpp
 * @brief Generating functions of the quadratic operators and the
 *        commutator formula for their regularized versions.
 *
 * With h(e^y x) = sum_a h(a) e^{-a y} x^{-a},
 *
 *   :h(e^{y1}x) h(e^{y2}x): v = sum_n x^{-n} sum_{a+b=n} e^{-a y1 - b y2} :h(a)h(b): v
 *
 * so (r!)^2 times the coefficient of y1^r y2^r x^{-n} of half of it is
 * L^(r)(n) v. The ++ ordering subtracts d/dy1 of 1/(1 - e^{-y1+y2}), a
 * scalar with a pole along y1 = y2 that is carried as a LocalizedSeries
 * and only expanded once a convention is chosen.
 *
 * Operator-valued series are evaluated on a fixed vector (curried): a
 * series with FockVector coefficients is the operator series applied to v.
 */

#include "zetavoa/errors.hpp"
#include "zetavoa/fock.hpp"
#include "zetavoa/multiseries.hpp"
#include "zetavoa/power_series.hpp"
#include "zetavoa/quadratic.hpp"
#include "zetavoa/report.hpp"
#include "zetavoa/zeta.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace zetavoa {

struct Window {
  int lo = 0;
  int hi = 0;
};

/// Pole convention for the scalar corrections.
enum class Convention { neg_powers_y1, neg_powers_y2 };

inline std::string to_string(Convention c) {
  return c == Convention::neg_powers_y1 ? "neg-powers-y1" : "neg-powers-y2";
}
inline Convention convention_from_string(const std::string& s) {
  if (s == "neg-powers-y1") return Convention::neg_powers_y1;
  if (s == "neg-powers-y2") return Convention::neg_powers_y2;
  throw std::invalid_argument("unknown convention: " + s);
}
inline ExpansionConvention expansion_of(Convention c) {
  return {static_cast<std::size_t>(c == Convention::neg_powers_y1 ? 0 : 1)};
}

/// :h(a)h(b): v, annihilation factor first.
inline FockVector normal_pair_apply(int a, int b, const FockVector& v) {
  if (a == 0 || b == 0) return {};
  return a > 0 ? h_apply(b, h_apply(a, v)) : h_apply(a, h_apply(b, v));
}

/// All (a, b, :h(a)h(b):v) with a + b = n and a nonzero result.
inline std::vector<std::tuple<int, int, FockVector>> normal_pairs(int n, const FockVector& v) {
  std::vector<std::tuple<int, int, FockVector>> out;
  if (v.is_zero()) return out;
  const int wt = v.max_weight();
  for (int a = std::min(n, 0) - wt - 1; a <= std::max(n, 0) + wt + 1; ++a) {
    FockVector img = normal_pair_apply(a, n - a, v);
    if (!img.is_zero()) out.emplace_back(a, n - a, std::move(img));
  }
  return out;
}

/**
 * u/(1 - e^{-u}) through the given order: F(y1 - y2) is the body of
 * 1/(1 - e^{-y1+y2}) = (y1 - y2)^{-1} F(y1, y2).
 */
inline LocalizedSeries one_minus_exp_inverse(const std::string& y1, const std::string& y2, int D) {
  if (D < 1) throw std::invalid_argument("one_minus_exp_inverse: D must be >= 1");
  std::vector<VarSpec> vars{VarSpec::truncated(y1, D), VarSpec::truncated(y2, D)};
  return {{1, -1}, 1, substitute_linear(u_over_one_minus_exp_neg(D), vars, {Rational(1), Rational(-1)}, D)};
}

/**
 * :h(e^{y1}x) h(e^{y2}x): v, without the 1/2, for x-exponents in the window
 * and total y-degree at most D. Variables: (y1, y2, x).
 */
inline FockSeries normal_ordered_pair(const std::string& y1, const std::string& y2, const std::string& x,
                                      const FockVector& v, Window window, int D) {
  std::vector<VarSpec> yvars{VarSpec::truncated(y1, D), VarSpec::truncated(y2, D)};
  std::vector<VarSpec> vars = yvars;
  vars.push_back(VarSpec::window(x, window.lo, window.hi));
  FockSeries s(vars, D);
  for (int e = window.lo; e <= window.hi; ++e)
    for (const auto& [a, b, img] : normal_pairs(-e, v)) {
      RationalSeries ex = linear_exponential(yvars, {Rational(-a), Rational(-b)}, D);
      for (const auto& [ye, c] : ex.terms()) s.add_term({ye[0], ye[1], e}, c * img);
    }
  return s;
}

/**
 * The scalar -d/dy1 (1/(1 - e^{-y1+y2})) expanded under `conv`, through
 * total y-degree D, with variables (y1, y2).
 */
inline RationalSeries plusplus_correction(int D, Convention conv) {
  LocalizedSeries f = one_minus_exp_inverse("y1", "y2", D + 2);
  return f.expand(expansion_of(conv), D + 1).derivative("y1").scaled_by(Rational(-1));
}

/// ++h(e^{y1}x)h(e^{y2}x)++ v, variables (y1, y2, x); y-region set by `conv`.
inline FockSeries plusplus_pair(const FockVector& v, Window window, int D, Convention conv) {
  RationalSeries corr = plusplus_correction(D, conv);
  std::vector<VarSpec> vars = corr.vars();
  vars.push_back(VarSpec::window("x", window.lo, window.hi));
  FockSeries s(vars, D);
  FockSeries normal = normal_ordered_pair("y1", "y2", "x", v, window, D);
  for (const auto& [e, c] : normal.terms()) s.add_term(e, c);
  if (window.lo <= 0 && window.hi >= 0)
    for (const auto& [e, c] : corr.terms()) s.add_term({e[0], e[1], 0}, c * v);
  return s;
}

/**
 * h(x1)h(x2)v (right factor first) against :h(x1)h(x2):v plus
 * x2 d/dx2 1/(1 - x2/x1) v, cell by cell over the window in both variables.
 */
inline VerificationReport contraction_check(const FockVector& v, Window window) {
  VerificationReport rep("contraction", {{"vector", to_json(v)}, {"window", {window.lo, window.hi}}});
  std::vector<VarSpec> vars{VarSpec::window("x1", window.lo, window.hi), VarSpec::window("x2", window.lo, window.hi)};
  RationalSeries contraction = geometric_series(vars, {-1, 1}).euler("x2");
  for (int e1 = window.lo; e1 <= window.hi; ++e1)
    for (int e2 = window.lo; e2 <= window.hi; ++e2) {
      // coefficient of x1^{e1} x2^{e2} is h(-e1) h(-e2) v
      FockVector lhs = h_apply(-e1, h_apply(-e2, v));
      FockVector rhs = normal_pair_apply(-e1, -e2, v);
      rhs.add_scaled(v, contraction.coefficient({e1, e2}));
      rep.add({{"x1", e1}, {"x2", e2}}, to_json(lhs), to_json(rhs), lhs == rhs, lhs.is_zero() && rhs.is_zero());
    }
  return rep;
}

/**
 * Checks Lbar^(r)(n) = (r!)^2 [y1^r y2^r x^{-n}] 1/2 ++h(e^{y1}x)h(e^{y2}x)++
 * as matrices: one cell per (r, n, basis vector) up to weight W.
 */
inline VerificationReport diagonal_extraction_check(int rmax, int nmax, int W, Convention conv) {
  VerificationReport rep("diagonal-extraction",
                         {{"r_max", rmax}, {"n_max", nmax}, {"weight", W}, {"convention", to_string(conv)}});
  const int D = 2 * rmax;
  for (const auto& b : basis(W)) {
    FockVector v(b);
    FockSeries pp = plusplus_pair(v, {-nmax, nmax}, std::max(D, 1), conv);
    for (int r = 0; r <= rmax; ++r) {
      Rational scale = Rational(1, 2) * Rational(factorial(static_cast<unsigned long>(r))).pow(2);
      for (int n = -nmax; n <= nmax; ++n) {
        FockVector lhs = Lbar_apply(r, n, v);
        FockVector rhs = scale * pp.coefficient({r, r, -n});
        rep.add({{"r", r}, {"n", n}, {"basis_vector", to_json(b)}}, to_json(lhs), to_json(rhs), lhs == rhs,
                lhs.is_zero() && rhs.is_zero());
      }
    }
  }
  return rep;
}

/**
 * One delta term of the right side of the commutator formula:
 *   -1/2 d/dy_alpha [ Lbar^(z1, y_z2)(x2) delta(e^{y_alpha} x1 / e^{y_beta} x2) ]
 * where z1 is an integer linear form in (y1..y4).
 */
struct Theorem31Term {
  int alpha;
  int beta;
  std::array<int, 4> z1;
  int z2;
};

inline const std::array<Theorem31Term, 4>& theorem31_terms() {
  static const std::array<Theorem31Term, 4> terms{{
      {0, 2, {-1, 1, 1, 0}, 3},
      {0, 3, {-1, 1, 0, 1}, 2},
      {1, 2, {1, -1, 1, 0}, 3},
      {1, 3, {1, -1, 0, 1}, 2},
  }};
  return terms;
}

/**
 * Convention-dependent scalar parts of the right side, cached per
 * (term, n, convention). Thread-safe.
 */
class Theorem31Context {
public:
  explicit Theorem31Context(int D) : D_(D) {
    if (D < 0) throw std::invalid_argument("Theorem31Context: D must be >= 0");
  }
  int D() const { return D_; }

  static const std::vector<VarSpec>& yvars(int order) {
    static std::mutex mu;
    static std::map<int, std::vector<VarSpec>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end())
      it = cache.emplace(order, std::vector<VarSpec>{VarSpec::truncated("y1", order), VarSpec::truncated("y2", order),
                                                     VarSpec::truncated("y3", order), VarSpec::truncated("y4", order)})
               .first;
    return it->second;
  }

  /**
   * -1/2 d/dy_alpha [ e^{n(y_alpha - y_beta)} * 1/2 lambda^{-2} G(lambda) ]
   * with lambda = z1 - y_z2 and G(u) = F(u) - u F'(u), the expansion of the
   * Lbar scalar -1/2 d/dy1 (1/(1 - e^{-y1+y2})) after substitution.
   */
  const RationalSeries& scalar_part(std::size_t term, int n, Convention conv) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(term, n, conv);
    auto it = scalar_cache_.find(key);
    if (it != scalar_cache_.end()) return *it->second;
    const auto& t = theorem31_terms()[term];
    const int T = D_ + 3;
    const auto& vars = yvars(T);
    std::vector<Rational> lam(4);
    std::vector<int> lam_int(4);
    for (int i = 0; i < 4; ++i) lam_int[static_cast<std::size_t>(i)] = t.z1[static_cast<std::size_t>(i)] - (i == t.z2 ? 1 : 0);
    for (int i = 0; i < 4; ++i) lam[static_cast<std::size_t>(i)] = Rational(lam_int[static_cast<std::size_t>(i)]);
    PowerSeries F = u_over_one_minus_exp_neg(T);
    PowerSeries G = F - PowerSeries::variable(T) * derivative_padded(F);
    LocalizedSeries s{lam_int, 2, substitute_linear(Rational(1, 2) * G, vars, lam, T)};
    std::vector<Rational> c(4, Rational(0));
    c[static_cast<std::size_t>(t.alpha)] += Rational(n);
    c[static_cast<std::size_t>(t.beta)] -= Rational(n);
    s = s.multiplied(linear_exponential(vars, c, T));
    RationalSeries ex = s.expand(expansion_of(conv), D_ + 1);
    RationalSeries out = ex.derivative(vars[static_cast<std::size_t>(t.alpha)].name).scaled_by(Rational(-1, 2));
    auto ptr = std::make_unique<RationalSeries>(std::move(out));
    return *scalar_cache_.emplace(key, std::move(ptr)).first->second;
  }

private:
  /// f' with the top coefficient set to zero, keeping the order of f.
  static PowerSeries derivative_padded(const PowerSeries& f) {
    std::vector<Rational> c(static_cast<std::size_t>(f.order()) + 1);
    for (int k = 0; k < f.order(); ++k) c[static_cast<std::size_t>(k)] = Rational(k + 1) * f.coeff(k + 1);
    return PowerSeries(f.order(), std::move(c));
  }

  int D_;
  std::mutex mu_;
  std::map<std::tuple<std::size_t, int, Convention>, std::unique_ptr<RationalSeries>> scalar_cache_;
};

/**
 * Left side 1/4 [N(y1,y2;x1), N(y3,y4;x2)] v of the commutator formula,
 * with N the unhalved normal-ordered pair; the scalar parts of the two ++
 * products are central and drop out of the bracket. Variables
 * (y1, y2, y3, y4, x1, x2), total y-degree <= D.
 */
inline FockSeries theorem31_lhs(const FockVector& v, Window window, int D) {
  std::vector<VarSpec> vars = Theorem31Context::yvars(D);
  vars.push_back(VarSpec::window("x1", window.lo, window.hi));
  vars.push_back(VarSpec::window("x2", window.lo, window.hi));
  FockSeries lhs(vars, D);
  auto accumulate = [&](bool first_on_x2, const Rational& sign) {
    // inner operator acts first on v, outer on each inner coefficient
    FockSeries inner = normal_ordered_pair("a", "b", "x", v, window, D);
    for (const auto& [ie, iv] : inner.terms()) {
      FockSeries outer = normal_ordered_pair("a", "b", "x", iv, window, D - ie[0] - ie[1]);
      for (const auto& [oe, ov] : outer.terms()) {
        Exponents e = first_on_x2 ? Exponents{oe[0], oe[1], ie[0], ie[1], oe[2], ie[2]}
                                  : Exponents{ie[0], ie[1], oe[0], oe[1], ie[2], oe[2]};
        lhs.add_term(e, sign * ov);
      }
    }
  };
  accumulate(true, Rational(1, 4));    // N(x1) N(x2) v
  accumulate(false, Rational(-1, 4));  // N(x2) N(x1) v
  return lhs;
}

/**
 * Right side at one x-cell (x1^{e1} x2^{e2}), as a series in (y1..y4) with
 * FockVector coefficients. The delta factor fixes n = e1 and the mode
 * k = -e1 - e2 of the Lbar generating function.
 */
inline FockSeries theorem31_rhs_cell(const FockVector& v, int e1, int e2, Theorem31Context& ctx, Convention conv) {
  const int D = ctx.D();
  const int n = e1, k = -e1 - e2;
  const ExpansionConvention ec = expansion_of(conv);
  std::vector<VarSpec> vars = Theorem31Context::yvars(D + 1);
  for (auto& var : vars) var.hi = D;
  vars[ec.distinguished] = VarSpec::window(vars[ec.distinguished].name, -3 - 3 * D, D, true);
  FockSeries out(vars, D);
  const auto& ex_vars = Theorem31Context::yvars(D + 1);
  auto pairs = normal_pairs(k, v);
  for (std::size_t ti = 0; ti < theorem31_terms().size(); ++ti) {
    const auto& t = theorem31_terms()[ti];
    for (const auto& [a, b, img] : pairs) {
      // -1/4 d/dy_alpha exp(c.y), c = n(e_alpha - e_beta) - a z1 - b e_z2
      std::vector<Rational> c(4);
      for (int i = 0; i < 4; ++i) c[static_cast<std::size_t>(i)] = Rational(-a * t.z1[static_cast<std::size_t>(i)]);
      c[static_cast<std::size_t>(t.alpha)] += Rational(n);
      c[static_cast<std::size_t>(t.beta)] -= Rational(n);
      c[static_cast<std::size_t>(t.z2)] -= Rational(b);
      RationalSeries ex = linear_exponential(ex_vars, c, D + 1).derivative(ex_vars[static_cast<std::size_t>(t.alpha)].name);
      for (const auto& [e, coef] : ex.terms()) out.add_term(e, (Rational(-1, 4) * coef) * img);
    }
    if (k == 0)
      for (const auto& [e, coef] : ctx.scalar_part(ti, n, conv).terms()) out.add_term(e, coef * v);
  }
  return out;
}

/**
 * Compares both sides of the commutator formula for the regularized
 * generating functions on every cell: x-exponents in the window, y-exponents
 * with total degree in [-3, D], non-distinguished y-exponents in [0, D].
 * The left side has no pole, so it is convention-free; the right side is
 * expanded under `conv`.
 */
inline VerificationReport theorem31_check(const FockVector& v, Window window, int D, Convention conv,
                                          Theorem31Context* shared_ctx = nullptr) {
  VerificationReport rep("theorem31", {{"vector", to_json(v)},
                                       {"window", {window.lo, window.hi}},
                                       {"ydeg", D},
                                       {"convention", to_string(conv)}});
  Theorem31Context local(D);
  Theorem31Context& ctx = shared_ctx ? *shared_ctx : local;
  if (ctx.D() != D) throw std::invalid_argument("theorem31_check: context built for a different D");
  const std::size_t d = expansion_of(conv).distinguished;
  FockSeries lhs = theorem31_lhs(v, window, D);
  std::vector<int> bounds(4, D);
  bounds[d] = 0;
  for (int e1 = window.lo; e1 <= window.hi; ++e1)
    for (int e2 = window.lo; e2 <= window.hi; ++e2) {
      FockSeries rhs = theorem31_rhs_cell(v, e1, e2, ctx, conv);
      for_each_bounded(bounds, 3 * D, [&](const Exponents& others) {
        int used = 0;
        for (std::size_t i = 0; i < 4; ++i) used += others[i];
        for (int total = -3; total <= D; ++total) {
          Exponents y = others;
          y[d] = total - used;
          Exponents full{y[0], y[1], y[2], y[3], e1, e2};
          FockVector l = lhs.coefficient(full);
          FockVector r = rhs.coefficient(y);
          rep.add({{"x1", e1}, {"x2", e2}, {"y", {y[0], y[1], y[2], y[3]}}}, to_json(l), to_json(r), l == r,
                  l.is_zero() && r.is_zero());
        }
      });
    }
  return rep;
}

}  // namespace zetavoa
