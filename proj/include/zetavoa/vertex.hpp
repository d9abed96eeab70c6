#pragma once

/**
 * @file vertex.hpp
 * @brief The rank-one free boson vertex operator algebra on the Fock space.
 *
 * Modes v_n of Y(v, x) = sum_n v_n x^{-n-1} are computed by the normal-ordered
 * recursion
 *
 *   Y(h(-k) s, x) = :(1/(k-1)! (d/dx)^{k-1} h~(x)) Y(s, x):,  h~(x) = sum_n h(n) x^{-n-1},
 *
 * with base case Y(1, x) = Id. In modes, with c_k(i) = C(-i-1, k-1),
 *
 *   (h(-k)s)_M w = sum_{i<0} c_k(i) h(i) s_{M-i-k} w + sum_{i>0} c_k(i) s_{M-i-k} h(i) w.
 *
 * Every sum is finite by weight: wt(s_M w) = wt s + wt w - M - 1.
 */

#include "zetavoa/fock.hpp"
#include "zetavoa/multiseries.hpp"
#include "zetavoa/power_series.hpp"
#include "zetavoa/quadratic.hpp"
#include "zetavoa/rational.hpp"
#include "zetavoa/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace zetavoa {

struct VOAConstants {
  Rational rank{1};
  FockVector vacuum = FockVector::vacuum();
  FockVector omega = Rational(1, 2) * FockVector::monomial({1, 1});
};

inline const VOAConstants& voa_constants() {
  static const VOAConstants c;
  return c;
}

/// The state v of Y(v, x), with its modes.
struct VertexOperatorSpec {
  FockVector state;
};

/// Memoized mode evaluation s_M w on basis monomials.
class ModeEngine {
public:
  const FockVector& mode(const FockMonomial& s, int M, const FockMonomial& w) {
    Key key{s, M, w};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    FockVector r = compute(s, M, w);
    return memo_.emplace(std::move(key), std::move(r)).first->second;
  }

  FockVector apply(const FockVector& v, int M, const FockVector& w) {
    FockVector out;
    for (const auto& [s, cs] : v.terms())
      for (const auto& [m, cw] : w.terms()) out.add_scaled(mode(s, M, m), cs * cw);
    return out;
  }

  std::size_t cache_size() const { return memo_.size(); }

private:
  struct Key {
    FockMonomial s;
    int M;
    FockMonomial w;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::hash<FockMonomial> h;
      return h(k.s) * 0x9e3779b97f4a7c15ull ^ (h(k.w) + 0x632be59bd9b4e019ull * static_cast<std::size_t>(k.M + 1000003));
    }
  };

  FockVector compute(const FockMonomial& s, int M, const FockMonomial& w) {
    if (s.weight() + w.weight() - M - 1 < 0) return {};
    if (s.is_vacuum()) return M == -1 ? FockVector(w) : FockVector();
    const int k = s.parts()[0];
    const FockMonomial rest = s.without_part(k);
    FockVector out;
    // creation part: i < 0, h(i) on the left
    const int imin = -(rest.weight() + w.weight() - 1 - M + k);
    for (int i = imin; i <= -1; ++i) {
      Rational c = binomial(-i - 1, k - 1);
      if (c.is_zero()) continue;
      FockVector inner = mode(rest, M - i - k, w);
      if (inner.is_zero()) continue;
      for (const auto& [m, cm] : inner.terms()) h_apply_monomial(i, m, cm * c, out);
    }
    // annihilation part: i > 0, h(i) on the right
    for (int i = 1; i <= w.weight(); ++i) {
      int mult = w.multiplicity(i);
      if (mult == 0) continue;
      Rational c = binomial(-i - 1, k - 1) * Rational(static_cast<long>(i) * mult);
      FockMonomial hw = w.without_part(i);
      out.add_scaled(mode(rest, M - i - k, hw), c);
    }
    return out;
  }

  std::unordered_map<Key, FockVector, KeyHash> memo_;
};

/// One engine per thread; the cache only grows.
inline ModeEngine& mode_engine() {
  thread_local ModeEngine engine;
  return engine;
}

/// v_n w: the coefficient of x^{-n-1} in Y(v, x) w.
inline FockVector Y_apply(const FockVector& v, const FockVector& w, int n) {
  return mode_engine().apply(v, n, w);
}

/// Coefficient of x^{-n} in X(v, x) w = x^{wt v} Y(v, x) w, per weight component of v.
inline FockVector X_apply(const FockVector& v, const FockVector& w, int n) {
  FockVector out;
  for (const auto& [wt, comp] : v.homogeneous_components()) out += Y_apply(comp, w, n + wt - 1);
  return out;
}

/**
 * Y[u, y] v = Y(e^{y L(0)} u, e^y - 1) v through y-degree D. With
 * z = e^y - 1 = y V(y), a power z^p = y^p V^p for every integer p, so the
 * result has finitely many negative powers of y, bounded by the weights.
 * Variable: y, a window [-(wt u + wt v), D].
 */
inline FockSeries zhu_bracket_apply(const FockVector& u, const FockVector& v, int D) {
  if (D < 0) throw std::invalid_argument("zhu_bracket_apply: D must be >= 0");
  const int pmin = -(u.max_weight() + v.max_weight());
  FockSeries out({VarSpec::window("y", pmin, D)});
  if (u.is_zero() || v.is_zero()) return out;
  const int order = D - pmin;
  PowerSeries V(order);
  {
    std::vector<Rational> c;
    for (int k = 0; k <= order; ++k) c.emplace_back(Rational(1) / Rational(factorial(static_cast<unsigned long>(k + 1))));
    V = PowerSeries(order, std::move(c));
  }
  for (const auto& [wt, comp] : u.homogeneous_components()) {
    PowerSeries ek = PowerSeries::exp_linear(order, Rational(wt));
    for (int p = pmin; p <= D; ++p) {
      // z^p carries u_{-p-1} v
      FockVector vec = Y_apply(comp, v, -p - 1);
      if (vec.is_zero()) continue;
      PowerSeries s = ek * V.pow(p);
      for (int i = 0; p + i <= D; ++i)
        if (!s.coeff(i).is_zero()) out.add_term({p + i}, s.coeff(i) * vec);
    }
  }
  return out;
}

/**
 * Z(t) = Y[u, y] v with y = -log(1 - t), as t^q coefficients for q <= D.
 * y = t Ybar(t) with Ybar(0) = 1, so y^p feeds only t^{>= p} and the result
 * is exact through t^D.
 */
inline std::map<int, FockVector> log_substituted_bracket(const FockVector& u, const FockVector& v, int D) {
  FockSeries zhu = zhu_bracket_apply(u, v, D);
  const int qmin = zhu.vars()[0].lo;
  std::map<int, FockVector> Z;
  const int zorder = D - qmin + 1;
  PowerSeries l = log(PowerSeries(zorder + 1, {Rational(1), Rational(-1)}));
  std::vector<Rational> c;
  for (int k = 0; k <= zorder; ++k) c.push_back(-l.coeff(k + 1));
  PowerSeries ybar(zorder, std::move(c));
  for (const auto& [e, vec] : zhu.terms()) {
    const int p = e[0];
    PowerSeries s = ybar.pow(p);
    for (int i = 0; p + i <= D; ++i)
      if (!s.coeff(i).is_zero()) Z[p + i].add_scaled(vec, s.coeff(i));
  }
  for (auto it = Z.begin(); it != Z.end();) it = it->second.is_zero() ? Z.erase(it) : std::next(it);
  return Z;
}

/// K_{a,b} = u_{-a-1} v_{-b-1} w - v_{-b-1} u_{-a-1} w, the x1^a x2^b coefficient of [Y(u,x1), Y(v,x2)] w.
inline FockVector commutator_cell(const FockVector& u, const FockVector& v, const FockVector& w, int a, int b) {
  return Y_apply(u, Y_apply(v, w, -b - 1), -a - 1) - Y_apply(v, Y_apply(u, w, -a - 1), -b - 1);
}

namespace detail {

inline std::string state_name(const FockVector& v) {
  const auto& k = voa_constants();
  if (v == k.vacuum) return "1";
  if (v == FockVector::monomial({1})) return "h(-1)";
  if (v == k.omega) return "omega";
  return to_json(v).dump();
}

/// Mode products u_{-a-1} v_{-b-1} w, memoized per (a, b) for one (u, v, w).
class ProductTable {
public:
  ProductTable(const FockVector& first, const FockVector& second, const FockVector& w)
      : first_(first), second_(second), w_(w) {}
  /// first_{-a-1} second_{-b-1} w
  const FockVector& at(int a, int b) {
    auto key = std::make_pair(a, b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto inner = inner_.find(b);
    if (inner == inner_.end()) inner = inner_.emplace(b, Y_apply(second_, w_, -b - 1)).first;
    return cache_.emplace(key, Y_apply(first_, inner->second, -a - 1)).first->second;
  }
  /// Largest b with second_{-b-1} w possibly nonzero.
  int max_b() const { return w_.max_weight(); }

private:
  FockVector first_, second_, w_;
  std::map<std::pair<int, int>, FockVector> cache_;
  std::map<int, FockVector> inner_;
};

}  // namespace detail

struct Windows {
  int x0_lo = -6, x0_hi = 6;
  int x1_lo = -6, x1_hi = 6;
  int x2_lo = -6, x2_hi = 6;
  int ydeg = 4;
  int weight = 4;

  static Windows symmetric(int r, int ydeg = 4, int weight = 4) { return {-r, r, -r, r, -r, r, ydeg, weight}; }
  Json to_json() const {
    return {{"x0", {x0_lo, x0_hi}}, {"x1", {x1_lo, x1_hi}}, {"x2", {x2_lo, x2_hi}}, {"ydeg", ydeg}, {"weight", weight}};
  }
};

/**
 * The three-term Jacobi identity on w, one cell per monomial x0^e0 x1^e1 x2^e2
 * in the window. With n = -e0 - 1 and C_{a,b} = u_{-a-1} v_{-b-1} w:
 *   first  = sum_i C(n,i) (-1)^i C_{e1-n+i, e2-i}
 *   second = sum_i C(n,i) (-1)^{n-i} v_{-(e2-n+i)-1} u_{-(e1-i)-1} w
 *   right  = sum_i C(e1+i, i) (-1)^i (u_{i-e0-1} v)_{-(e2+e1+i+1)-1} w
 */
inline VerificationReport jacobi_check(const FockVector& u, const FockVector& v, const FockVector& w, const Windows& win) {
  VerificationReport rep("jacobi", {{"u", detail::state_name(u)}, {"v", detail::state_name(v)},
                                    {"w", to_json(w)}, {"windows", win.to_json()}});
  detail::ProductTable uv(u, v, w), vu(v, u, w);
  const int wu = u.max_weight(), wv = v.max_weight(), ww = w.max_weight();
  for (int e0 = win.x0_lo; e0 <= win.x0_hi; ++e0)
    for (int e1 = win.x1_lo; e1 <= win.x1_hi; ++e1)
      for (int e2 = win.x2_lo; e2 <= win.x2_hi; ++e2) {
        const int n = -e0 - 1;
        FockVector lhs;
        // v_{-(e2-i)-1} w vanishes once i > e2 + wt v + wt w
        const int imax1 = n >= 0 ? n : e2 + wv + ww;
        for (int i = 0; i <= imax1; ++i) {
          Rational c = binomial(n, i) * Rational(i % 2 ? -1 : 1);
          if (!c.is_zero()) lhs.add_scaled(uv.at(e1 - n + i, e2 - i), c);
        }
        const int imax2 = n >= 0 ? n : e1 + wu + ww;
        for (int i = 0; i <= imax2; ++i) {
          Rational c = binomial(n, i) * Rational((n - i) % 2 ? -1 : 1);
          if (!c.is_zero()) lhs.add_scaled(vu.at(e2 - n + i, e1 - i), -c);
        }
        FockVector rhs;
        // u_j v vanishes once j > wt u + wt v - 1
        for (int i = 0; i - e0 - 1 <= wu + wv - 1; ++i) {
          const int m = e1 + i;
          Rational c = binomial(m, i) * Rational(i % 2 ? -1 : 1);
          if (c.is_zero()) continue;
          FockVector ujv = Y_apply(u, v, i - e0 - 1);
          if (ujv.is_zero()) continue;
          rhs.add_scaled(Y_apply(ujv, w, -(e2 + m + 1) - 1), c);
        }
        rep.add({{"x0", e0}, {"x1", e1}, {"x2", e2}}, to_json(lhs), to_json(rhs), lhs == rhs,
                lhs.is_zero() && rhs.is_zero());
      }
  return rep;
}

/**
 * Smallest n <= Nmax with (x1 - x2)^n [Y(u,x1), Y(v,x2)] w = 0 on every
 * cell of the x1, x2 window. The cell x1^e1 x2^e2 of the product is
 * sum_i C(n,i) (-1)^i K_{e1-n+i, e2-i}.
 */
inline VerificationReport weak_comm_check(const FockVector& u, const FockVector& v, const FockVector& w,
                                          const Windows& win, int Nmax) {
  VerificationReport rep("weak-commutativity", {{"u", detail::state_name(u)}, {"v", detail::state_name(v)},
                                                {"w", to_json(w)}, {"windows", win.to_json()}, {"n_max", Nmax}});
  std::map<std::pair<int, int>, FockVector> K;
  auto k_at = [&](int a, int b) -> const FockVector& {
    auto key = std::make_pair(a, b);
    auto it = K.find(key);
    if (it == K.end()) it = K.emplace(key, commutator_cell(u, v, w, a, b)).first;
    return it->second;
  };
  int found = -1;
  for (int n = 0; n <= Nmax && found < 0; ++n) {
    bool all_zero = true;
    for (int e1 = win.x1_lo; e1 <= win.x1_hi && all_zero; ++e1)
      for (int e2 = win.x2_lo; e2 <= win.x2_hi && all_zero; ++e2) {
        FockVector cell;
        for (int i = 0; i <= n; ++i) cell.add_scaled(k_at(e1 - n + i, e2 - i), binomial(n, i) * Rational(i % 2 ? -1 : 1));
        all_zero = cell.is_zero();
      }
    if (all_zero) found = n;
  }
  rep.findings()["minimal_n"] = found;
  rep.add({{"check", "annihilated"}}, found >= 0, true, found >= 0);
  if (found >= 0) {
    // record the product at n and, when n > 0, a nonzero witness at n - 1
    for (int e1 = win.x1_lo; e1 <= win.x1_hi; ++e1)
      for (int e2 = win.x2_lo; e2 <= win.x2_hi; ++e2) {
        FockVector cell;
        for (int i = 0; i <= found; ++i) cell.add_scaled(k_at(e1 - found + i, e2 - i), binomial(found, i) * Rational(i % 2 ? -1 : 1));
        rep.add({{"n", found}, {"x1", e1}, {"x2", e2}}, to_json(cell), Json::array(), cell.is_zero(), cell.is_zero());
      }
  }
  return rep;
}

/**
 * The generalized Jacobi identity for the weight-shifted operators X, with
 * logarithmic arguments y21 = log(1 - x2/x1), y12 = log(1 - x1/x2),
 * y01 = log(1 - x0/x1).
 *
 * e^{y21} x1 = x1 - x2 and -e^{y12} x2 = x1 - x2 expanded in nonnegative
 * powers of x2 and of x1 respectively, and e^{y01} x1 = x1 - x0; the factors
 * e^{n y..} are computed as exp(n log(1 - s)). On the right, Y[u, -y01] v
 * becomes Z(t) = sum_q Z_q t^q with t = x0/x1 after substituting
 * y = -log(1 - t); Z_q is exact for q <= D, so cells with e0 > D are
 * reported uncertified. Cells at e0 = -1 are also compared with the
 * commutator [X(u,x1), X(v,x2)] w computed directly from Y-modes.
 */
inline VerificationReport theorem42_check(const FockVector& u, const FockVector& v, const FockVector& w, const Windows& win) {
  const int D = win.ydeg;
  VerificationReport rep("theorem42", {{"u", detail::state_name(u)}, {"v", detail::state_name(v)},
                                       {"w", to_json(w)}, {"windows", win.to_json()}});
  const int wu = u.is_zero() ? 0 : weight(u), wv = v.is_zero() ? 0 : weight(v);
  const int ww = w.max_weight();

  // (1 - s)^n = exp(n log(1 - s)), cached per n to the order the window needs
  auto span = [](int lo, int hi) { return std::max(std::abs(lo), std::abs(hi)); };
  const int order = span(win.x0_lo, win.x0_hi) + span(win.x1_lo, win.x1_hi) + span(win.x2_lo, win.x2_hi) + ww + wu + wv + 2;
  const PowerSeries log1m = log(PowerSeries(order, {Rational(1), Rational(-1)}));
  std::map<int, PowerSeries> powers;
  auto one_minus_pow = [&](int n) -> const PowerSeries& {
    auto it = powers.find(n);
    if (it == powers.end()) it = powers.emplace(n, series_exp_log(Rational(n) * log1m, SeriesFn::exp)).first;
    return it->second;
  };

  const std::map<int, FockVector> Z = log_substituted_bracket(u, v, D);
  const int qmin = -(u.max_weight() + v.max_weight());

  // X-mode products: XU_a = u_{a + wt u - 1}, coefficient of x^{-a}
  detail::ProductTable uv(u, v, w), vu(v, u, w);
  auto XC = [&](int a, int b) -> const FockVector& { return uv.at(-a - wu, -b - wv); };   // XU_a XV_b w
  auto XCr = [&](int b, int a) -> const FockVector& { return vu.at(-b - wv, -a - wu); };  // XV_b XU_a w

  for (int e0 = win.x0_lo; e0 <= win.x0_hi; ++e0)
    for (int e1 = win.x1_lo; e1 <= win.x1_hi; ++e1)
      for (int e2 = win.x2_lo; e2 <= win.x2_hi; ++e2) {
        Json key = {{"x0", e0}, {"x1", e1}, {"x2", e2}};
        if (e0 > D) {
          rep.add_uncertified(key);
          continue;
        }
        const int n = -e0 - 1;
        const PowerSeries& pn = one_minus_pow(n);
        FockVector lhs;
        // first term: x0^{-n-1} x1^{n-i} x2^i (1-s)^n coefficients; XV_{i-e2} w = 0 once i - e2 > wt w
        const int imax1 = n >= 0 ? n : e2 + ww;
        for (int i = 0; i <= imax1; ++i) {
          const Rational& c = pn.coeff(i);
          if (!c.is_zero()) lhs.add_scaled(XC(n - i - e1, i - e2), c);
        }
        // second term: x1^i (-x2)^{n-i}; XU_{i-e1} w = 0 once i - e1 > wt w
        const int imax2 = n >= 0 ? n : e1 + ww;
        for (int i = 0; i <= imax2; ++i) {
          Rational c = pn.coeff(i) * Rational((n % 2 + 2) % 2 ? -1 : 1);
          if (!c.is_zero()) lhs.add_scaled(XCr(n - i - e2, i - e1), -c);
        }
        // right side: x2^{-m-1} (x1 - x0)^m with m = e0 + e1, x0^{e0-q} from the delta, t^q from Z
        const int m = e0 + e1;
        const PowerSeries& pm = one_minus_pow(m);
        FockVector rhs;
        for (int q = qmin; q <= e0; ++q) {
          auto it = Z.find(q);
          if (it == Z.end()) continue;
          const Rational& c = pm.coeff(e0 - q);
          if (c.is_zero()) continue;
          rhs.add_scaled(X_apply(it->second, w, -(e2 + 1 + m)), c);
        }
        rep.add(key, to_json(lhs), to_json(rhs), lhs == rhs, lhs.is_zero() && rhs.is_zero());
        if (e0 == -1) {
          // residue: [X(u,x1), X(v,x2)] w at x1^e1 x2^e2 is the Y-commutator cell shifted by the weights
          FockVector comm = commutator_cell(u, v, w, e1 - wu, e2 - wv);
          Json rkey = {{"residue", true}, {"x1", e1}, {"x2", e2}};
          rep.add(rkey, to_json(rhs), to_json(comm), rhs == comm, rhs.is_zero() && comm.is_zero());
        }
      }
  return rep;
}

/**
 * Vertex operator algebra axioms on the truncated space: vacuum, creation, lower
 * truncation, the Virasoro relations of the omega-modes with central charge
 * equal to the rank, L(0)-grading, the L(-1)-derivative property, and
 * agreement of omega_{n+1} with the quadratic L(n) as matrices.
 */
inline VerificationReport axiom_suite(int W, int window) {
  VerificationReport rep("voa-axioms", {{"weight", W}, {"window", window}});
  const auto& k = voa_constants();
  const auto B = basis(W);
  auto L = [&](int n, const FockVector& x) { return Y_apply(k.omega, x, n + 1); };

  for (const auto& b : B) {
    FockVector w(b);
    for (int n = -window; n <= window; ++n) {
      // vacuum: 1_n w = delta_{n,-1} w
      FockVector l = Y_apply(k.vacuum, w, n);
      FockVector r = n == -1 ? w : FockVector();
      rep.add({{"axiom", "vacuum"}, {"n", n}, {"w", to_json(b)}}, to_json(l), to_json(r), l == r, l.is_zero() && r.is_zero());
      // creation: v_n 1 = 0 for n >= 0 and v_{-1} 1 = v
      if (n >= -1) {
        FockVector c = Y_apply(w, k.vacuum, n);
        FockVector e = n == -1 ? w : FockVector();
        rep.add({{"axiom", "creation"}, {"n", n}, {"v", to_json(b)}}, to_json(c), to_json(e), c == e, c.is_zero() && e.is_zero());
      }
    }
    // grading: L(0) v = (wt v) v
    FockVector g = L(0, w);
    FockVector ge = Rational(b.weight()) * w;
    rep.add({{"axiom", "grading"}, {"v", to_json(b)}}, to_json(g), to_json(ge), g == ge);
  }

  // lower truncation: u_n v = 0 beyond n = wt u + wt v - 1
  for (const auto& a : B)
    for (const auto& b : B)
      for (int n = a.weight() + b.weight(); n <= a.weight() + b.weight() + 1; ++n) {
        FockVector x = Y_apply(FockVector(a), FockVector(b), n);
        rep.add({{"axiom", "lower-truncation"}, {"u", to_json(a)}, {"v", to_json(b)}, {"n", n}}, to_json(x),
                Json::array(), x.is_zero(), x.is_zero());
      }

  // L(-1)-derivative: (L(-1)v)_n = -n v_{n-1}, on w up to weight W
  for (const auto& a : basis(std::max(0, W - 1))) {
    FockVector va(a);
    FockVector dv = L(-1, va);
    for (const auto& b : B)
      for (int n = -window; n <= window; ++n) {
        FockVector l = Y_apply(dv, FockVector(b), n);
        FockVector r = Rational(-n) * Y_apply(va, FockVector(b), n - 1);
        rep.add({{"axiom", "derivative"}, {"v", to_json(a)}, {"w", to_json(b)}, {"n", n}}, to_json(l), to_json(r), l == r,
                l.is_zero() && r.is_zero());
      }
  }

  // omega-modes against the quadratic L(n), block by block
  for (int n = -window; n <= window; ++n) {
    GradedOperator from_modes = to_matrix([&](const FockVector& x) { return L(n, x); }, n, W);
    GradedOperator quadratic = to_matrix(OperatorSpec::L(n), W);
    bool eq = from_modes == quadratic;
    rep.add({{"axiom", "omega-modes"}, {"n", n}}, eq ? "equal" : "differ", "equal", eq);
  }

  // Virasoro relations of the omega-modes, central charge = rank
  const int vm = std::min(window, 4);
  for (int m = -vm; m <= vm; ++m)
    for (int n = -vm; n <= vm; ++n)
      for (const auto& b : B) {
        FockVector w(b);
        FockVector l = L(m, L(n, w)) - L(n, L(m, w));
        FockVector r = Rational(m - n) * L(m + n, w);
        if (m + n == 0) r.add_scaled(w, k.rank * Rational(static_cast<long>(m) * m * m - m, 12));
        rep.add({{"axiom", "virasoro"}, {"m", m}, {"n", n}, {"w", to_json(b)}}, to_json(l), to_json(r), l == r,
                l.is_zero() && r.is_zero());
      }
  return rep;
}

}  // namespace zetavoa
