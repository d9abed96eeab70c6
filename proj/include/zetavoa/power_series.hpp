#pragma once

/**
 * @file power_series.hpp
 * @brief Univariate truncated power series over the rationals.
 *
 * A PowerSeries knows its coefficients for exponents 0..order() and nothing
 * beyond. Binary operations return the smaller of the two orders, and asking
 * for a coefficient past the order throws TruncationError rather than
 * returning zero.
 */

#include "zetavoa/errors.hpp"
#include "zetavoa/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace zetavoa {

class PowerSeries {
public:
  explicit PowerSeries(int order) : coeffs_(checked_size(order)) {}

  /// Coefficients listed from exponent 0; missing trailing entries are zero.
  PowerSeries(int order, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    std::size_t n = checked_size(order);
    if (coeffs_.size() > n) {
      for (std::size_t k = n; k < coeffs_.size(); ++k)
        if (!coeffs_[k].is_zero())
          throw std::invalid_argument("PowerSeries: nonzero coefficient beyond truncation order");
    }
    coeffs_.resize(n);
  }

  static PowerSeries one(int order) { return monomial(order, 0, Rational(1)); }
  static PowerSeries variable(int order) { return monomial(order, 1, Rational(1)); }
  static PowerSeries monomial(int order, int exponent, Rational c) {
    PowerSeries s(order);
    if (exponent < 0) throw std::invalid_argument("PowerSeries: negative exponent");
    if (exponent <= order) s.coeffs_[static_cast<std::size_t>(exponent)] = std::move(c);
    return s;
  }
  /// e^(c x) through the given order.
  static PowerSeries exp_linear(int order, const Rational& c) {
    PowerSeries s(order);
    Rational term(1);
    for (int k = 0; k <= order; ++k) {
      s.coeffs_[static_cast<std::size_t>(k)] = term;
      term = term * c / Rational(k + 1);
    }
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// Coefficient of x^k. Negative k is zero; k > order() throws.
  const Rational& coeff(int k) const {
    static const Rational zero{};
    if (k < 0) return zero;
    if (k > order())
      throw TruncationError("PowerSeries: coefficient " + std::to_string(k) +
                            " requested beyond order " + std::to_string(order()));
    return coeffs_[static_cast<std::size_t>(k)];
  }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  PowerSeries truncated(int order) const {
    if (order > this->order())
      throw TruncationError("PowerSeries: cannot raise truncation order");
    return PowerSeries(order, std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  PowerSeries operator-() const {
    PowerSeries r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) r.at(k) = a.coeff(k) + b.coeff(k);
    return r;
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + (-b); }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.order(), b.order()));
    for (int i = 0; i <= r.order(); ++i) {
      if (a.coeff(i).is_zero()) continue;
      for (int j = 0; i + j <= r.order(); ++j)
        if (!b.coeff(j).is_zero()) r.at(i + j) += a.coeff(i) * b.coeff(j);
    }
    return r;
  }
  friend PowerSeries operator*(const Rational& c, PowerSeries a) {
    for (auto& x : a.coeffs_) x *= c;
    return a;
  }
  friend bool operator==(const PowerSeries& a, const PowerSeries& b) = default;

  /// d/dx; the result knows one coefficient fewer.
  PowerSeries derivative() const {
    if (order() == 0) throw TruncationError("PowerSeries: derivative of an order-0 series");
    PowerSeries r(order() - 1);
    for (int k = 0; k <= r.order(); ++k) r.at(k) = Rational(k + 1) * coeff(k + 1);
    return r;
  }
  /// Antiderivative with zero constant term; gains one order.
  PowerSeries integral() const {
    PowerSeries r(order() + 1);
    for (int k = 0; k <= order(); ++k) r.at(k + 1) = coeff(k) / Rational(k + 1);
    return r;
  }

  /// Multiplicative inverse; requires a nonzero constant term.
  PowerSeries inverse() const {
    if (coeff(0).is_zero())
      throw std::domain_error("PowerSeries: inverse of a series with zero constant term");
    PowerSeries r(order());
    Rational inv0 = Rational(1) / coeff(0);
    r.at(0) = inv0;
    for (int k = 1; k <= order(); ++k) {
      Rational s;
      for (int j = 1; j <= k; ++j)
        if (!coeff(j).is_zero()) s += coeff(j) * r.coeff(k - j);
      r.at(k) = -s * inv0;
    }
    return r;
  }

  /// Integer power; negative powers go through inverse().
  PowerSeries pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    PowerSeries result = one(order());
    PowerSeries base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_zero(); });
  }

private:
  static std::size_t checked_size(int order) {
    if (order < 0) throw std::invalid_argument("PowerSeries: negative truncation order");
    return static_cast<std::size_t>(order) + 1;
  }
  Rational& at(int k) { return coeffs_[static_cast<std::size_t>(k)]; }

  std::vector<Rational> coeffs_;
};

enum class SeriesOp { add, mul, div, compose };

/// a / b; b needs a nonzero constant term.
inline PowerSeries divide(const PowerSeries& a, const PowerSeries& b) {
  if (b.coeff(0).is_zero())
    throw std::domain_error("PowerSeries: division by a series with zero constant term");
  int n = std::min(a.order(), b.order());
  return a.truncated(n) * b.truncated(n).inverse();
}

/// outer(inner(x)); inner needs a zero constant term. Horner evaluation.
inline PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner) {
  if (!inner.coeff(0).is_zero())
    throw std::domain_error("PowerSeries: composition with nonzero inner constant term");
  int n = std::min(outer.order(), inner.order());
  PowerSeries in = inner.truncated(n);
  PowerSeries r(n);
  for (int k = n; k >= 0; --k) r = r * in + PowerSeries::monomial(n, 0, outer.coeff(k));
  return r;
}

inline PowerSeries series_arith(const PowerSeries& a, const PowerSeries& b, SeriesOp op) {
  switch (op) {
    case SeriesOp::add: return a + b;
    case SeriesOp::mul: return a * b;
    case SeriesOp::div: return divide(a, b);
    case SeriesOp::compose: return compose(a, b);
  }
  throw std::invalid_argument("series_arith: unknown op");
}

/// exp(a) for a with zero constant term, via f' = a' f.
inline PowerSeries exp(const PowerSeries& a) {
  if (!a.coeff(0).is_zero()) throw std::domain_error("exp: series has nonzero constant term");
  int n = a.order();
  std::vector<Rational> f(static_cast<std::size_t>(n) + 1);
  f[0] = Rational(1);
  // k f_k = sum_{j=1..k} j a_j f_{k-j}
  for (int k = 1; k <= n; ++k) {
    Rational s;
    for (int j = 1; j <= k; ++j)
      if (!a.coeff(j).is_zero()) s += Rational(j) * a.coeff(j) * f[static_cast<std::size_t>(k - j)];
    f[static_cast<std::size_t>(k)] = s / Rational(k);
  }
  return PowerSeries(n, std::move(f));
}

/// log(a) for a with constant term 1, as the integral of a'/a.
inline PowerSeries log(const PowerSeries& a) {
  if (a.coeff(0) != Rational(1)) throw std::domain_error("log: series constant term is not 1");
  if (a.order() == 0) return PowerSeries(0);
  return divide(a.derivative(), a.truncated(a.order() - 1)).integral();
}

enum class SeriesFn { exp, log };

inline PowerSeries series_exp_log(const PowerSeries& a, SeriesFn fn) {
  return fn == SeriesFn::exp ? exp(a) : log(a);
}

/// q^shift * series, used for the eta-quotient normalisation.
struct ShiftedQSeries {
  Rational shift;
  PowerSeries series;
};

/// [[exponent, "p/q"], ...] over nonzero coefficients.
inline nlohmann::ordered_json to_json(const PowerSeries& s) {
  auto arr = nlohmann::ordered_json::array();
  for (int k = 0; k <= s.order(); ++k)
    if (!s.coeff(k).is_zero()) arr.push_back({k, s.coeff(k).str()});
  return arr;
}

inline PowerSeries power_series_from_json(const nlohmann::ordered_json& j, int order) {
  PowerSeries s(order);
  std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
  for (const auto& e : j) {
    int k = e.at(0).get<int>();
    if (k < 0 || k > order) throw std::invalid_argument("series JSON exponent out of range");
    c[static_cast<std::size_t>(k)] = Rational::parse(e.at(1).get<std::string>());
  }
  return PowerSeries(order, std::move(c));
}

}  // namespace zetavoa
