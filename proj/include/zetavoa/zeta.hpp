#pragma once

/**
 * @file zeta.hpp
 * @brief Bernoulli numbers, zeta at nonpositive integers, and the q-series
 *        of the Fock space.
 *
 * Convention: x/(e^x - 1) = sum B_k x^k / k!, so B_1 = -1/2.
 */

#include "zetavoa/power_series.hpp"
#include "zetavoa/rational.hpp"
#include "zetavoa/report.hpp"

#include <stdexcept>
#include <vector>

namespace zetavoa {

/// B_0..B_n from sum_{j=0}^{m} C(m+1, j) B_j = 0.
inline std::vector<Rational> bernoulli_table(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli_table: negative index");
  std::vector<Rational> b(static_cast<std::size_t>(n) + 1);
  b[0] = Rational(1);
  for (int m = 1; m <= n; ++m) {
    Rational s;
    for (int j = 0; j < m; ++j) s += binomial(m + 1, j) * b[static_cast<std::size_t>(j)];
    b[static_cast<std::size_t>(m)] = -s / Rational(m + 1);
  }
  return b;
}

inline Rational bernoulli(int k) {
  if (k < 0) throw std::invalid_argument("bernoulli: negative index");
  return bernoulli_table(k).back();
}

/// zeta(-n) for n >= 0: -B_{n+1}/(n+1), except zeta(0) = -B_1 - 1.
inline Rational zeta_nonpositive(int n) {
  if (n < 0) throw std::invalid_argument("zeta_nonpositive: n must be >= 0");
  if (n == 0) return -bernoulli(1) - Rational(1);
  return -bernoulli(n + 1) / Rational(n + 1);
}

/// (e^x - 1)/x through the given order.
inline PowerSeries expm1_over_x(int order) {
  std::vector<Rational> c;
  for (int k = 0; k <= order; ++k) c.emplace_back(Rational(1) / Rational(factorial(static_cast<unsigned long>(k + 1))));
  return PowerSeries(order, std::move(c));
}

/// u/(1 - e^{-u}) through the given order.
inline PowerSeries u_over_one_minus_exp_neg(int order) {
  std::vector<Rational> c;
  for (int k = 0; k <= order; ++k) {
    Rational t = Rational(1) / Rational(factorial(static_cast<unsigned long>(k + 1)));
    c.push_back(k % 2 ? -t : t);
  }
  return PowerSeries(order, std::move(c)).inverse();
}

/**
 * Checks 1/(1 - e^x) = -sum_k B_k/k! x^{k-1} for exponents -1..order.
 *
 * The left side is expanded as -x^{-1} * ((e^x - 1)/x)^{-1} by series
 * division; the right side uses the recurrence table. Cell keys are the
 * exponent of x.
 */
inline VerificationReport check_geometric_bernoulli(int order) {
  if (order < 1) throw std::invalid_argument("check_geometric_bernoulli: order must be >= 1");
  VerificationReport rep("geometric-bernoulli", {{"order", order}});
  rep.keep_trivial_cells(true);
  PowerSeries inv = expm1_over_x(order + 1).inverse();
  auto b = bernoulli_table(order + 1);
  for (int e = -1; e <= order; ++e) {
    Rational lhs = -inv.coeff(e + 1);
    int k = e + 1;
    Rational rhs = -b[static_cast<std::size_t>(k)] / Rational(factorial(static_cast<unsigned long>(k)));
    rep.add({{"exponent", e}}, lhs.str(), rhs.str(), lhs == rhs, lhs.is_zero() && rhs.is_zero());
  }
  return rep;
}

/// prod_{n=1}^{maxN} (1 - q^n)^{-1} through q^maxN.
inline PowerSeries graded_dimension(int maxN) {
  if (maxN < 0) throw std::invalid_argument("graded_dimension: maxN must be >= 0");
  PowerSeries prod = PowerSeries::one(maxN);
  for (int n = 1; n <= maxN; ++n) {
    // multiply by 1 + q^n + q^{2n} + ... in place
    std::vector<Rational> c = prod.coefficients();
    for (int k = n; k <= maxN; ++k) c[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k - n)];
    prod = PowerSeries(maxN, std::move(c));
  }
  return prod;
}

/// 1/eta(q) = q^{-1/24} prod (1 - q^n)^{-1}.
inline ShiftedQSeries chi_S(int maxN) {
  return ShiftedQSeries{Rational(-1, 24), graded_dimension(maxN)};
}

}  // namespace zetavoa
