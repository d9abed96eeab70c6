#pragma once

/**
 * @file linear_solve.hpp
 * @brief Exact Gaussian elimination over the rationals.
 */

#include "zetavoa/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace zetavoa {

struct LinearSolution {
  std::vector<Rational> x;  // particular solution, free variables set to 0
  std::size_t rank = 0;
  bool unique = false;
};

/**
 * Solves rows * x = rhs. Returns nullopt when the system is inconsistent.
 * Rows are reduced one at a time against the current echelon basis, so the
 * working set never exceeds `unknowns` rows however many equations arrive.
 */
class IncrementalSolver {
public:
  explicit IncrementalSolver(std::size_t unknowns) : n_(unknowns) {}

  /// Adds one equation. Returns false if it contradicts earlier ones.
  bool add_equation(std::vector<Rational> row, Rational rhs) {
    if (row.size() != n_) throw std::invalid_argument("IncrementalSolver: row length mismatch");
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const Rational f = row[pivots_[i]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < n_; ++c)
        if (!echelon_[i][c].is_zero()) row[c] -= f * echelon_[i][c];
      rhs -= f * rhs_[i];
    }
    std::size_t p = 0;
    while (p < n_ && row[p].is_zero()) ++p;
    if (p == n_) {
      if (!rhs.is_zero()) consistent_ = false;
      return consistent_;
    }
    Rational inv = Rational(1) / row[p];
    for (auto& c : row) c *= inv;
    rhs *= inv;
    // keep the echelon basis fully reduced
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const Rational f = echelon_[i][p];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < n_; ++c)
        if (!row[c].is_zero()) echelon_[i][c] -= f * row[c];
      rhs_[i] -= f * rhs;
    }
    echelon_.push_back(std::move(row));
    rhs_.push_back(std::move(rhs));
    pivots_.push_back(p);
    return true;
  }

  std::size_t rank() const { return pivots_.size(); }
  bool consistent() const { return consistent_; }

  std::optional<LinearSolution> solution() const {
    if (!consistent_) return std::nullopt;
    LinearSolution s;
    s.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < pivots_.size(); ++i) s.x[pivots_[i]] = rhs_[i];
    s.rank = pivots_.size();
    s.unique = s.rank == n_;
    return s;
  }

private:
  std::size_t n_;
  std::vector<std::vector<Rational>> echelon_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> pivots_;
  bool consistent_ = true;
};

/// Coefficients c_0..c_{N-1} of the polynomial through (xs[i], ys[i]).
inline std::vector<Rational> interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("interpolate: bad sample sizes");
  std::size_t n = xs.size();
  IncrementalSolver solver(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n);
    Rational p(1);
    for (std::size_t k = 0; k < n; ++k) {
      row[k] = p;
      p *= xs[i];
    }
    solver.add_equation(std::move(row), ys[i]);
  }
  auto s = solver.solution();
  if (!s || !s->unique) throw std::invalid_argument("interpolate: sample points not distinct");
  return s->x;
}

}  // namespace zetavoa
