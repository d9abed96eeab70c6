#pragma once

/**
 * @file quadratic.hpp
 * @brief Normal-ordered quadratic operators on the Fock space.
 *
 *   L^(r)(n)    = 1/2 sum_j j^r (n-j)^r :h(j) h(n-j):
 *   Lbar^(r)(n) = L^(r)(n) + delta_{n,0} (-1)^r 1/2 zeta(-2r-1)
 *
 * L(n) is L^(0)(n). Normal ordering applies the annihilation factor first.
 * On a vector of weight w only the terms with every annihilation index at
 * most w contribute, so each application is a finite sum.
 *
 * GradedOperator stores an operator as dense per-weight matrices over the
 * monomial basis. Commutators are formed from two such operators and are
 * only reported on the source weights where both composition orders stay
 * inside the weights the factors were built on.
 */

#include "zetavoa/errors.hpp"
#include "zetavoa/fock.hpp"
#include "zetavoa/linear_solve.hpp"
#include "zetavoa/rational.hpp"
#include "zetavoa/report.hpp"
#include "zetavoa/zeta.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zetavoa {

/// Coefficient f(a, b) of :h(a) h(b): in a quadratic sum with a + b = n.
using PairCoefficient = std::function<Rational(int, int)>;

/// sum_{a+b=n} f(a, b) :h(a) h(b): v, with no 1/2 prefactor.
inline FockVector quadratic_apply(int n, const PairCoefficient& f, const FockVector& v) {
  FockVector out;
  for (const auto& [m, c] : v.terms()) {
    const int wt = m.weight();
    for (int a = std::min(n, 0) - wt - 1; a <= std::max(n, 0) + wt + 1; ++a) {
      const int b = n - a;
      if (a == 0 || b == 0) continue;
      // annihilation factor first; two creators or two annihilators commute
      const int first = a > 0 ? a : b;
      const int second = a > 0 ? b : a;
      if (first > wt) continue;
      FockVector step;
      h_apply_monomial(first, m, c, step);
      if (step.is_zero()) continue;
      Rational k = f(a, b);
      if (k.is_zero()) continue;
      for (const auto& [m2, c2] : step.terms()) h_apply_monomial(second, m2, c2 * k, out);
    }
  }
  return out;
}

inline FockVector Lr_apply(int r, int n, const FockVector& v) {
  if (r < 0) throw std::invalid_argument("Lr_apply: r must be >= 0");
  const Rational half(1, 2);
  return quadratic_apply(n, [&](int a, int b) { return half * ipow(static_cast<long>(a) * b, r); }, v);
}

inline FockVector L_apply(int n, const FockVector& v) { return Lr_apply(0, n, v); }

/// The scalar (-1)^r 1/2 zeta(-2r-1) added to L^(r)(0).
inline Rational Lbar_shift(int r) {
  Rational z = Rational(1, 2) * zeta_nonpositive(2 * r + 1);
  return r % 2 ? -z : z;
}

inline FockVector Lbar_apply(int r, int n, const FockVector& v) {
  FockVector out = Lr_apply(r, n, v);
  if (n == 0) out.add_scaled(v, Lbar_shift(r));
  return out;
}

enum class OpFamily { L, Lr, Lbar, identity };

/// A named quadratic operator: family, r, and mode n (the degree).
struct OperatorSpec {
  OpFamily family = OpFamily::L;
  int r = 0;
  int n = 0;

  static OperatorSpec L(int n) { return {OpFamily::L, 0, n}; }
  static OperatorSpec Lr(int r, int n) { return {OpFamily::Lr, r, n}; }
  static OperatorSpec Lbar(int r, int n) { return {OpFamily::Lbar, r, n}; }
  static OperatorSpec identity() { return {OpFamily::identity, 0, 0}; }

  int degree() const { return family == OpFamily::identity ? 0 : n; }

  FockVector apply(const FockVector& v) const {
    switch (family) {
      case OpFamily::L: return L_apply(n, v);
      case OpFamily::Lr: return Lr_apply(r, n, v);
      case OpFamily::Lbar: return Lbar_apply(r, n, v);
      case OpFamily::identity: return v;
    }
    throw std::invalid_argument("OperatorSpec: unknown family");
  }

  std::string name() const {
    switch (family) {
      case OpFamily::L: return "L(" + std::to_string(n) + ")";
      case OpFamily::Lr: return "L^(" + std::to_string(r) + ")(" + std::to_string(n) + ")";
      case OpFamily::Lbar: return "Lbar^(" + std::to_string(r) + ")(" + std::to_string(n) + ")";
      case OpFamily::identity: return "Id";
    }
    return "?";
  }
};

/// Basis of one weight together with a monomial -> index lookup. Cached.
struct WeightBasis {
  std::vector<FockMonomial> monomials;
  std::map<FockMonomial, std::size_t> index;
};

inline const WeightBasis& weight_basis(int w) {
  static std::mutex mu;
  static std::map<int, WeightBasis> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(w);
  if (it != cache.end()) return it->second;
  WeightBasis b;
  b.monomials = basis_at_weight(w);
  for (std::size_t i = 0; i < b.monomials.size(); ++i) b.index.emplace(b.monomials[i], i);
  return cache.emplace(w, std::move(b)).first->second;
}

/// Dense rational matrix, row-major.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x.is_zero(); });
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& x = a.at(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b.at(k, j).is_zero()) r.at(i, j) += x * b.at(k, j);
      }
    return r;
  }
  Matrix& add_scaled(const Matrix& o, const Rational& c) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch in sum");
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!o.data_[i].is_zero()) data_[i] += o.data_[i] * c;
    return *this;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  Json to_json() const {
    Json rows = Json::array();
    for (std::size_t i = 0; i < rows_; ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < cols_; ++j) row.push_back(at(i, j).str());
      rows.push_back(std::move(row));
    }
    return rows;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/**
 * Weight-homogeneous operator of degree d on the weights 0..domain_bound.
 * The block at source weight w maps basis(w) to basis(w - d); it is empty
 * (zero rows) when w - d < 0.
 */
class GradedOperator {
public:
  GradedOperator() = default;
  GradedOperator(int degree, int domain_bound) : degree_(degree), bound_(domain_bound) {
    if (domain_bound < 0) throw std::invalid_argument("GradedOperator: negative domain bound");
    for (int w = 0; w <= domain_bound; ++w) {
      std::size_t rows = w - degree >= 0 ? weight_basis(w - degree).monomials.size() : 0;
      blocks_.emplace(w, Matrix(rows, weight_basis(w).monomials.size()));
    }
  }

  int degree() const { return degree_; }
  int domain_bound() const { return bound_; }
  const std::map<int, Matrix>& blocks() const { return blocks_; }
  const Matrix& block(int w) const {
    auto it = blocks_.find(w);
    if (it == blocks_.end()) throw UncertifiedRegion("GradedOperator: weight " + std::to_string(w) + " outside domain");
    return it->second;
  }
  Matrix& block(int w) { return const_cast<Matrix&>(std::as_const(*this).block(w)); }

  FockVector apply(const FockVector& v) const {
    FockVector out;
    for (const auto& [m, c] : v.terms()) {
      const int w = m.weight();
      const Matrix& blk = block(w);
      if (w - degree_ < 0) continue;
      const auto& src = weight_basis(w);
      const auto& dst = weight_basis(w - degree_);
      std::size_t col = src.index.at(m);
      for (std::size_t i = 0; i < blk.rows(); ++i)
        if (!blk.at(i, col).is_zero()) out.add_term(dst.monomials[i], blk.at(i, col) * c);
    }
    return out;
  }

  bool is_zero() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& kv) { return kv.second.is_zero(); });
  }

  /// Same degree; restricted to the smaller domain.
  GradedOperator& add_scaled(const GradedOperator& o, const Rational& c) {
    if (o.degree_ != degree_) throw std::invalid_argument("GradedOperator: degree mismatch in sum");
    restrict_to(std::min(bound_, o.bound_));
    for (auto& [w, blk] : blocks_) blk.add_scaled(o.block(w), c);
    return *this;
  }

  void restrict_to(int bound) {
    while (bound_ > bound) blocks_.erase(bound_--);
  }

  friend bool operator==(const GradedOperator& a, const GradedOperator& b) = default;

  Json to_json() const {
    Json blocks = Json::array();
    for (const auto& [w, blk] : blocks_) blocks.push_back({{"source_weight", w}, {"matrix", blk.to_json()}});
    return {{"degree", degree_}, {"domain_bound", bound_}, {"blocks", std::move(blocks)}};
  }

  static GradedOperator identity(int bound) {
    GradedOperator g(0, bound);
    for (auto& [w, blk] : g.blocks_)
      for (std::size_t i = 0; i < blk.rows(); ++i) blk.at(i, i) = Rational(1);
    return g;
  }

private:
  int degree_ = 0;
  int bound_ = -1;
  std::map<int, Matrix> blocks_;
};

/// Matrix of an arbitrary degree-homogeneous linear map on weights 0..W.
inline GradedOperator to_matrix(const std::function<FockVector(const FockVector&)>& op, int degree, int W) {
  if (W < 0) throw std::invalid_argument("to_matrix: W must be >= 0");
  GradedOperator g(degree, W);
  for (int w = 0; w <= W; ++w) {
    if (w - degree < 0) continue;
    const auto& src = weight_basis(w);
    const auto& dst = weight_basis(w - degree);
    Matrix& blk = g.block(w);
    for (std::size_t j = 0; j < src.monomials.size(); ++j) {
      FockVector img = op(FockVector(src.monomials[j]));
      for (const auto& [m, c] : img.terms()) {
        auto it = dst.index.find(m);
        if (it == dst.index.end()) throw std::logic_error("to_matrix: operator is not homogeneous of the given degree");
        blk.at(it->second, j) = c;
      }
    }
  }
  return g;
}

inline GradedOperator to_matrix(const OperatorSpec& op, int W) {
  return to_matrix([&](const FockVector& v) { return op.apply(v); }, op.degree(), W);
}

/// Largest W' <= W on which [a, b] is exactly determined by the stored blocks.
inline int certified_commutator_bound(const GradedOperator& a, const GradedOperator& b, int W) {
  int bound = std::min({W, a.domain_bound(), b.domain_bound()});
  bound = std::min(bound, a.domain_bound() + b.degree());
  bound = std::min(bound, b.domain_bound() + a.degree());
  return bound;
}

/// ab - ba on the certified weights; throws if no weight is certified.
inline GradedOperator commutator(const GradedOperator& a, const GradedOperator& b, int W) {
  int bound = certified_commutator_bound(a, b, W);
  if (bound < 0) throw UncertifiedRegion("commutator: no certified weight at this window");
  const int d = a.degree() + b.degree();
  GradedOperator r(d, bound);
  for (int w = 0; w <= bound; ++w) {
    if (w - d < 0) continue;
    Matrix& out = r.block(w);
    // ab: b at w, then a at w - deg b
    if (w - b.degree() >= 0) out.add_scaled(a.block(w - b.degree()) * b.block(w), Rational(1));
    if (w - a.degree() >= 0) out.add_scaled(b.block(w - a.degree()) * a.block(w), Rational(-1));
  }
  return r;
}

/// Commutator of two named operators, each built on just the weights it needs.
inline GradedOperator commutator(const OperatorSpec& a, const OperatorSpec& b, int W) {
  GradedOperator ma = to_matrix(a, W + std::max(0, -b.degree()));
  GradedOperator mb = to_matrix(b, W + std::max(0, -a.degree()));
  return commutator(ma, mb, W);
}

struct CentralDecomposition {
  OpFamily family = OpFamily::Lbar;
  int r = 0, s = 0, m = 0, n = 0, W = 0;
  std::vector<Rational> operator_part;  // c_j on family^(j)(m+n), j = 0..r+s
  Rational scalar_part;                 // multiple of Id (only when m+n = 0)
  GradedOperator residual;
  bool consistent = false;  // the linear system had a solution
  bool unique = false;      // ... and it was unique
  bool residual_zero() const { return consistent && residual.is_zero(); }

  Json to_json() const {
    Json ops = Json::array();
    for (const auto& c : operator_part) ops.push_back(c.str());
    return {{"r", r}, {"s", s}, {"m", m}, {"n", n}, {"weight", W},
            {"operator_part", std::move(ops)}, {"scalar_part", scalar_part.str()},
            {"consistent", consistent}, {"unique", unique}, {"residual_zero", residual_zero()}};
  }
};

/**
 * Fits [X^(r)(m), X^(s)(n)] = sum_{j <= r+s} c_j X^(j)(m+n) + scalar Id
 * exactly over the basis images up to weight W, where X is L^(.) or
 * Lbar^(.) according to `family`. The identity column is present only when
 * m + n = 0.
 */
inline CentralDecomposition fit_commutator(OpFamily family, int r, int s, int m, int n, int W) {
  if (family != OpFamily::Lr && family != OpFamily::Lbar)
    throw std::invalid_argument("fit_commutator: family must be Lr or Lbar");
  CentralDecomposition cd;
  cd.family = family;
  cd.r = r; cd.s = s; cd.m = m; cd.n = n;
  GradedOperator C = commutator(OperatorSpec{family, r, m}, OperatorSpec{family, s, n}, W);
  cd.W = C.domain_bound();
  const int k = m + n;
  std::vector<OperatorSpec> fam;
  for (int j = 0; j <= r + s; ++j) fam.push_back(OperatorSpec{family, j, k});
  if (k == 0) fam.push_back(OperatorSpec::identity());

  std::vector<GradedOperator> images;
  for (const auto& f : fam) images.push_back(to_matrix(f, cd.W));

  IncrementalSolver solver(fam.size());
  for (int w = 0; w <= cd.W; ++w) {
    const Matrix& target = C.block(w);
    for (std::size_t i = 0; i < target.rows(); ++i)
      for (std::size_t j = 0; j < target.cols(); ++j) {
        std::vector<Rational> row;
        row.reserve(fam.size());
        bool any = !target.at(i, j).is_zero();
        for (const auto& img : images) {
          row.push_back(img.block(w).at(i, j));
          any = any || !row.back().is_zero();
        }
        if (any) solver.add_equation(std::move(row), target.at(i, j));
      }
  }
  auto sol = solver.solution();
  cd.residual = C;
  cd.operator_part.assign(static_cast<std::size_t>(r + s + 1), Rational(0));
  if (!sol) return cd;
  cd.consistent = true;
  cd.unique = sol->unique;
  for (std::size_t j = 0; j < fam.size(); ++j) {
    if (fam[j].family == OpFamily::identity) cd.scalar_part = sol->x[j];
    else cd.operator_part[j] = sol->x[j];
    cd.residual.add_scaled(images[j], -sol->x[j]);
  }
  return cd;
}

inline CentralDecomposition central_decompose(int r, int s, int m, int n, int W) {
  return fit_commutator(OpFamily::Lbar, r, s, m, n, W);
}

namespace detail {

/// One cell per basis vector of the commutator's certified domain.
inline void add_operator_cells(VerificationReport& rep, const GradedOperator& lhs,
                               const std::function<FockVector(const FockVector&)>& rhs) {
  for (int w = 0; w <= lhs.domain_bound(); ++w)
    for (const auto& b : weight_basis(w).monomials) {
      FockVector v(b);
      FockVector l = lhs.apply(v);
      FockVector r = rhs(v);
      rep.add({{"basis_vector", to_json(b)}}, to_json(l), to_json(r), l == r, l.is_zero() && r.is_zero());
    }
}

inline VerificationReport verify_bracket(const std::string& identity, OpFamily family, int m, int n, int W,
                                         const Rational& central) {
  VerificationReport rep(identity, {{"m", m}, {"n", n}, {"weight", W}});
  GradedOperator C = commutator(OperatorSpec{family, 0, m}, OperatorSpec{family, 0, n}, W);
  rep.parameters()["certified_weight"] = C.domain_bound();
  const Rational mn(m - n);
  const int k = m + n;
  add_operator_cells(rep, C, [&](const FockVector& v) {
    FockVector r = mn * OperatorSpec{family, 0, k}.apply(v);
    if (k == 0) r.add_scaled(v, central);
    return r;
  });
  CentralDecomposition cd = fit_commutator(family == OpFamily::L ? OpFamily::Lr : family, 0, 0, m, n, W);
  rep.findings()["central_term"] = k == 0 ? Json(cd.scalar_part.str()) : Json("0");
  rep.findings()["fit"] = cd.to_json();
  return rep;
}

}  // namespace detail

/// [L(m), L(n)] = (m - n) L(m+n) + (m^3 - m)/12 delta_{m+n,0}, cell by cell.
inline VerificationReport verify_virasoro(int m, int n, int W) {
  Rational central = Rational(static_cast<long>(m) * m * m - m, 12);
  return detail::verify_bracket("virasoro", OpFamily::L, m, n, W, central);
}

/// [Lbar(m), Lbar(n)] = (m - n) Lbar(m+n) + m^3/12 delta_{m+n,0}, cell by cell.
inline VerificationReport verify_modified_virasoro(int m, int n, int W) {
  Rational central = Rational(static_cast<long>(m) * m * m, 12);
  return detail::verify_bracket("modified-virasoro", OpFamily::Lbar, m, n, W, central);
}

/**
 * Collects the scalar part of [Lbar^(r)(m), Lbar^(s)(-m)] for m = 1..Mmax,
 * interpolates the polynomial through those values and checks that it has
 * exactly one nonzero coefficient, of degree at most 2(r+s)+3.
 */
inline VerificationReport verify_monomial_purity(int r, int s, int Mmax, int W) {
  const int degree_bound = 2 * (r + s) + 3;
  if (Mmax < degree_bound + 1)
    throw std::invalid_argument("verify_monomial_purity: Mmax must be >= 2(r+s)+4");
  VerificationReport rep("monomial-purity", {{"r", r}, {"s", s}, {"m_max", Mmax}, {"weight", W}});
  rep.keep_trivial_cells(true);

  CentralDecomposition zero = central_decompose(r, s, 0, 0, W);
  rep.add({{"m", 0}, {"check", "scalar"}}, zero.scalar_part.str(), "0",
          zero.residual_zero() && zero.scalar_part.is_zero());

  std::vector<Rational> xs, ys;
  Json scalars = Json::array();
  for (int m = 1; m <= Mmax; ++m) {
    CentralDecomposition cd = central_decompose(r, s, m, -m, W);
    bool ok = cd.residual_zero() && cd.unique;
    rep.add({{"m", m}, {"check", "fit"}}, ok, true, ok);
    xs.emplace_back(m);
    ys.push_back(cd.scalar_part);
    scalars.push_back(cd.scalar_part.str());
  }
  std::vector<Rational> poly = interpolate(xs, ys);
  Json coeffs = Json::array();
  int nonzero = 0, exponent = -1;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    coeffs.push_back(poly[k].str());
    if (!poly[k].is_zero()) {
      ++nonzero;
      exponent = static_cast<int>(k);
    }
  }
  rep.findings()["scalars"] = scalars;
  rep.findings()["polynomial"] = coeffs;
  rep.add({{"check", "nonzero_coefficients"}}, nonzero, 1, nonzero == 1);
  rep.add({{"check", "degree_bound"}}, exponent, degree_bound, exponent >= 0 && exponent <= degree_bound);
  if (nonzero == 1) {
    rep.findings()["exponent"] = exponent;
    rep.findings()["coefficient"] = poly[static_cast<std::size_t>(exponent)].str();
  }
  return rep;
}

/**
 * Maps the operator part of [L^(r)(m), L^(s)(n)] through
 * L^(j)(k) -> (-1)^{j+1} D^j t^k D D^j and compares it with the bracket of
 * the two image differential operators on t^p for |p| <= P.
 */
inline VerificationReport verify_diff_op_projection(int r, int s, int m, int n, int W, int P) {
  VerificationReport rep("diff-op-projection",
                         {{"r", r}, {"s", s}, {"m", m}, {"n", n}, {"weight", W}, {"p_max", P}});
  CentralDecomposition cd = fit_commutator(OpFamily::Lr, r, s, m, n, W);
  rep.findings()["fit"] = cd.to_json();
  if (m + n == 0) rep.findings()["cocycle"] = cd.scalar_part.str();
  rep.add({{"check", "fit"}}, cd.residual_zero() && cd.unique, true, cd.residual_zero() && cd.unique);
  for (int p = -P; p <= P; ++p) {
    LaurentPolyVector tp = LaurentPolyVector::monomial(p);
    LaurentPolyVector lhs;
    for (int j = 0; j <= r + s; ++j)
      lhs += cd.operator_part[static_cast<std::size_t>(j)] * diff_op_apply(j, m + n, tp);
    LaurentPolyVector rhs = diff_op_apply(r, m, diff_op_apply(s, n, tp)) - diff_op_apply(s, n, diff_op_apply(r, m, tp));
    rep.add({{"p", p}}, to_json(lhs), to_json(rhs), lhs == rhs, lhs.is_zero() && rhs.is_zero());
  }
  return rep;
}

}  // namespace zetavoa
