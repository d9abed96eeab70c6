#include <catch_amalgamated.hpp>

#include "zetavoa/quadratic.hpp"

using namespace zetavoa;

namespace {

// 1/2 sum_j j^r (n-j)^r (h(j)h(n-j) - contraction), with the plain product
// applied right to left and the contraction j delta_{j+(n-j),0} for j > 0
// subtracted afterwards.
FockVector Lr_oracle(int r, int n, const FockVector& v) {
  FockVector out;
  int W = v.max_weight();
  for (int j = -W - std::abs(n) - 2; j <= W + std::abs(n) + 2; ++j) {
    int k = n - j;
    Rational c = Rational(1, 2) * ipow(static_cast<long>(j) * k, r);
    if (c.is_zero()) continue;
    FockVector prod = h_apply(j, h_apply(k, v));
    if (n == 0 && j > 0) prod.add_scaled(v, Rational(-j));
    out.add_scaled(prod, c);
  }
  return out;
}

}  // namespace

TEST_CASE("L(n) examples") {
  auto vac = FockVector::vacuum();
  CHECK(L_apply(0, FockVector::monomial({1})) == FockVector::monomial({1}));
  CHECK(L_apply(-1, vac).is_zero());
  CHECK(L_apply(-2, vac) == Rational(1, 2) * FockVector::monomial({1, 1}));
  CHECK(Lr_apply(1, 0, FockVector::monomial({1})) == -FockVector::monomial({1}));
  // -j^2 h(-j)h(j) on h(-j) gives -j^3
  CHECK(Lr_apply(1, 0, FockVector::monomial({2})) == Rational(-8) * FockVector::monomial({2}));
}

TEST_CASE("quadratic operators agree with the contraction oracle") {
  for (const auto& b : basis(5)) {
    FockVector v(b);
    for (int r = 0; r <= 2; ++r)
      for (int n = -4; n <= 4; ++n) CHECK(Lr_apply(r, n, v) == Lr_oracle(r, n, v));
    CHECK(L_apply(0, v) == Rational(b.weight()) * v);
    for (int n = -3; n <= 3; ++n) {
      FockVector img = L_apply(n, v);
      if (!img.is_zero()) CHECK(weight(img) == b.weight() - n);
    }
  }
}

TEST_CASE("regularized zero modes") {
  auto vac = FockVector::vacuum();
  CHECK(Lbar_apply(0, 0, vac) == Rational(-1, 24) * vac);
  CHECK(Lbar_apply(1, 0, vac) == Rational(-1, 240) * vac);
  FockVector v = FockVector::monomial({2, 1});
  CHECK(Lbar_apply(2, 3, v) == Lr_apply(2, 3, v));
}

TEST_CASE("graded matrices") {
  GradedOperator L0 = to_matrix(OperatorSpec::L(0), 2);
  CHECK(L0.block(0).at(0, 0) == Rational(0));
  CHECK(L0.block(1).at(0, 0) == Rational(1));
  CHECK(L0.block(2).at(0, 0) == Rational(2));
  CHECK(L0.block(2).at(1, 1) == Rational(2));
  CHECK(L0.block(2).at(0, 1) == Rational(0));
  CHECK(to_matrix(OperatorSpec::L(5), 3).is_zero());
  GradedOperator L2 = to_matrix(OperatorSpec::Lr(1, -2), 4);
  for (const auto& b : basis(4)) CHECK(L2.apply(FockVector(b)) == Lr_apply(1, -2, FockVector(b)));
  CHECK_THROWS_AS(L2.apply(FockVector::monomial({5})), UncertifiedRegion);
}

TEST_CASE("commutators") {
  GradedOperator c = commutator(OperatorSpec::L(1), OperatorSpec::L(-1), 4);
  CHECK(c.domain_bound() == 4);
  GradedOperator two_L0 = to_matrix(OperatorSpec::L(0), 4);
  GradedOperator expect(0, 4);
  expect.add_scaled(two_L0, Rational(2));
  CHECK(c == expect);
  CHECK(commutator(OperatorSpec::L(0), OperatorSpec::L(0), 4).is_zero());
  CHECK(commutator(OperatorSpec::L(2), OperatorSpec::L(1), 3).degree() == 3);

  // factors built too small certify only the weights they cover
  GradedOperator a = to_matrix(OperatorSpec::L(2), 3);
  GradedOperator b = to_matrix(OperatorSpec::L(-2), 3);
  CHECK(commutator(a, b, 6).domain_bound() == 1);
  GradedOperator tiny = to_matrix(OperatorSpec::L(-3), 0);
  CHECK_THROWS_AS(commutator(tiny, to_matrix(OperatorSpec::L(-4), 0), 0), UncertifiedRegion);
}

TEST_CASE("Virasoro relations") {
  auto rep = verify_virasoro(2, -2, 6);
  CHECK(rep.passed());
  CHECK(rep.findings()["central_term"] == "1/2");
  CHECK(verify_virasoro(1, -1, 6).findings()["central_term"] == "0");
  CHECK(verify_virasoro(3, 2, 6).passed());
  auto mod = verify_modified_virasoro(2, -2, 6);
  CHECK(mod.passed());
  CHECK(mod.findings()["central_term"] == "2/3");
  CHECK(verify_modified_virasoro(1, -1, 6).findings()["central_term"] == "1/12");
}

TEST_CASE("a wrong central term is caught") {
  // L(0) instead of Lbar(0) shifts the central term; the modified check on L must fail
  VerificationReport rep = detail::verify_bracket("probe", OpFamily::L, 2, -2, 4, Rational(2, 3));
  CHECK_FALSE(rep.passed());
  CHECK(rep.summary().failed > 0);
}

TEST_CASE("central decomposition") {
  auto cd = central_decompose(0, 0, 2, -2, 6);
  CHECK(cd.residual_zero());
  CHECK(cd.operator_part[0] == Rational(4));
  CHECK(cd.scalar_part == Rational(2, 3));
  auto cd2 = central_decompose(0, 0, 1, 2, 6);
  CHECK(cd2.residual_zero());
  CHECK(cd2.operator_part[0] == Rational(-1));
  auto cd0 = central_decompose(1, 2, 0, 0, 5);
  CHECK(cd0.residual_zero());
  CHECK(cd0.scalar_part.is_zero());
  for (const auto& c : cd0.operator_part) CHECK(c.is_zero());
}

TEST_CASE("linear solver") {
  IncrementalSolver s(2);
  CHECK(s.add_equation({Rational(1), Rational(1)}, Rational(3)));
  CHECK(s.add_equation({Rational(1), Rational(-1)}, Rational(1)));
  CHECK(s.add_equation({Rational(2), Rational(0)}, Rational(4)));
  auto sol = s.solution();
  REQUIRE(sol);
  CHECK(sol->unique);
  CHECK(sol->x[0] == Rational(2));
  CHECK(sol->x[1] == Rational(1));
  CHECK_FALSE(s.add_equation({Rational(0), Rational(1)}, Rational(5)));
  CHECK_FALSE(s.solution());
  auto p = interpolate({Rational(1), Rational(2), Rational(3)}, {Rational(1), Rational(8), Rational(27)});
  CHECK(p == std::vector<Rational>{Rational(6), Rational(-11), Rational(6)});
}

TEST_CASE("monomial purity") {
  auto rep = verify_monomial_purity(0, 0, 6, 6);
  CHECK(rep.passed());
  CHECK(rep.findings()["exponent"] == 3);
  CHECK(rep.findings()["coefficient"] == "1/12");
  auto rep01 = verify_monomial_purity(0, 1, 6, 6);
  CHECK(rep01.passed());
  CHECK(rep01.findings()["exponent"] == 5);
  CHECK(rep01.findings()["coefficient"] == "1/60");
  CHECK_THROWS(verify_monomial_purity(1, 1, 6, 6));
}

TEST_CASE("differential operator projection") {
  for (int r = 0; r <= 1; ++r)
    for (int s = 0; s <= 1; ++s) {
      auto rep = verify_diff_op_projection(r, s, 1, -2, 6, 4);
      CHECK(rep.passed());
    }
}
