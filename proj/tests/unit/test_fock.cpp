#include <catch_amalgamated.hpp>

#include "zetavoa/fock.hpp"
#include "zetavoa/zeta.hpp"

using namespace zetavoa;

TEST_CASE("monomials are canonical") {
  FockMonomial a({1, 3, 1});
  CHECK(a.str() == "[3,1,1]");
  CHECK(a.weight() == 5);
  CHECK(a == FockMonomial({3, 1, 1}));
  CHECK_THROWS(FockMonomial({0}));
  CHECK(to_json(a).dump() == "[3,1,1]");
}

TEST_CASE("Heisenberg action") {
  auto vac = FockVector::vacuum();
  CHECK(h_apply(-2, vac) == FockVector::monomial({2}));
  CHECK(h_apply(1, FockVector::monomial({1})) == vac);
  CHECK(h_apply(0, FockVector::monomial({2, 1})).is_zero());
  CHECK(h_apply(2, FockVector::monomial({2, 2})) == Rational(4) * FockVector::monomial({2}));
}

TEST_CASE("Heisenberg relations on the truncated basis") {
  for (const auto& b : basis(6)) {
    FockVector v(b);
    for (int m = -5; m <= 5; ++m)
      for (int n = -5; n <= 5; ++n) {
        FockVector lhs = h_apply(m, h_apply(n, v)) - h_apply(n, h_apply(m, v));
        FockVector rhs = m + n == 0 ? Rational(m) * v : FockVector();
        CHECK(lhs == rhs);
      }
    for (int n = b.weight() + 1; n <= b.weight() + 3; ++n) CHECK(h_apply(n, v).is_zero());
  }
}

TEST_CASE("weight") {
  CHECK(weight(FockVector::vacuum()) == 0);
  CHECK(weight(FockVector::monomial({3, 1, 1})) == 5);
  CHECK(weight(FockVector::monomial({1, 1}) + FockVector::monomial({2})) == 2);
  CHECK_THROWS(weight(FockVector()));
  CHECK_THROWS(weight(FockVector::monomial({1}) + FockVector::monomial({2})));
}

TEST_CASE("basis enumeration") {
  CHECK(basis(0).size() == 1);
  auto b2 = basis(2);
  REQUIRE(b2.size() == 4);
  CHECK(b2[0].is_vacuum());
  CHECK(b2[1] == FockMonomial({1}));
  CHECK(b2[2] == FockMonomial({2}));
  CHECK(b2[3] == FockMonomial({1, 1}));
  CHECK(basis_at_weight(4).size() == 5);
  PowerSeries g = graded_dimension(12);
  for (int w = 0; w <= 12; ++w) CHECK(Rational(static_cast<long>(basis_at_weight(w).size())) == g.coeff(w));
  auto b = basis(6);
  for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i - 1] < b[i]);
}

TEST_CASE("FockVector JSON") {
  FockVector v = Rational(1, 2) * FockVector::monomial({1, 1}) + FockVector::monomial({2});
  auto j = to_json(v);
  CHECK(j.dump() == R"([{"monomial":[2],"coefficient":"1"},{"monomial":[1,1],"coefficient":"1/2"}])");
  CHECK(fock_vector_from_json(j) == v);
}

TEST_CASE("differential operator images") {
  for (int m = -4; m <= 4; ++m) {
    auto tm = LaurentPolyVector::monomial(m);
    CHECK(diff_op_apply(0, 0, tm) == LaurentPolyVector::monomial(m, Rational(-m)));
    CHECK(diff_op_apply(1, 0, tm) == LaurentPolyVector::monomial(m, ipow(m, 3)));
    // r = 0 composed twice against direct polynomial computation: t^n D t^n D t^m
    for (int n = -2; n <= 2; ++n) {
      auto twice = diff_op_apply(0, n, diff_op_apply(0, n, tm));
      CHECK(twice == LaurentPolyVector::monomial(m + 2 * n, Rational(static_cast<long>(m) * (m + n))));
    }
  }
  for (int r = 1; r <= 3; ++r)
    for (int n = -2; n <= 2; ++n) CHECK(diff_op_apply(r, n, LaurentPolyVector::monomial(0)).is_zero());
}
