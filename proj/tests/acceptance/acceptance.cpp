#include "zetavoa/generating.hpp"
#include "zetavoa/quadratic.hpp"
#include "zetavoa/vertex.hpp"
#include "zetavoa/zeta.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace zetavoa;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

// Runs one criterion, prints one line, enforces the optional time limit.
void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += " [time limit " + std::to_string(limit_s) + " s exceeded]";
  }
  if (!o.pass) ++failures;
  std::printf("%s criterion %2d  %-34s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string counts(const VerificationReport& r) {
  const auto& s = r.summary();
  return std::to_string(s.passed) + "/" + std::to_string(s.total) + " cells" +
         (s.uncertified ? ", " + std::to_string(s.uncertified) + " uncertified" : "") +
         (s.failed ? ", " + std::to_string(s.failed) + " failed" : "");
}

// p(n) by the standard dynamic program over largest part, independent of the product expansion.
std::vector<long long> partition_counts(int N) {
  std::vector<long long> p(static_cast<std::size_t>(N) + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= N; ++part)
    for (int n = part; n <= N; ++n) p[static_cast<std::size_t>(n)] += p[static_cast<std::size_t>(n - part)];
  return p;
}

const FockVector h1 = FockVector::monomial({1});

}  // namespace

int main() {
  criterion(1, "zeta and Bernoulli values", 1.0, [] {
    bool ok = zeta_nonpositive(0) == Rational(-1, 2) && zeta_nonpositive(1) == Rational(-1, 12) &&
              zeta_nonpositive(2) == Rational(0) && zeta_nonpositive(3) == Rational(1, 120) &&
              zeta_nonpositive(5) == Rational(-1, 252) && zeta_nonpositive(0) == -bernoulli(1) - Rational(1);
    return Outcome{ok, "zeta(0..-5) exact"};
  });

  criterion(2, "Virasoro relations", 60.0, [] {
    VerificationReport all("virasoro");
    for (int m = -4; m <= 4; ++m)
      for (int n = -4; n <= 4; ++n) all.merge(verify_virasoro(m, n, 8), {{"m", m}, {"n", n}});
    std::string c = verify_virasoro(2, -2, 8).findings()["central_term"].get<std::string>();
    return Outcome{all.passed() && c == "1/2", counts(all) + ", central(2,-2) = " + c};
  });

  criterion(3, "modified Virasoro relations", 0, [] {
    VerificationReport all("modified-virasoro");
    for (int m = -4; m <= 4; ++m)
      for (int n = -4; n <= 4; ++n) all.merge(verify_modified_virasoro(m, n, 8), {{"m", m}, {"n", n}});
    bool central_ok = true;
    std::string seen;
    for (int m = 1; m <= 4; ++m) {
      std::string c = verify_modified_virasoro(m, -m, 8).findings()["central_term"].get<std::string>();
      central_ok = central_ok && Rational::parse(c) == Rational(static_cast<long>(m) * m * m, 12);
      seen += (m > 1 ? "," : "") + c;
    }
    return Outcome{all.passed() && central_ok, counts(all) + ", central(m,-m) = " + seen};
  });

  criterion(4, "monomial purity of central terms", 0, [] {
    bool ok = true;
    std::string d;
    for (auto [r, s] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}}) {
      auto rep = verify_monomial_purity(r, s, std::max(6, 2 * (r + s) + 4), 6);
      ok = ok && rep.passed();
      std::string coeff = rep.findings().contains("coefficient") ? rep.findings()["coefficient"].get<std::string>() : "?";
      int e = rep.findings().contains("exponent") ? rep.findings()["exponent"].get<int>() : -1;
      if (r == 0 && s == 0) ok = ok && coeff == "1/12" && e == 3;
      d += "(" + std::to_string(r) + "," + std::to_string(s) + "): " + coeff + " m^" + std::to_string(e) + "  ";
    }
    return Outcome{ok, d};
  });

  criterion(5, "regularized vacuum eigenvalues", 0, [] {
    auto vac = FockVector::vacuum();
    FockVector a = Lbar_apply(0, 0, vac), b = Lbar_apply(1, 0, vac);
    bool ok = a == Rational(-1, 24) * vac && b == Rational(-1, 240) * vac;
    return Outcome{ok, "Lbar(0) 1 = " + a.coefficient(FockMonomial{}).str() + ", Lbar^(1)(0) 1 = " +
                           b.coefficient(FockMonomial{}).str()};
  });

  criterion(6, "differential-operator projection", 0, [] {
    VerificationReport all("diff-op-projection");
    for (int r = 0; r <= 1; ++r)
      for (int s = 0; s <= 1; ++s)
        for (int m = -2; m <= 2; ++m)
          for (int n = -2; n <= 2; ++n) all.merge(verify_diff_op_projection(r, s, m, n, 6, 6));
    return Outcome{all.passed(), counts(all)};
  });

  criterion(7, "contraction formula", 0, [] {
    VerificationReport all("contraction");
    for (const auto& b : basis(6)) all.merge(contraction_check(FockVector(b), {-12, 12}));
    return Outcome{all.passed(), counts(all)};
  });

  criterion(8, "diagonal extraction", 0, [] {
    bool ok = true;
    std::string d;
    for (Convention c : {Convention::neg_powers_y1, Convention::neg_powers_y2}) {
      auto rep = diagonal_extraction_check(3, 3, 5, c);
      ok = ok && rep.passed();
      d += to_string(c) + ": " + counts(rep) + "  ";
    }
    return Outcome{ok, d};
  });

  criterion(9, "graded dimension", 0, [] {
    auto p = partition_counts(50);
    PowerSeries g = graded_dimension(50);
    bool ok = true;
    for (int n = 0; n <= 50; ++n) ok = ok && g.coeff(n) == Rational(static_cast<long>(p[static_cast<std::size_t>(n)]));
    for (int n = 0; n <= 12; ++n) ok = ok && static_cast<long long>(basis_at_weight(n).size()) == p[static_cast<std::size_t>(n)];
    ok = ok && chi_S(50).shift == Rational(-1, 24);
    return Outcome{ok, "p(50) = " + g.coeff(50).str() + ", shift " + chi_S(1).shift.str()};
  });

  criterion(10, "vertex operator algebra axioms", 0, [] {
    auto rep = axiom_suite(5, 8);
    return Outcome{rep.passed(), counts(rep)};
  });

  const auto& k = voa_constants();
  const std::vector<FockVector> states{k.vacuum, h1, k.omega};

  criterion(11, "classical Jacobi identity", 600.0, [&] {
    VerificationReport all("jacobi");
    auto win = Windows::symmetric(6);
    for (const auto& u : states)
      for (const auto& v : states)
        for (const auto& b : basis(4)) all.merge(jacobi_check(u, v, FockVector(b), win));
    return Outcome{all.passed(), counts(all)};
  });

  criterion(12, "logarithmic Jacobi identity", 0, [&] {
    // at D = 4 the cells with x0-exponent 5, 6 are not determined; they are
    // then covered by a run at D = 6 restricted to that slab
    VerificationReport base("theorem42"), extra("theorem42");
    Windows win = Windows::symmetric(6, 4);
    Windows slab = win;
    slab.x0_lo = 5;
    slab.ydeg = 6;
    std::size_t residue = 0;
    for (const auto& u : states)
      for (const auto& v : states)
        for (const auto& b : basis(4)) {
          auto rep = theorem42_check(u, v, FockVector(b), win);
          for (const auto& c : rep.cells())
            if (c.key.contains("residue")) ++residue;
          base.merge(rep);
          extra.merge(theorem42_check(u, v, FockVector(b), slab));
        }
    bool ok = base.passed() && extra.passed() && base.summary().uncertified == extra.summary().total &&
              extra.summary().uncertified == 0;
    return Outcome{ok, "D=4: " + counts(base) + "; D=6 on x0 in [5,6]: " + counts(extra) + "; nontrivial residue cells " +
                           std::to_string(residue)};
  });

  criterion(13, "regularized commutator formula", 0, [] {
    bool fit_ok = true;
    int fits = 0;
    for (int r = 0; r <= 2; ++r)
      for (int s = 0; s <= 2; ++s)
        for (int m = -3; m <= 3; ++m)
          for (int n = -3; n <= 3; ++n) {
            auto cd = central_decompose(r, s, m, n, 6);
            fit_ok = fit_ok && cd.consistent && cd.residual_zero();
            ++fits;
          }
    Theorem31Context ctx(2);
    std::string d = "(a) " + std::to_string(fits) + " decompositions " + (fit_ok ? "exact" : "NOT exact") + "; (b)";
    bool any = false, y1 = false;
    for (Convention c : {Convention::neg_powers_y1, Convention::neg_powers_y2}) {
      VerificationReport all("theorem31");
      for (const auto& b : basis(4)) all.merge(theorem31_check(FockVector(b), {-5, 5}, 2, c, &ctx));
      any = any || all.passed();
      if (c == Convention::neg_powers_y1) y1 = all.passed();
      d += " " + to_string(c) + " " + (all.passed() ? "validates" : "fails") + " (" + counts(all) + ")";
    }
    d += y1 ? "; expected convention neg-powers-y1 validates" : "; expected convention neg-powers-y1 does not validate";
    return Outcome{fit_ok && any, d};
  });

  criterion(14, "weak commutativity orders", 0, [&] {
    auto win = Windows::symmetric(6);
    int a = 0, b = 0;
    for (const auto& w : basis(4)) {
      a = std::max(a, weak_comm_check(h1, h1, FockVector(w), win, 8).findings()["minimal_n"].get<int>());
      b = std::max(b, weak_comm_check(k.omega, k.omega, FockVector(w), win, 8).findings()["minimal_n"].get<int>());
    }
    return Outcome{a == 2 && b == 4, "h(-1): " + std::to_string(a) + ", omega: " + std::to_string(b)};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
