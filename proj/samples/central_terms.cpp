// Prints the central terms of the modified brackets, the regularized vacuum
// eigenvalues and the leading terms of the bracket Y[omega, y] omega.
#include "zetavoa/zetavoa.hpp"

#include <iostream>

using namespace zetavoa;

int main() {
  std::cout << "zeta(-1) = " << zeta_nonpositive(1) << ", zeta(-3) = " << zeta_nonpositive(3) << "\n";

  auto vac = FockVector::vacuum();
  for (int r = 0; r <= 2; ++r)
    std::cout << "Lbar^(" << r << ")(0) on the vacuum: " << Lbar_apply(r, 0, vac).coefficient(FockMonomial{}) << "\n";

  for (auto [r, s] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
    auto rep = verify_monomial_purity(r, s, 2 * (r + s) + 4, 6);
    std::cout << "central term of [Lbar^(" << r << ")(m), Lbar^(" << s << ")(-m)]: "
              << rep.findings()["coefficient"].get<std::string>() << " m^" << rep.findings()["exponent"] << "\n";
  }

  const auto& k = voa_constants();
  FockSeries z = zhu_bracket_apply(k.omega, k.omega, 0);
  for (int p = -4; p <= 0; ++p) std::cout << "y^" << p << ": " << to_json(z.coefficient({p})).dump() << "\n";
  return 0;
}
