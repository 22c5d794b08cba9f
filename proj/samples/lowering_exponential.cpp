// exp(tau L-) zeta^n next to n! (-tau)^n L_n^(-2 lambda - 1)(zeta / tau).
#include "heisenrep/symmetry.hpp"

#include <cstdio>

using namespace heisenrep;

int main() {
  const double lambda = -0.3, tau = 0.5;
  for (int n = 0; n <= 5; ++n) {
    auto e = exp_lowering_monomial(lambda, tau, n, 30);
    auto c = laguerre_closed_form(n, tau, lambda);
    std::printf("n=%d\n", n);
    for (int k = 0; k <= n; ++k) std::printf("  zeta^%d  %+.12f  %+.12f\n", k, std::real(e[k]), c[k]);
  }
}
