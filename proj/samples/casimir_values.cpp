// Casimir values of the quartic sp(2,R) generators on a graded window.
#include "heisenrep/symmetry.hpp"

#include <iostream>

using namespace heisenrep;

int main() {
  SpinParameter lam(qfrac(-3, 10));
  TruncationWindow w(-5, 5, 10);
  auto g = sp2r_generators(nonfock_h4<Q>(lam, w));
  auto keep = interior_mask(w, {4, 4});
  auto C = g.casimir(), G = g.gamma_square();
  for (std::size_t i = 0; i < w.dim(); ++i) {
    if (!keep(i)) continue;
    auto idx = graded_index(w, i);
    std::cout << "p=" << idx.p << " m=" << idx.m << "  C=" << to_string(C.at(i, i).re)
              << "  Gamma^2=" << to_string(G.at(i, i).re) << '\n';
  }
}
