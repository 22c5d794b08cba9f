#include "heisenrep/symmetry.hpp"

#include <catch_amalgamated.hpp>

using namespace heisenrep;
using Catch::Matchers::WithinAbs;

TEST_CASE("semispinor blocks carry spin lambda + p/2") {
  for (auto l : {qfrac(-1, 4), qfrac(-3, 10)})
    for (int p = -3; p <= 3; ++p) {
      auto b = su2_semispinor<Q>(SpinParameter(l), p, 12);
      CHECK(su2_bracket_residuals(b.L3, b.Lp, b.Lm, b.interior()).max() == 0.0);
      CHECK(masked_residual(b.casimir(), scalar_matrix(b.L3.dim(), b.expected_casimir()), b.interior()) == 0.0);
    }
  auto b = su2_semispinor<Q>(SpinParameter(qfrac(-1, 4)), 0, 8);
  CHECK(b.expected_casimir() == qfrac(-3, 16));
  CHECK(b.L3.at(0, 0) == qfrac(1, 4));
}

TEST_CASE("h2 parity split Casimir is -3/16 on both parities") {
  auto s = h2_semispinor_split<Q>(20);
  for (int par = 0; par < 2; ++par) {
    CHECK(su2_bracket_residuals(s.L3, s.Lp, s.Lm, s.parity_interior(par)).max() == 0.0);
    CHECK(masked_residual(casimir_su2(s.L3, s.Lp, s.Lm), scalar_matrix(s.L3.dim(), Q(qfrac(-3, 16))), s.parity_interior(par)) == 0.0);
  }
}

TEST_CASE("Fock su2 Casimir per degree") {
  auto f = fock_su2<Q>(6);
  auto C = casimir_su2(f.L3, f.Lp, f.Lm);
  for (int d = 0; d <= 6; ++d) {
    Q j = qfrac(d, 2);
    CHECK(masked_residual(C, scalar_matrix(f.space.dim(), Q(j * (j + 1))), f.homogeneous(d)) == 0.0);
  }
}

TEST_CASE("graded L0 spectrum") {
  TruncationWindow w(-2, 3, 5);
  auto g = graded_su2<Q>(SpinParameter(qfrac(-3, 10)), w);
  std::vector<Q> want;
  for (int p = -2; p <= 3; ++p) want.push_back(qfrac(-3, 10) + qfrac(p, 2));
  CHECK(diagonal_spectrum(g.L0.matrix()) == want);
}

TEST_CASE("sp(2,R) Casimir values on Fock and non-Fock sources") {
  auto f = fock_ladders<Q>(2, 8);
  auto g = sp2r_generators(f);
  auto keep = f.space.interior(4);
  std::size_t n = f.space.dim();
  CHECK(masked_residual(g.casimir(), scalar_matrix(n, GQ(qfrac(-3, 4))), keep) == 0.0);
  CHECK(masked_residual(g.casimir_prime(), SparseMatrix<GQ>(n), keep) == 0.0);
  CHECK(masked_residual(g.gamma_square(), scalar_matrix(n, GQ(qfrac(1, 2))), keep) == 0.0);

  TruncationWindow big(-5, 5, 12);
  auto h = sp2r_generators(nonfock_h4<Q>(SpinParameter(qfrac(-1, 4)), big));
  auto k = interior_mask(big, {4, 4});
  CHECK(masked_residual(h.casimir(), scalar_matrix(big.dim(), GQ(qfrac(-3, 4))), k) == 0.0);
  CHECK(masked_residual(h.gamma_square(), scalar_matrix(big.dim(), GQ(qfrac(1, 2))), k) == 0.0);
  CHECK(masked_residual(commutator(h.L[0], h.L[1]), h.L[2] * GQ::i(), k) == 0.0);
  CHECK(masked_residual(commutator(h.N[0], h.N[1]), h.L[2] * (GQ(Q(0)) - GQ::i()), k) == 0.0);
}

TEST_CASE("Gauss factorization") {
  auto f = gauss_factorize(GroupElement(2.0, 1.0, 1.0, 1.0));
  CHECK(cdist(f.nplus, {1.0, 1.0, 0.0, 1.0}) < 1e-15);
  CHECK(cdist(f.h, {1.0, 0.0, 0.0, 1.0}) < 1e-15);
  CHECK(cdist(f.nminus, {1.0, 0.0, 1.0, 1.0}) < 1e-15);
  GroupElement w((1.0 + cplx(0.5, -0.1) * cplx(0.2, 0.4)) / cplx(0.9, 0.1), cplx(0.5, -0.1), cplx(0.2, 0.4), cplx(0.9, 0.1));
  CHECK(cdist(gauss_factorize(w).product(), w.matrix()) < 1e-14);
  CHECK_THROWS_AS(gauss_factorize(GroupElement(0.0, 1.0, -1.0, 0.0)), SingularElement);
  CHECK_THROWS(GroupElement(1.0, 1.0, 1.0, 1.0));
}

TEST_CASE("Laguerre form of the lowering exponential") {
  double lam = -0.3;
  for (double tau : {0.5, -0.7})
    for (int n = 0; n <= 6; ++n) {
      auto e = exp_lowering_monomial(lam, tau, n, 40);
      auto c = laguerre_closed_form(n, tau, lam);
      for (int k = 0; k <= n; ++k) CHECK(std::abs(e[k] - c[k]) < 1e-9 * std::max(1.0, std::abs(c[k])));
    }
  // n = 1 by hand: exp(tau L-) zeta = zeta + 2 lambda tau.
  auto e = exp_lowering_monomial(lam, 0.5, 1, 10);
  CHECK_THAT(std::real(e[0]), WithinAbs(-0.3, 1e-15));
  CHECK_THAT(std::real(e[1]), WithinAbs(1.0, 1e-15));
  // The (-tau/2)^n prefactor misses by 2^-n.
  auto half = laguerre_closed_form(3, 0.5, lam, 0.5);
  auto full = laguerre_closed_form(3, 0.5, lam, 1.0);
  CHECK_THAT(half[0] / full[0], WithinAbs(0.125, 1e-15));
}

TEST_CASE("chain action law and pole rejection") {
  double lam = -0.25;
  cplx b(0.3, 0.1), g(0.2, -0.1), d(0.95, 0.05);
  GroupElement w((1.0 + b * g) / d, b, g, d);
  cplx tau(0.3, 0.2);
  auto fw = chain_action_factorwise(lam, w, tau, 50);
  auto cf = datum_series(chain_action(lam, w, tau), 50);
  CHECK(series_distance(fw, cf, 25) < 1e-12);
  auto law = lower_unipotent_law(lam, 0.4, tau);
  auto direct = exp_apply(lowering_block(lam, 50), cplx(0.4), exp_series(tau, 50));
  CHECK(series_distance(direct, datum_series(law, 50), 25) < 1e-12);
  CHECK_THROWS_AS(chain_action(lam, GroupElement(1.0, 0.0, 0.5, 1.0), cplx(-2.0)), PoleError);
}

TEST_CASE("coherent state is an L- eigenvector") {
  auto f = coherent_state(-0.3, 0.5, 40);
  auto g = lowering_block(-0.3, 40).apply(f);
  for (int k = 0; k < 38; ++k) CHECK(std::abs(g[k] - 0.5 * f[k]) < 1e-14);
}
