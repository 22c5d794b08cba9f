#include "heisenrep/forms.hpp"

#include <catch_amalgamated.hpp>

using namespace heisenrep;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Gaussian Fock form on monomials") {
  Poly<Q> one{{{0, 0}, Q(1)}}, z1z2{{{1, 1}, Q(1)}}, z1sq{{{2, 0}, Q(3)}};
  CHECK(gauss_monomial_form(one, one).value == 1);
  CHECK(gauss_monomial_form(z1z2, z1z2).value == 1);
  CHECK(gauss_monomial_form(z1sq, z1sq).value == 18);
  CHECK(gauss_monomial_form(one, z1sq).value == 0);
}

TEST_CASE("radial moments match m! Gamma(m - 2 lambda - p)") {
  // mpmath: 2 Gamma(2.6) and Gamma(2.9)
  CHECK_THAT(radial_moment(-0.3, 2, 0).value, WithinRel(2.85924911772060902732737540251, 1e-12));
  CHECK_THAT(radial_moment(-0.45, 1, -1).value, WithinRel(1.82735508062403595364311919759, 1e-12));
  CHECK_THAT(radial_moment_closed(-0.3, 2, 0), WithinRel(2.85924911772060902732737540251, 1e-14));
  for (double lam : {-0.3, -0.45})
    for (int p : {-1, 0, 1})
      for (int m = 1; m <= 6; ++m) {
        auto v = radial_moment(lam, m, p);
        CHECK_THAT(v.value, WithinRel(radial_moment_closed(lam, m, p), 1e-10));
        CHECK(v.error < 1e-8 * v.value);
      }
}

TEST_CASE("divergent moments are rejected") {
  CHECK_THROWS_AS(radial_moment(-0.3, 0, 1), DivergentMoment);
  CHECK_THROWS_AS(radial_moment(-0.45, 0, 1), DivergentMoment);
  CHECK_NOTHROW(radial_moment(-0.3, 1, 1));
}

TEST_CASE("Cartan-Weyl Gram matrix is diag((-1)^m)") {
  SemispinorForm F(-0.3, 0);
  auto G = cartan_weyl_gram(F, 6);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) {
      cplx want = a == b ? cplx((a % 2) ? -1.0 : 1.0) : cplx(0.0);
      CHECK(std::abs(G[a][b].value - want) < 1e-10);
    }
}

TEST_CASE("semispinor form is su(2) invariant") {
  SemispinorForm F(-0.45, -1);
  CHECK(su2_invariance_residual(F, 5) < 1e-10);
}

TEST_CASE("graded form pairs blocks separately") {
  GradedVector f{{{0, 1}, cplx(1.0)}, {{-1, 0}, cplx(2.0)}};
  GradedVector g{{{0, 1}, cplx(1.0)}};
  auto v = graded_form(-0.3, f, g);
  CHECK_THAT(std::real(v.value), WithinRel(-radial_moment_closed(-0.3, 1, 0), 1e-10));
}

TEST_CASE("dual pairing partners and entries") {
  DualPairing P(MonomialSpace({2, 2}), {1, 0});
  auto A = *P.space().index({2, 1});
  auto B = *P.partner(A);
  CHECK(P.space().exponents(B) == std::vector<int>{1, 2});
  CHECK(P.entry(A, B) == GQ(Q(-2)));
  CHECK(P.entry(A, A).is_zero());
}
