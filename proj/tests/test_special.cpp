#include "heisenrep/special.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <catch_amalgamated.hpp>

using namespace heisenrep;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Laguerre recurrence and series agree with reference values") {
  // mpmath laguerre(n, a, x)
  CHECK_THAT(laguerre_eval(3, 0.5, 1.2), WithinAbs(-0.8305, 1e-14));
  CHECK_THAT(laguerre_series(3, 0.5, 1.2), WithinAbs(-0.8305, 1e-14));
  CHECK_THAT(laguerre_eval(5, -0.4, 2.5), WithinAbs(0.704125083333333311711647410173, 1e-13));
  CHECK_THAT(laguerre_series(5, -0.4, 2.5), WithinAbs(0.704125083333333311711647410173, 1e-13));
  CHECK(laguerre_eval(0, 3.0, 7.0) == 1.0);
  for (int n = 0; n <= 8; ++n)
    for (double x : {0.1, 1.0, 3.3}) CHECK_THAT(laguerre_eval(n, -1.4, x), WithinAbs(laguerre_series(n, -1.4, x), 1e-10));
  CHECK_THROWS(laguerre_eval(-1, 0.0, 1.0));
}

TEST_CASE("bessel_k against mpmath and Boost") {
  CHECK_THAT(bessel_k(0.0, 1.0), WithinRel(0.421024438240708333335627379213, 1e-13));
  CHECK_THAT(bessel_k(1.0 / 3.0, 2.0), WithinRel(0.116544961296165248758942628915, 1e-13));
  CHECK_THAT(bessel_k(2.6, 0.3), WithinRel(97.7930785025946240613047711219, 1e-12));
  CHECK_THAT(bessel_k(0.1, 35.0), WithinRel(1.33122267412997821042845030863e-16, 1e-12));
  for (double nu : {-1.4, -0.6, 0.2, 0.5, 1.9})
    for (double x : {0.05, 0.7, 4.0, 20.0}) CHECK_THAT(bessel_k(nu, x), WithinRel(boost::math::cyl_bessel_k(nu, x), 1e-12));
  CHECK_THROWS(bessel_k(0.5, 0.0));
}

TEST_CASE("Bessel moment closed form") {
  CHECK_THAT(bessel_k_moment_closed(1.0, 0.5), WithinRel(std::pow(2.0, -1.0) * std::tgamma(0.25) * std::tgamma(0.75), 1e-15));
  CHECK_THROWS(bessel_k_moment_closed(0.4, 0.5));
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec s;
  CHECK_NOTHROW(s.validate());
  CHECK(s.refined().node_count() > s.node_count());
  s.cutoff = 8.0;
  CHECK_THROWS(s.validate());
  QuadratureSpec t;
  CHECK_THAT(composite_gauss([](double x) { return std::exp(-x); }, t), WithinAbs(1.0, 1e-14));
}
