#include "heisenrep/core.hpp"

#include <catch_amalgamated.hpp>

using namespace heisenrep;
using Catch::Matchers::WithinAbs;

TEST_CASE("rational and decimal parsing") {
  CHECK(parse_rational("-3/10") == qfrac(-3, 10));
  CHECK(parse_rational("7") == Q(7));
  CHECK(parse_decimal("-0.3") == qfrac(-3, 10));
  CHECK(parse_decimal("0.125") == qfrac(1, 8));
  CHECK_THROWS_AS(parse_rational("-0.3"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_decimal("1.2.3"), ParseError);
  CHECK(to_string(qfrac(-6, 8)) == "-3/4");
}

TEST_CASE("spin parameter rejects half-integers") {
  CHECK_NOTHROW(SpinParameter(qfrac(-1, 4)));
  CHECK_NOTHROW(SpinParameter(qfrac(-3, 10)));
  CHECK_THROWS_AS(SpinParameter(qfrac(1, 2)), GeneralPositionError);
  CHECK_THROWS_AS(SpinParameter(qfrac(-3, 2)), GeneralPositionError);
  CHECK_THROWS_AS(SpinParameter(Q(0)), GeneralPositionError);
  CHECK_NOTHROW(SpinParameter(qfrac(1, 2), false));
  CHECK(SpinParameter(qfrac(-1, 4)).value() == -0.25);
}

TEST_CASE("window indexing round trips") {
  TruncationWindow w(-3, 2, 5);
  CHECK(w.dim() == 36);
  CHECK(flat_index(w, {-3, 0}) == 0);
  CHECK(flat_index(w, {-2, 1}) == 7);
  for (std::size_t i = 0; i < w.dim(); ++i) CHECK(flat_index(w, graded_index(w, i)) == i);
  CHECK(enumerate_basis(w).size() == w.dim());
  CHECK_FALSE(contains(w, {3, 0}));
  CHECK_THROWS(TruncationWindow(2, 1, 3));
  CHECK(w.widened(1) == TruncationWindow(-4, 3, 5));
}

TEST_CASE("sparse matrix arithmetic") {
  SparseMatrix<Q> A(3), B(3);
  A.add(0, 1, Q(2));
  A.add(1, 2, Q(3));
  B.add(1, 0, Q(1));
  auto C = commutator(A, B);
  CHECK(C.at(0, 0) == 2);
  CHECK(C.at(1, 1) == -2);
  CHECK(anticommutator(A, B).at(1, 1) == 2);
  A.add(0, 1, Q(-2));
  CHECK(A.nnz() == 1);
  CHECK(SparseMatrix<Q>::identity(3).apply({Q(1), Q(2), Q(3)}) == std::vector<Q>{1, 2, 3});
  CHECK_THROWS(A + SparseMatrix<Q>(4));
}

TEST_CASE("shift operators enforce their degree") {
  TruncationWindow w(-2, 2, 3);
  ShiftOperator<Q> up(w, 1);
  CHECK_NOTHROW(up.add({0, 1}, {-1, 1}, Q(1)));
  CHECK_THROWS_AS(up.add({0, 1}, {0, 1}, Q(1)), ShiftViolation);
  ShiftOperator<Q> other(TruncationWindow(-2, 2, 4), 1);
  CHECK_THROWS_AS(up * other, WindowMismatch);
  auto two = up * up;
  CHECK(two.shift() == 2);
}

TEST_CASE("interior masks") {
  TruncationWindow w(-2, 2, 4);
  auto keep = interior_mask(w);
  CHECK(keep(flat_index(w, {-1, 2})));
  CHECK_FALSE(keep(flat_index(w, {-2, 0})));
  CHECK_FALSE(keep(flat_index(w, {0, 3})));
  CHECK_THROWS_AS(interior_mask(TruncationWindow(0, 1, 4)), EmptyInterior);
}

TEST_CASE("Cartan-Weyl normalization factors") {
  // mpmath: 1/sqrt(Gamma(1/2)), 1/sqrt(2 Gamma(7/2))
  CHECK_THAT(std::real(cartan_weyl_factor(0, 0, -0.25)), WithinAbs(0.751125544464942482858703004776, 1e-14));
  auto f = cartan_weyl_factor(2, -1, -0.25);
  CHECK_THAT(std::real(f), WithinAbs(-0.38787956328316011170281938549, 1e-14));
  CHECK_THAT(std::imag(f), WithinAbs(0.0, 1e-15));
  CHECK_THROWS_AS(cartan_weyl_factor(0, 1, -0.3), GammaDomainError);

  GradedVector v{{{0, 2}, cplx(1.5, -0.5)}, {{-1, 1}, cplx(0.25, 0.0)}};
  auto cw = convert_basis(v, BasisConvention::Monomial, BasisConvention::CartanWeyl, -0.25);
  auto back = convert_basis(cw, BasisConvention::CartanWeyl, BasisConvention::Monomial, -0.25);
  for (const auto& [g, c] : v) CHECK(std::abs(back.at(g) - c) < 1e-14);
}
