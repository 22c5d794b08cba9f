#include "heisenrep/interlace.hpp"

#include <catch_amalgamated.hpp>

using namespace heisenrep;

TEST_CASE("kernel blocks") {
  SpinParameter lam(qfrac(-1, 4));
  auto bl = kernel_blocks(lam, -2, 2, 6);
  REQUIRE(bl.size() == 5);
  CHECK(bl[0].exponent == qfrac(-5, 2));
  CHECK(bl[2].coeff[3] == qfrac(1, 6));
  CHECK_THROWS(kernel_blocks(lam, 2, -2, 6));
  auto s = to_series(bl[2], qfrac(-1, 4));
  CHECK(s.at({2, 2, -2}) == qfrac(1, 2));
}

TEST_CASE("interlacing holds for every generator") {
  for (auto l : {qfrac(-1, 4), qfrac(-3, 10)}) {
    SpinParameter lam(l);
    for (auto g : all_interlace_generators()) CHECK(interlace_residual(lam, g, -4, 4, 14) == 0.0);
  }
  CHECK_THROWS_AS(interlace_residual(SpinParameter(qfrac(-1, 4)), InterlaceGenerator::L3, -1, 1, 3), InsufficientSeries);
  CHECK_THROWS(interlace_residual(SpinParameter(qfrac(-1, 4)), InterlaceGenerator::L3, 0, 1, 14));
}

TEST_CASE("kernel shift and annihilator") {
  auto l = qfrac(-3, 10);
  auto bl = kernel_blocks(SpinParameter(l), -5, 5, 12);
  CHECK(kernel_shift_check(bl, l, {Q(0), Q(1)}) == 0.0);
  CHECK(kernel_shift_check(bl, l, {Q(1), Q(-2), Q(1)}) == 0.0);
  CHECK(in_kernel({Q(-1), Q(1)}));
  CHECK_FALSE(in_kernel({Q(1), Q(1)}));
}

TEST_CASE("Gaussian transpose reverses products") {
  auto l = qfrac(-1, 4);
  auto K = to_series(kernel_blocks(SpinParameter(l), 0, 0, 10)[0], l);
  auto ab = gauss_transpose(WeylGenerator::Z1, gauss_transpose(WeylGenerator::D1, K, l), l);
  auto ba = gauss_transpose(WeylGenerator::D1, gauss_transpose(WeylGenerator::Z1, K, l), l);
  CHECK(series_residual(series_combine(ab, ba, Q(-1)), K, 8) == 0.0);
}

TEST_CASE("two units share entries but not commutators") {
  auto r = two_units_check(TruncationWindow(-3, 3, 8), SpinParameter(qfrac(-1, 4)));
  CHECK(r.structuralEquality);
  CHECK(r.identityCommutator == 0.0);
  for (const auto& m : r.spinorMixing) CHECK(m.residual == 0.0);
  double nz = 0.0;
  for (const auto& m : r.nonzeroMixing) nz = std::max(nz, m.residual);
  CHECK(nz > 0.0);
}

TEST_CASE("phase split on the extended Fock space") {
  auto r = phase_split_check(extended_fock_space(3, 3, 3));
  CHECK(r.su2_on_scalars == 0.0);
  CHECK(r.l0l_on_z == 0.0);
  CHECK(r.l0i_on_z == 0.0);
  CHECK(r.gamma0_identity == 0.0);
  CHECK(r.gamma0_on_z == 0.0);
  CHECK(r.casimir_bookkeeping == 0.0);
}
