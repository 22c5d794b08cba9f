#include "heisenrep/h8.hpp"

#include <catch_amalgamated.hpp>

using namespace heisenrep;

namespace {
const H8Rep& rep2() {
  static const H8Rep r = h8_phi_rep(2);
  return r;
}
}  // namespace

TEST_CASE("Dirac matrices") {
  auto d = dirac_set();
  CHECK(dirac_consistent(d));
  CHECK(d.gamma5 * d.gamma5 == mat4_identity());
  CHECK(d.Pplus + d.Pminus == mat4_identity());
}

TEST_CASE("h8 phi relations") {
  for (const auto& r : h8_relations(rep2())) CHECK(r.residual == 0.0);
}

TEST_CASE("bilinear brackets") {
  auto d = dirac_set();
  auto b = bilinear_algebra(rep2(), d);
  auto keep = rep2().space.interior(1);
  CHECK(scalar_bracket_residual(b, keep) == 0.0);
  CHECK(so4_bracket_residual(b, GQ(Q(0)) - GQ::i(), keep) == 0.0);
  // The bracket does not close with structure constant 1.
  CHECK(so4_bracket_residual(b, GQ(Q(1)), keep) > 1.0);
}

TEST_CASE("momenta and conjugation contracts") {
  auto d = dirac_set();
  auto m = momentum_ops(rep2(), d);
  CHECK(m.consistency == 0.0);
  for (const auto& c : dirac_conjugation_contracts(rep2())) CHECK(c.residual == 0.0);
  CHECK(gaussian_contract_residual(rep2()) > 0.0);
  for (int mu = 0; mu < 3; ++mu) {
    CHECK(momentum_hermiticity_residual(rep2(), m, mu, false, 1, 1) == 0.0);
    CHECK(momentum_hermiticity_residual(rep2(), m, mu, true, 1, 1) == 0.0);
    CHECK(momentum_hermiticity_residual(rep2(), m, mu, false, -1, 1) > 0.0);
  }
  // p4 and pdot4 come out anti-Hermitian.
  CHECK(momentum_hermiticity_residual(rep2(), m, 3, false, -1, 1) == 0.0);
  CHECK(momentum_hermiticity_residual(rep2(), m, 3, true, -1, 1) == 0.0);
  CHECK(momentum_hermiticity_residual(rep2(), m, 3, false, 1, 1) > 0.0);
}

TEST_CASE("u(1,1) on F0") {
  auto r = f0_structure_checks(4, 6);
  CHECK(r.blockDiagonal);
  CHECK(r.fNonNegative);
  CHECK(r.casimirResidual.size() == 5);
  for (const auto& [k, v] : r.casimirResidual) CHECK(v == 0.0);
  for (const auto& b : r.brackets) CHECK(b.residual == 0.0);
  CHECK(r.laurent.tailInvariant);
  CHECK_FALSE(r.laurent.singularInvariant);
  CHECK(r.laurent.witness == "L+ z^-1 zbar^0 -> z^0 zbar^1");
}

TEST_CASE("u(1,1) generator matrices") {
  auto u = u11_restriction(2, 3);
  CHECK(u.L0.at(u.index(1, 0), u.index(1, 0)) == -1);
  CHECK(u.L3.at(u.index(0, 1), u.index(0, 1)) == qfrac(-3, 2));
  CHECK(u.Lm.at(u.index(1, 1), u.index(1, 2)) == -6);
}
