// One PASS/FAIL line per acceptance criterion.
#include "heisenrep/suites.hpp"

#include <cstring>
#include <iostream>
#include <set>

using namespace heisenrep;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double x) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << x;
  return s.str();
}

const std::vector<Q> kLambdas{qfrac(-1, 4), qfrac(-3, 10)};

Outcome c1() {
  TruncationWindow w(-6, 6, 24);
  double r20 = 0.0, r22 = 0.0;
  for (const auto& l : kLambdas) {
    SpinParameter lam(l);
    r20 = std::max(r20, max_residual(decycled_relations(phi_phibar<Q>(lam, w))));
    r22 = std::max(r22, max_residual(heisenberg_relations(nonfock_h4<Q>(lam, w))));
  }
  return {r20 == 0.0 && r22 == 0.0, "phi/phibar " + sci(r20) + ", h4 " + sci(r22)};
}

Outcome c2() {
  auto s = h2_semispinor_split<double>(40);
  auto C = casimir_su2(s.L3, s.Lp, s.Lm);
  auto want = scalar_matrix(s.L3.dim(), -3.0 / 16.0);
  double r = std::max(masked_residual(C, want, s.parity_interior(0)), masked_residual(C, want, s.parity_interior(1)));
  bool w = s.L3.at(0, 0) == 0.25 && s.L3.at(1, 1) == 0.75;
  return {r < 1e-12 && w, "Casimir residual " + sci(r) + ", lowest weights " + (w ? "1/4, 3/4" : "wrong")};
}

Outcome c3() {
  double br = 0.0, cas = 0.0;
  for (const auto& l : kLambdas)
    for (int p = -6; p <= 6; ++p) {
      auto b = su2_semispinor<Q>(SpinParameter(l), p, 24);
      br = std::max(br, su2_bracket_residuals(b.L3, b.Lp, b.Lm, b.interior()).max());
      cas = std::max(cas, masked_residual(b.casimir(), scalar_matrix(b.L3.dim(), b.expected_casimir()), b.interior()));
    }
  auto b0 = su2_semispinor<Q>(SpinParameter(qfrac(-1, 4)), 0, 24);
  bool p0case = b0.expected_casimir() == qfrac(-3, 16) &&
               masked_residual(b0.casimir(), scalar_matrix(b0.L3.dim(), Q(qfrac(-3, 16))), b0.interior()) == 0.0;
  return {br == 0.0 && cas == 0.0 && p0case, "brackets " + sci(br) + ", Casimir " + sci(cas) + ", p=0 gives -3/16: " + (p0case ? "yes" : "no")};
}

Outcome c4() {
  auto f = fock_ladders<Q>(1, 40);
  auto a1 = fock_cartan_weyl(f.a1[0], f.space), a2 = fock_cartan_weyl(f.a2[0], f.space);
  double fr = 0.0;
  for (int m = 0; m < 40; ++m) {
    fr = std::max(fr, std::fabs(a2.at(m + 1, m) - std::sqrt(m + 1.0)));
    fr = std::max(fr, std::fabs(a1.at(m, m + 1) - std::sqrt(m + 1.0)));
  }
  double nr = 0.0;
  for (const auto& l : kLambdas) {
    double lv = to_double(l);
    auto h = nonfock_h4<Q>(SpinParameter(l), suites_detail::cartan_weyl_window(lv, 24));
    for (int a = 1; a <= 2; ++a)
      for (int al = 1; al <= 2; ++al) nr = std::max(nr, weight_action_residual(h, a, al, lv));
  }
  bool dec = true;
  for (const auto& l : kLambdas) {
    std::vector<Q> mins;
    for (int g = 0; g <= 4; ++g) mins.push_back(number_spectrum<Q>(SpinParameter(l), TruncationWindow(-2 - g, 2, 6), 2).front());
    for (std::size_t i = 1; i < mins.size(); ++i) dec = dec && mins[i] < mins[i - 1];
  }
  return {fr < 1e-12 && nr < 1e-12 && dec,
          "Fock " + sci(fr) + ", non-Fock " + sci(nr) + " (weight gauge (-1)^m i^p), min decreasing: " + (dec ? "yes" : "no")};
}

Outcome c5() {
  auto f = fock_ladders<Q>(2, 12);
  auto gf = sp2r_generators(f);
  auto kf = f.space.interior(4);
  auto nf = f.space.dim();
  double r = 0.0;
  r = std::max(r, masked_residual(gf.casimir(), scalar_matrix(nf, GQ(qfrac(-3, 4))), kf));
  r = std::max(r, masked_residual(gf.casimir_prime(), SparseMatrix<GQ>(nf), kf));
  r = std::max(r, masked_residual(gf.gamma_square(), scalar_matrix(nf, GQ(qfrac(1, 2))), kf));
  bool sets = true;
  for (const auto& l : kLambdas) {
    TruncationWindow big(-7, 7, 16);
    auto g = sp2r_generators(nonfock_h4<Q>(SpinParameter(l), big));
    auto k = interior_mask(big, {4, 4});
    r = std::max(r, masked_residual(g.casimir(), scalar_matrix(big.dim(), GQ(qfrac(-3, 4))), k));
    r = std::max(r, masked_residual(g.casimir_prime(), SparseMatrix<GQ>(big.dim()), k));
    r = std::max(r, masked_residual(g.gamma_square(), scalar_matrix(big.dim(), GQ(qfrac(1, 2))), k));
    TruncationWindow w(-6, 6, 24);
    std::vector<Q> want;
    for (int p = -6; p <= 6; ++p) want.push_back(l + qfrac(p, 2));
    sets = sets && diagonal_spectrum(graded_su2<Q>(SpinParameter(l), w).L0.matrix()) == want;
  }
  auto L0 = (f.a2[0] * f.a1[0] + f.a2[1] * f.a1[1]) * qfrac(1, 2);
  std::vector<Q> fw;
  for (int p = 0; p <= 24; ++p) fw.push_back(qfrac(p, 2));
  sets = sets && diagonal_spectrum(L0) == fw;
  return {r < 1e-10 && sets, "Casimir residual " + sci(r) + ", L0 sets " + (sets ? "match" : "differ")};
}

Outcome c6() {
  double lam = -0.3;
  double printed = 0.0, derived = 0.0;
  for (double tau : {0.5, 1.0, -0.7})
    for (int n = 0; n <= 8; ++n) {
      auto e = exp_lowering_monomial(lam, tau, n, 60);
      auto half = laguerre_closed_form(n, tau, lam, 0.5);
      auto full = laguerre_closed_form(n, tau, lam, 1.0);
      for (int k = 0; k <= 60; ++k) {
        printed = std::max(printed, std::abs(e[k] - (k <= n ? half[k] : 0.0)));
        derived = std::max(derived, std::abs(e[k] - (k <= n ? full[k] : 0.0)));
      }
    }
  return {printed < 1e-8, "n!(-tau/2)^n form residual " + sci(printed) + "; n!(-tau)^n form residual " + sci(derived)};
}

Outcome c7() {
  std::mt19937 rng(7);
  double lam = -0.3, hom = 0.0;
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    auto b1 = suites_detail::random_upper(rng), b2 = suites_detail::random_upper(rng);
    Series f(61, 0.0);
    for (int i = 0; i <= 6; ++i) f[i] = cplx(nd(rng), nd(rng));
    hom = std::max(hom, series_distance(borel_plus_action(lam, b1, borel_plus_action(lam, b2, f)), borel_plus_action(lam, b1 * b2, f), 30));
  }
  double law = 0.0;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    cplx d(1.0 + 0.3 * u(rng), 0.2 * u(rng)), b(0.4 * u(rng), 0.4 * u(rng)), g(0.3 * u(rng), 0.3 * u(rng));
    cplx tau(0.5 * u(rng), 0.5 * u(rng));
    GroupElement v((1.0 + b * g) / d, b, g, d);
    law = std::max(law, series_distance(chain_action_factorwise(lam, v, tau, 60), datum_series(chain_action(lam, v, tau), 60), 30));
  }
  bool pole = false;
  try {
    chain_action(lam, GroupElement(1.0, 0.0, 0.5, 1.0), cplx(-2.0 * (1.0 + 1e-14)));
  } catch (const PoleError&) {
    pole = true;
  }
  return {hom < 1e-8 && law < 1e-8 && pole,
          "homomorphism " + sci(hom) + ", prefactor/slope " + sci(law) + ", near-pole rejected: " + (pole ? "yes" : "no")};
}

Outcome c8() {
  QuadratureSpec spec;
  double gram = 0.0, mom = 0.0;
  std::vector<std::string> divergent;
  for (double lam : {-0.3, -0.45})
    for (int p : {-1, 0, 1}) {
      SemispinorForm F(lam, p, spec);
      for (int m = 0; m <= 6; ++m) {
        if (m - 2.0 * lam - p <= 0.0) {
          std::ostringstream s;
          s << "(lambda=" << lam << ",p=" << p << ",m=" << m << ")";
          divergent.push_back(s.str());
          continue;
        }
        double cl = radial_moment_closed(lam, m, p);
        mom = std::max(mom, std::fabs(F.moment(m).value - cl) / std::fabs(cl));
        for (int b = 0; b <= 6; ++b) {
          if (b - 2.0 * lam - p <= 0.0) continue;
          auto v = F(F.cartan_weyl_vector(m, 7), F.cartan_weyl_vector(b, 7)).value;
          gram = std::max(gram, std::abs(v - (b == m ? ((m % 2) ? -1.0 : 1.0) : 0.0)));
        }
      }
    }
  std::string d;
  for (const auto& x : divergent) d += " " + x;
  bool ok = gram < 1e-6 && mom < 1e-6 && divergent.empty();
  return {ok, "convergent Gram " + sci(gram) + ", moments " + sci(mom) + (divergent.empty() ? "" : "; divergent:" + d)};
}

Outcome c9() {
  double r = 0.0;
  bool ker = in_kernel({Q(-1), Q(1)}) && !in_kernel({Q(1), Q(1)});
  for (const auto& l : kLambdas) {
    SpinParameter lam(l);
    auto bl = kernel_blocks(lam, -5, 5, 20);
    r = std::max(r, kernel_shift_check(bl, l, {Q(0), Q(1)}));
    r = std::max(r, kernel_shift_check(bl, l, {Q(2), Q(-3), Q(1)}));
    for (auto g : all_interlace_generators()) r = std::max(r, interlace_residual(lam, g, -5, 5, 20));
  }
  return {r == 0.0 && ker, "max residual " + sci(r) + " over shift and " + std::to_string(all_interlace_generators().size()) + " generators"};
}

Outcome c10() {
  bool ok = true;
  double r = 0.0;
  for (const auto& l : kLambdas) {
    auto t = two_units_check(TruncationWindow(-6, 6, 24), SpinParameter(l));
    ok = ok && t.structuralEquality;
    r = std::max({r, t.identityCommutator, max_residual(t.spinorMixing)});
  }
  return {ok && r == 0.0, std::string("entries equal: ") + (ok ? "yes" : "no") + ", residual " + sci(r)};
}

Outcome c11() {
  auto d = dirac_set();
  auto rep = h8_phi_rep(3);
  auto b = bilinear_algebra(rep, d);
  auto keep = rep.space.interior(1);
  double rel = max_residual(h8_relations(rep));
  double scal = scalar_bracket_residual(b, keep);
  MomentumOps m = momentum_ops(rep, d);
  double contracts = max_residual(dirac_conjugation_contracts(rep));
  double r = std::max({rel, scal, m.consistency, contracts});
  return {dirac_consistent(d) && r == 0.0,
          "relations " + sci(rel) + ", [I,A],[I,B],[A,B] " + sci(scal) + ", Dirac " + sci(m.consistency) + ", contracts " + sci(contracts)};
}

Outcome c12() {
  auto r = f0_structure_checks(4, 6);
  double c = 0.0;
  for (const auto& [k, v] : r.casimirResidual) c = std::max(c, v);
  bool ok = r.blockDiagonal && r.fNonNegative && c == 0.0 && r.laurent.tailInvariant && !r.laurent.singularInvariant &&
            r.casimirResidual.size() == 5;
  return {ok, "Casimir " + sci(c) + ", witness " + r.laurent.witness};
}

Outcome c13() {
  SuiteConfig cfg;
  auto a = emit_report(run_suites(cfg), ReportFormat::Json);
  auto b = emit_report(run_suites(cfg), ReportFormat::Json);
  return {a == b && !a.empty(), std::to_string(a.size()) + " bytes, identical: " + (a == b ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i)
    if (!std::strcmp(argv[i], "--known-deviation") && i + 1 < argc)
      for (const auto& t : split_list(argv[++i])) known.insert(std::stoi(t));

  std::vector<std::pair<const char*, Outcome (*)()>> crit{
      {"decycled relations exact", c1},   {"h2 parity Casimir -3/16", c2},  {"su(2) blocks", c3},
      {"Cartan-Weyl and spectra", c4},    {"sp(2,R) Casimirs and L0", c5},  {"Laguerre lowering formula", c6},
      {"Borel and chain actions", c7},    {"Gram and radial moments", c8},  {"interlacing kernel", c9},
      {"two units", c10},                 {"h8 brackets and contracts", c11}, {"u(1,1) grading", c12},
      {"report determinism", c13}};
  int unexpected = 0;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      o = crit[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " " << crit[i].first << ": " << o.detail;
    if (!o.pass && known.count(id)) std::cout << " [known deviation]";
    if (o.pass && known.count(id)) std::cout << " [listed as known deviation but passed]";
    std::cout << '\n';
    if (!o.pass && !known.count(id)) ++unexpected;
  }
  std::cout << (unexpected ? "acceptance: unexpected failures " : "acceptance: no unexpected failures ") << unexpected << '\n';
  return unexpected ? 1 : 0;
}
