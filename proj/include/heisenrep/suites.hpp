#pragma once

#include "h8.hpp"
#include "interlace.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

namespace heisenrep {

inline constexpr const char* kVersion = "1.0.0";

enum class ToleranceClass { Exact, FloatAlgebra, Quadrature, GroupAction };

inline std::string to_string(ToleranceClass c) {
  switch (c) {
    case ToleranceClass::Exact: return "exact";
    case ToleranceClass::FloatAlgebra: return "float_algebra";
    case ToleranceClass::Quadrature: return "quadrature";
    case ToleranceClass::GroupAction: return "group_action";
  }
  return "?";
}

inline ToleranceClass tolerance_class_from(const std::string& s) {
  if (s == "exact") return ToleranceClass::Exact;
  if (s == "float_algebra") return ToleranceClass::FloatAlgebra;
  if (s == "quadrature") return ToleranceClass::Quadrature;
  if (s == "group_action") return ToleranceClass::GroupAction;
  throw ParseError("unknown tolerance class '" + s + "'");
}

struct ConfigError : std::invalid_argument {
  ConfigError(const std::string& field, const std::string& msg)
      : std::invalid_argument(field + ": " + msg), field(field), detail(msg) {}
  std::string field;
  std::string detail;
};

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s{"fock-h2",        "decycle-h2",       "nonfock-h4",      "su2-blocks",
                                          "sp2r-casimirs",  "gauss-actions",    "forms-quadrature", "interlace-kernel",
                                          "two-units",      "h8-algebra",       "u11-grading"};
  return s;
}

// Suites with no exact-class checks accept decimal lambda.
inline bool suite_is_float_only(const std::string& s) { return s == "gauss-actions"; }

struct SuiteConfig {
  std::vector<Q> lambdas{qfrac(-1, 4), qfrac(-3, 10)};
  std::vector<Q> lambdaPrimes{qfrac(-1, 4)};
  bool lambdaFromDecimal = false;
  int pMin = -4, pMax = 4, mMax = 16;
  int jMax = 20;
  int h8Cap = 3;
  int u11KMax = 4, u11NMax = 6;
  QuadratureSpec quad{};
  std::map<ToleranceClass, double> tol{{ToleranceClass::Exact, 0.0},
                                       {ToleranceClass::FloatAlgebra, 1e-10},
                                       {ToleranceClass::Quadrature, 1e-6},
                                       {ToleranceClass::GroupAction, 1e-8}};
  std::vector<std::string> suites = all_suites();
  bool parallel = true;
  std::uint32_t seed = 20240611;

  void validate() const {
    for (const auto& l : lambdas) SpinParameter{l};
    for (const auto& l : lambdaPrimes) SpinParameter{l};
    try {
      TruncationWindow w(pMin, pMax, mMax);
      interior_mask(w);
    } catch (const std::exception& e) {
      throw ConfigError("window", e.what());
    }
    for (const auto& s : suites)
      if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
        throw ConfigError("suite", "unknown suite '" + s + "'");
    for (const auto& [c, v] : tol) {
      if (c == ToleranceClass::Exact && v != 0.0) throw ConfigError("tol.exact", "exact tolerance must be 0");
      if (c != ToleranceClass::Exact && !(v > 0.0)) throw ConfigError("tol." + to_string(c), "tolerance must be positive");
    }
    if (lambdaFromDecimal)
      for (const auto& s : suites)
        if (!suite_is_float_only(s))
          throw ConfigError("lambda", "decimal value refused: suite '" + s + "' runs exact checks; give lambda as n/d");
    try {
      quad.validate();
    } catch (const std::exception& e) {
      throw ConfigError("quad", e.what());
    }
  }
};

struct CheckRecord {
  std::string suite, check, anchor;
  ToleranceClass cls;
  double residual;
  double tolerance;
  bool pass;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;
  nlohmann::ordered_json config;
  std::string version = kVersion;
  std::size_t passed() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.pass; }));
  }
  std::size_t failed() const { return checks.size() - passed(); }
  bool all_pass() const { return failed() == 0; }
};

inline nlohmann::ordered_json config_echo(const SuiteConfig& c) {
  nlohmann::ordered_json j;
  auto qs = [](const std::vector<Q>& v) {
    std::vector<std::string> s;
    for (const auto& q : v) s.push_back(to_string(q));
    return s;
  };
  j["lambda"] = qs(c.lambdas);
  j["lambda_prime"] = qs(c.lambdaPrimes);
  j["p_min"] = c.pMin;
  j["p_max"] = c.pMax;
  j["m_max"] = c.mMax;
  j["j_max"] = c.jMax;
  j["h8_cap"] = c.h8Cap;
  j["u11_k_max"] = c.u11KMax;
  j["u11_n_max"] = c.u11NMax;
  j["quad_cutoff"] = c.quad.cutoff;
  j["quad_graded_panels"] = c.quad.gradedPanels;
  j["quad_unit_panels"] = c.quad.unitPanels;
  nlohmann::ordered_json t;
  for (const auto& [k, v] : c.tol) t[to_string(k)] = v;
  j["tolerances"] = t;
  j["suites"] = c.suites;
  j["seed"] = c.seed;
  return j;
}

// Collects records for one suite.
class SuiteRun {
 public:
  SuiteRun(std::string suite, const SuiteConfig& cfg) : suite_(std::move(suite)), cfg_(cfg) {}

  void record(const std::string& check, const std::string& anchor, ToleranceClass cls, double residual) {
    double tol = cfg_.tol.at(cls);
    bool pass = std::isfinite(residual) && (cls == ToleranceClass::Exact ? residual == 0.0 : residual <= tol);
    out_.push_back({suite_, check, anchor, cls, residual, tol, pass});
  }
  void exact(const std::string& check, const std::string& anchor, double r) { record(check, anchor, ToleranceClass::Exact, r); }
  void flag(const std::string& check, const std::string& anchor, bool ok) { exact(check, anchor, ok ? 0.0 : 1.0); }

  std::vector<CheckRecord> take() { return std::move(out_); }
  const SuiteConfig& cfg() const { return cfg_; }

 private:
  std::string suite_;
  const SuiteConfig& cfg_;
  std::vector<CheckRecord> out_;
};

inline std::string lam_tag(const Q& l) { return " [lambda=" + to_string(l) + "]"; }

inline double max_residual(const std::vector<NamedResidual>& v) {
  double w = 0.0;
  for (const auto& r : v) w = std::max(w, r.residual);
  return w;
}

namespace suites_detail {

inline void fock_h2(SuiteRun& s) {
  int mMax = std::max(s.cfg().mMax, 4);
  auto f = fock_ladders<Q>(1, mMax);
  auto keep = f.space.interior(1);
  s.exact("[a1,a2]=1", "one-mode Weyl relation", masked_residual(commutator(f.a1[0], f.a2[0]), f.space.identity<Q>(), keep));
  std::vector<Q> one(f.space.dim(), Q(0));
  one[0] = 1;
  double ground = 0.0;
  for (const auto& x : f.a1[0].apply(one)) ground = std::max(ground, magnitude(x));
  s.exact("a1 ground state", "Fock ground state", ground);
  auto cw = fock_cartan_weyl(f.a2[0], f.space);
  double w = 0.0;
  for (int m = 0; m < mMax; ++m) w = std::max(w, std::fabs(cw.at(m + 1, m) - std::sqrt(m + 1.0)));
  s.record("a2 f_m = sqrt(m+1) f_m+1", "Fock Cartan-Weyl ladder", ToleranceClass::FloatAlgebra, w);
  auto spec = fock_number_spectrum(f, 0);
  bool ok = spec.size() == static_cast<std::size_t>(mMax + 1);
  for (int k = 0; ok && k <= mMax; ++k) ok = spec[k] == k;
  s.flag("number spectrum {0..mMax}", "Fock number operator", ok);

  auto sq = h2_semispinor_split<Q>(std::max(mMax, 4));
  auto sd = h2_semispinor_split<double>(40);
  for (int par = 0; par < 2; ++par) {
    std::string nm = par ? "odd" : "even";
    s.exact("su2 brackets " + nm, "semispinor split of h2", su2_bracket_residuals(sq.L3, sq.Lp, sq.Lm, sq.parity_interior(par)).max());
    s.record("Casimir -3/16 " + nm, "semispinor split of h2", ToleranceClass::FloatAlgebra,
             masked_residual(casimir_su2(sd.L3, sd.Lp, sd.Lm), scalar_matrix(sd.L3.dim(), -3.0 / 16.0), sd.parity_interior(par)));
  }
  s.flag("lowest weights 1/4, 3/4", "semispinor split of h2",
         sq.L3.at(0, 0) == qfrac(1, 4) && sq.L3.at(1, 1) == qfrac(3, 4) && sq.Lm.at(0, 0) == 0);
  s.flag("spins -1/4, -3/4 from Casimir", "semispinor split of h2",
         qfrac(-1, 4) * qfrac(3, 4) == qfrac(-3, 16) && qfrac(-3, 4) * qfrac(1, 4) == qfrac(-3, 16));
}

inline void decycle_h2(SuiteRun& s) {
  const auto& c = s.cfg();
  for (const auto& l : c.lambdas) {
    SpinParameter lam(l);
    TruncationWindow w(c.pMin, c.pMax, c.mMax);
    auto f = nonfock_b_family(lam, w);
    auto keep = even_chain_mask(f);
    double br = 0.0, conj = 0.0;
    for (int p = c.pMin; p <= c.pMax; ++p) {
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
          br = std::max(br, masked_residual(b_family_bracket(f, p, a, b), scalar_matrix(f.space.dim(), Q(qfrac(-1, 4) * epsilon(a, b))), keep));
      for (int a = 1; a <= 2; ++a)
        conj = std::max(conj, masked_residual(f.b(p, a), b_conjugation_image(f, p, a) * qfrac(1, 2), keep));
    }
    s.exact("b family bracket = -1/4 eps" + lam_tag(l), "spin-raising b family relation", br);
    s.exact("b = 1/2 z^2p a^beta z^-2p eps_alpha,beta" + lam_tag(l), "b family conjugation", conj);
    double deg = 0.0;
    for (int p = c.pMin; p <= c.pMax; ++p)
      for (int m = 0; m <= c.mMax; ++m) {
        auto img = f.apply(p, 2, 2 * m);
        Q want = Q(p - m);
        Q got = img.count(2 * m - 1) ? img[2 * m - 1] : Q(0);
        deg = std::max(deg, magnitude(Q(got - want)));
      }
    s.exact("b2 z^2m = (p-m) z^(2m-1)" + lam_tag(l), "b family on even chain", deg);
    bool rejected = false;
    try {
      f.apply(0, 1, 1);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    s.flag("odd degree rejected" + lam_tag(l), "b family on even chain", rejected);
  }
}

inline TruncationWindow cartan_weyl_window(double lambda, int mMax) {
  int top = static_cast<int>(std::ceil(-2.0 * lambda)) - 1;
  return TruncationWindow(top - 4, top, std::max(mMax / 2, 4));
}

inline void nonfock_h4(SuiteRun& s) {
  const auto& c = s.cfg();
  TruncationWindow w(c.pMin, c.pMax, c.mMax);
  for (const auto& l : c.lambdas) {
    SpinParameter lam(l);
    s.exact("phi/phibar relations" + lam_tag(l), "decycled commutation relations", max_residual(decycled_relations(phi_phibar<Q>(lam, w))));
    auto h = nonfock_h4<Q>(lam, w);
    s.exact("[a^a_alpha, a^b_beta] = delta eps" + lam_tag(l), "non-Fock h4 relations", max_residual(heisenberg_relations(h)));
    s.flag("a1_2 is the pure block shift" + lam_tag(l), "non-Fock h4 relations", [&] {
      bool ok = true;
      h.a1(2).matrix().for_each([&](std::size_t, std::size_t, const Q& v) { ok = ok && v == 1; });
      return ok;
    }());
    std::vector<Q> mins;
    for (int g = 0; g <= 4; ++g) {
      TruncationWindow wg(c.pMin - g, c.pMax, c.mMax);
      mins.push_back(number_spectrum<Q>(lam, wg, 2).front());
    }
    bool dec = true;
    for (std::size_t i = 1; i < mins.size(); ++i) dec = dec && mins[i] < mins[i - 1];
    s.flag("mode-2 spectrum min decreases with pMin" + lam_tag(l), "no ground state", dec);
    double lv = lam.value();
    auto wc = cartan_weyl_window(lv, c.mMax);
    auto hc = nonfock_h4<Q>(lam, wc);
    const char* names[2][2] = {{"a1_1 -> sqrt m", "a1_2 -> sqrt mu"}, {"a2_1 -> sqrt(m+1)", "a2_2 -> sqrt(mu+1)"}};
    for (int a = 1; a <= 2; ++a)
      for (int al = 1; al <= 2; ++al)
        s.record(std::string(names[a - 1][al - 1]) + lam_tag(l), "weight action", ToleranceClass::FloatAlgebra,
                 weight_action_residual(hc, a, al, lv));
  }
}

inline void su2_blocks(SuiteRun& s) {
  const auto& c = s.cfg();
  TruncationWindow w(c.pMin, c.pMax, c.mMax);
  for (const auto& l : c.lambdas) {
    SpinParameter lam(l);
    double br = 0.0, cas = 0.0;
    for (int p = c.pMin; p <= c.pMax; ++p) {
      auto b = su2_semispinor<Q>(lam, p, c.mMax);
      br = std::max(br, su2_bracket_residuals(b.L3, b.Lp, b.Lm, b.interior()).max());
      cas = std::max(cas, masked_residual(b.casimir(), scalar_matrix(b.L3.dim(), b.expected_casimir()), b.interior()));
    }
    s.exact("block brackets" + lam_tag(l), "semispinor blocks", br);
    s.exact("block Casimir = Lambda(Lambda+1)" + lam_tag(l), "semispinor blocks", cas);
    auto g = graded_su2<Q>(lam, w);
    s.exact("graded brackets from bilinears" + lam_tag(l), "semispinor blocks",
            su2_bracket_residuals(g.L3.matrix(), g.Lp.matrix(), g.Lm.matrix(), interior_mask(w)).max());
    std::vector<Q> want;
    for (int p = c.pMin; p <= c.pMax; ++p) want.push_back(l + qfrac(p, 2));
    s.flag("Sp L0 = {lambda + p/2}" + lam_tag(l), "L0 spectrum", diagonal_spectrum(g.L0.matrix()) == want);
  }
  {
    SpinParameter q(qfrac(-1, 4));
    auto b = su2_semispinor<Q>(q, 0, c.mMax);
    s.flag("p=0, lambda=-1/4 Casimir = -3/16", "semispinor blocks", b.expected_casimir() == qfrac(-3, 16) &&
                                                                      masked_residual(b.casimir(), scalar_matrix(b.L3.dim(), Q(qfrac(-3, 16))), b.interior()) == 0.0);
  }
  int fm = std::max(c.mMax / 2, 4);
  auto fs = fock_su2<Q>(fm);
  double fc = 0.0;
  for (int d = 0; d <= fm; ++d)
    fc = std::max(fc, masked_residual(casimir_su2(fs.L3, fs.Lp, fs.Lm), scalar_matrix(fs.space.dim(), Q(qfrac(d, 2) * (qfrac(d, 2) + 1))), fs.homogeneous(d)));
  s.exact("Fock Casimir (p/2)(p/2+1)", "finite spinor representations", fc);
  auto f = fock_ladders<Q>(2, fm);
  auto L0 = (f.a2[0] * f.a1[0] + f.a2[1] * f.a1[1]) * qfrac(1, 2);
  std::vector<Q> want;
  for (int p = 0; p <= 2 * fm; ++p) want.push_back(qfrac(p, 2));
  s.flag("Fock Sp L0 = {p/2, p >= 0}", "L0 spectrum", diagonal_spectrum(L0) == want);
}

inline void sp2r_casimirs(SuiteRun& s) {
  const auto& c = s.cfg();
  int fm = std::max(c.mMax / 2, 6);
  auto f = fock_ladders<Q>(2, fm);
  auto gf = sp2r_generators(f);
  auto kf = f.space.interior(4);
  std::size_t nf = f.space.dim();
  for (const auto& l : c.lambdas) {
    SpinParameter lam(l);
    TruncationWindow big(c.pMin - 4, c.pMax + 4, c.mMax + 4);
    auto g = sp2r_generators(nonfock_h4<Q>(lam, big));
    auto k = interior_mask(big, {4, 4});
    std::size_t n = big.dim();
    double C = std::max(masked_residual(gf.casimir(), scalar_matrix(nf, GQ(qfrac(-3, 4))), kf),
                        masked_residual(g.casimir(), scalar_matrix(n, GQ(qfrac(-3, 4))), k));
    double Cp = std::max(masked_residual(gf.casimir_prime(), SparseMatrix<GQ>(nf), kf),
                         masked_residual(g.casimir_prime(), SparseMatrix<GQ>(n), k));
    double G = std::max(masked_residual(gf.gamma_square(), scalar_matrix(nf, GQ(qfrac(1, 2))), kf),
                        masked_residual(g.gamma_square(), scalar_matrix(n, GQ(qfrac(1, 2))), k));
    s.record("C=-3/4" + lam_tag(l), "sp(2,R) Casimir values", ToleranceClass::FloatAlgebra, C);
    s.record("C'=0" + lam_tag(l), "sp(2,R) Casimir values", ToleranceClass::FloatAlgebra, Cp);
    s.record("Gamma^2=1/2" + lam_tag(l), "sp(2,R) Casimir values", ToleranceClass::FloatAlgebra, G);
  }
}

inline GroupElement random_upper(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  cplx d(1.0 + 0.5 * u(rng) * 0.99, 0.0);
  cplx rot = std::polar(1.0, 0.3 * u(rng));
  d = 1.0 + (d - 1.0) * rot;
  cplx ratio(u(rng) * 0.7, u(rng) * 0.7);
  return GroupElement(1.0 / d, ratio * d, 0.0, d);
}

inline void gauss_actions(SuiteRun& s) {
  const auto& c = s.cfg();
  std::mt19937 rng(c.seed);
  {
    auto f = gauss_factorize(GroupElement(2.0, 1.0, 1.0, 1.0));
    double r = std::max({cdist(f.nplus, {1.0, 1.0, 0.0, 1.0}), cdist(f.h, {1.0, 0.0, 0.0, 1.0}), cdist(f.nminus, {1.0, 0.0, 1.0, 1.0})});
    s.record("factor [[2,1],[1,1]]", "Gauss decomposition", ToleranceClass::GroupAction, r);
    bool thrown = false;
    try {
      gauss_factorize(GroupElement(0.0, 1.0, -1.0, 0.0));
    } catch (const SingularElement&) {
      thrown = true;
    }
    s.flag("singular element rejected", "Gauss decomposition", thrown);
    double rt = 0.0;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 20; ++k) {
      cplx a(u(rng), u(rng)), b(u(rng), u(rng)), g(u(rng), u(rng)), d(1.0 + 0.5 * u(rng), 0.5 * u(rng));
      a = (1.0 + b * g) / d;
      GroupElement v(a, b, g, d);
      rt = std::max(rt, cdist(gauss_factorize(v).product(), v.matrix()));
    }
    s.record("factorization round trip", "Gauss decomposition", ToleranceClass::GroupAction, rt);
  }
  int mMax = 60;
  for (const auto& l : c.lambdas) {
    double lam = to_double(l);
    double hom = 0.0;
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
      auto b1 = random_upper(rng), b2 = random_upper(rng);
      Series f(mMax + 1);
      for (int i = 0; i <= mMax; ++i) f[i] = i <= 6 ? cplx(nd(rng), nd(rng)) : cplx(0.0);
      auto lhs = borel_plus_action(lam, b1, borel_plus_action(lam, b2, f));
      auto rhs = borel_plus_action(lam, b1 * b2, f);
      hom = std::max(hom, series_distance(lhs, rhs, mMax / 2));
    }
    s.record("Borel homomorphism, 20 pairs" + lam_tag(l), "upper Borel action", ToleranceClass::GroupAction, hom);
    {
      cplx d(1.3, 0.2);
      GroupElement h(1.0 / d, 0.0, 0.0, d);
      double r = 0.0;
      for (int n = 0; n <= 8; ++n) {
        Series f(mMax + 1, 0.0);
        f[n] = 1.0;
        auto g = borel_plus_action(lam, h, f);
        r = std::max(r, std::abs(g[n] - spin_power(d, lam) * std::pow(d, -2.0 * n)));
      }
      s.record("diagonal: zeta^n -> d^(2 lambda - 2n) zeta^n" + lam_tag(l), "upper Borel action", ToleranceClass::GroupAction, r);
    }
    double lag = 0.0, ratio = 0.0;
    for (double tau : {0.5, 1.0, -0.7})
      for (int n = 0; n <= 8; ++n) {
        auto e = exp_lowering_monomial(lam, tau, n, mMax);
        auto cf = laguerre_closed_form(n, tau, lam);
        auto half = laguerre_closed_form(n, tau, lam, 0.5);
        for (int k = 0; k <= mMax; ++k) lag = std::max(lag, std::abs(e[k] - (k <= n ? cf[k] : 0.0)));
        for (int k = 0; k <= n; ++k)
          if (cf[k] != 0.0) ratio = std::max(ratio, std::fabs(half[k] / cf[k] - std::pow(2.0, -n)));
      }
    s.record("exp(tau L-) zeta^n = n!(-tau)^n L_n(zeta/tau)" + lam_tag(l), "lower Borel action, Laguerre form", ToleranceClass::GroupAction, lag);
    s.record("(-tau/2)^n prefactor is 2^-n times the computed one" + lam_tag(l), "lower Borel action, Laguerre form", ToleranceClass::GroupAction, ratio);
    double chain = 0.0;
    for (int k = 0; k < 6; ++k) {
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      cplx d(1.0 + 0.3 * u(rng), 0.2 * u(rng)), b(0.4 * u(rng), 0.4 * u(rng)), g(0.3 * u(rng), 0.3 * u(rng));
      cplx a = (1.0 + b * g) / d;
      cplx tau(0.5 * u(rng), 0.5 * u(rng));
      GroupElement v(a, b, g, d);
      auto lhs = chain_action_factorwise(lam, v, tau, mMax);
      auto rhs = datum_series(chain_action(lam, v, tau), mMax);
      chain = std::max(chain, series_distance(lhs, rhs, mMax / 2));
    }
    s.record("chain action factorwise = closed form" + lam_tag(l), "chain action on exponentials", ToleranceClass::GroupAction, chain);
    bool pole = false;
    try {
      cplx g(0.5), d(1.0), tau = -d / g * (1.0 + 1e-15);
      chain_action(lam, GroupElement(1.0, 0.0, g, d), tau);
    } catch (const PoleError&) {
      pole = true;
    }
    s.flag("near-pole element rejected" + lam_tag(l), "chain action on exponentials", pole);
    double coh = 0.0;
    for (double tau : {0.5, -0.3}) {
      auto f = coherent_state(lam, tau, mMax);
      auto g = lowering_block(lam, mMax).apply(f);
      for (int k = 0; k <= mMax - 2; ++k) coh = std::max(coh, std::abs(g[k] - tau * f[k]));
    }
    s.record("L- 0F1(-2 lambda; -tau zeta) = tau 0F1" + lam_tag(l), "coherent states", ToleranceClass::GroupAction, coh);
  }
}

inline void forms_quadrature(SuiteRun& s) {
  const auto& c = s.cfg();
  Poly<Q> one{{{0}, Q(1)}}, z2{{{2}, Q(1)}}, z1{{{1}, Q(1)}};
  s.exact("(1,1)=1, (z^2,z^2)=2, (z,z^2)=0", "Gaussian Fock inner product",
          magnitude(Q(gauss_monomial_form(one, one).value - 1)) + magnitude(Q(gauss_monomial_form(z2, z2).value - 2)) +
              magnitude(gauss_monomial_form(z1, z2).value));
  s.record("K_1/2(1) closed form", "Macdonald function", ToleranceClass::FloatAlgebra,
           std::fabs(bessel_k(0.5, 1.0) - std::sqrt(M_PI / 2.0) * std::exp(-1.0)));
  s.record("K_nu = K_-nu", "Macdonald function", ToleranceClass::FloatAlgebra, std::fabs(bessel_k(0.37, 2.0) - bessel_k(-0.37, 2.0)));
  for (const auto& l : c.lambdas) {
    double lam = to_double(l);
    for (int p : {-1, 0, 1}) {
      SemispinorForm F(lam, p, c.quad);
      std::string tag = " [lambda=" + to_string(l) + ", p=" + std::to_string(p) + "]";
      double mom = 0.0, gram = 0.0, off = 0.0, conv = 0.0;
      std::vector<int> divergent;
      int top = 6;
      for (int m = 0; m <= top; ++m) {
        if (m - 2.0 * lam - p <= 0.0) {
          divergent.push_back(m);
          continue;
        }
        const auto& M = F.moment(m);
        double cl = radial_moment_closed(lam, m, p);
        mom = std::max(mom, std::fabs(M.value - cl) / std::fabs(cl));
        conv = std::max(conv, M.error / std::fabs(cl));
        for (int b = 0; b <= top; ++b) {
          if (b - 2.0 * lam - p <= 0.0) continue;
          auto v = F(F.cartan_weyl_vector(m, top + 1), F.cartan_weyl_vector(b, top + 1)).value;
          if (b == m)
            gram = std::max(gram, std::abs(v - ((m % 2) ? -1.0 : 1.0)));
          else
            off = std::max(off, std::abs(v));
        }
      }
      s.record("radial moments = m! Gamma(m-2lambda-p)" + tag, "invariant measure normalization", ToleranceClass::Quadrature, mom);
      s.record("refinement change" + tag, "invariant measure normalization", ToleranceClass::Quadrature, conv);
      s.record("Gram diagonal (-1)^m" + tag, "Cartan-Weyl orthogonality", ToleranceClass::Quadrature, gram);
      s.exact("Gram off-diagonal" + tag, "Cartan-Weyl orthogonality", off);
      for (int m : divergent) {
        bool thrown = false;
        try {
          radial_moment(lam, m, p, c.quad);
        } catch (const DivergentMoment&) {
          thrown = true;
        }
        s.flag("divergent moment rejected (m=" + std::to_string(m) + ")" + tag, "invariant measure normalization", thrown);
      }
      if (divergent.empty())
        s.record("su(2) invariance" + tag, "invariant semispinor form", ToleranceClass::Quadrature, su2_invariance_residual(F, 5));
    }
  }
}

inline void interlace_kernel(SuiteRun& s) {
  const auto& c = s.cfg();
  int pMin = -5, pMax = 5;
  for (const auto& l : c.lambdas) {
    SpinParameter lam(l);
    for (auto g : all_interlace_generators())
      s.exact("interlace " + to_string(g) + lam_tag(l), "interlacing kernel", interlace_residual(lam, g, pMin, pMax, c.jMax));
    auto bl = kernel_blocks(lam, pMin, pMax, c.jMax);
    s.exact("zbar2 K_p = K_p+1" + lam_tag(l), "kernel shift property", kernel_shift_check(bl, l, {Q(0), Q(1)}));
    s.exact("f(zbar2) K = f(1) K, f = 2 - 3 zbar2 + zbar2^2" + lam_tag(l), "kernel shift property",
            kernel_shift_check(bl, l, {Q(2), Q(-3), Q(1)}));
    s.flag("zbar2 - 1 in Ker K" + lam_tag(l), "kernel of K", in_kernel({Q(-1), Q(1)}) && !in_kernel({Q(1), Q(1)}));
    auto K = to_series(bl[5], l);
    auto lhs = series_combine(gauss_transpose(WeylGenerator::Z1, gauss_transpose(WeylGenerator::D1, K, l), l),
                              gauss_transpose(WeylGenerator::D1, gauss_transpose(WeylGenerator::Z1, K, l), l), Q(-1));
    s.exact("transposed Weyl relation" + lam_tag(l), "Gaussian transpose", series_residual(lhs, K, c.jMax - 2));
  }
  auto e = extended_fock_space(4, 4, 4);
  auto r = phase_split_check(e);
  auto keep = e.space.interior(1);
  double weyl = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      weyl = std::max(weyl, masked_residual(commutator(e.a1[a], e.a2[b]), a == b ? e.space.identity<Q>() : SparseMatrix<Q>(e.space.dim()), keep));
  s.exact("Weyl relations on the Fock factor", "extended Fock space", weyl);
  s.exact("L acts trivially on z^k", "additional variable", r.su2_on_scalars);
  s.exact("L0(l) z^k = 0", "phase splitting", r.l0l_on_z);
  s.exact("L0(i) z = z/2", "phase splitting", r.l0i_on_z);
  s.exact("Gamma0 = L0(i) + 1/2", "phase splitting", r.gamma0_identity);
  s.exact("Gamma0 z = z", "phase splitting", r.gamma0_on_z);
  s.exact("L^2 = L0(l)(L0(l)+1)", "phase splitting", r.casimir_bookkeeping);
}

inline void two_units(SuiteRun& s) {
  const auto& c = s.cfg();
  TruncationWindow w(c.pMin, c.pMax, c.mMax);
  for (const auto& l : c.lambdas) {
    auto r = two_units_check(w, SpinParameter(l));
    s.flag("unit matrices entrywise equal" + lam_tag(l), "two units", r.structuralEquality);
    s.exact("[L_i, 1] = 0" + lam_tag(l), "two units", r.identityCommutator);
    for (const auto& m : r.spinorMixing) s.exact(m.name + " spinor mixing" + lam_tag(l), "two units, spinor law", m.residual);
    double nz = 0.0;
    for (const auto& m : r.nonzeroMixing) nz = std::max(nz, m.residual);
    s.flag("a1_alpha does not commute with L" + lam_tag(l), "two units, spinor law", nz > 0.0);
  }
}

inline void h8_algebra(SuiteRun& s) {
  const auto& c = s.cfg();
  auto d = dirac_set();
  s.flag("Clifford and projector identities", "Dirac matrices", dirac_consistent(d));
  auto r = h8_phi_rep(c.h8Cap);
  s.exact("[phi, phibar] = delta, [phi,phi] = [phibar,phibar] = 0", "h8 involutive Heisenberg algebra", max_residual(h8_relations(r)));
  auto b = bilinear_algebra(r, d);
  auto keep = r.space.interior(1);
  s.exact("[I,A] = [I,B] = [A,B] = 0", "gl(2,C) bilinears", scalar_bracket_residual(b, keep));
  s.exact("[I,I] = -i (so(4) form)", "gl(2,C) bilinears", so4_bracket_residual(b, GQ(Q(0)) - GQ::i(), keep));
  MomentumOps m;
  bool built = true;
  try {
    m = momentum_ops(r, d);
  } catch (const std::logic_error&) {
    built = false;
  }
  s.flag("i phibar gamma P+ phi = zbar sigma+ z", "Dirac bilinear momenta", built && m.consistency == 0.0);
  if (!built) return;
  std::vector<SparseMatrix<GQ>> ops;
  for (int a = 0; a < 4; ++a)
    for (int e = a + 1; e < 4; ++e) ops.push_back(b.I[a][e]);
  ops.push_back(b.A);
  ops.push_back(b.B);
  for (int mu = 0; mu < 4; ++mu) {
    ops.push_back(m.p[mu]);
    ops.push_back(m.pdot[mu]);
  }
  s.flag("16 operators independent", "u(2,2) generators", operator_rank(ops) == 16);
  s.exact("Dirac conjugation contracts", "Dirac conjugation", max_residual(dirac_conjugation_contracts(r)));
  double herm = 0.0, anti = 0.0;
  for (int mu = 0; mu < 3; ++mu)
    herm = std::max({herm, momentum_hermiticity_residual(r, m, mu, false, 1), momentum_hermiticity_residual(r, m, mu, true, 1)});
  anti = std::max(momentum_hermiticity_residual(r, m, 3, false, -1), momentum_hermiticity_residual(r, m, 3, true, -1));
  s.exact("p_1..3, pdot_1..3 Hermitian", "momentum Hermiticity", herm);
  s.exact("p_4, pdot_4 anti-Hermitian", "momentum Hermiticity", anti);
}

inline void u11_grading(SuiteRun& s) {
  const auto& c = s.cfg();
  auto r = f0_structure_checks(c.u11KMax, c.u11NMax);
  s.flag("generators block-diagonal in F", "fermionic charge sectors", r.blockDiagonal);
  for (const auto& [k, v] : r.casimirResidual)
    s.exact("sector k=" + std::to_string(k) + " Casimir w(w+1)", "u(1,1) sector Casimir", v);
  s.flag("F >= 0 on F0", "fermionic charge sectors", r.fNonNegative);
  for (const auto& b : r.brackets) s.exact(b.name, "u(1,1) restriction", b.residual);
  s.flag("tail invariant", "one-way invariance", r.laurent.tailInvariant);
  s.flag("singular span not invariant", "one-way invariance", !r.laurent.singularInvariant);
}

}  // namespace suites_detail

inline std::vector<CheckRecord> run_suite(const std::string& name, const SuiteConfig& cfg) {
  using namespace suites_detail;
  static const std::map<std::string, void (*)(SuiteRun&)> table{
      {"fock-h2", fock_h2},           {"decycle-h2", decycle_h2},         {"nonfock-h4", nonfock_h4},
      {"su2-blocks", su2_blocks},     {"sp2r-casimirs", sp2r_casimirs},   {"gauss-actions", gauss_actions},
      {"forms-quadrature", forms_quadrature}, {"interlace-kernel", interlace_kernel}, {"two-units", two_units},
      {"h8-algebra", h8_algebra},     {"u11-grading", u11_grading}};
  auto it = table.find(name);
  if (it == table.end()) throw ConfigError("suite", "unknown suite '" + name + "'");
  SuiteRun run(name, cfg);
  it->second(run);
  return run.take();
}

inline VerificationReport run_suites(const SuiteConfig& cfg) {
  cfg.validate();
  VerificationReport rep;
  rep.config = config_echo(cfg);
  std::vector<std::vector<CheckRecord>> parts(cfg.suites.size());
  if (cfg.parallel) {
    std::vector<std::future<std::vector<CheckRecord>>> fut;
    for (const auto& s : cfg.suites) fut.push_back(std::async(std::launch::async, run_suite, s, std::cref(cfg)));
    for (std::size_t i = 0; i < fut.size(); ++i) parts[i] = fut[i].get();
  } else {
    for (std::size_t i = 0; i < cfg.suites.size(); ++i) parts[i] = run_suite(cfg.suites[i], cfg);
  }
  for (auto& p : parts)
    for (auto& r : p) rep.checks.push_back(std::move(r));
  return rep;
}

// Serialization.
enum class ReportFormat { Json, Csv, Text };

inline ReportFormat report_format_from(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "text") return ReportFormat::Text;
  throw ConfigError("format", "unknown format '" + s + "'");
}

inline nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["tool"] = "heisenrep";
  j["version"] = r.version;
  j["config"] = r.config;
  j["summary"] = {{"checks", r.checks.size()}, {"passed", r.passed()}, {"failed", r.failed()}};
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["suite"] = c.suite;
    e["check"] = c.check;
    e["anchor"] = c.anchor;
    e["class"] = to_string(c.cls);
    e["residual"] = c.residual;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    arr.push_back(e);
  }
  j["checks"] = arr;
  return j;
}

inline VerificationReport report_from_json(const nlohmann::ordered_json& j) {
  VerificationReport r;
  try {
    r.version = j.at("version").get<std::string>();
    r.config = j.at("config");
    for (const auto& e : j.at("checks"))
      r.checks.push_back({e.at("suite").get<std::string>(), e.at("check").get<std::string>(),
                          e.at("anchor").get<std::string>(), tolerance_class_from(e.at("class").get<std::string>()),
                          e.at("residual").get<double>(), e.at("tolerance").get<double>(), e.at("pass").get<bool>()});
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("report", std::string("malformed report: ") + e.what());
  }
  return r;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string number_text(double x) { return nlohmann::json(x).dump(); }

inline std::string emit_report(const VerificationReport& r, ReportFormat f) {
  std::ostringstream o;
  switch (f) {
    case ReportFormat::Json: o << to_json(r).dump(2) << '\n'; break;
    case ReportFormat::Csv:
      o << "suite,check,anchor,residual,tolerance,pass\n";
      for (const auto& c : r.checks)
        o << csv_field(c.suite) << ',' << csv_field(c.check) << ',' << csv_field(c.anchor) << ','
          << number_text(c.residual) << ',' << number_text(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
      break;
    case ReportFormat::Text:
      for (const auto& c : r.checks)
        o << (c.pass ? "ok   " : "FAIL ") << c.suite << " :: " << c.check << " (" << c.anchor << ") residual=" << number_text(c.residual)
          << " tol=" << number_text(c.tolerance) << '\n';
      o << r.checks.size() << " checks, " << r.passed() << " passed, " << r.failed() << " failed\n";
      break;
  }
  return o.str();
}

// key = value lines; '#' starts a comment.
inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    auto b = cur.find_first_not_of(" \t"), e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

inline std::vector<Q> parse_lambda_list(const std::string& field, const std::string& v, bool& decimal) {
  std::vector<Q> out;
  for (const auto& t : split_list(v)) {
    try {
      out.push_back(parse_rational(t));
    } catch (const ParseError&) {
      try {
        out.push_back(parse_decimal(t));
        decimal = true;
      } catch (const ParseError& e) {
        throw ConfigError(field, e.what());
      }
    }
  }
  if (out.empty()) throw ConfigError(field, "empty list");
  return out;
}

inline int parse_int_field(const std::string& field, const std::string& v) {
  try {
    std::size_t pos = 0;
    int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(field, "expected an integer, got '" + v + "'");
  }
}

inline double parse_double_field(const std::string& field, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(field, "expected a number, got '" + v + "'");
  }
}

inline void apply_setting(SuiteConfig& c, const std::string& key, const std::string& v) {
  if (key == "lambda") c.lambdas = parse_lambda_list(key, v, c.lambdaFromDecimal);
  else if (key == "lambda_prime") {
    bool dec = false;
    c.lambdaPrimes = parse_lambda_list(key, v, dec);
    c.lambdaFromDecimal = c.lambdaFromDecimal || dec;
  } else if (key == "p_min") c.pMin = parse_int_field(key, v);
  else if (key == "p_max") c.pMax = parse_int_field(key, v);
  else if (key == "m_max") c.mMax = parse_int_field(key, v);
  else if (key == "j_max") c.jMax = parse_int_field(key, v);
  else if (key == "h8_cap") c.h8Cap = parse_int_field(key, v);
  else if (key == "u11_k_max") c.u11KMax = parse_int_field(key, v);
  else if (key == "u11_n_max") c.u11NMax = parse_int_field(key, v);
  else if (key == "quad_cutoff") c.quad.cutoff = parse_double_field(key, v);
  else if (key == "quad_graded_panels") c.quad.gradedPanels = parse_int_field(key, v);
  else if (key == "quad_unit_panels") c.quad.unitPanels = parse_int_field(key, v);
  else if (key == "seed") c.seed = static_cast<std::uint32_t>(parse_int_field(key, v));
  else if (key == "parallel") {
    if (v != "true" && v != "false") throw ConfigError(key, "expected true or false");
    c.parallel = v == "true";
  } else if (key == "suites") c.suites = split_list(v);
  else if (key.rfind("tol.", 0) == 0) {
    ToleranceClass cls;
    try {
      cls = tolerance_class_from(key.substr(4));
    } catch (const ParseError& e) {
      throw ConfigError(key, e.what());
    }
    c.tol[cls] = parse_double_field(key, v);
  } else
    throw ConfigError(key, "unknown configuration key");
}

inline std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(no), "expected key = value");
    auto trim = [](std::string s) {
      auto x = s.find_first_not_of(" \t\r"), y = s.find_last_not_of(" \t\r");
      return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
    };
    out.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
  }
  return out;
}

inline SuiteConfig load_config_file(const std::string& path, SuiteConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  for (const auto& [k, v] : parse_config_text(ss.str())) apply_setting(base, k, v);
  return base;
}

inline const char* kConfigEnv = "HEISENREP_CONFIG";

}  // namespace heisenrep
