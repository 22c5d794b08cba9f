#pragma once

#include "symmetry.hpp"

namespace heisenrep {

struct KernelBlock {
  int p;
  Q exponent;            // power of zbar2 at j = 0
  std::vector<Q> coeff;  // coefficient of (zeta zbar1 / zbar2)^j
};

inline std::vector<KernelBlock> kernel_blocks(const SpinParameter& lambda, int pMin, int pMax, int jMax) {
  if (pMin > pMax) throw std::invalid_argument("empty block range");
  if (jMax < 2) throw std::invalid_argument("jMax must be at least 2");
  std::vector<KernelBlock> out;
  for (int p = pMin; p <= pMax; ++p) {
    KernelBlock b{p, 2 * lambda.exact() + p, {}};
    Q c(1);
    for (int j = 0; j <= jMax; ++j) {
      b.coeff.push_back(c);
      c /= (j + 1);
    }
    out.push_back(std::move(b));
  }
  return out;
}

// Term zeta^a zbar1^b zbar2^(2 lambda + n), keyed {a, b, n}.
using KernelSeries = std::map<std::array<int, 3>, Q>;
using KernelFamily = std::map<int, KernelSeries>;

inline KernelSeries to_series(const KernelBlock& b, const Q& lambda) {
  if (b.exponent - 2 * lambda != b.p) throw std::logic_error("kernel block exponent mismatch");
  int n0 = b.p;
  KernelSeries s;
  for (int j = 0; j < static_cast<int>(b.coeff.size()); ++j) s[{j, j, n0 - j}] = b.coeff[j];
  return s;
}

inline KernelFamily to_family(const std::vector<KernelBlock>& blocks, const Q& lambda) {
  KernelFamily f;
  for (const auto& b : blocks) f[b.p] = to_series(b, lambda);
  return f;
}

inline void series_add(KernelSeries& s, const std::array<int, 3>& k, const Q& v) {
  if (v == 0) return;
  Q& slot = s[k];
  slot += v;
  if (slot == 0) s.erase(k);
}

inline KernelSeries series_combine(const KernelSeries& a, const KernelSeries& b, const Q& sb) {
  KernelSeries out = a;
  for (const auto& [k, v] : b) series_add(out, k, v * sb);
  return out;
}

// Elementary actions on kernel series.
enum class KernelVar { Zeta, Zbar1, Zbar2 };

inline KernelSeries series_multiply(const KernelSeries& s, KernelVar v) {
  KernelSeries out;
  for (const auto& [k0, c] : s) {
    auto k = k0;
    ++k[static_cast<int>(v)];
    series_add(out, k, c);
  }
  return out;
}

inline KernelSeries series_differentiate(const KernelSeries& s, KernelVar v, const Q& lambda) {
  KernelSeries out;
  int i = static_cast<int>(v);
  for (const auto& [k0, c] : s) {
    auto k = k0;
    Q factor = v == KernelVar::Zbar2 ? 2 * lambda + k[2] : Q(k[i]);
    --k[i];
    series_add(out, k, c * factor);
  }
  return out;
}

// Fock-side Weyl generators and their transposes under the Gaussian pairing.
enum class WeylGenerator { Z1, Z2, D1, D2 };

inline KernelSeries gauss_transpose(WeylGenerator g, const KernelSeries& s, const Q& lambda) {
  switch (g) {
    case WeylGenerator::Z1: return series_differentiate(s, KernelVar::Zbar1, lambda);
    case WeylGenerator::Z2: return series_differentiate(s, KernelVar::Zbar2, lambda);
    case WeylGenerator::D1: return series_multiply(s, KernelVar::Zbar1);
    case WeylGenerator::D2: return series_multiply(s, KernelVar::Zbar2);
  }
  return s;
}

enum class InterlaceGenerator { Phi1, Phi2, PhiBar1, PhiBar2, L3, LPlus, LMinus };

inline const std::vector<InterlaceGenerator>& all_interlace_generators() {
  static const std::vector<InterlaceGenerator> g{InterlaceGenerator::Phi1,    InterlaceGenerator::Phi2,
                                                 InterlaceGenerator::PhiBar1, InterlaceGenerator::PhiBar2,
                                                 InterlaceGenerator::L3,      InterlaceGenerator::LPlus,
                                                 InterlaceGenerator::LMinus};
  return g;
}

inline std::string to_string(InterlaceGenerator g) {
  switch (g) {
    case InterlaceGenerator::Phi1: return "phi1";
    case InterlaceGenerator::Phi2: return "phi2";
    case InterlaceGenerator::PhiBar1: return "phibar1";
    case InterlaceGenerator::PhiBar2: return "phibar2";
    case InterlaceGenerator::L3: return "L3";
    case InterlaceGenerator::LPlus: return "L+";
    case InterlaceGenerator::LMinus: return "L-";
  }
  return "?";
}

inline int block_shift(InterlaceGenerator g) {
  switch (g) {
    case InterlaceGenerator::Phi1:
    case InterlaceGenerator::Phi2: return -1;
    case InterlaceGenerator::PhiBar1:
    case InterlaceGenerator::PhiBar2: return 1;
    default: return 0;
  }
}

// zeta-side operator acting on block p.
inline KernelSeries zeta_side(InterlaceGenerator g, int p, const KernelSeries& s, const Q& lambda) {
  auto d = [&](const KernelSeries& x) { return series_differentiate(x, KernelVar::Zeta, lambda); };
  auto z = [&](const KernelSeries& x) { return series_multiply(x, KernelVar::Zeta); };
  switch (g) {
    case InterlaceGenerator::Phi1: return d(s);
    case InterlaceGenerator::Phi2: return s;
    case InterlaceGenerator::PhiBar1: return z(s);
    case InterlaceGenerator::PhiBar2: return series_combine(series_combine({}, z(d(s)), Q(-1)), s, 2 * lambda + p + 1);
    case InterlaceGenerator::L3: return series_combine(z(d(s)), s, -lambda - qfrac(p, 2));
    case InterlaceGenerator::LPlus: return z(s);
    case InterlaceGenerator::LMinus: return series_combine(series_combine({}, z(d(d(s))), Q(-1)), d(s), 2 * lambda + p);
  }
  return s;
}

// Transposed Fock-side operator acting on the z-bar variables of one block.
inline KernelSeries fock_side(InterlaceGenerator g, const KernelSeries& s, const Q& lambda) {
  auto T = [&](WeylGenerator w, const KernelSeries& x) { return gauss_transpose(w, x, lambda); };
  using W = WeylGenerator;
  switch (g) {
    case InterlaceGenerator::Phi1: return T(W::D1, s);
    case InterlaceGenerator::Phi2: return T(W::D2, s);
    case InterlaceGenerator::PhiBar1: return T(W::Z1, s);
    case InterlaceGenerator::PhiBar2: return T(W::Z2, s);
    // (ab)^T = b^T a^T
    case InterlaceGenerator::L3: {
      auto r = series_combine(T(W::Z1, T(W::D1, s)), T(W::Z2, T(W::D2, s)), Q(-1));
      for (auto& [k, v] : r) v /= 2;
      return r;
    }
    case InterlaceGenerator::LPlus: return T(W::Z1, T(W::D2, s));
    case InterlaceGenerator::LMinus: return T(W::Z2, T(W::D1, s));
  }
  return s;
}

inline double series_residual(const KernelSeries& a, const KernelSeries& b, int maxZetaDegree) {
  auto diff = series_combine(a, b, Q(-1));
  double worst = 0.0;
  for (const auto& [k, v] : diff)
    if (k[0] <= maxZetaDegree) worst = std::max(worst, magnitude(v));
  return worst;
}

struct InsufficientSeries : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// a(zeta) K = K a(z) on interior blocks, zeta-degree <= jMax - 2.
inline double interlace_residual(const SpinParameter& lambda, InterlaceGenerator g, int pMin, int pMax, int jMax) {
  if (jMax < 4) throw InsufficientSeries("jMax must be at least 4");
  if (pMax - pMin < 2) throw std::invalid_argument("block window needs at least 3 blocks");
  const Q& lam = lambda.exact();
  auto fam = to_family(kernel_blocks(lambda, pMin, pMax, jMax), lam);
  int d = block_shift(g);
  KernelFamily lhs;
  for (const auto& [p, s] : fam) lhs[p + d] = zeta_side(g, p, s, lam);
  double worst = 0.0;
  for (int r = pMin + 1; r <= pMax - 1; ++r) {
    if (!lhs.count(r)) continue;
    worst = std::max(worst, series_residual(lhs[r], fock_side(g, fam.at(r), lam), jMax - 2));
  }
  return worst;
}

// sum_k f_k zbar2^k K_(r-k) against f(1) K_r on blocks where every term exists.
inline double kernel_shift_check(const std::vector<KernelBlock>& blocks, const Q& lambda, const std::vector<Q>& f) {
  if (blocks.size() < 3) throw std::invalid_argument("kernel shift check needs at least 3 blocks");
  auto fam = to_family(blocks, lambda);
  int pMin = blocks.front().p, pMax = blocks.back().p;
  int deg = static_cast<int>(f.size()) - 1;
  Q f1(0);
  for (const auto& c : f) f1 += c;
  double worst = 0.0;
  for (int r = pMin + std::max(deg, 1); r <= pMax - 1; ++r) {
    KernelSeries lhs;
    for (int k = 0; k <= deg; ++k) {
      KernelSeries t = fam.at(r - k);
      for (int i = 0; i < k; ++i) t = series_multiply(t, KernelVar::Zbar2);
      lhs = series_combine(lhs, t, f[k]);
    }
    KernelSeries rhs = series_combine({}, fam.at(r), f1);
    worst = std::max(worst, series_residual(lhs, rhs, std::numeric_limits<int>::max()));
  }
  return worst;
}

// f(zbar2) annihilates the family iff f(1) = 0.
inline bool in_kernel(const std::vector<Q>& f) {
  Q s(0);
  for (const auto& c : f) s += c;
  return s == 0;
}

// Block identity and the pure block shift a^1_2.
struct UnitPair {
  ShiftOperator<Q> blockIdentity, shiftUnit;
};

struct TwoUnitsReport {
  bool structuralEquality;
  double identityCommutator;                 // max over L3, L+, L-
  std::vector<NamedResidual> spinorMixing;   // [L_i, a^1_alpha] against the mixing law
  std::vector<NamedResidual> nonzeroMixing;  // size of [L_i, a^1_alpha] where the law says nonzero
};

inline UnitPair unit_pair(const SpinParameter& lambda, const TruncationWindow& w) {
  auto h = nonfock_h4<Q>(lambda, w);
  return {block_identity<Q>(w), h.a1(2)};
}

inline TwoUnitsReport two_units_check(const TruncationWindow& w, const SpinParameter& lambda) {
  if (w.blocks() < 3) throw std::invalid_argument("two units check needs at least 3 blocks");
  auto u = unit_pair(lambda, w);
  TwoUnitsReport rep{true, 0.0, {}, {}};
  std::size_t shifted = 0;
  for (const auto& g : enumerate_basis(w)) {
    if (u.blockIdentity.at(g, g) != 1) rep.structuralEquality = false;
    GradedIndex t{g.p - 1, g.m};
    if (contains(w, t)) {
      ++shifted;
      if (u.shiftUnit.at(t, g) != 1) rep.structuralEquality = false;
    }
  }
  if (u.shiftUnit.matrix().nnz() != shifted) rep.structuralEquality = false;

  auto L = graded_su2<Q>(lambda, w);
  auto h = nonfock_h4<Q>(lambda, w);
  std::array<const ShiftOperator<Q>*, 3> Ls{&L.L3, &L.Lp, &L.Lm};
  std::array<std::string, 3> names{"L3", "L+", "L-"};
  for (auto* Li : Ls) {
    auto C = commutator(*Li, u.blockIdentity);
    rep.identityCommutator = std::max(rep.identityCommutator, interior_residual(C, ShiftOperator<Q>(w, C.shift())));
  }
  // [L_i, a^1_gamma] = -1/2 (sigma_i)_{gamma beta} a^1_beta with L+- = L1 +- i L2.
  auto zero = [&](int s) { return ShiftOperator<Q>(w, s); };
  auto a11 = h.a1(1), a12 = h.a1(2);
  std::array<std::array<ShiftOperator<Q>, 2>, 3> expect{
      {{qfrac(-1, 2) * a11, qfrac(1, 2) * a12}, {Q(-1) * a12, zero(-1)}, {zero(-1), Q(-1) * a11}}};
  for (int i = 0; i < 3; ++i)
    for (int a = 1; a <= 2; ++a) {
      auto C = commutator(*Ls[i], h.a1(a));
      std::string nm = "[" + names[i] + ",a1_" + std::to_string(a) + "]";
      rep.spinorMixing.push_back({nm, interior_residual(C, expect[i][a - 1])});
      rep.nonzeroMixing.push_back({nm, interior_residual(C, zero(-1))});
    }
  return rep;
}

// Fock monomials z1^m1 z2^m2 times the additional variable z^k.
struct ExtendedFock {
  MonomialSpace space;
  std::array<SparseMatrix<Q>, 2> a1, a2;
  SparseMatrix<Q> zMul, zDiff;  // additional variable and its formal partner
  SparseMatrix<Q> L3, Lp, Lm, L0l, L0i, Gamma0;
};

inline ExtendedFock extended_fock_space(int m1Max, int m2Max, int kMax) {
  if (m1Max < 2 || m2Max < 2 || kMax < 2) throw std::invalid_argument("extended Fock sizes must be at least 2");
  MonomialSpace sp({m1Max, m2Max, kMax});
  ExtendedFock e{sp, {sp.differentiate<Q>(0), sp.differentiate<Q>(1)}, {sp.multiply<Q>(0), sp.multiply<Q>(1)},
                 sp.multiply<Q>(2), sp.differentiate<Q>(2), {}, {}, {}, {}, {}, {}};
  Q h = qfrac(1, 2);
  e.L3 = (e.a2[0] * e.a1[0] - e.a2[1] * e.a1[1]) * h;
  e.Lp = e.a2[0] * e.a1[1];
  e.Lm = e.a2[1] * e.a1[0];
  e.L0l = (e.a2[0] * e.a1[0] + e.a2[1] * e.a1[1]) * h;
  e.L0i = e.L0l + e.zMul * e.zDiff * h;
  e.Gamma0 = e.L0i + sp.identity<Q>() * h;
  return e;
}

struct PhaseSplitReport {
  double l0l_on_z;         // L0^(l) z^k = 0
  double l0i_on_z;         // L0^(i) z = z / 2
  double gamma0_on_z;      // Gamma0 z = z
  double gamma0_identity;  // Gamma0 - L0^(i) - 1/2
  double casimir_bookkeeping;
  double su2_on_scalars;   // L-vector annihilates z^k
};

inline PhaseSplitReport phase_split_check(const ExtendedFock& e) {
  const auto& sp = e.space;
  std::size_t n = sp.dim();
  auto keep = sp.interior(1);
  auto scalars = [&](std::size_t i) {
    auto x = sp.exponents(i);
    return x[0] == 0 && x[1] == 0;
  };
  auto onZ = [&](std::size_t i) {
    auto x = sp.exponents(i);
    return x[0] == 0 && x[1] == 0 && x[2] == 1;
  };
  PhaseSplitReport r{};
  SparseMatrix<Q> zero(n), I = sp.identity<Q>();
  // columns restricted to z-scalars: compare M restricted to those columns.
  auto colResidual = [&](const SparseMatrix<Q>& M, const SparseMatrix<Q>& T, auto cols) {
    double worst = 0.0;
    (M - T).for_each([&](std::size_t, std::size_t c, const Q& v) {
      if (cols(c)) worst = std::max(worst, magnitude(v));
    });
    return worst;
  };
  r.l0l_on_z = colResidual(e.L0l, zero, scalars);
  r.l0i_on_z = colResidual(e.L0i, I * qfrac(1, 2), onZ);
  r.gamma0_on_z = colResidual(e.Gamma0, I, onZ);
  r.gamma0_identity = masked_residual(e.Gamma0, e.L0i + I * qfrac(1, 2), keep);
  auto cas = casimir_su2(e.L3, e.Lp, e.Lm);
  r.casimir_bookkeeping = masked_residual(cas, e.L0l * (e.L0l + I), keep);
  r.su2_on_scalars = std::max({colResidual(e.L3, zero, scalars), colResidual(e.Lp, zero, scalars),
                               colResidual(e.Lm, zero, scalars)});
  return r;
}

}  // namespace heisenrep
