#pragma once

#include "forms.hpp"

namespace heisenrep {

using Mat4 = std::array<std::array<GQ, 4>, 4>;

inline Mat4 mat4_zero() {
  Mat4 m;
  for (auto& r : m) r.fill(GQ(Q(0)));
  return m;
}
inline Mat4 mat4_identity() {
  Mat4 m = mat4_zero();
  for (int i = 0; i < 4; ++i) m[i][i] = GQ(Q(1));
  return m;
}
inline Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 r = mat4_zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}
inline Mat4 operator+(Mat4 a, const Mat4& b) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] += b[i][j];
  return a;
}
inline Mat4 operator-(Mat4 a, const Mat4& b) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] -= b[i][j];
  return a;
}
inline Mat4 operator*(const GQ& s, Mat4 a) {
  for (auto& r : a)
    for (auto& x : r) x *= s;
  return a;
}
inline bool operator==(const Mat4& a, const Mat4& b) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!is_zero(a[i][j] - b[i][j])) return false;
  return true;
}

// 2x2 blocks [[A, B], [C, D]].
inline Mat4 blocks4(const Mat2& A, const Mat2& B, const Mat2& C, const Mat2& D) {
  Mat4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      m[i][j] = A[i][j];
      m[i][j + 2] = B[i][j];
      m[i + 2][j] = C[i][j];
      m[i + 2][j + 2] = D[i][j];
    }
  return m;
}

inline Mat2 scale2(const GQ& s, Mat2 a) {
  for (auto& r : a)
    for (auto& x : r) x *= s;
  return a;
}

struct DiracSet {
  std::array<Mat4, 4> gamma;  // gamma_1..gamma_4 at indices 0..3
  Mat4 gamma5, Pplus, Pminus;
  std::array<std::array<Mat4, 4>, 4> Sigma;  // (1/4i)[gamma_mu, gamma_nu]
};

inline DiracSet dirac_set() {
  auto sig = pauli();
  GQ i = GQ::i(), mi = GQ(Q(0)) - GQ::i();
  Mat2 Z{{{GQ(Q(0)), GQ(Q(0))}, {GQ(Q(0)), GQ(Q(0))}}}, I{{{GQ(Q(1)), GQ(Q(0))}, {GQ(Q(0)), GQ(Q(1))}}};
  DiracSet d;
  for (int k = 0; k < 3; ++k) d.gamma[k] = blocks4(Z, scale2(mi, sig[k]), scale2(i, sig[k]), Z);
  d.gamma[3] = blocks4(Z, I, I, Z);
  d.gamma5 = GQ(Q(-1)) * (d.gamma[0] * d.gamma[1] * d.gamma[2] * d.gamma[3]);
  GQ h(qfrac(1, 2));
  d.Pplus = h * (mat4_identity() + d.gamma5);
  d.Pminus = h * (mat4_identity() - d.gamma5);
  GQ c = GQ(Q(1)) / (GQ(Q(4)) * i);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) d.Sigma[m][n] = c * (d.gamma[m] * d.gamma[n] - d.gamma[n] * d.gamma[m]);
  return d;
}

// Largest deviation among the Clifford and projector identities.
inline bool dirac_consistent(const DiracSet& d) {
  Mat4 I = mat4_identity(), Z = mat4_zero();
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      Mat4 ac = d.gamma[m] * d.gamma[n] + d.gamma[n] * d.gamma[m];
      if (!(ac == (m == n ? GQ(Q(2)) * I : Z))) return false;
    }
    if (!(d.gamma[m] * d.gamma5 + d.gamma5 * d.gamma[m] == Z)) return false;
  }
  return d.gamma5 * d.gamma5 == I && d.Pplus * d.Pplus == d.Pplus && d.Pminus * d.Pminus == d.Pminus &&
         d.Pplus * d.Pminus == Z;
}

// Variables ordered (z1, z2, zbar1, zbar2).
struct H8Rep {
  MonomialSpace space;
  std::array<SparseMatrix<GQ>, 4> phi;     // d/dzbar1, d/dzbar2, z1, z2
  std::array<SparseMatrix<GQ>, 4> phibar;  // zbar1, zbar2, -d/dz1, -d/dz2
  SparseMatrix<GQ> mul(int v) const { return space.multiply<GQ>(v); }
  SparseMatrix<GQ> diff(int v) const { return space.differentiate<GQ>(v); }
};

inline H8Rep h8_phi_rep(int cap) {
  if (cap < 2) throw std::invalid_argument("caps must be at least 2");
  MonomialSpace sp(std::vector<int>(4, cap));
  H8Rep r{sp, {}, {}};
  GQ m1(Q(-1));
  r.phi = {sp.differentiate<GQ>(2), sp.differentiate<GQ>(3), sp.multiply<GQ>(0), sp.multiply<GQ>(1)};
  r.phibar = {sp.multiply<GQ>(2), sp.multiply<GQ>(3), sp.differentiate<GQ>(0) * m1, sp.differentiate<GQ>(1) * m1};
  return r;
}

inline std::vector<NamedResidual> h8_relations(const H8Rep& r, int margin = 1) {
  std::vector<NamedResidual> out;
  auto keep = r.space.interior(margin);
  std::size_t n = r.space.dim();
  SparseMatrix<GQ> zero(n), I = SparseMatrix<GQ>::identity(n);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      std::string ab = std::to_string(a + 1) + std::to_string(b + 1);
      out.push_back({"[phi,phibar]" + ab, masked_residual(commutator(r.phi[a], r.phibar[b]), a == b ? I : zero, keep)});
      out.push_back({"[phi,phi]" + ab, masked_residual(commutator(r.phi[a], r.phi[b]), zero, keep)});
      out.push_back({"[phibar,phibar]" + ab, masked_residual(commutator(r.phibar[a], r.phibar[b]), zero, keep)});
    }
  return out;
}

// phibar M phi as an operator.
inline SparseMatrix<GQ> bilinear(const H8Rep& r, const Mat4& M) {
  SparseMatrix<GQ> out(r.space.dim());
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (!is_zero(M[a][b])) out += r.phibar[a] * r.phi[b] * M[a][b];
  return out;
}

struct BilinearAlgebra {
  std::array<std::array<SparseMatrix<GQ>, 4>, 4> I;
  SparseMatrix<GQ> A, B;
};

inline BilinearAlgebra bilinear_algebra(const H8Rep& r, const DiracSet& d) {
  BilinearAlgebra b;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) b.I[m][n] = bilinear(r, d.Sigma[m][n]);
  b.A = bilinear(r, mat4_identity());
  b.B = bilinear(r, d.gamma5);
  return b;
}

// [I_mn, I_rs] against kappa (d_nr I_ms + d_ms I_nr - d_mr I_ns - d_ns I_mr).
inline double so4_bracket_residual(const BilinearAlgebra& b, const GQ& kappa, const std::function<bool(std::size_t)>& keep) {
  double worst = 0.0;
  std::size_t n = b.A.dim();
  auto dl = [](int x, int y) { return x == y ? 1 : 0; };
  for (int m = 0; m < 4; ++m)
    for (int nn = m + 1; nn < 4; ++nn)
      for (int r = 0; r < 4; ++r)
        for (int s = r + 1; s < 4; ++s) {
          SparseMatrix<GQ> rhs(n);
          if (dl(nn, r)) rhs += b.I[m][s];
          if (dl(m, s)) rhs += b.I[nn][r];
          if (dl(m, r)) rhs -= b.I[nn][s];
          if (dl(nn, s)) rhs -= b.I[m][r];
          worst = std::max(worst, masked_residual(commutator(b.I[m][nn], b.I[r][s]), rhs * kappa, keep));
        }
  return worst;
}

inline double scalar_bracket_residual(const BilinearAlgebra& b, const std::function<bool(std::size_t)>& keep) {
  SparseMatrix<GQ> zero(b.A.dim());
  double worst = masked_residual(commutator(b.A, b.B), zero, keep);
  for (int m = 0; m < 4; ++m)
    for (int n = m + 1; n < 4; ++n)
      worst = std::max({worst, masked_residual(commutator(b.I[m][n], b.A), zero, keep),
                        masked_residual(commutator(b.I[m][n], b.B), zero, keep)});
  return worst;
}

// sigma^pm_mu = (sigma_1, sigma_2, sigma_3, +-i).
inline Mat2 sigma_pm(int mu, int sign) {
  if (mu < 3) return pauli()[mu];
  GQ v = sign > 0 ? GQ::i() : GQ(Q(0)) - GQ::i();
  return Mat2{{{v, GQ(Q(0))}, {GQ(Q(0)), v}}};
}

struct MomentumOps {
  std::array<SparseMatrix<GQ>, 4> p, pdot;            // direct z-realization
  std::array<SparseMatrix<GQ>, 4> pDirac, pdotDirac;  // i phibar gamma P+ phi, -i phibar gamma P- phi
  double consistency = 0.0;
};

inline MomentumOps momentum_ops(const H8Rep& r, const DiracSet& d) {
  MomentumOps m;
  std::size_t n = r.space.dim();
  GQ i = GQ::i(), mi = GQ(Q(0)) - GQ::i();
  for (int mu = 0; mu < 4; ++mu) {
    Mat2 sp = sigma_pm(mu, 1), sm = sigma_pm(mu, -1);
    SparseMatrix<GQ> p(n), pd(n);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        if (!is_zero(sp[a][b])) p += r.mul(2 + a) * r.mul(b) * sp[a][b];
        if (!is_zero(sm[a][b])) pd -= r.diff(a) * r.diff(2 + b) * sm[a][b];
      }
    m.p[mu] = p;
    m.pdot[mu] = pd;
    m.pDirac[mu] = bilinear(r, i * (d.gamma[mu] * d.Pplus));
    m.pdotDirac[mu] = bilinear(r, mi * (d.gamma[mu] * d.Pminus));
    m.consistency = std::max({m.consistency, masked_residual(m.p[mu], m.pDirac[mu], [](std::size_t) { return true; }),
                              masked_residual(m.pdot[mu], m.pdotDirac[mu], [](std::size_t) { return true; })});
  }
  if (m.consistency != 0.0) throw std::logic_error("Dirac arrangement does not reproduce the momentum operators");
  return m;
}

// Rank over the Gaussian rationals of operators viewed as vectors.
inline std::size_t operator_rank(const std::vector<SparseMatrix<GQ>>& ops) {
  std::vector<std::map<std::size_t, GQ>> rows;
  for (const auto& M : ops) {
    std::map<std::size_t, GQ> v;
    std::size_t n = M.dim();
    M.for_each([&](std::size_t r, std::size_t c, const GQ& x) { v[c * n + r] = x; });
    rows.push_back(std::move(v));
  }
  std::size_t rank = 0;
  std::vector<std::pair<std::size_t, std::map<std::size_t, GQ>>> basis;  // pivot, normalized row
  for (auto v : rows) {
    for (const auto& [piv, b] : basis) {
      auto it = v.find(piv);
      if (it == v.end()) continue;
      GQ f = it->second;
      for (const auto& [k, x] : b) {
        GQ& slot = v[k];
        slot -= f * x;
        if (is_zero(slot)) v.erase(k);
      }
    }
    if (v.empty()) continue;
    auto piv = v.begin()->first;
    GQ inv = GQ(Q(1)) / v.begin()->second;
    for (auto& [k, x] : v) x *= inv;
    basis.push_back({piv, std::move(v)});
    ++rank;
  }
  return rank;
}

// Distribution pairing on (z1, z2, zbar1, zbar2) with z <-> zbar under conjugation.
inline DualPairing h8_dual_pairing(const H8Rep& r) { return DualPairing(r.space, {2, 3, 0, 1}); }

// Dual-side image of a polynomial operator sum c x^a d^b given as its factors.
inline SparseMatrix<GQ> dual_momentum(const DualPairing& P, int mu, int sign) {
  std::size_t n = P.space().dim();
  SparseMatrix<GQ> out(n);
  Mat2 s = sigma_pm(mu, sign);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      if (is_zero(s[a][b])) continue;
      if (sign > 0)
        out += P.dual_multiply(2 + a) * P.dual_multiply(b) * s[a][b];
      else
        out -= P.dual_differentiate(a) * P.dual_differentiate(2 + b) * s[a][b];
    }
  return out;
}

// Dirac-conjugation contracts: <f', a^1 g> = -<a^1* f', g>, <f', a^2 g> = <a^2* f', g>.
inline std::vector<NamedResidual> dirac_conjugation_contracts(const H8Rep& r, int margin = 1) {
  auto P = h8_dual_pairing(r);
  auto keep = r.space.interior(margin);
  std::vector<NamedResidual> out;
  for (int a = 0; a < 2; ++a) {
    std::string al = std::to_string(a + 1);
    out.push_back({"a1_" + al, P.contract_residual(P.dual_differentiate(2 + a), r.diff(a), -1, keep)});
    out.push_back({"a2_" + al, P.contract_residual(P.dual_multiply(2 + a), r.mul(a), 1, keep)});
    out.push_back({"a1*_" + al, P.contract_residual(P.dual_differentiate(a), r.diff(2 + a), -1, keep)});
    out.push_back({"a2*_" + al, P.contract_residual(P.dual_multiply(a), r.mul(2 + a), 1, keep)});
  }
  return out;
}

// The same contracts under the Gaussian monomial rule on four independent variables.
inline double gaussian_contract_residual(const H8Rep& r, int margin = 1) {
  auto keep = r.space.interior(margin);
  std::size_t n = r.space.dim();
  auto weight = [&](std::size_t i) {
    Q w(1);
    for (int k : r.space.exponents(i))
      for (int j = 2; j <= k; ++j) w *= j;
    return GQ(w);
  };
  double worst = 0.0;
  for (int a = 0; a < 2; ++a) {
    auto T = r.mul(a), Tstar = r.mul(2 + a);
    for (std::size_t A = 0; A < n; ++A) {
      if (!keep(A)) continue;
      for (std::size_t B = 0; B < n; ++B) {
        if (!keep(B)) continue;
        GQ lhs = T.at(A, B) * weight(A);
        GQ rhs = Tstar.at(B, A).conj() * weight(B);
        worst = std::max(worst, magnitude(lhs - rhs));
      }
    }
  }
  return worst;
}

// <p f', g> - s <f', p g> over the dual pairing, s = +1 (Hermitian) or -1.
inline double momentum_hermiticity_residual(const H8Rep& r, const MomentumOps& m, int mu, bool dotted, int s,
                                            int margin = 2) {
  auto P = h8_dual_pairing(r);
  return P.contract_residual(dual_momentum(P, mu, dotted ? -1 : 1), dotted ? m.pdot[mu] : m.p[mu], s,
                             r.space.interior(margin));
}

// Gaussian form on (z1, z2, zbar1, zbar2) monomials.
inline FormValue<GQ> h8_form(const Poly<GQ>& f, const Poly<GQ>& g) { return gauss_monomial_form(f, g); }

// u(1,1) restriction on F0: basis z^k (zbar z)^n.
struct F0Index {
  int k, n;
};

struct U11 {
  int kMax, nMax;
  SparseMatrix<Q> Lp, Lm, L3, L0, F;
  std::size_t index(int k, int n) const { return static_cast<std::size_t>(k) * (nMax + 1) + n; }
  F0Index label(std::size_t i) const {
    return {static_cast<int>(i / (nMax + 1)), static_cast<int>(i % (nMax + 1))};
  }
  std::size_t dim() const { return static_cast<std::size_t>(kMax + 1) * (nMax + 1); }
};

inline U11 u11_restriction(int kMax, int nMax) {
  if (kMax < 2 || nMax < 2) throw std::invalid_argument("caps must be at least 2");
  U11 u{kMax, nMax, {}, {}, {}, {}, {}};
  std::size_t d = u.dim();
  u.Lp = u.Lm = u.L3 = u.L0 = u.F = SparseMatrix<Q>(d);
  for (int k = 0; k <= kMax; ++k)
    for (int n = 0; n <= nMax; ++n) {
      std::size_t i = u.index(k, n);
      if (n < nMax) u.Lp.add(u.index(k, n + 1), i, Q(1));
      if (n > 0) u.Lm.add(u.index(k, n - 1), i, Q(-n * (k + n)));
      u.L3.add(i, i, qfrac(-(k + 2 * n + 1), 2));
      u.L0.add(i, i, qfrac(-(k + 1), 2));
      u.F.add(i, i, Q(k));
    }
  return u;
}

struct LaurentDemo {
  bool tailInvariant;
  bool singularInvariant;
  std::string witness;
};

struct F0Report {
  bool blockDiagonal;
  std::vector<std::pair<int, double>> casimirResidual;  // per sector k against w(w+1), w = -(k+1)/2
  std::vector<Q> fSpectrum;
  bool fNonNegative;
  std::vector<NamedResidual> brackets;
  LaurentDemo laurent;
};

// Monomial z^j zbar^l with j possibly negative.
using LaurentMonomial = std::pair<int, int>;

inline std::map<LaurentMonomial, Q> u11_apply(int gen, const LaurentMonomial& x) {
  auto [j, l] = x;
  std::map<LaurentMonomial, Q> out;
  switch (gen) {
    case 0: out[{j + 1, l + 1}] = 1; break;
    case 1:
      if (j != 0 && l != 0) out[{j - 1, l - 1}] = Q(-j * l);
      break;
    case 2: out[x] = qfrac(-(j + l + 1), 2); break;
    case 3: out[x] = qfrac(-(j - l + 1), 2); break;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline LaurentDemo laurent_demo(int kMax, int nMax) {
  LaurentDemo d{true, true, ""};
  const char* names[4] = {"L+", "L-", "L3", "L0"};
  for (int k = 1; k <= kMax; ++k) {
    auto inTail = [k](const LaurentMonomial& x) { return x.first >= 0 && x.second - x.first == k; };
    auto inSingular = [k](const LaurentMonomial& x) {
      return x.second >= 0 && x.second < k && x.first == x.second - k;
    };
    for (int n = 0; n <= nMax; ++n)
      for (int g = 0; g < 4; ++g)
        for (const auto& [y, c] : u11_apply(g, {n, n + k}))
          if (!inTail(y)) d.tailInvariant = false;
    for (int j = 0; j < k; ++j)
      for (int g = 0; g < 4; ++g)
        for (const auto& [y, c] : u11_apply(g, {j - k, j}))
          if (!inSingular(y)) {
            if (d.singularInvariant)
              d.witness = std::string(names[g]) + " z^" + std::to_string(j - k) + " zbar^" + std::to_string(j) +
                          " -> z^" + std::to_string(y.first) + " zbar^" + std::to_string(y.second);
            d.singularInvariant = false;
          }
  }
  return d;
}

inline F0Report f0_structure_checks(int kMax, int nMax) {
  auto u = u11_restriction(kMax, nMax);
  F0Report r{true, {}, {}, true, {}, laurent_demo(std::min(kMax, 4), nMax)};
  for (const auto* M : {&u.Lp, &u.Lm, &u.L3, &u.L0, &u.F})
    M->for_each([&](std::size_t a, std::size_t b, const Q&) {
      if (u.label(a).k != u.label(b).k) r.blockDiagonal = false;
    });
  auto C = casimir_su2(u.L3, u.Lp, u.Lm);
  for (int k = 0; k <= kMax; ++k) {
    Q w = qfrac(-(k + 1), 2);
    auto keep = [&, k](std::size_t i) { return u.label(i).k == k && u.label(i).n <= nMax - 1; };
    r.casimirResidual.push_back({k, masked_residual(C, scalar_matrix(u.dim(), Q(w * (w + 1))), keep)});
  }
  r.fSpectrum = diagonal_spectrum(u.F);
  for (const auto& f : r.fSpectrum)
    if (f < 0) r.fNonNegative = false;
  auto keep = [&](std::size_t i) { return u.label(i).n <= nMax - 1; };
  SparseMatrix<Q> zero(u.dim());
  r.brackets.push_back({"[L+,L-]=-2L3", masked_residual(commutator(u.Lp, u.Lm), u.L3 * Q(-2), keep)});
  r.brackets.push_back({"[L3,L+]=-L+", masked_residual(commutator(u.L3, u.Lp), u.Lp * Q(-1), keep)});
  r.brackets.push_back({"[L3,L-]=L-", masked_residual(commutator(u.L3, u.Lm), u.Lm, keep)});
  r.brackets.push_back({"[L0,L+]=0", masked_residual(commutator(u.L0, u.Lp), zero, keep)});
  r.brackets.push_back({"[L0,L-]=0", masked_residual(commutator(u.L0, u.Lm), zero, keep)});
  r.brackets.push_back({"F=-2L0-1", masked_residual(u.F, u.L0 * Q(-2) - scalar_matrix(u.dim(), Q(1)), keep)});
  return r;
}

}  // namespace heisenrep
