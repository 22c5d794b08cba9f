#pragma once

#include "oscillators.hpp"
#include "special.hpp"

#include <complex>

namespace heisenrep {

// One semispinor block, spin Lambda, on zeta^0..zeta^mMax.
template <class S = Q>
struct Su2Block {
  Q Lambda;
  int mMax;
  SparseMatrix<S> L3, Lp, Lm;

  std::function<bool(std::size_t)> interior(int margin = 2) const {
    int top = mMax - margin;
    return [top](std::size_t i) { return static_cast<int>(i) <= top; };
  }
  SparseMatrix<S> casimir() const { return casimir_su2(L3, Lp, Lm); }
  Q expected_casimir() const { return Lambda * (Lambda + 1); }
};

template <class S = Q>
Su2Block<S> su2_semispinor(const SpinParameter& lambda, int p, int mMax) {
  Q Lam = lambda.exact() + qfrac(p, 2);
  MonomialSpace sp({mMax});
  auto z = sp.multiply<S>(0), d = sp.differentiate<S>(0);
  auto I = sp.identity<S>();
  S L = from_q<S>(Lam);
  return Su2Block<S>{Lam, mMax, z * d - I * L, z, d * (L + L) - z * d * d};
}

struct SuBracketResiduals {
  double l3_plus, l3_minus, plus_minus;
  double max() const { return std::max({l3_plus, l3_minus, plus_minus}); }
};

template <class M, class F>
SuBracketResiduals su2_bracket_residuals(const M& L3, const M& Lp, const M& Lm, const F& keep) {
  using S = std::decay_t<decltype(L3.at(0, 0))>;
  return {masked_residual(commutator(L3, Lp), Lp, keep),
          masked_residual(commutator(L3, Lm), Lm * from_q<S>(Q(-1)), keep),
          masked_residual(commutator(Lp, Lm), L3 * from_q<S>(Q(2)), keep)};
}

// h2 Fock space split into even and odd z-monomials.
template <class S = Q>
struct ParitySplit {
  int mMax;
  SparseMatrix<S> L3, Lp, Lm;
  std::function<bool(std::size_t)> parity_interior(int parity) const {
    int top = mMax - 2;
    return [top, parity](std::size_t i) { return static_cast<int>(i) <= top && static_cast<int>(i) % 2 == parity; };
  }
};

template <class S = Q>
ParitySplit<S> h2_semispinor_split(int mMax) {
  if (mMax < 4) throw std::invalid_argument("mMax must be at least 4");
  MonomialSpace sp({mMax});
  auto z = sp.multiply<S>(0), d = sp.differentiate<S>(0);
  S h = from_q<S>(qfrac(1, 2));
  return ParitySplit<S>{mMax, z * d * h + sp.identity<S>() * from_q<S>(qfrac(1, 4)), z * z * h,
                        d * d * from_q<S>(qfrac(-1, 2))};
}

template <class S = Q>
struct FockSu2 {
  MonomialSpace space;
  SparseMatrix<S> L3, Lp, Lm;
  // Monomials of total degree deg.
  std::function<bool(std::size_t)> homogeneous(int deg) const {
    return [this, deg](std::size_t i) {
      auto e = space.exponents(i);
      return e[0] + e[1] == deg;
    };
  }
};

template <class S = Q>
FockSu2<S> fock_su2(int mMax) {
  if (mMax < 3) throw std::invalid_argument("mMax must be at least 3");
  auto f = fock_ladders<S>(2, mMax);
  S h = from_q<S>(qfrac(1, 2));
  return FockSu2<S>{f.space, (f.a2[0] * f.a1[0] - f.a2[1] * f.a1[1]) * h, f.a2[0] * f.a1[1],
                    f.a2[1] * f.a1[0]};
}

// Block su(2) generators on the graded window from the a^a_alpha bilinears.
template <class S = Q>
struct GradedSu2 {
  ShiftOperator<S> L3, Lp, Lm, L0;
};

template <class S = Q>
GradedSu2<S> graded_su2(const SpinParameter& lambda, const TruncationWindow& w) {
  auto h = nonfock_h4<S>(lambda, w.widened(1));
  S half = from_q<S>(qfrac(1, 2));
  auto n1 = h.a2(1) * h.a1(1), n2 = h.a2(2) * h.a1(2);
  return GradedSu2<S>{restrict_to(half * (n1 - n2), w), restrict_to(h.a2(1) * h.a1(2), w),
                      restrict_to(h.a2(2) * h.a1(1), w), restrict_to(half * (n1 + n2), w)};
}

// Diagonal of a block-diagonal operator as a set of exact values.
inline std::vector<Q> diagonal_spectrum(const SparseMatrix<Q>& M) {
  std::set<Q> vals;
  M.for_each([](std::size_t r, std::size_t c, const Q&) {
    if (r != c) throw std::logic_error("operator is not diagonal");
  });
  for (std::size_t i = 0; i < M.dim(); ++i) vals.insert(M.at(i, i));
  return {vals.begin(), vals.end()};
}

// L, N, Gamma vectors and Gamma_0 on a two-mode source.
struct Sp2RGenerators {
  std::array<SparseMatrix<GQ>, 3> L, N, G;
  SparseMatrix<GQ> L0, G0;

  SparseMatrix<GQ> casimir() const {
    return L[0] * L[0] + L[1] * L[1] + L[2] * L[2] - (N[0] * N[0] + N[1] * N[1] + N[2] * N[2]);
  }
  SparseMatrix<GQ> casimir_prime() const { return L[0] * N[0] + L[1] * N[1] + L[2] * N[2]; }
  SparseMatrix<GQ> gamma_square() const { return G[0] * G[0] + G[1] * G[1] + G[2] * G[2] - G0 * G0; }
};

using Mat2 = std::array<std::array<GQ, 2>, 2>;

inline std::array<Mat2, 3> pauli() {
  GQ o(Q(0)), l(Q(1)), i = GQ::i();
  return {Mat2{{{o, l}, {l, o}}}, Mat2{{{o, o - i}, {i, o}}}, Mat2{{{l, o}, {o, o - l}}}};
}

inline Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

inline Mat2 eps2() { return Mat2{{{GQ(Q(0)), GQ(Q(1))}, {GQ(Q(-1)), GQ(Q(0))}}}; }

// a^1 = lowering pair, a^2 = raising pair.
inline Sp2RGenerators sp2r_generators(const std::array<SparseMatrix<GQ>, 2>& a1,
                                      const std::array<SparseMatrix<GQ>, 2>& a2) {
  std::size_t n = a1[0].dim();
  auto form = [&](const std::array<SparseMatrix<GQ>, 2>& x, const std::array<SparseMatrix<GQ>, 2>& y,
                  const Mat2& K) {
    SparseMatrix<GQ> out(n);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        if (!is_zero(K[a][b])) out += x[a] * y[b] * K[a][b];
    return out;
  };
  Sp2RGenerators g;
  auto sig = pauli();
  GQ q4(qfrac(1, 4)), iq4 = GQ::i() * q4, half(qfrac(1, 2));
  for (int k = 0; k < 3; ++k) {
    auto lo = form(a1, a1, mat2_mul(eps2(), sig[k]));
    auto hi = form(a2, a2, mat2_mul(sig[k], eps2()));
    g.L[k] = form(a2, a1, sig[k]) * half;
    g.N[k] = (lo + hi) * iq4;
    g.G[k] = (lo - hi) * q4;
  }
  g.L0 = (a2[0] * a1[0] + a2[1] * a1[1]) * half;
  g.G0 = g.L0 + SparseMatrix<GQ>::identity(n) * half;
  return g;
}

template <class S>
SparseMatrix<GQ> to_gaussian(const SparseMatrix<S>& M) {
  SparseMatrix<GQ> out(M.dim());
  M.for_each([&](std::size_t r, std::size_t c, const S& v) { out.add(r, c, GQ(v)); });
  return out;
}

inline Sp2RGenerators sp2r_generators(const FockLadderSet<Q>& f) {
  if (f.a1.size() != 2) throw std::invalid_argument("sp(2,R) needs a two-mode source");
  return sp2r_generators({to_gaussian(f.a1[0]), to_gaussian(f.a1[1])},
                         {to_gaussian(f.a2[0]), to_gaussian(f.a2[1])});
}

inline Sp2RGenerators sp2r_generators(const NonFockH4<Q>& h) {
  return sp2r_generators({to_gaussian(h.a1(1).matrix()), to_gaussian(h.a1(2).matrix())},
                         {to_gaussian(h.a2(1).matrix()), to_gaussian(h.a2(2).matrix())});
}

// Group elements and Gauss factors.
struct SingularElement : std::domain_error {
  using std::domain_error::domain_error;
};
struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

using CMat2 = std::array<cplx, 4>;  // row-major

inline CMat2 cmul(const CMat2& a, const CMat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

inline double cdist(const CMat2& a, const CMat2& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

class GroupElement {
 public:
  GroupElement(cplx a, cplx b, cplx c, cplx d) : m_{a, b, c, d} {
    if (std::abs(a * d - b * c - 1.0) > 1e-12) throw std::invalid_argument("determinant differs from 1");
  }
  explicit GroupElement(const CMat2& m) : GroupElement(m[0], m[1], m[2], m[3]) {}
  cplx alpha() const { return m_[0]; }
  cplx beta() const { return m_[1]; }
  cplx gamma() const { return m_[2]; }
  cplx delta() const { return m_[3]; }
  bool regular() const { return m_[3] != cplx(0.0); }
  const CMat2& matrix() const { return m_; }
  GroupElement operator*(const GroupElement& o) const { return GroupElement(cmul(m_, o.m_)); }

 private:
  CMat2 m_;
};

struct GaussFactors {
  CMat2 nplus, h, nminus;
  CMat2 product() const { return cmul(cmul(nplus, h), nminus); }
};

inline GaussFactors gauss_factorize(const GroupElement& v) {
  if (!v.regular()) throw SingularElement("element with delta = 0 has no Gauss decomposition");
  cplx d = v.delta();
  return GaussFactors{{1.0, v.beta() / d, 0.0, 1.0}, {1.0 / d, 0.0, 0.0, d}, {1.0, 0.0, v.gamma() / d, 1.0}};
}

using Series = std::vector<cplx>;  // coefficients of zeta^k

inline Series exp_series(cplx slope, int mMax) {
  Series s(mMax + 1);
  cplx t(1.0);
  for (int k = 0; k <= mMax; ++k) {
    s[k] = t;
    t *= slope / double(k + 1);
  }
  return s;
}

inline Series series_mul(const Series& a, const Series& b) {
  Series r(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size() && j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline double series_distance(const Series& a, const Series& b, int upto) {
  double d = 0.0;
  for (int k = 0; k <= upto; ++k) d = std::max(d, std::abs(a.at(k) - b.at(k)));
  return d;
}

// Principal branch of d^(2 lambda).
inline cplx spin_power(cplx d, double lambda) { return std::exp(2.0 * lambda * std::log(d)); }

// Upper-triangular element [[1/d, b], [0, d]]: f -> d^(2 lambda) e^((b/d) zeta) f(zeta / d^2).
inline Series borel_plus_action(double lambda, const GroupElement& b, const Series& f) {
  if (std::abs(b.gamma()) > 1e-14) throw std::invalid_argument("element is not upper triangular");
  cplx d = b.delta();
  Series g(f.size());
  cplx s(1.0);
  for (std::size_t k = 0; k < f.size(); ++k) {
    g[k] = f[k] * s;
    s /= d * d;
  }
  Series out = series_mul(exp_series(b.beta() / d, static_cast<int>(f.size()) - 1), g);
  cplx pre = spin_power(d, lambda);
  for (auto& c : out) c *= pre;
  return out;
}

// exp(t M) v by Taylor summation; exact termination for nilpotent M.
template <class T>
std::vector<T> exp_apply(const SparseMatrix<T>& M, T t, std::vector<T> v) {
  std::vector<T> sum = v;
  double scale = 0.0;
  for (const auto& x : v) scale = std::max(scale, std::abs(x));
  for (int k = 1; k <= static_cast<int>(M.dim()) + 200; ++k) {
    v = M.apply(v);
    double tn = 0.0;
    for (auto& x : v) {
      x *= t / T(double(k));
      tn = std::max(tn, std::abs(x));
    }
    for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
    if (tn == 0.0 || tn < 1e-14 * std::max(scale, 1e-300)) return sum;
  }
  throw std::runtime_error("matrix exponential did not converge");
}

// L_- = -zeta d^2 + 2 lambda d on zeta^0..zeta^mMax, float.
inline SparseMatrix<cplx> lowering_block(double lambda, int mMax) {
  SparseMatrix<cplx> M(mMax + 1);
  for (int k = 1; k <= mMax; ++k) M.add(k - 1, k, cplx(k * (2.0 * lambda - k + 1.0)));
  return M;
}

inline SparseMatrix<cplx> raising_block(int mMax) {
  SparseMatrix<cplx> M(mMax + 1);
  for (int k = 0; k < mMax; ++k) M.add(k + 1, k, cplx(1.0));
  return M;
}

inline Series exp_lowering_monomial(double lambda, double tau, int n, int mMax) {
  Series v(mMax + 1, 0.0);
  v.at(n) = 1.0;
  return exp_apply(lowering_block(lambda, mMax), cplx(tau), v);
}

// Coefficients of n! (-scale tau)^n L_n^(-2 lambda - 1)(zeta / tau).
inline std::vector<double> laguerre_closed_form(int n, double tau, double lambda, double scale = 1.0) {
  auto c = laguerre_coefficients(n, -2.0 * lambda - 1.0);
  double pre = std::tgamma(n + 1.0) * std::pow(-scale * tau, n);
  std::vector<double> out(n + 1);
  for (int k = 0; k <= n; ++k) out[k] = pre * c[k] / std::pow(tau, k);
  return out;
}

// e^(tau zeta) carried to prefactor * e^(slope zeta).
struct ExpDatum {
  cplx prefactor;
  cplx slope;
};

inline ExpDatum chain_action(double lambda, const GroupElement& v, cplx tau) {
  cplx den = v.gamma() * tau + v.delta();
  double scale = std::abs(v.gamma() * tau) + std::abs(v.delta());
  if (std::abs(den) <= 1e-12 * std::max(scale, 1.0))
    throw PoleError("gamma*tau + delta vanishes: pole of the chain action");
  return {spin_power(den, lambda), (v.alpha() * tau + v.beta()) / den};
}

// exp(s L_-) e^(tau zeta) = (1 + s tau)^(2 lambda) e^(zeta tau / (1 + s tau)).
inline ExpDatum lower_unipotent_law(double lambda, cplx s, cplx tau) {
  cplx den = 1.0 + s * tau;
  if (std::abs(den) < 1e-12) throw PoleError("1 + s*tau vanishes");
  return {spin_power(den, lambda), tau / den};
}

// Same action assembled factor by factor on truncated series.
inline Series chain_action_factorwise(double lambda, const GroupElement& v, cplx tau, int mMax) {
  auto f = gauss_factorize(v);
  Series s = exp_series(tau, mMax);
  s = exp_apply(lowering_block(lambda, mMax), f.nminus[2], s);
  GroupElement h(f.h[0], 0.0, 0.0, f.h[3]);
  s = borel_plus_action(lambda, h, s);
  GroupElement np(1.0, f.nplus[1], 0.0, 1.0);
  return borel_plus_action(lambda, np, s);
}

inline Series datum_series(const ExpDatum& e, int mMax) {
  Series s = exp_series(e.slope, mMax);
  for (auto& c : s) c *= e.prefactor;
  return s;
}

// 0F1(-2 lambda; -tau zeta) truncated.
inline Series coherent_state(double lambda, double tau, int mMax) {
  Series c(mMax + 1);
  cplx t(1.0);
  for (int k = 0; k <= mMax; ++k) {
    c[k] = t;
    t *= -tau / ((-2.0 * lambda + k) * (k + 1.0));
  }
  return c;
}

}  // namespace heisenrep
