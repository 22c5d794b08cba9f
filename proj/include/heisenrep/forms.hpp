#pragma once

#include "symmetry.hpp"

namespace heisenrep {

template <class S>
struct FormValue {
  S value{};
  double error = 0.0;
};

// Polynomial in several variables: exponent vector -> coefficient.
template <class S>
using Poly = std::map<std::vector<int>, S>;

// (z^m, z^n) = m! delta_mn per mode.
template <class S>
FormValue<S> gauss_monomial_form(const Poly<S>& f, const Poly<S>& g) {
  S sum = from_q<S>(Q(0));
  for (const auto& [e, c] : f) {
    auto it = g.find(e);
    if (it == g.end()) continue;
    Q w(1);
    for (int k : e)
      for (int j = 2; j <= k; ++j) w *= j;
    sum += scalar_traits<S>::conj(c) * it->second * from_q<S>(w);
  }
  return {sum, 0.0};
}

struct DivergentMoment : std::domain_error {
  using std::domain_error::domain_error;
};

// 4 * integral of r^(2m - 2L) K_(2L+1)(2r), L = lambda + p/2; equals m! Gamma(m - 2 lambda - p).
inline double radial_moment_raw(double lambda, int m, int p, const QuadratureSpec& spec) {
  double L = lambda + 0.5 * p;
  double a = 2.0 * m - 2.0 * L, nu = 2.0 * L + 1.0;
  if (m - 2.0 * lambda - p <= 0.0)
    throw DivergentMoment("radial moment diverges at (p=" + std::to_string(p) + ", m=" + std::to_string(m) + ")");
  double lead = a - std::fabs(nu);
  double q = std::max(1.0, 2.0 / (lead + 1.0));
  auto f = [&](double r) { return 4.0 * std::pow(r, a) * bessel_k(nu, 2.0 * r); };
  auto g = [&](double t) {
    if (t >= 1.0) return f(t);
    if (t <= 0.0) return 0.0;
    return q * std::pow(t, q - 1.0) * f(std::pow(t, q));
  };
  return composite_gauss(g, spec);
}

inline FormValue<double> radial_moment(double lambda, int m, int p, const QuadratureSpec& spec = {}) {
  double v = radial_moment_raw(lambda, m, p, spec);
  double w = radial_moment_raw(lambda, m, p, spec.refined());
  return {w, std::fabs(w - v)};
}

inline double radial_moment_closed(double lambda, int m, int p) {
  double x = m - 2.0 * lambda - p;
  if (x <= 0.0) throw DivergentMoment("closed form needs m - 2 lambda - p > 0");
  return std::exp(std::lgamma(m + 1.0) + std::lgamma(x)) * (std::tgamma(x) < 0 ? -1.0 : 1.0);
}

// Block form: <f, g> = integral conj(f) * g(-zeta) d mu over one block; f, g are zeta-coefficient lists.
class SemispinorForm {
 public:
  SemispinorForm(double lambda, int p, QuadratureSpec spec = {}) : lambda_(lambda), p_(p), spec_(spec) {}

  const FormValue<double>& moment(int m) const {
    auto it = cache_.find(m);
    if (it == cache_.end()) it = cache_.emplace(m, radial_moment(lambda_, m, p_, spec_)).first;
    return it->second;
  }

  FormValue<cplx> operator()(const Series& f, const Series& g) const {
    FormValue<cplx> out{cplx(0.0), 0.0};
    std::size_t n = std::min(f.size(), g.size());
    for (std::size_t m = 0; m < n; ++m) {
      cplx w = std::conj(f[m]) * g[m];
      if (w == cplx(0.0)) continue;
      const auto& M = moment(static_cast<int>(m));
      double sign = (m % 2) ? -1.0 : 1.0;
      out.value += w * sign * M.value;
      out.error += std::abs(w) * M.error;
    }
    return out;
  }

  Series cartan_weyl_vector(int m, int size) const {
    Series v(size, 0.0);
    v.at(m) = cartan_weyl_factor(m, p_, lambda_);
    return v;
  }

  double lambda() const { return lambda_; }
  int block() const { return p_; }

 private:
  double lambda_;
  int p_;
  QuadratureSpec spec_;
  mutable std::map<int, FormValue<double>> cache_;
};

// Sum of block forms over a graded window; vectors keyed by GradedIndex.
inline FormValue<cplx> graded_form(double lambda, const GradedVector& f, const GradedVector& g,
                                   const QuadratureSpec& spec = {}) {
  std::map<int, SemispinorForm> forms;
  FormValue<cplx> out{cplx(0.0), 0.0};
  for (const auto& [idx, c] : f) {
    auto it = g.find(idx);
    if (it == g.end()) continue;
    auto fit = forms.try_emplace(idx.p, lambda, idx.p, spec).first;
    const auto& M = fit->second.moment(idx.m);
    double sign = (idx.m % 2) ? -1.0 : 1.0;
    cplx w = std::conj(c) * it->second;
    out.value += w * sign * M.value;
    out.error += std::abs(w) * M.error;
  }
  return out;
}

// Gram matrix of Cartan-Weyl vectors f_0..f_mMax.
inline std::vector<std::vector<FormValue<cplx>>> cartan_weyl_gram(const SemispinorForm& form, int mMax) {
  std::vector<std::vector<FormValue<cplx>>> G(mMax + 1, std::vector<FormValue<cplx>>(mMax + 1));
  for (int a = 0; a <= mMax; ++a)
    for (int b = 0; b <= mMax; ++b)
      G[a][b] = form(form.cartan_weyl_vector(a, mMax + 1), form.cartan_weyl_vector(b, mMax + 1));
  return G;
}

inline Series apply_series(const SparseMatrix<cplx>& M, const Series& v) { return M.apply(v); }

// max |<f, L g> - <L' f, g>| over Cartan-Weyl pairs, with (L, L') in {(L3, L3), (L+, L-), (L-, L+)}.
inline double su2_invariance_residual(const SemispinorForm& form, int mCheck) {
  int size = mCheck + 3;
  double lam = form.lambda();
  double Lam = lam + 0.5 * form.block();
  SparseMatrix<cplx> L3(size), Lp = raising_block(size - 1), Lm = lowering_block(Lam, size - 1);
  for (int k = 0; k < size; ++k) L3.add(k, k, cplx(k - Lam));
  std::array<std::pair<const SparseMatrix<cplx>*, const SparseMatrix<cplx>*>, 3> pairs{
      {{&L3, &L3}, {&Lp, &Lm}, {&Lm, &Lp}}};
  double worst = 0.0;
  for (int a = 0; a <= mCheck; ++a)
    for (int b = 0; b <= mCheck; ++b) {
      auto fa = form.cartan_weyl_vector(a, size), fb = form.cartan_weyl_vector(b, size);
      for (const auto& [L, Ld] : pairs) {
        auto lhs = form(fa, L->apply(fb)).value;
        auto rhs = form(Ld->apply(fa), fb).value;
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  return worst;
}

// Pairing of distributions sum d_A d^A delta against polynomials sum g_B x^B on a MonomialSpace.
// Variables come in conjugate pairs; conj_of[i] is the partner index of variable i.
class DualPairing {
 public:
  DualPairing(MonomialSpace space, std::vector<int> conjOf) : space_(std::move(space)), conj_(std::move(conjOf)) {}

  const MonomialSpace& space() const { return space_; }

  // x_i acting on distributions.
  SparseMatrix<GQ> dual_multiply(int i) const { return space_.differentiate<GQ>(i) * GQ(Q(-1)); }
  // d/dx_i acting on distributions.
  SparseMatrix<GQ> dual_differentiate(int i) const { return space_.multiply<GQ>(i); }

  // Index of the monomial obtained by swapping partner variables.
  std::optional<std::size_t> partner(std::size_t A) const {
    auto a = space_.exponents(A);
    std::vector<int> sw(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) sw[conj_[k]] = a[k];
    return space_.index(sw);
  }

  // <d^A delta, x^B>; nonzero only for B the partner of A.
  GQ entry(std::size_t A, std::size_t B) const {
    auto pa = partner(A);
    if (!pa || *pa != B) return GQ(Q(0));
    Q w(1);
    int tot = 0;
    for (int k : space_.exponents(A)) {
      tot += k;
      for (int j = 2; j <= k; ++j) w *= j;
    }
    return GQ(tot % 2 ? -w : w);
  }

  // max |<T' u, v> - sign <u, T v>| over basis pairs accepted by keep.
  double contract_residual(const SparseMatrix<GQ>& Tdual, const SparseMatrix<GQ>& T, int sign,
                           const std::function<bool(std::size_t)>& keep) const {
    std::size_t n = space_.dim();
    std::vector<std::optional<std::size_t>> inv(n);
    for (std::size_t A = 0; A < n; ++A)
      if (auto B = partner(A)) inv[*B] = A;
    double worst = 0.0;
    for (std::size_t A = 0; A < n; ++A) {
      if (!keep(A)) continue;
      auto pa = partner(A);
      for (std::size_t B = 0; B < n; ++B) {
        if (!keep(B)) continue;
        GQ left(Q(0)), right(Q(0));
        if (inv[B]) left = Tdual.at(*inv[B], A).conj() * entry(*inv[B], B);
        if (pa) right = entry(A, *pa) * T.at(*pa, B) * GQ(Q(sign));
        worst = std::max(worst, magnitude(left - right));
      }
    }
    return worst;
  }

 private:
  MonomialSpace space_;
  std::vector<int> conj_;
};

}  // namespace heisenrep
