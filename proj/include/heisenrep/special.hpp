#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace heisenrep {

// Generalized Laguerre L_n^{(a)}(x) by the three-term recurrence.
inline double laguerre_eval(int n, double a, double x) {
  if (n < 0) throw std::invalid_argument("negative Laguerre degree");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

// Generalized binomial C(n + a, n - i) as a finite product.
inline double laguerre_binomial(int n, double a, int i) {
  double top = n + a;
  double r = 1.0;
  for (int k = 0; k < n - i; ++k) r *= (top - k) / (k + 1.0);
  return r;
}

// Coefficients c_i with L_n^{(a)}(x) = sum_i c_i x^i.
inline std::vector<double> laguerre_coefficients(int n, double a) {
  std::vector<double> c(n + 1);
  double fact = 1.0;
  for (int i = 0; i <= n; ++i) {
    if (i > 0) fact *= i;
    c[i] = ((i % 2) ? -1.0 : 1.0) * laguerre_binomial(n, a, i) / fact;
  }
  return c;
}

inline double laguerre_series(int n, double a, double x) {
  auto c = laguerre_coefficients(n, a);
  double s = 0.0, xp = 1.0;
  for (double ci : c) {
    s += ci * xp;
    xp *= x;
  }
  return s;
}

// K_nu(x) from the integral of exp(-x cosh t) cosh(nu t) over [0, inf).
inline double bessel_k(double nu, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k needs x > 0");
  double anu = std::fabs(nu);
  double T = 1.0;
  while (x * (std::cosh(T) - 1.0) - anu * T < 40.0) T += 0.5;
  auto f = [&](double t) { return std::exp(-x * (std::cosh(t) - 1.0)) * std::cosh(anu * t); };
  double err = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, T, 15, 1e-13, &err);
  return v * std::exp(-x);
}

// Integral of x^(mu-1) K_nu(x) over (0, inf).
inline double bessel_k_moment_closed(double mu, double nu) {
  if (mu <= std::fabs(nu)) throw std::domain_error("moment diverges: mu <= |nu|");
  return std::pow(2.0, mu - 2.0) * std::tgamma((mu - nu) / 2.0) * std::tgamma((mu + nu) / 2.0);
}

struct QuadratureSpec {
  static constexpr int kOrder = 20;
  int gradedPanels = 12;   // geometric panels on [0, 1]
  int unitPanels = 1;      // panels per unit length on [1, cutoff]
  double cutoff = 40.0;
  double ratio = 0.25;

  int node_count() const {
    int uniform = static_cast<int>(std::ceil((cutoff - 1.0) * unitPanels));
    return kOrder * (gradedPanels + 1 + uniform);
  }

  void validate() const {
    if (cutoff < 12.0) throw std::invalid_argument("quadrature cutoff below 12");
    if (node_count() < 64) throw std::invalid_argument("fewer than 64 quadrature nodes");
  }

  QuadratureSpec refined() const {
    QuadratureSpec r = *this;
    r.unitPanels *= 2;
    r.gradedPanels += 6;
    return r;
  }
};

// Composite Gauss-Legendre on [0, cutoff], graded toward the origin.
template <class F>
double composite_gauss(F&& f, const QuadratureSpec& spec) {
  spec.validate();
  using GL = boost::math::quadrature::gauss<double, QuadratureSpec::kOrder>;
  std::vector<double> cuts{0.0};
  double h = std::pow(spec.ratio, spec.gradedPanels);
  for (int k = 0; k < spec.gradedPanels; ++k) {
    cuts.push_back(h);
    h /= spec.ratio;
  }
  cuts.push_back(1.0);
  int uniform = static_cast<int>(std::ceil((spec.cutoff - 1.0) * spec.unitPanels));
  double w = (spec.cutoff - 1.0) / uniform;
  for (int k = 1; k <= uniform; ++k) cuts.push_back(1.0 + k * w);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) sum += GL::integrate(f, cuts[k], cuts[k + 1]);
  return sum;
}

}  // namespace heisenrep
