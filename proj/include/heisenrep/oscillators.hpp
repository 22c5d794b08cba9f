#pragma once

#include "core.hpp"

#include <array>
#include <optional>
#include <set>

namespace heisenrep {

// Polynomials in several variables, exponent of variable k capped at caps[k].
class MonomialSpace {
 public:
  explicit MonomialSpace(std::vector<int> caps) : caps_(std::move(caps)) {
    dim_ = 1;
    for (int c : caps_) {
      if (c < 0) throw std::invalid_argument("negative degree cap");
      dim_ *= static_cast<std::size_t>(c + 1);
    }
  }

  std::size_t dim() const { return dim_; }
  int vars() const { return static_cast<int>(caps_.size()); }
  const std::vector<int>& caps() const { return caps_; }

  std::vector<int> exponents(std::size_t i) const {
    std::vector<int> e(caps_.size());
    for (int k = vars() - 1; k >= 0; --k) {
      e[k] = static_cast<int>(i % (caps_[k] + 1));
      i /= (caps_[k] + 1);
    }
    return e;
  }

  std::optional<std::size_t> index(const std::vector<int>& e) const {
    std::size_t i = 0;
    for (int k = 0; k < vars(); ++k) {
      if (e[k] < 0 || e[k] > caps_[k]) return std::nullopt;
      i = i * (caps_[k] + 1) + e[k];
    }
    return i;
  }

  template <class S>
  SparseMatrix<S> multiply(int var) const {
    SparseMatrix<S> M(dim_);
    for (std::size_t c = 0; c < dim_; ++c) {
      auto e = exponents(c);
      ++e[var];
      if (auto r = index(e)) M.add(*r, c, from_q<S>(Q(1)));
    }
    return M;
  }

  template <class S>
  SparseMatrix<S> differentiate(int var) const {
    SparseMatrix<S> M(dim_);
    for (std::size_t c = 0; c < dim_; ++c) {
      auto e = exponents(c);
      if (e[var] == 0) continue;
      int k = e[var]--;
      M.add(*index(e), c, from_q<S>(Q(k)));
    }
    return M;
  }

  template <class S>
  SparseMatrix<S> identity() const { return SparseMatrix<S>::identity(dim_); }

  // Every exponent at most cap - margin.
  std::function<bool(std::size_t)> interior(int margin) const {
    for (int c : caps_)
      if (c - margin < 0) throw EmptyInterior("monomial interior is empty");
    return [this, margin](std::size_t i) {
      auto e = exponents(i);
      for (int k = 0; k < vars(); ++k)
        if (e[k] > caps_[k] - margin) return false;
      return true;
    };
  }

 private:
  std::vector<int> caps_;
  std::size_t dim_ = 1;
};

template <class S>
struct FockLadderSet {
  MonomialSpace space;
  std::vector<SparseMatrix<S>> a1;  // d/dz_k
  std::vector<SparseMatrix<S>> a2;  // z_k
};

template <class S = Q>
FockLadderSet<S> fock_ladders(int nModes, int mMax) {
  if (nModes < 1 || nModes > 2) throw std::invalid_argument("fock_ladders supports one or two modes");
  if (mMax < 2) throw std::invalid_argument("mMax must be at least 2");
  FockLadderSet<S> out{MonomialSpace(std::vector<int>(nModes, mMax)), {}, {}};
  for (int k = 0; k < nModes; ++k) {
    out.a1.push_back(out.space.template differentiate<S>(k));
    out.a2.push_back(out.space.template multiply<S>(k));
  }
  return out;
}

// Matrix in the basis z^e / sqrt(e!).
inline SparseMatrix<double> fock_cartan_weyl(const SparseMatrix<Q>& op, const MonomialSpace& space) {
  auto norm = [&](std::size_t i) {
    double lf = 0.0;
    for (int e : space.exponents(i)) lf += std::lgamma(e + 1.0);
    return std::exp(-0.5 * lf);
  };
  SparseMatrix<double> out(op.dim());
  op.for_each([&](std::size_t r, std::size_t c, const Q& v) { out.add(r, c, to_double(v) * norm(c) / norm(r)); });
  return out;
}

template <class S>
std::vector<S> fock_number_spectrum(const FockLadderSet<S>& f, int mode) {
  auto N = f.a2.at(mode) * f.a1.at(mode);
  std::set<Q> vals;
  for (std::size_t i = 0; i < N.dim(); ++i) vals.insert(Q(f.space.exponents(i)[mode]));
  std::vector<S> out;
  for (std::size_t i = 0; i < N.dim(); ++i)
    if (!(N.at(i, i) == from_q<S>(Q(f.space.exponents(i)[mode]))))
      throw std::logic_error("Fock number operator is not diagonal in the monomial basis");
  for (const auto& v : vals) out.push_back(from_q<S>(v));
  return out;
}

// Laurent monomials z^k, k in [kMin, kMax].
class LaurentSpace {
 public:
  LaurentSpace(int kMin, int kMax) : kMin_(kMin), kMax_(kMax) {
    if (kMin > kMax) throw std::invalid_argument("empty Laurent range");
  }
  std::size_t dim() const { return static_cast<std::size_t>(kMax_ - kMin_ + 1); }
  int degree(std::size_t i) const { return kMin_ + static_cast<int>(i); }
  bool has(int k) const { return k >= kMin_ && k <= kMax_; }
  std::size_t index(int k) const { return static_cast<std::size_t>(k - kMin_); }
  int kMin() const { return kMin_; }
  int kMax() const { return kMax_; }

  SparseMatrix<Q> power(int j) const {
    SparseMatrix<Q> M(dim());
    for (int k = kMin_; k <= kMax_; ++k)
      if (has(k + j)) M.add(index(k + j), index(k), Q(1));
    return M;
  }
  SparseMatrix<Q> derivative() const {
    SparseMatrix<Q> M(dim());
    for (int k = kMin_; k <= kMax_; ++k)
      if (k != 0 && has(k - 1)) M.add(index(k - 1), index(k), Q(k));
    return M;
  }
  std::function<bool(std::size_t)> interior(int margin) const {
    return [this, margin](std::size_t i) {
      int k = degree(i);
      return k >= kMin_ + margin && k <= kMax_ - margin;
    };
  }

 private:
  int kMin_, kMax_;
};

// Spin-raising family b_alpha^(p) = 1/2 (z, -d/dz + 2p/z) on Laurent polynomials in z.
struct BFamily {
  LaurentSpace space;
  int pMin, pMax, mMax;

  SparseMatrix<Q> b(int p, int alpha) const {
    if (alpha == 1) return space.power(1) * qfrac(1, 2);
    return (space.power(-1) * Q(2 * p) - space.derivative()) * qfrac(1, 2);
  }
  // a^1 = d/dz, a^2 = z.
  SparseMatrix<Q> a(int alpha) const { return alpha == 1 ? space.derivative() : space.power(1); }

  // b^(p)_alpha applied to z^(2m); odd input is rejected.
  std::map<int, Q> apply(int p, int alpha, int degree) const {
    if (degree % 2 != 0) throw std::invalid_argument("b family acts on the even chain only");
    std::map<int, Q> out;
    if (alpha == 1) {
      out[degree + 1] = qfrac(1, 2);
    } else {
      Q c = Q(2 * p - degree) / 2;
      if (c != 0) out[degree - 1] = c;
    }
    return out;
  }
};

inline BFamily nonfock_b_family(const SpinParameter& lambda, const TruncationWindow& w) {
  (void)lambda;
  int pa = std::max(std::abs(w.pMin), std::abs(w.pMax)) + 1;
  return BFamily{LaurentSpace(-2 * pa - 4, 2 * w.mMax + 2 * pa + 4), w.pMin, w.pMax, w.mMax};
}

inline int epsilon(int a, int b) { return a == b ? 0 : (a == 1 ? 1 : -1); }

// b^(p+1)_a b^(p)_a' - b^(p+1)_a' b^(p)_a.
inline SparseMatrix<Q> b_family_bracket(const BFamily& f, int p, int a, int ap) {
  return f.b(p + 1, a) * f.b(p, ap) - f.b(p + 1, ap) * f.b(p, a);
}

// z^(2p) a^beta z^(-2p) eps_{alpha beta}, summed over beta.
inline SparseMatrix<Q> b_conjugation_image(const BFamily& f, int p, int alpha) {
  SparseMatrix<Q> out(f.space.dim());
  for (int beta = 1; beta <= 2; ++beta) {
    int e = epsilon(alpha, beta);
    if (e == 0) continue;
    out += f.space.power(2 * p) * f.a(beta) * f.space.power(-2 * p) * Q(e);
  }
  return out;
}

// Even degrees 2m with 0 <= m <= mMax - 1.
inline std::function<bool(std::size_t)> even_chain_mask(const BFamily& f) {
  return [&f](std::size_t i) {
    int k = f.space.degree(i);
    return k % 2 == 0 && k >= 0 && k <= 2 * f.mMax - 2;
  };
}

template <class S>
struct DecycledPair {
  TruncationWindow window;
  Q lambda;
  std::array<ShiftOperator<S>, 2> phi;     // d/dzeta, 1; block p -> p - 1
  std::array<ShiftOperator<S>, 2> phibar;  // zeta, -zeta d/dzeta + 2 lambda + p + 1; p -> p + 1
};

template <class S = Q>
DecycledPair<S> phi_phibar(const SpinParameter& lambda, const TruncationWindow& w) {
  ShiftOperator<S> phi1(w, -1), phi2(w, -1), bar1(w, 1), bar2(w, 1);
  const Q& lam = lambda.exact();
  for (const auto& g : enumerate_basis(w)) {
    if (g.m > 0) phi1.add({g.p - 1, g.m - 1}, g, from_q<S>(Q(g.m)));
    phi2.add({g.p - 1, g.m}, g, from_q<S>(Q(1)));
    bar1.add({g.p + 1, g.m + 1}, g, from_q<S>(Q(1)));
    bar2.add({g.p + 1, g.m}, g, from_q<S>(2 * lam + g.p + 1 - g.m));
  }
  return DecycledPair<S>{w, lam, {phi1, phi2}, {bar1, bar2}};
}

struct NamedResidual {
  std::string name;
  double residual;
};

template <class S>
std::vector<NamedResidual> decycled_relations(const DecycledPair<S>& d, Margin mg = {}) {
  std::vector<NamedResidual> out;
  const auto& w = d.window;
  ShiftOperator<S> zero2(w, -2), zeroP2(w, 2), zero0(w, 0);
  auto I = block_identity<S>(w);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      std::string ab = std::to_string(a + 1) + std::to_string(b + 1);
      out.push_back({"[phi" + ab + "]", interior_residual(commutator(d.phi[a], d.phi[b]), zero2, mg)});
      out.push_back({"[phibar" + ab + "]", interior_residual(commutator(d.phibar[a], d.phibar[b]), zeroP2, mg)});
      auto target = a == b ? I : zero0;
      out.push_back({"[phi,phibar]" + ab, interior_residual(commutator(d.phi[a], d.phibar[b]), target, mg)});
    }
  return out;
}

template <class S>
struct NonFockH4 {
  DecycledPair<S> pair;
  const ShiftOperator<S>& a1(int alpha) const { return pair.phi.at(alpha - 1); }
  const ShiftOperator<S>& a2(int alpha) const { return pair.phibar.at(alpha - 1); }
  Q weight(const GradedIndex& g) const { return 2 * pair.lambda + g.p - g.m; }
};

template <class S = Q>
NonFockH4<S> nonfock_h4(const SpinParameter& lambda, const TruncationWindow& w) {
  return NonFockH4<S>{phi_phibar<S>(lambda, w)};
}

// [a^a_alpha, a^a'_alpha'] = delta_{alpha alpha'} eps^{a a'}.
template <class S>
std::vector<NamedResidual> heisenberg_relations(const NonFockH4<S>& h, Margin mg = {}) {
  std::vector<NamedResidual> out;
  const auto& w = h.pair.window;
  auto op = [&](int a, int al) -> const ShiftOperator<S>& { return a == 1 ? h.a1(al) : h.a2(al); };
  for (int a = 1; a <= 2; ++a)
    for (int ap = 1; ap <= 2; ++ap)
      for (int al = 1; al <= 2; ++al)
        for (int alp = 1; alp <= 2; ++alp) {
          auto C = commutator(op(a, al), op(ap, alp));
          ShiftOperator<S> target(w, C.shift());
          if (al == alp && a != ap) target = from_q<S>(Q(epsilon(a, ap))) * block_identity<S>(w);
          std::string name = "[a" + std::to_string(a) + "_" + std::to_string(al) + ",a" +
                             std::to_string(ap) + "_" + std::to_string(alp) + "]";
          out.push_back({name, interior_residual(C, target, mg)});
        }
  return out;
}

// Eigenvalues of a^2_mode a^1_mode on the window (exact).
template <class S>
std::vector<Q> number_spectrum(const SpinParameter& lambda, const TruncationWindow& w, int mode) {
  auto wide = nonfock_h4<Q>(lambda, w.widened(1));
  auto N = restrict_to(wide.a2(mode) * wide.a1(mode), w);
  std::set<Q> vals;
  N.matrix().for_each([&](std::size_t r, std::size_t c, const Q&) {
    if (r != c) throw std::logic_error("number operator is not diagonal");
  });
  for (std::size_t i = 0; i < w.dim(); ++i) vals.insert(N.matrix().at(i, i));
  return {vals.begin(), vals.end()};
}

// Matrix of a monomial-basis operator in the Cartan-Weyl basis f_m = n(m, p) zeta^m.
inline SparseMatrix<cplx> cartan_weyl_matrix(const ShiftOperator<Q>& op, double lambda) {
  const auto& w = op.window();
  std::vector<cplx> n(w.dim());
  for (std::size_t i = 0; i < w.dim(); ++i) {
    auto g = graded_index(w, i);
    n[i] = cartan_weyl_factor(g.m, g.p, lambda);
  }
  SparseMatrix<cplx> out(w.dim());
  op.matrix().for_each([&](std::size_t r, std::size_t c, const Q& v) { out.add(r, c, to_double(v) * n[c] / n[r]); });
  return out;
}

// Phase relating the stated Cartan-Weyl vectors to those carrying principal-root coefficients.
inline cplx weight_gauge(const GradedIndex& g) {
  cplx c = (g.m % 2) ? cplx(-1.0, 0.0) : cplx(1.0, 0.0);
  int k = ((g.p % 4) + 4) % 4;
  for (int j = 0; j < k; ++j) c *= cplx(0.0, 1.0);
  return c;
}

// Principal-root weight coefficients: a^1_1 -> sqrt m, a^2_1 -> sqrt(m+1), a^1_2 -> sqrt mu, a^2_2 -> sqrt(mu+1).
inline cplx weight_coefficient(int a, int alpha, const GradedIndex& src, double lambda) {
  double mu = 2.0 * lambda + src.p - src.m;
  if (alpha == 1) return std::sqrt(cplx(a == 1 ? src.m : src.m + 1.0, 0.0));
  return std::sqrt(cplx(a == 1 ? mu : mu + 1.0, 0.0));
}

inline GradedIndex weight_target(int a, int alpha, const GradedIndex& s) {
  if (alpha == 1) return a == 1 ? GradedIndex{s.p - 1, s.m - 1} : GradedIndex{s.p + 1, s.m + 1};
  return a == 1 ? GradedIndex{s.p - 1, s.m} : GradedIndex{s.p + 1, s.m};
}

// Max deviation of Cartan-Weyl entries from the weight coefficients, over transitions inside the window.
inline double weight_action_residual(const NonFockH4<Q>& h, int a, int alpha, double lambda) {
  const auto& op = a == 1 ? h.a1(alpha) : h.a2(alpha);
  auto M = cartan_weyl_matrix(op, lambda);
  const auto& w = op.window();
  double worst = 0.0;
  for (const auto& s : enumerate_basis(w)) {
    auto t = weight_target(a, alpha, s);
    if (!contains(w, t)) continue;
    cplx expected = weight_coefficient(a, alpha, s, lambda) * weight_gauge(t) / weight_gauge(s);
    cplx got = M.at(flat_index(w, t), flat_index(w, s));
    worst = std::max(worst, std::abs(got - expected));
  }
  return worst;
}

}  // namespace heisenrep
