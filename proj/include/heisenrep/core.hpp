#pragma once

#include "scalar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heisenrep {

struct WindowMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmptyInterior : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct GeneralPositionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ShiftViolation : std::logic_error {
  using std::logic_error::logic_error;
};

class SpinParameter {
 public:
  explicit SpinParameter(Q value, bool requireGeneral = true) : value_(std::move(value)) {
    Q twice = value_ * 2;
    halfInteger_ = denominator(twice) == 1;
    if (requireGeneral && halfInteger_)
      throw GeneralPositionError("spin " + value_.str() + " is a half-integer, not in general position");
  }

  const Q& exact() const { return value_; }
  double value() const { return to_double(value_); }
  bool general_position() const { return !halfInteger_; }

 private:
  Q value_;
  bool halfInteger_ = false;
};

struct TruncationWindow {
  int pMin = 0;
  int pMax = 0;
  int mMax = 2;

  TruncationWindow() = default;
  TruncationWindow(int lo, int hi, int m) : pMin(lo), pMax(hi), mMax(m) {
    if (lo > hi) throw std::invalid_argument("pMin > pMax");
    if (m < 2) throw std::invalid_argument("mMax must be at least 2");
  }

  int blocks() const { return pMax - pMin + 1; }
  std::size_t dim() const { return static_cast<std::size_t>(blocks()) * (mMax + 1); }
  TruncationWindow widened(int dp) const { return {pMin - dp, pMax + dp, mMax}; }

  friend bool operator==(const TruncationWindow& a, const TruncationWindow& b) {
    return a.pMin == b.pMin && a.pMax == b.pMax && a.mMax == b.mMax;
  }
  friend bool operator!=(const TruncationWindow& a, const TruncationWindow& b) { return !(a == b); }
};

struct GradedIndex {
  int p = 0;
  int m = 0;

  friend bool operator==(const GradedIndex& a, const GradedIndex& b) { return a.p == b.p && a.m == b.m; }
  friend bool operator<(const GradedIndex& a, const GradedIndex& b) {
    return a.p != b.p ? a.p < b.p : a.m < b.m;
  }
};

inline bool contains(const TruncationWindow& w, const GradedIndex& g) {
  return g.p >= w.pMin && g.p <= w.pMax && g.m >= 0 && g.m <= w.mMax;
}

inline std::size_t flat_index(const TruncationWindow& w, const GradedIndex& g) {
  return static_cast<std::size_t>(g.p - w.pMin) * (w.mMax + 1) + g.m;
}

inline GradedIndex graded_index(const TruncationWindow& w, std::size_t i) {
  int per = w.mMax + 1;
  return {w.pMin + static_cast<int>(i) / per, static_cast<int>(i) % per};
}

inline std::vector<GradedIndex> enumerate_basis(const TruncationWindow& w) {
  std::vector<GradedIndex> out;
  out.reserve(w.dim());
  for (int p = w.pMin; p <= w.pMax; ++p)
    for (int m = 0; m <= w.mMax; ++m) out.push_back({p, m});
  return out;
}

// Column-major sparse matrix; zero entries are never stored.
template <class S>
class SparseMatrix {
 public:
  using Column = std::map<std::size_t, S>;

  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t n) : cols_(n) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix I(n);
    for (std::size_t i = 0; i < n; ++i) I.add(i, i, from_q<S>(Q(1)));
    return I;
  }

  std::size_t dim() const { return cols_.size(); }

  void add(std::size_t r, std::size_t c, const S& v) {
    if (r >= dim() || c >= dim()) throw std::out_of_range("sparse entry outside matrix");
    if (is_zero(v)) return;
    auto& col = cols_[c];
    auto it = col.find(r);
    if (it == col.end()) {
      col.emplace(r, v);
      return;
    }
    it->second += v;
    if (is_zero(it->second)) col.erase(it);
  }

  S at(std::size_t r, std::size_t c) const {
    auto it = cols_.at(c).find(r);
    return it == cols_[c].end() ? from_q<S>(Q(0)) : it->second;
  }

  const Column& col(std::size_t c) const { return cols_.at(c); }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t c = 0; c < cols_.size(); ++c)
      for (const auto& [r, v] : cols_[c]) f(r, c, v);
  }

  SparseMatrix& operator+=(const SparseMatrix& o) {
    check(o);
    o.for_each([&](std::size_t r, std::size_t c, const S& v) { add(r, c, v); });
    return *this;
  }
  SparseMatrix& operator-=(const SparseMatrix& o) {
    check(o);
    o.for_each([&](std::size_t r, std::size_t c, const S& v) { add(r, c, -v); });
    return *this;
  }
  SparseMatrix& operator*=(const S& s) {
    if (is_zero(s)) {
      for (auto& c : cols_) c.clear();
      return *this;
    }
    for (auto& c : cols_)
      for (auto& kv : c) kv.second *= s;
    return *this;
  }

  friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) { return a += b; }
  friend SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b) { return a -= b; }
  friend SparseMatrix operator*(SparseMatrix a, const S& s) { return a *= s; }
  friend SparseMatrix operator*(const S& s, SparseMatrix a) { return a *= s; }
  friend SparseMatrix operator-(SparseMatrix a) { return a *= from_q<S>(Q(-1)); }

  friend SparseMatrix operator*(const SparseMatrix& A, const SparseMatrix& B) {
    A.check(B);
    SparseMatrix C(A.dim());
    for (std::size_t j = 0; j < B.dim(); ++j)
      for (const auto& [k, b] : B.cols_[j])
        for (const auto& [i, a] : A.cols_[k]) C.add(i, j, a * b);
    return C;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.dim() == b.dim() && (a - b).nnz() == 0;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    std::vector<S> out(dim(), from_q<S>(Q(0)));
    for (std::size_t c = 0; c < dim(); ++c) {
      if (is_zero(v.at(c))) continue;
      for (const auto& [r, a] : cols_[c]) out[r] += a * v[c];
    }
    return out;
  }

 private:
  void check(const SparseMatrix& o) const {
    if (o.dim() != dim()) throw WindowMismatch("sparse matrices of different dimension");
  }

  std::vector<Column> cols_;
};

template <class S>
SparseMatrix<S> commutator(const SparseMatrix<S>& A, const SparseMatrix<S>& B) {
  return A * B - B * A;
}

template <class S>
SparseMatrix<S> anticommutator(const SparseMatrix<S>& A, const SparseMatrix<S>& B) {
  return A * B + B * A;
}

// Largest |A - B| entry with row and column both accepted by `keep`.
template <class S>
double masked_residual(const SparseMatrix<S>& A, const SparseMatrix<S>& B,
                       const std::function<bool(std::size_t)>& keep) {
  double worst = 0.0;
  (A - B).for_each([&](std::size_t r, std::size_t c, const S& v) {
    if (keep(r) && keep(c)) worst = std::max(worst, magnitude(v));
  });
  return worst;
}

template <class S>
SparseMatrix<S> scalar_matrix(std::size_t n, const S& s) {
  return SparseMatrix<S>::identity(n) * s;
}

// Entries mapping block p to block p + shift only.
template <class S>
class ShiftOperator {
 public:
  ShiftOperator(TruncationWindow w, int shift) : window_(w), shift_(shift), mat_(w.dim()) {}
  ShiftOperator(TruncationWindow w, int shift, SparseMatrix<S> m)
      : window_(w), shift_(shift), mat_(std::move(m)) {
    verify();
  }

  const TruncationWindow& window() const { return window_; }
  int shift() const { return shift_; }
  const SparseMatrix<S>& matrix() const { return mat_; }

  // Entries leaving the window are truncated.
  void add(const GradedIndex& row, const GradedIndex& col, const S& v) {
    if (row.p != col.p + shift_)
      throw ShiftViolation("entry breaks declared shift degree " + std::to_string(shift_));
    if (!contains(window_, row) || !contains(window_, col)) return;
    mat_.add(flat_index(window_, row), flat_index(window_, col), v);
  }

  S at(const GradedIndex& row, const GradedIndex& col) const {
    return mat_.at(flat_index(window_, row), flat_index(window_, col));
  }

  void verify() const {
    mat_.for_each([&](std::size_t r, std::size_t c, const S&) {
      if (graded_index(window_, r).p != graded_index(window_, c).p + shift_)
        throw ShiftViolation("entry breaks declared shift degree " + std::to_string(shift_));
    });
  }

  friend ShiftOperator operator*(const ShiftOperator& A, const ShiftOperator& B) {
    same_window(A, B);
    return ShiftOperator(A.window_, A.shift_ + B.shift_, A.mat_ * B.mat_);
  }
  friend ShiftOperator operator+(const ShiftOperator& A, const ShiftOperator& B) {
    same_shift(A, B);
    return ShiftOperator(A.window_, A.shift_, A.mat_ + B.mat_);
  }
  friend ShiftOperator operator-(const ShiftOperator& A, const ShiftOperator& B) {
    same_shift(A, B);
    return ShiftOperator(A.window_, A.shift_, A.mat_ - B.mat_);
  }
  friend ShiftOperator operator*(const S& s, const ShiftOperator& A) {
    return ShiftOperator(A.window_, A.shift_, A.mat_ * s);
  }

 private:
  static void same_window(const ShiftOperator& A, const ShiftOperator& B) {
    if (A.window_ != B.window_) throw WindowMismatch("operators live on different windows");
  }
  static void same_shift(const ShiftOperator& A, const ShiftOperator& B) {
    same_window(A, B);
    if (A.shift_ != B.shift_) throw ShiftViolation("sum of operators with different shift degree");
  }

  TruncationWindow window_;
  int shift_;
  SparseMatrix<S> mat_;
};

template <class S>
ShiftOperator<S> commutator(const ShiftOperator<S>& A, const ShiftOperator<S>& B) {
  return A * B - B * A;
}

template <class S>
ShiftOperator<S> block_identity(const TruncationWindow& w) {
  return ShiftOperator<S>(w, 0, SparseMatrix<S>::identity(w.dim()));
}

// Interior: p in [pMin+dp, pMax-dp], m <= mMax-dm.
struct Margin {
  int dp = 1;
  int dm = 2;
};

inline std::function<bool(std::size_t)> interior_mask(const TruncationWindow& w, Margin mg = {}) {
  if (w.pMin + mg.dp > w.pMax - mg.dp || w.mMax - mg.dm < 0)
    throw EmptyInterior("interior sub-window is empty");
  return [w, mg](std::size_t i) {
    GradedIndex g = graded_index(w, i);
    return g.p >= w.pMin + mg.dp && g.p <= w.pMax - mg.dp && g.m <= w.mMax - mg.dm;
  };
}

template <class S>
double interior_residual(const ShiftOperator<S>& A, const ShiftOperator<S>& target, Margin mg = {}) {
  if (A.window() != target.window()) throw WindowMismatch("operators live on different windows");
  return masked_residual(A.matrix(), target.matrix(), interior_mask(A.window(), mg));
}

template <class S>
double interior_residual(const SparseMatrix<S>& A, const SparseMatrix<S>& target,
                         const TruncationWindow& w, Margin mg = {}) {
  return masked_residual(A, target, interior_mask(w, mg));
}

// Copy of `op` (built on a larger window) restricted to `inner`.
template <class S>
ShiftOperator<S> restrict_to(const ShiftOperator<S>& op, const TruncationWindow& inner) {
  const auto& outer = op.window();
  ShiftOperator<S> out(inner, op.shift());
  op.matrix().for_each([&](std::size_t r, std::size_t c, const S& v) {
    GradedIndex gr = graded_index(outer, r), gc = graded_index(outer, c);
    if (contains(inner, gr) && contains(inner, gc)) out.add(gr, gc, v);
  });
  return out;
}

template <class S>
ShiftOperator<S> casimir_su2(const ShiftOperator<S>& L3, const ShiftOperator<S>& Lp,
                             const ShiftOperator<S>& Lm) {
  return L3 * L3 + from_q<S>(qfrac(1, 2)) * (Lp * Lm + Lm * Lp);
}

template <class S>
SparseMatrix<S> casimir_su2(const SparseMatrix<S>& L3, const SparseMatrix<S>& Lp,
                            const SparseMatrix<S>& Lm) {
  return L3 * L3 + (Lp * Lm + Lm * Lp) * from_q<S>(qfrac(1, 2));
}

enum class BasisConvention { Monomial, CartanWeyl };

using GradedVector = std::map<GradedIndex, cplx>;

struct GammaDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Factor n with f_m = n * zeta^m in block p: i^m / sqrt(m! Gamma(m - 2 lambda - p)).
inline cplx cartan_weyl_factor(int m, int p, double lambda) {
  double x = m - 2.0 * lambda - p;
  if (x <= 0.0)
    throw GammaDomainError("Gamma argument " + std::to_string(x) + " is not positive at (p=" +
                           std::to_string(p) + ", m=" + std::to_string(m) + ")");
  double lognorm = std::lgamma(m + 1.0) + std::lgamma(x);
  cplx im(1.0, 0.0);
  for (int k = 0; k < m % 4; ++k) im *= cplx(0.0, 1.0);
  return im * std::exp(-0.5 * lognorm);
}

inline GradedVector convert_basis(const GradedVector& v, BasisConvention from, BasisConvention to,
                                  double lambda) {
  if (from == to) return v;
  GradedVector out;
  for (const auto& [g, c] : v) {
    cplx f = cartan_weyl_factor(g.m, g.p, lambda);
    out[g] = from == BasisConvention::Monomial ? c * f : c / f;
  }
  return out;
}

}  // namespace heisenrep
