#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace heisenrep {

using Q = boost::multiprecision::cpp_rational;
using cplx = std::complex<double>;

inline Q qfrac(long long num, long long den = 1) { return Q(num) / Q(den); }

inline double to_double(const Q& q) { return q.convert_to<double>(); }

// Gaussian rational a + b i.
struct GQ {
  Q re;
  Q im;

  GQ() = default;
  GQ(const Q& r) : re(r) {}
  GQ(const Q& r, const Q& i) : re(r), im(i) {}
  GQ(long long r) : re(r) {}

  static GQ i() { return GQ(Q(0), Q(1)); }

  GQ& operator+=(const GQ& o) { re += o.re; im += o.im; return *this; }
  GQ& operator-=(const GQ& o) { re -= o.re; im -= o.im; return *this; }
  GQ& operator*=(const GQ& o) {
    Q r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  GQ& operator/=(const GQ& o) {
    Q d = o.re * o.re + o.im * o.im;
    if (d == 0) throw std::domain_error("division by zero Gaussian rational");
    Q r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
  }
  friend GQ operator+(GQ a, const GQ& b) { return a += b; }
  friend GQ operator-(GQ a, const GQ& b) { return a -= b; }
  friend GQ operator*(GQ a, const GQ& b) { return a *= b; }
  friend GQ operator/(GQ a, const GQ& b) { return a /= b; }
  friend GQ operator-(const GQ& a) { return GQ(-a.re, -a.im); }
  friend bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

  GQ conj() const { return GQ(re, -im); }
  bool is_zero() const { return re == 0 && im == 0; }
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Q> {
  static constexpr bool exact = true;
  static Q from_q(const Q& q) { return q; }
  static bool is_zero(const Q& s) { return s == 0; }
  static double magnitude(const Q& s) { return s < 0 ? to_double(-s) : to_double(s); }
  static Q conj(const Q& s) { return s; }
};

template <>
struct scalar_traits<GQ> {
  static constexpr bool exact = true;
  static GQ from_q(const Q& q) { return GQ(q); }
  static bool is_zero(const GQ& s) { return s.is_zero(); }
  static double magnitude(const GQ& s) { return std::hypot(to_double(s.re), to_double(s.im)); }
  static GQ conj(const GQ& s) { return s.conj(); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double from_q(const Q& q) { return to_double(q); }
  static bool is_zero(double s) { return s == 0.0; }
  static double magnitude(double s) { return std::fabs(s); }
  static double conj(double s) { return s; }
};

template <>
struct scalar_traits<cplx> {
  static constexpr bool exact = false;
  static cplx from_q(const Q& q) { return cplx(to_double(q), 0.0); }
  static bool is_zero(const cplx& s) { return s == cplx(0.0, 0.0); }
  static double magnitude(const cplx& s) { return std::abs(s); }
  static cplx conj(const cplx& s) { return std::conj(s); }
};

template <class S>
S from_q(const Q& q) { return scalar_traits<S>::from_q(q); }

template <class S>
bool is_zero(const S& s) { return scalar_traits<S>::is_zero(s); }

// Nonzero exact values never collapse to 0.0.
template <class S>
double magnitude(const S& s) {
  if (is_zero(s)) return 0.0;
  double v = scalar_traits<S>::magnitude(s);
  return v == 0.0 ? std::numeric_limits<double>::min() : v;
}

inline cplx to_cplx(const GQ& g) { return cplx(to_double(g.re), to_double(g.im)); }

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Accepts "n" or "n/d" with optional sign; decimals are rejected.
inline Q parse_rational(const std::string& text) {
  std::string s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  s = s.substr(b);
  if (s.empty()) throw ParseError("empty rational");
  auto digits = [](const std::string& t, bool allowSign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allowSign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos)
    throw ParseError("decimal value '" + text + "' is not an exact rational");
  if (!digits(num, true) || !digits(den, false)) throw ParseError("malformed rational '" + text + "'");
  if (num[0] == '+') num = num.substr(1);
  boost::multiprecision::cpp_int n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + text + "'");
  return Q(n, d);
}

// Decimal text converted to the exact rational it spells, e.g. "-0.3" -> -3/10.
inline Q parse_decimal(const std::string& text) {
  std::string s = text;
  if (s.find('/') != std::string::npos) return parse_rational(s);
  bool neg = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  std::string intPart, frac;
  bool dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.' && !dot) { dot = true; continue; }
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("malformed decimal '" + text + "'");
    (dot ? frac : intPart) += c;
  }
  if (intPart.empty() && frac.empty()) throw ParseError("malformed decimal '" + text + "'");
  boost::multiprecision::cpp_int n(intPart.empty() ? std::string("0") : intPart);
  boost::multiprecision::cpp_int d = 1;
  for (char c : frac) { n = n * 10 + (c - '0'); d *= 10; }
  Q q(n, d);
  return neg ? Q(-q) : q;
}

inline std::string to_string(const Q& q) {
  return q.str();
}

}  // namespace heisenrep
