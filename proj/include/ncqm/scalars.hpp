#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace ncqm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

inline BigInt factorial_exact(int n) {
  BigInt f = 1;
  for (int t = 2; t <= n; ++t) f *= t;
  return f;
}

inline BigInt binomial_exact(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  BigInt b = 1;
  for (int t = 1; t <= k; ++t) {
    b *= (n - k + t);
    b /= t;  // exact at every step
  }
  return b;
}

/// Eigenvalue of the normal-ordered power :N̂^k: on a level-N state: N!/(N-k)!, zero for k > N.
inline BigInt normal_ordered_eval(int k, int level) {
  if (k < 0 || level < 0) throw std::invalid_argument("normal_ordered_eval: negative argument");
  if (k > level) return 0;
  BigInt f = 1;
  for (int t = level - k + 1; t <= level; ++t) f *= t;
  return f;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  if (k > n - k) k = n - k;
  double b = 1.0;
  for (int t = 1; t <= k; ++t) b *= double(n - k + t) / double(t);
  return b;
}

inline double normal_ordered_eval_d(int k, int level) {
  if (k > level) return 0.0;
  double f = 1.0;
  for (int t = level - k + 1; t <= level; ++t) f *= double(t);
  return f;
}

template <typename T>
T int_pow(T base, int exp) {
  T r = T(1);
  for (int t = 0; t < exp; ++t) r = r * base;
  return r;
}

/// Exact complex scalar with rational real and imaginary parts.
struct GaussianRational {
  Rational re{};
  Rational im{};

  GaussianRational() = default;
  GaussianRational(int r) : re(r) {}  // NOLINT: implicit by design, mirrors complex<double>
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational unit_imag() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  GaussianRational operator-() const { return {-re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

// scalar traits used by the generic operator-matrix code
inline bool scalar_is_zero(const std::complex<double>& z) { return z.real() == 0.0 && z.imag() == 0.0; }
inline bool scalar_is_zero(const GaussianRational& z) { return z.is_zero(); }

inline std::complex<double> scalar_conj(const std::complex<double>& z) { return std::conj(z); }
inline GaussianRational scalar_conj(const GaussianRational& z) { return {z.re, -z.im}; }

inline double scalar_abs(const std::complex<double>& z) { return std::abs(z); }
inline double scalar_abs(const GaussianRational& z) {
  if (z.is_zero()) return 0.0;
  // a nonzero exact residual must never round down to zero
  double m = std::abs(to_double(z.re)) + std::abs(to_double(z.im));
  return m > 0.0 ? m : 1e-300;
}

}  // namespace ncqm
