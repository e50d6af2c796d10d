#include "ncqm/analytic.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

namespace ncqm {

namespace {
using Float50 = boost::multiprecision::cpp_bin_float_50;
}

NCParameters nc_parameters(double lambda, double kappa) {
  if (lambda < 0.0) throw std::invalid_argument("nc_parameters: lambda must be >= 0");
  if (!(kappa > 0.0)) throw std::invalid_argument("nc_parameters: kappa must be > 0");
  NCParameters p;
  p.eta = 0.5 * lambda * kappa;
  p.d = std::sqrt(1.0 + p.eta * p.eta);
  p.b = 1.0 / (p.d + p.eta);  // = d − η without cancellation
  return p;
}

BoundEnergy bound_energy(int n, double lambda) {
  if (n < 1) throw std::invalid_argument("bound_energy: n must be >= 1");
  if (lambda < 0.0) throw std::invalid_argument("bound_energy: lambda must be >= 0");
  BoundEnergy be;
  be.n = n;
  be.lambda = lambda;
  double ln = lambda / double(n);
  be.kappa2 = (2.0 / (double(n) * double(n))) / (1.0 + std::sqrt(1.0 + ln * ln));
  be.kappa = std::sqrt(be.kappa2);
  be.energy = -0.5 * be.kappa2;
  double d = std::sqrt(1.0 + 0.25 * lambda * lambda * be.kappa2);
  be.quantization_residual = std::abs(1.0 / (d * be.kappa * double(n)) - 1.0);  // α = 2
  return be;
}

KummerEval kummer_F_detailed(double a, double c, double x) {
  if (c <= 0.0 && c == std::floor(c))
    throw std::domain_error("kummer_F: c must not be a nonpositive integer");
  KummerEval ev;
  double max_term = 1.0;
  ev.value = kummer_series<double>(a, c, x, &max_term);
  ev.cancellation = std::abs(ev.value) > 0.0 ? max_term / std::abs(ev.value)
                                             : std::numeric_limits<double>::infinity();
  // Alternating-series cancellation eats ~log10(cancellation) digits; redo the
  // sum with 50-digit floats when the double result can no longer carry 1e-13.
  if (!std::isfinite(ev.value) || ev.cancellation > 1e3) {
    Float50 v = kummer_series<Float50>(Float50(a), Float50(c), Float50(x));
    ev.value = v.convert_to<double>();
    ev.extended_precision = true;
  }
  return ev;
}

double kummer_F(double a, double c, double x) { return kummer_F_detailed(a, c, x).value; }

ConfluentSolution ode_to_hypergeometric(double a1, double b1, double a2, double b2, int branch) {
  double disc = a1 * a1 - 4.0 * a2;
  if (disc <= 0.0)
    throw std::domain_error("ode_to_hypergeometric: needs a1² − 4a2 > 0 (real nondegenerate D)");
  ConfluentSolution s;
  s.d_value = (branch >= 0 ? 1.0 : -1.0) * std::sqrt(disc);
  s.c = b1;
  s.exp_rate = 0.5 * (s.d_value - a1);
  s.a = (s.exp_rate * b1 + b2) / s.d_value;
  return s;
}

std::vector<Rational> radial_polynomial_coeffs(int n, int j) {
  if (n < 1 || j < 0 || j >= n)
    throw std::invalid_argument("radial_polynomial_coeffs: need n >= 1 and 0 <= j <= n-1");
  int degree = n - j - 1;
  std::vector<Rational> c;
  c.reserve(degree + 1);
  Rational ck(1);
  for (int k = 0; k <= degree; ++k) {
    c.push_back(ck);
    if (k < degree) ck *= Rational(degree - k, 2 * j + 2 + k);
  }
  return c;
}

RadialSequence analytic_radial_sequence(int n, int j, double lambda, int n_max) {
  if (n_max < j) throw std::invalid_argument("analytic_radial_sequence: n_max below j");
  BoundEnergy be = bound_energy(n, lambda);
  RadialSequence seq;
  seq.j = j;
  seq.lambda = lambda;
  if (lambda == 0.0) {
    // degenerate lattice: every level sits at ϱ = 0
    seq.values.assign(std::size_t(n_max - j + 1), 1.0);
    return seq;
  }
  NCParameters p = nc_parameters(lambda, be.kappa);
  double decay = 1.0 - p.b * be.kappa * lambda;
  if (!(decay > 0.0 && decay < 1.0))
    throw std::logic_error("analytic_radial_sequence: decay factor outside (0,1)");
  double z = -2.0 * lambda * be.kappa * p.d / decay;
  auto cr = radial_polynomial_coeffs(n, j);
  std::vector<double> cz(cr.size());
  double zp = 1.0;
  for (std::size_t k = 0; k < cr.size(); ++k) {
    cz[k] = to_double(cr[k]) * zp;
    zp *= z;
  }
  seq.values.resize(std::size_t(n_max - j + 1));
  double gp = 1.0;
  for (int nu = 0; nu <= n_max - j; ++nu) {
    double binom = 1.0;
    double s = 0.0;
    for (int k = 0; k < int(cz.size()) && k <= nu; ++k) {
      s += cz[k] * binom;
      binom *= double(nu - k) / double(k + 1);
    }
    seq.values[nu] = gp * s;
    gp *= decay;
  }
  return seq;
}

RadialSequenceT<Rational> analytic_radial_sequence_exact(int n, int j, const Rational& lambda,
                                                         const Rational& kappa, const Rational& b,
                                                         const Rational& d, int n_max) {
  if (n_max < j) throw std::invalid_argument("analytic_radial_sequence_exact: n_max below j");
  Rational eta = lambda * kappa / 2;
  if (d - b != eta || d * d != 1 + eta * eta)
    throw std::invalid_argument("analytic_radial_sequence_exact: (kappa, b, d) do not satisfy the defining relations");
  Rational decay = 1 - b * kappa * lambda;
  if (!(decay > 0)) throw std::invalid_argument("analytic_radial_sequence_exact: no decay");
  Rational z = Rational(-2) * lambda * kappa * d / decay;
  auto cr = radial_polynomial_coeffs(n, j);
  std::vector<Rational> cz(cr.size());
  Rational zp(1);
  for (std::size_t k = 0; k < cr.size(); ++k) {
    cz[k] = cr[k] * zp;
    zp *= z;
  }
  RadialSequenceT<Rational> seq;
  seq.j = j;
  seq.lambda = lambda;
  seq.values.resize(std::size_t(n_max - j + 1));
  Rational gp(1);
  for (int nu = 0; nu <= n_max - j; ++nu) {
    Rational s(0);
    for (int k = 0; k < int(cz.size()) && k <= nu; ++k) s += cz[k] * Rational(binomial_exact(nu, k));
    seq.values[nu] = gp * s;
    gp *= decay;
  }
  return seq;
}

Normalization normalization_constant(int n, int j, double lambda, int n_max) {
  RadialSequence seq = analytic_radial_sequence(n, j, lambda, n_max);
  Normalization out;
  out.norm_sq = sequence_norm(seq);
  int v = int(seq.values.size()) - 1;
  double c = measure_constant(j, lambda);
  double t_last = c * mu_weight(j, v) * seq.values[v] * seq.values[v];
  double t_prev = v > 0 ? c * mu_weight(j, v - 1) * seq.values[v - 1] * seq.values[v - 1] : t_last;
  if (t_last == 0.0) {
    out.tail_bound = 0.0;
  } else if (t_prev > 0.0 && t_last < t_prev) {
    double ratio = t_last / t_prev;
    out.tail_bound = t_last * ratio / (1.0 - ratio);
  } else {
    out.tail_bound = std::numeric_limits<double>::infinity();  // not yet in the decaying regime
  }
  out.tail_ok = out.tail_bound <= 1e-10 * out.norm_sq;
  out.constant = 1.0 / std::sqrt(out.norm_sq);
  return out;
}

double commutative_radial(int n, int j, double r) {
  double kappa = 1.0 / double(n);
  return std::exp(-kappa * r) * kummer_F(double(j + 1 - n), double(2 * j + 2), 2.0 * kappa * r);
}

}  // namespace ncqm
