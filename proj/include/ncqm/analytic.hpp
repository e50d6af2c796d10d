#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ncqm/radial_engine.hpp"
#include "ncqm/scalars.hpp"

namespace ncqm {

/// Deformation parameters of the radial solution:
/// η = λκ/2, b = √(1+η²) − η, d = √(1+η²); 0 < b <= 1 <= d, d − b = η.
struct NCParameters {
  double eta = 0.0;
  double b = 1.0;
  double d = 1.0;
};

NCParameters nc_parameters(double lambda, double kappa);

/// Bound state in atomic units (ħ = m = e = 1, α = 2): quantization
/// α/(2 d_n κ_n) = n gives κ_n² = (2/n²)/(1 + √(1 + λ²/n²)), E = −κ²/2.
struct BoundEnergy {
  int n = 1;
  double lambda = 0.0;
  double kappa2 = 0.0;
  double kappa = 0.0;
  double energy = 0.0;
  double quantization_residual = 0.0;  // |α/(2 d κ n) − 1|
};

BoundEnergy bound_energy(int n, double lambda);

inline double commutative_energy(int n) { return -1.0 / (2.0 * double(n) * double(n)); }

/// Kummer's confluent hypergeometric series Σ_k (a)_k/(c)_k x^k/k!.
/// Terminates exactly when a is a nonpositive integer. Real is double or a
/// boost multiprecision binary float.
template <typename Real>
Real kummer_series(Real a, Real c, Real x, Real* max_term_out = nullptr) {
  using std::abs;
  Real term(1), sum(1), max_term(1);
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real ax = abs(x);
  for (int k = 0; k < 200000; ++k) {
    term = term * (a + Real(k)) * x / ((c + Real(k)) * Real(k + 1));
    sum += term;
    Real at = abs(term);
    if (at > max_term) max_term = at;
    if (at == Real(0)) break;  // polynomial case ended
    if (at <= eps * abs(sum) && Real(k) > ax) break;
    if (k == 200000 - 1) throw std::runtime_error("kummer_series: no convergence");
  }
  if (max_term_out) *max_term_out = max_term;
  return sum;
}

double kummer_F(double a, double c, double x);

struct KummerEval {
  double value = 0.0;
  double cancellation = 0.0;      // max |term| / |sum| of the double-precision pass
  bool extended_precision = false;  // fell back to a 50-digit evaluation
};

KummerEval kummer_F_detailed(double a, double c, double x);

/// Solution map for ϱR'' + (a1 ϱ + b1)R' + (a2 ϱ + b2)R = 0:
/// R(ϱ) = e^{(D−a1)ϱ/2} F(a, c; −Dϱ) with D² = a1² − 4a2,
/// a = [(D−a1)b1/2 + b2]/D, c = b1. Both D branches give the same R
/// (Kummer transformation).
struct ConfluentSolution {
  double d_value = 0.0;
  double a = 0.0;
  double c = 0.0;
  double exp_rate = 0.0;

  double operator()(double rho) const { return std::exp(exp_rate * rho) * kummer_F(a, c, -d_value * rho); }
};

ConfluentSolution ode_to_hypergeometric(double a1, double b1, double a2, double b2, int branch = -1);

/// Exact coefficients c^k of the degree-(n−j−1) bound-state polynomial
/// F(j+1−n, 2j+2; x) = Σ_k c^k (−x)^k/k!:
/// c^k = (n−j−1)!(2j+1)! / [(n−j−1−k)!(2j+1+k)!].
std::vector<Rational> radial_polynomial_coeffs(int n, int j);

/// Bound-state radial profile sampled on the level lattice (unnormalized):
/// ℛ(ν) = (1 − b κ λ)^ν Σ_k c^k [−2λκd/(1 − bκλ)]^k C(ν, k).
RadialSequence analytic_radial_sequence(int n, int j, double lambda, int n_max);

/// Exact-rational variant for parameter sets where κ, b, d are rational
/// (e.g. η = (m²−1)/(2m)). The caller supplies them; the defining relations
/// d − b = λκ/2 and d² = 1 + (λκ/2)² are checked.
RadialSequenceT<Rational> analytic_radial_sequence_exact(int n, int j, const Rational& lambda,
                                                         const Rational& kappa, const Rational& b,
                                                         const Rational& d, int n_max);

struct Normalization {
  double constant = 0.0;   // 1/√(norm_sq)
  double norm_sq = 0.0;
  double tail_bound = 0.0;  // geometric estimate of the dropped Σ_{ν>V}
  bool tail_ok = false;     // tail_bound <= 1e-10 · norm_sq
};

Normalization normalization_constant(int n, int j, double lambda, int n_max);

/// Commutative bound-state radial function e^{−κr} F(j+1−n, 2j+2; 2κr), κ = 1/n.
double commutative_radial(int n, int j, double r);

}  // namespace ncqm
