#pragma once

#include <array>
#include <string>
#include <vector>

#include "ncqm/fock_algebra.hpp"
#include "ncqm/scalars.hpp"

namespace ncqm {

/// Central potential values V(N), N = 0..N_max, solving the radial Poisson
/// recurrence (N+2)V(N+1) − 2(N+1)V(N) + N V(N−1) = 0 with
/// (M+1)V(M) − M V(M−1) = q0 for M >= 1 and V(0) = q0 − q/λ.
template <typename Real>
struct RadialPotentialT {
  Real q{};
  Real q0{};
  Real lambda{};
  std::vector<Real> values;
};

using RadialPotential = RadialPotentialT<double>;

template <typename Real>
RadialPotentialT<Real> poisson_solve(const Real& q, const Real& q0, const Real& lambda, int n_max) {
  if (!(lambda > Real(0))) throw std::invalid_argument("poisson_solve: lambda must be > 0");
  RadialPotentialT<Real> pot;
  pot.q = q;
  pot.q0 = q0;
  pot.lambda = lambda;
  pot.values.resize(std::size_t(n_max) + 1);
  pot.values[0] = q0 - q / lambda;
  for (int m = 1; m <= n_max; ++m)
    pot.values[m] = (q0 + Real(m) * pot.values[m - 1]) / Real(m + 1);
  return pot;
}

/// Closed form the recurrence must reproduce: −q/(λ(N+1)) + q0.
template <typename Real>
Real coulomb_potential_value(const Real& q, const Real& q0, const Real& lambda, int level) {
  return q0 - q / (lambda * Real(level + 1));
}

/// Max |(N+2)V(N+1) − 2(N+1)V(N) + N V(N−1)| over interior rows N = 1..N_max−1.
template <typename Real>
Real poisson_recurrence_residual(const RadialPotentialT<Real>& pot) {
  Real worst(0);
  int top = int(pot.values.size()) - 1;
  for (int n = 1; n < top; ++n) {
    Real r = Real(n + 2) * pot.values[n + 1] - Real(2 * (n + 1)) * pot.values[n] +
             Real(n) * pot.values[n - 1];
    if (r < Real(0)) r = -r;
    if (r > worst) worst = r;
  }
  return worst;
}

/// NC electric field Ê_j = (charge/λ³) [N̂(N̂+1)(N̂+2)]⁻¹ x̂_j on levels N >= 1.
/// The level-0 block of x̂_j vanishes identically, so the 1/N̂ factor never
/// meets it; evaluation requests at N = 0 are rejected by field_level_value.
template <typename Mode>
std::array<OperatorMatrix<typename Mode::Scalar>, 3> electric_field_ops(const FockAlgebra<Mode>& alg,
                                                                        const typename Mode::Real& charge) {
  using Real = typename Mode::Real;
  using Scalar = typename Mode::Scalar;
  Real lam3 = int_pow(alg.lambda(), 3);
  std::array<OperatorMatrix<Scalar>, 3> e{alg.coordinate(1), alg.coordinate(2), alg.coordinate(3)};
  for (auto& op : e) {
    op = op.left_diagonal_scaled([&](int level) {
      if (level == 0) return Scalar(Real(0));
      return Scalar(charge / (lam3 * Real(level) * Real(level + 1) * Real(level + 2)));
    });
  }
  return e;
}

/// Diagonal of Σ_j Ê_j² on a level N >= 1: charge²/(λ⁴ N (N+1)² (N+2)).
double electric_field_squared_level(double charge, double lambda, int level);

/// SI inputs (overridable from a key = value file) with the Gaussian-convention
/// derived lengths used throughout.
struct PhysicalConstants {
  double electron_mass_kg = 9.1093837015e-31;
  double elementary_charge_c = 1.602176634e-19;
  double hbar_js = 1.054571817e-34;
  double speed_of_light_m_s = 299792458.0;
  double coulomb_constant = 8.9875517923e9;  // 1/(4π ε0)

  double e2_gaussian() const { return coulomb_constant * elementary_charge_c * elementary_charge_c; }
  double classical_electron_radius_m() const {
    return e2_gaussian() / (electron_mass_kg * speed_of_light_m_s * speed_of_light_m_s);
  }
  double bohr_radius_m() const { return hbar_js * hbar_js / (electron_mass_kg * e2_gaussian()); }
  double fine_structure() const { return e2_gaussian() / (hbar_js * speed_of_light_m_s); }

  static PhysicalConstants defaults() { return {}; }
  static PhysicalConstants from_file(const std::string& path);
};

struct PartialSumRow {
  int terms = 0;
  double partial = 0.0;    // Σ_{N=1..terms} 1/(N(N+2))
  double remainder = 0.0;  // exact telescoping tail (1/2)(1/(terms+1) + 1/(terms+2))
};

/// Electron self-energy estimate: equating mc² to the field energy
/// (λ³/2) Tr[(N̂+1) Ê²] = (3/8) e²/λ fixes λ0 = (3/8) r0.
struct SelfEnergyReport {
  Rational trace_sum = 0;        // Σ_{N>=1} 1/(N(N+2)) = 3/4, exact
  Rational lambda0_over_r0 = 0;  // 3/8, exact
  double lambda0_m = 0.0;
  double r0_m = 0.0;
  double a0_m = 0.0;
  double lambda0_over_a0 = 0.0;       // (3/8) α²
  double printed_ratio_variant = 0.0;  // (9/64) α² — the other in-text reading
  double level_shift_rel_n1 = 0.0;     // λ0²/(4 a0²): relative E shift of the ground state
  std::vector<PartialSumRow> partial_sums;
};

SelfEnergyReport self_energy_lambda0(const PhysicalConstants& constants);

/// Exact partial sum of Σ 1/(N(N+2)) up to N = terms, by telescoping.
Rational self_energy_partial_sum_exact(int terms);

/// Fuzzy-ball volume 4πλ³ Σ_{n=0}^{N} (n+1)² with radius r = λ(N+1), compared
/// against (4π/3)r³. The upper-limit variant Σ_{n=0}^{N+1} is reported alongside.
struct BallVolume {
  int level = 0;
  double lambda = 0.0;
  double radius = 0.0;
  double volume = 0.0;
  double volume_upper_variant = 0.0;
  double continuum = 0.0;   // (4π/3) r³
  double rel_dev = 0.0;
  double rel_dev_upper_variant = 0.0;
};

BallVolume ball_volume(int level, double lambda);

}  // namespace ncqm
