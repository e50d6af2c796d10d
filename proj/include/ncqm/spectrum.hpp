#pragma once

#include <vector>

#include "ncqm/analytic.hpp"
#include "ncqm/radial_engine.hpp"

namespace ncqm {

/// One bound state with both routes to its energy and their disagreement.
struct SpectrumRecord {
  int n = 0;
  int j = 0;
  double lambda = 0.0;
  double e_analytic = 0.0;
  double e_numeric = 0.0;
  double rel_err = 0.0;
  int n_max = 0;
  bool converged = false;  // truncation-tail heuristic from the analytic decay
};

/// Numeric bound states of sector j at truncation n_max against the closed
/// form, for n = n_lo .. n_hi (entries with n <= j are skipped).
std::vector<SpectrumRecord> compute_spectrum(int j, double lambda, int n_lo, int n_hi, int n_max);

/// Whether the analytic profile of (n, j) has decayed enough at the truncation
/// edge for the Dirichlet row to be harmless at roughly `target` relative error.
bool spectrum_converged(int n, int j, double lambda, int n_max, double target = 1e-9);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points = 0;
};

/// Least-squares slope of log|E^λ_n − E^0_n| against log λ on a log-spaced grid.
SlopeFit fit_commutative_slope(int n, double lambda_lo, double lambda_hi, int points);

/// Stable closed form of the commutative-limit shift E^0_n − E^λ_n = λ²·(positive factor).
double energy_shift_from_commutative(int n, double lambda);

struct NmaxStudyRow {
  int n_max = 0;
  double e_numeric = 0.0;
  double rel_err = 0.0;
};

/// Numeric-vs-analytic error of state n in sector j across a doubling ladder of
/// truncations, eigenvalue-only (suitable for large grids).
std::vector<NmaxStudyRow> nmax_doubling_study(int n, int j, double lambda, int n_max_lo, int doublings);

}  // namespace ncqm
