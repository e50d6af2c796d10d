#include "ncqm/spectrum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ncqm {

bool spectrum_converged(int n, int j, double lambda, int n_max, double target) {
  BoundEnergy be = bound_energy(n, lambda);
  NCParameters p = nc_parameters(lambda, be.kappa);
  double log_decay = std::log1p(-p.b * be.kappa * lambda);  // < 0
  int degree = n - j - 1;
  int v = n_max - j;
  // amplitude ν^degree·decay^ν at the edge against its peak; the eigenvalue
  // error scales like the square of that ratio
  double nu_star = degree > 0 ? std::min(double(v), -double(degree) / log_decay) : 1.0;
  double log_edge = degree * std::log(double(v)) + v * log_decay;
  double log_peak = degree * std::log(std::max(nu_star, 1.0)) + nu_star * log_decay;
  return 2.0 * (log_edge - log_peak) < std::log(0.1 * target);
}

std::vector<SpectrumRecord> compute_spectrum(int j, double lambda, int n_lo, int n_hi, int n_max) {
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("compute_spectrum: bad n range");
  auto pencil = build_pencil(j, lambda, 2.0, n_max);
  auto states = solve_bound_states(pencil);
  std::vector<SpectrumRecord> out;
  for (int n = std::max(n_lo, j + 1); n <= n_hi; ++n) {
    SpectrumRecord rec;
    rec.n = n;
    rec.j = j;
    rec.lambda = lambda;
    rec.n_max = n_max;
    rec.e_analytic = bound_energy(n, lambda).energy;
    int idx = n - j - 1;  // states sorted deepest-first: index i holds n = j+1+i
    if (idx < int(states.size())) {
      rec.e_numeric = -0.5 * states[idx].kappa2;
      rec.rel_err = std::abs(rec.e_numeric - rec.e_analytic) / std::abs(rec.e_analytic);
      rec.converged = spectrum_converged(n, j, lambda, n_max);
    } else {
      rec.e_numeric = std::numeric_limits<double>::quiet_NaN();
      rec.rel_err = std::numeric_limits<double>::quiet_NaN();
      rec.converged = false;
    }
    out.push_back(rec);
  }
  return out;
}

double energy_shift_from_commutative(int n, double lambda) {
  // E^0 − E^λ = (1/(2n²))·(s−1)/(s+1) with s = √(1+(λ/n)²); the stable form
  // avoids the 1 − κ²n² cancellation at small λ.
  double ln = lambda / double(n);
  double s = std::sqrt(1.0 + ln * ln);
  return (ln * ln) / (2.0 * double(n) * double(n) * (1.0 + s) * (1.0 + s));
}

SlopeFit fit_commutative_slope(int n, double lambda_lo, double lambda_hi, int points) {
  if (points < 2 || !(lambda_lo > 0.0) || !(lambda_hi > lambda_lo))
    throw std::invalid_argument("fit_commutative_slope: bad grid");
  SlopeFit fit;
  fit.points = points;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < points; ++i) {
    double t = points == 1 ? 0.0 : double(i) / double(points - 1);
    double lam = lambda_lo * std::pow(lambda_hi / lambda_lo, t);
    double x = std::log(lam);
    double y = std::log(energy_shift_from_commutative(n, lam));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = points * sxx - sx * sx;
  fit.slope = (points * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / points;
  return fit;
}

std::vector<NmaxStudyRow> nmax_doubling_study(int n, int j, double lambda, int n_max_lo, int doublings) {
  std::vector<NmaxStudyRow> rows;
  double e_ana = bound_energy(n, lambda).energy;
  int n_max = n_max_lo;
  for (int d = 0; d <= doublings; ++d) {
    auto pencil = build_pencil(j, lambda, 2.0, n_max);
    auto top = pencil_top_eigenvalues(pencil, n - j);
    NmaxStudyRow row;
    row.n_max = n_max;
    if (int(top.size()) >= n - j && top[n - j - 1] > 0.0) {
      row.e_numeric = -0.5 * top[n - j - 1];
      row.rel_err = std::abs(row.e_numeric - e_ana) / std::abs(e_ana);
    } else {
      row.e_numeric = std::numeric_limits<double>::quiet_NaN();
      row.rel_err = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
    n_max *= 2;
  }
  return rows;
}

}  // namespace ncqm
