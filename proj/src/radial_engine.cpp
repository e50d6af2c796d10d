#include "ncqm/radial_engine.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ncqm {

double sequence_norm(const RadialSequence& seq) {
  double acc = 0.0;
  for (int nu = 0; nu < int(seq.values.size()); ++nu)
    acc += mu_weight(seq.j, nu) * seq.values[nu] * seq.values[nu];
  return measure_constant(seq.j, seq.lambda) * acc;
}

double sequence_dot(const RadialSequence& a, const RadialSequence& b) {
  if (a.j != b.j) throw std::invalid_argument("sequence_dot: angular momenta differ");
  double acc = 0.0;
  int n = std::min(a.values.size(), b.values.size());
  for (int nu = 0; nu < n; ++nu) acc += mu_weight(a.j, nu) * a.values[nu] * b.values[nu];
  return measure_constant(a.j, a.lambda) * acc;
}

namespace {

// Symmetrized standard form T = B^{-1/2} Ω^{1/2} A Ω^{-1/2} B^{-1/2} with
// Ω(ν) = C(ν+2j+1, 2j+1). T shares the pencil eigenvalues; an eigenvector u
// maps back through ℛ(ν) = u(ν)/sqrt(Ω(ν) B(ν)).
struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1
};

SymmetricTridiagonal symmetrize(const BandedPencil& p) {
  int v = p.rows();
  SymmetricTridiagonal t;
  t.diag.resize(v);
  t.off.resize(v > 0 ? v - 1 : 0);
  for (int nu = 0; nu < v; ++nu) t.diag[nu] = p.diag[nu] / p.b_diag[nu];
  for (int nu = 0; nu + 1 < v; ++nu) {
    // Ω-similarity turns the off-diagonal pair into its geometric mean; both
    // factors are positive for every ν.
    t.off[nu] = std::sqrt(p.super[nu] * p.sub[nu + 1]) / std::sqrt(p.b_diag[nu] * p.b_diag[nu + 1]);
  }
  return t;
}

// Number of eigenvalues of T strictly below x (Sturm count via LDL^T).
int sturm_count(const SymmetricTridiagonal& t, double x) {
  int n = int(t.diag.size());
  double pivmin = 1e-300;
  int count = 0;
  double q = t.diag[0] - x;
  if (q < 0) ++count;
  for (int i = 1; i < n; ++i) {
    if (std::abs(q) < pivmin) q = (q < 0) ? -pivmin : pivmin;
    q = t.diag[i] - x - t.off[i - 1] * t.off[i - 1] / q;
    if (q < 0) ++count;
  }
  return count;
}

double gershgorin_upper(const SymmetricTridiagonal& t) {
  int n = int(t.diag.size());
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double r = t.diag[i];
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    hi = std::max(hi, r);
  }
  return hi;
}

double gershgorin_lower(const SymmetricTridiagonal& t) {
  int n = int(t.diag.size());
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double r = t.diag[i];
    if (i > 0) r -= std::abs(t.off[i - 1]);
    if (i + 1 < n) r -= std::abs(t.off[i]);
    lo = std::min(lo, r);
  }
  return lo;
}

}  // namespace

std::vector<NumericBoundState> solve_bound_states(const BandedPencil& pencil, double kappa2_cut) {
  int v = pencil.rows();
  SymmetricTridiagonal t = symmetrize(pencil);

  Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(t.diag.data(), v);
  Eigen::VectorXd off = v > 1 ? Eigen::Map<const Eigen::VectorXd>(t.off.data(), v - 1) : Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("solve_bound_states: tridiagonal eigensolver failed (j=" +
                             std::to_string(pencil.j) + ", n_max=" + std::to_string(pencil.n_max) + ")");

  std::vector<int> order;
  for (int i = 0; i < v; ++i)
    if (solver.eigenvalues()[i] > kappa2_cut) order.push_back(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return solver.eigenvalues()[a] > solver.eigenvalues()[b]; });

  std::vector<NumericBoundState> states;
  states.reserve(order.size());
  double norm_scale = std::sqrt(pencil.lambda / measure_constant(pencil.j, pencil.lambda));
  for (int idx : order) {
    NumericBoundState bs;
    bs.kappa2 = solver.eigenvalues()[idx];
    bs.truncation_sensitive = bs.kappa2 < 10.0 * kappa2_cut;
    bs.sequence.j = pencil.j;
    bs.sequence.lambda = pencil.lambda;
    bs.sequence.values.resize(v);
    // u is unit in l2; the μ-weighted norm of ℛ = u/sqrt(ΩB) is then
    // measure_constant/λ, so one global factor renormalizes.
    for (int nu = 0; nu < v; ++nu) {
      double omega = mu_weight(pencil.j, nu) * pencil.lambda / pencil.b_diag[nu];
      bs.sequence.values[nu] =
          solver.eigenvectors()(nu, idx) / std::sqrt(omega * pencil.b_diag[nu]) * norm_scale;
    }
    // sign convention: first nonvanishing component positive
    for (double val : bs.sequence.values) {
      if (std::abs(val) > 1e-300) {
        if (val < 0)
          for (double& x : bs.sequence.values) x = -x;
        break;
      }
    }
    states.push_back(std::move(bs));
  }
  return states;
}

std::vector<double> pencil_top_eigenvalues(const BandedPencil& pencil, int count) {
  SymmetricTridiagonal t = symmetrize(pencil);
  int n = int(t.diag.size());
  count = std::min(count, n);
  double lo0 = gershgorin_lower(t);
  double hi0 = gershgorin_upper(t);
  std::vector<double> out;
  out.reserve(count);
  for (int k = 1; k <= count; ++k) {
    // k-th largest eigenvalue: the value x with exactly n-k eigenvalues below it
    double lo = lo0, hi = hi0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::max(std::abs(lo), std::abs(hi))); ++it) {
      double mid = 0.5 * (lo + hi);
      if (sturm_count(t, mid) >= n - k + 1) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

}  // namespace ncqm
