#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ncqm/normal_poly.hpp"
#include "ncqm/scalars.hpp"

namespace ncqm {

/// Values ℛ(ν) of a radial profile on the level subspaces of a spin-j sector.
/// values[ν] is the profile at radial argument ν = N − j, i.e. on overall
/// level N = j + ν; the sequence spans levels j .. j + values.size() − 1.
template <typename Real>
struct RadialSequenceT {
  int j = 0;
  Real lambda{};
  std::vector<Real> values;

  int level_min() const { return j; }
  int level_max() const { return j + int(values.size()) - 1; }
};

using RadialSequence = RadialSequenceT<double>;

/// μ_j(ν) = (ν+j+1)·C(ν+2j+1, 2j+1): the radial weight obtained by tracing
/// the (N̂+1)-weighted Hilbert–Schmidt norm over a spin-j sector. The overall
/// constant 4πλ^{3+2j}/(j!)² is kept separate (measure_constant).
inline BigInt mu_weight_exact(int j, int nu) {
  return BigInt(nu + j + 1) * binomial_exact(nu + 2 * j + 1, 2 * j + 1);
}

inline double mu_weight(int j, int nu) { return double(nu + j + 1) * binomial(nu + 2 * j + 1, 2 * j + 1); }

inline double measure_constant(int j, double lambda) {
  const double pi = 3.14159265358979323846;
  double fj = 1.0;
  for (int t = 2; t <= j; ++t) fj *= t;
  return 4.0 * pi * std::pow(lambda, 3 + 2 * j) / (fj * fj);
}

/// measure_constant without the transcendental 4π, exact.
inline Rational measure_constant_over_4pi_exact(int j, const Rational& lambda) {
  Rational fj(factorial_exact(j));
  return int_pow(lambda, 3 + 2 * j) / (fj * fj);
}

/// Evaluate a radial polynomial on the levels of a spin-j sector up to overall level n_max.
template <typename Real>
RadialSequenceT<Real> poly_eval(const NormalOrderedPoly<Real>& p, int j, int n_max) {
  if (n_max < j) throw std::invalid_argument("poly_eval: n_max below j");
  RadialSequenceT<Real> seq;
  seq.j = j;
  seq.lambda = p.lambda;
  seq.values.reserve(n_max - j + 1);
  for (int nu = 0; nu <= n_max - j; ++nu) seq.values.push_back(p.eval_level(nu));
  return seq;
}

/// ‖ℛ‖² = (4πλ^{3+2j}/(j!)²) Σ_ν μ_j(ν) ℛ(ν)², truncated at the stored length.
double sequence_norm(const RadialSequence& seq);
/// μ-weighted inner product with the same constant.
double sequence_dot(const RadialSequence& a, const RadialSequence& b);

/// Tridiagonal pencil A ℛ = κ² B ℛ on radial index ν = 0 .. n_max − j,
/// realizing   ϱR'' + 2(j+1)R' + αR = κ² [ϱR + λ(j+1)R + λϱR']
/// through the exact forward-difference identities
///   :R':(ν)   = (ℛ(ν+1) − ℛ(ν))/λ,
///   :ϱR'':(ν) = (ν/λ)(ℛ(ν+1) − 2ℛ(ν) + ℛ(ν−1)),
/// valid for every normal-ordered polynomial. B is the positive diagonal
/// r̂-weight λ(ν+j+1); the last row imposes ℛ(V+1) = 0 (Dirichlet).
template <typename Real>
struct BandedPencilT {
  int j = 0;
  Real lambda{};
  Real alpha{};
  int n_max = 0;

  std::vector<Real> sub;     // A(ν, ν−1), entry 0 unused (the ν = 0 row has no ν−1 term)
  std::vector<Real> diag;    // A(ν, ν)
  std::vector<Real> super;   // A(ν, ν+1), last entry applies to the dropped boundary value
  std::vector<Real> b_diag;  // B(ν, ν)

  int rows() const { return int(diag.size()); }

  /// A·vals. vals may carry one extra trailing element, used as the boundary
  /// value ℛ(V+1); otherwise the Dirichlet zero is implied.
  std::vector<Real> apply_a(const std::vector<Real>& vals) const {
    int v = rows();
    if (int(vals.size()) != v && int(vals.size()) != v + 1)
      throw std::invalid_argument("BandedPencil::apply_a: size mismatch");
    std::vector<Real> out(std::size_t(v), Real(0));
    for (int nu = 0; nu < v; ++nu) {
      Real acc = diag[nu] * vals[nu];
      if (nu > 0) acc += sub[nu] * vals[nu - 1];
      if (nu + 1 < int(vals.size())) acc += super[nu] * vals[nu + 1];
      out[nu] = acc;
    }
    return out;
  }

  std::vector<Real> apply_b(const std::vector<Real>& vals) const {
    int v = rows();
    std::vector<Real> out(std::size_t(v), Real(0));
    for (int nu = 0; nu < v && nu < int(vals.size()); ++nu) out[nu] = b_diag[nu] * vals[nu];
    return out;
  }
};

using BandedPencil = BandedPencilT<double>;

template <typename Real>
BandedPencilT<Real> build_pencil(int j, Real lambda, Real alpha, int n_max) {
  if (n_max <= j) throw std::invalid_argument("build_pencil: need n_max > j");
  if (!(lambda > Real(0))) throw std::invalid_argument("build_pencil: need lambda > 0");
  BandedPencilT<Real> p;
  p.j = j;
  p.lambda = lambda;
  p.alpha = alpha;
  p.n_max = n_max;
  int v = n_max - j + 1;  // rows ν = 0..V, V = n_max − j
  p.sub.resize(v, Real(0));
  p.diag.resize(v, Real(0));
  p.super.resize(v, Real(0));
  p.b_diag.resize(v, Real(0));
  for (int nu = 0; nu < v; ++nu) {
    p.sub[nu] = Real(nu) / lambda;  // second difference reaches ℛ(ν−1) with weight ν/λ; vanishes at ν = 0
    p.diag[nu] = alpha - Real(2 * (nu + j + 1)) / lambda;
    p.super[nu] = Real(nu + 2 * j + 2) / lambda;
    p.b_diag[nu] = lambda * Real(nu + j + 1);
  }
  return p;
}

/// Weight making A symmetric: w(ν) A(ν,ν′) = w(ν′) A(ν′,ν) with
/// w(ν) = C(ν+2j+1, 2j+1) = μ_j(ν)·λ/B(ν).
inline BigInt pencil_symmetry_weight_exact(int j, int nu) { return binomial_exact(nu + 2 * j + 1, 2 * j + 1); }

/// Max-norm residual of A ℛ − κ² B ℛ together with the scale max|κ² B ℛ|.
/// vals may carry the boundary value ℛ(V+1) as one extra element.
template <typename Real>
struct PencilResidual {
  Real max_residual{};
  Real scale{};
};

template <typename Real>
PencilResidual<Real> pencil_residual(const BandedPencilT<Real>& p, const std::vector<Real>& vals,
                                     const Real& kappa2) {
  auto av = p.apply_a(vals);
  auto bv = p.apply_b(vals);
  PencilResidual<Real> r;
  for (int nu = 0; nu < p.rows(); ++nu) {
    Real resid = av[nu] - kappa2 * bv[nu];
    Real scale = kappa2 * bv[nu];
    if (resid < Real(0)) resid = -resid;
    if (scale < Real(0)) scale = -scale;
    if (resid > r.max_residual) r.max_residual = resid;
    if (scale > r.scale) r.scale = scale;
  }
  return r;
}

/// Componentwise relative backward error of A ℛ = κ² B ℛ: each row's residual
/// against the sum of magnitudes of the terms that formed it. Rows whose terms
/// all vanish contribute zero.
inline double pencil_componentwise_residual(const BandedPencilT<double>& p,
                                            const std::vector<double>& vals, double kappa2) {
  auto av = p.apply_a(vals);
  auto bv = p.apply_b(vals);
  double worst = 0.0;
  for (int nu = 0; nu < p.rows(); ++nu) {
    double resid = std::abs(av[nu] - kappa2 * bv[nu]);
    double den = std::abs(p.diag[nu] * vals[nu]) + std::abs(kappa2 * bv[nu]);
    if (nu > 0) den += std::abs(p.sub[nu] * vals[nu - 1]);
    if (nu + 1 < int(vals.size())) den += std::abs(p.super[nu] * vals[nu + 1]);
    if (den > 0.0) worst = std::max(worst, resid / den);
  }
  return worst;
}

/// One numerically solved bound state: κ² > 0, E = −κ²/2 in atomic units.
struct NumericBoundState {
  double kappa2 = 0.0;
  RadialSequence sequence;         // μ-normalized, sign-aligned to ℛ(0) > 0
  bool truncation_sensitive = false;  // κ² within 10× of the bound-state cut
};

/// Full solve of the symmetrized pencil (dense eigenvectors); bound states are
/// eigenvalues above kappa2_cut, returned deepest first.
std::vector<NumericBoundState> solve_bound_states(const BandedPencil& pencil, double kappa2_cut = 1e-8);

/// Largest `count` eigenvalues κ² of the pencil via Sturm bisection, descending;
/// eigenvalue-only, suitable for very large grids.
std::vector<double> pencil_top_eigenvalues(const BandedPencil& pencil, int count);

}  // namespace ncqm
