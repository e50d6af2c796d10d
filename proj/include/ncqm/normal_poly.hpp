#pragma once

#include <stdexcept>
#include <vector>

#include "ncqm/scalars.hpp"

namespace ncqm {

/// Coefficients (c_k) of a normal-ordered radial polynomial :Σ c_k ϱ^k:, with
/// ϱ = λ N̂ so that :ϱ^k: has eigenvalue λ^k N!/(N-k)! on a level-N state.
/// C is double for numerics or Rational for exact work.
template <typename C>
struct NormalOrderedPoly {
  C lambda{};
  std::vector<C> coeffs;  // coeffs[k] multiplies ϱ^k

  NormalOrderedPoly() = default;
  NormalOrderedPoly(C lam, std::vector<C> c) : lambda(std::move(lam)), coeffs(std::move(c)) { trim(); }

  static NormalOrderedPoly monomial(C lam, int k, C coeff = C(1)) {
    std::vector<C> c(k + 1, C(0));
    c[k] = std::move(coeff);
    return NormalOrderedPoly(std::move(lam), std::move(c));
  }

  int degree() const { return int(coeffs.size()) - 1; }  // -1 for the zero polynomial

  void trim() {
    while (!coeffs.empty() && coeffs.back() == C(0)) coeffs.pop_back();
  }

  C coeff(int k) const { return (k >= 0 && k < int(coeffs.size())) ? coeffs[k] : C(0); }

  /// Value on a level-N subspace: Σ_k c_k λ^k N!/(N-k)!.
  C eval_level(int level) const {
    C value(0);
    C lam_pow(1);
    C falling(1);  // level!/(level-k)! built incrementally
    for (int k = 0; k < int(coeffs.size()); ++k) {
      if (k > level) break;  // higher powers annihilate the level
      value += coeffs[k] * lam_pow * falling;
      lam_pow = lam_pow * lambda;
      falling = falling * C(level - k);
    }
    return value;
  }
};

/// d/dϱ at the coefficient level; the prime is the ordinary derivative.
template <typename C>
NormalOrderedPoly<C> poly_derivative(const NormalOrderedPoly<C>& p) {
  std::vector<C> out;
  for (int k = 1; k <= p.degree(); ++k) out.push_back(C(k) * p.coeffs[k]);
  return {p.lambda, std::move(out)};
}

/// Left multiplication by ϱ̂:  ϱ̂ :R: = :ϱR + λ ϱR': .
template <typename C>
NormalOrderedPoly<C> poly_multiply_by_rho(const NormalOrderedPoly<C>& p) {
  int d = p.degree();
  std::vector<C> out(std::size_t(d + 2), C(0));
  for (int k = 0; k <= d + 1; ++k) out[k] = p.coeff(k - 1) + p.lambda * C(k) * p.coeff(k);
  return {p.lambda, std::move(out)};
}

/// Radial part of the (sign-flipped, λ-scaled) Laplacian double commutator on a
/// spin-j operator wavefunction:  R -> ϱR'' + 2(j+1)R'.
template <typename C>
NormalOrderedPoly<C> radial_laplacian_coeffs(const NormalOrderedPoly<C>& p, int j) {
  int d = p.degree();
  if (d < 1) return {p.lambda, {}};
  std::vector<C> out(std::size_t(d), C(0));
  for (int k = 0; k <= d - 1; ++k) out[k] = C((k + 1) * (k + 2 * j + 2)) * p.coeffs[k + 1];
  return {p.lambda, std::move(out)};
}

/// Radial part of left multiplication by r̂ on a spin-j operator wavefunction:
/// R -> (ϱ + λj + λ)R + λ ϱR'.
template <typename C>
NormalOrderedPoly<C> radius_multiply_coeffs(const NormalOrderedPoly<C>& p, int j) {
  int d = p.degree();
  std::vector<C> out(std::size_t(d + 2), C(0));
  for (int k = 0; k <= d + 1; ++k) out[k] = p.coeff(k - 1) + p.lambda * C(k + j + 1) * p.coeff(k);
  NormalOrderedPoly<C> r{p.lambda, std::move(out)};
  r.trim();
  return r;
}

/// Residual coefficients of the operator radial equation
///   ϱR'' + 2(j+1)R' + αR − κ²[ϱR + λ(j+1)R + λϱR'];
/// the zero polynomial iff R solves it.
template <typename C>
NormalOrderedPoly<C> radial_equation_residual_coeffs(const NormalOrderedPoly<C>& p, int j,
                                                     const C& alpha, const C& kappa2) {
  NormalOrderedPoly<C> res = radial_laplacian_coeffs(p, j);
  NormalOrderedPoly<C> weight = radius_multiply_coeffs(p, j);
  int d = std::max(res.degree(), std::max(p.degree(), weight.degree()));
  std::vector<C> out(std::size_t(d + 1), C(0));
  for (int k = 0; k <= d; ++k) out[k] = res.coeff(k) + alpha * p.coeff(k) - kappa2 * weight.coeff(k);
  NormalOrderedPoly<C> r{p.lambda, std::move(out)};
  r.trim();
  return r;
}

}  // namespace ncqm
