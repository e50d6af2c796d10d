#pragma once

#include <vector>

#include "ncqm/check.hpp"
#include "ncqm/scalars.hpp"

namespace ncqm {

struct VerifyOptions {
  int n_max = 30;
  double lambda = 1.0;        // float-mode length parameter
  Rational lambda_exact = 1;  // exact-mode length parameter
  bool exact = false;
  double tolerance = 1e-12;   // relative tolerance of the float-mode identity checks
  unsigned seed = 20260808;   // for the random-operator hermiticity probes
};

/// Coordinate commutators, [x̂_i, ϱ̂] and r̂² − x̂² = λ².
std::vector<Check> verify_coordinate_algebra(const VerifyOptions& opt);

/// Ladder/number-operator identities of normal-ordered powers, the
/// independent multinomial construction of :N̂^k:, and the radial reductions
/// of the double commutator and of r̂-multiplication.
std::vector<Check> verify_normal_ordering(const VerifyOptions& opt);

/// L3/L² eigenrelations, low-level support, orthogonality, norm closed form.
std::vector<Check> verify_wavefunctions(const VerifyOptions& opt);

/// Weighted-inner-product self-adjointness of the Laplacian, the potential and
/// the rotation generators on random interior-supported operators. Float only.
std::vector<Check> verify_hermiticity(const VerifyOptions& opt);

/// Poisson recurrence, closed form, double-commutator residual, source strength.
std::vector<Check> verify_poisson(const VerifyOptions& opt);

/// Σ_{n=0..N} C(n+j, j) C(N−n, j) = C(N+j+1, 2j+1), exact integers.
std::vector<Check> verify_binomial_identity(int n_cap = 30, int j_cap = 10);

/// Every suite applicable to the selected mode.
std::vector<Check> run_verification(const VerifyOptions& opt);

}  // namespace ncqm
