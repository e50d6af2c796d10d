#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncqm/check.hpp"
#include "ncqm/fock_basis.hpp"
#include "ncqm/normal_poly.hpp"
#include "ncqm/operator_matrix.hpp"
#include "ncqm/scalars.hpp"

namespace ncqm {

/// Floating-point arithmetic in the orthonormal occupation basis:
/// a|n> = sqrt(n)|n-1>, a†|n> = sqrt(n+1)|n+1>.
struct FloatMode {
  using Scalar = std::complex<double>;
  using Real = double;
  static constexpr bool exact = false;
  static Real annihilate_factor(int n) { return std::sqrt(double(n)); }
  static Real create_factor(int n) { return std::sqrt(double(n + 1)); }
  static Real gram(const FockState&) { return 1.0; }
  static Scalar unit_imag() { return {0.0, 1.0}; }
};

/// Exact rational arithmetic in the monomial (Bargmann) scaling |n> = (a†)^n|0>,
/// where every ladder matrix element is an integer and the basis Gram matrix is
/// diagonal with entries n1! n2!. Operator identities are similarity invariant,
/// so residuals vanish here iff they vanish in the orthonormal basis.
struct ExactMode {
  using Scalar = GaussianRational;
  using Real = Rational;
  static constexpr bool exact = true;
  static Real annihilate_factor(int n) { return Rational(n); }
  static Real create_factor(int) { return Rational(1); }
  static Real gram(const FockState& s) {
    return Rational(factorial_exact(s.n1) * factorial_exact(s.n2));
  }
  static Scalar unit_imag() { return GaussianRational::unit_imag(); }
};

enum class LadderKind { annihilate, create };

/// The truncated auxiliary Fock space with its coordinate operators, rotation
/// generators and radial superoperators. Mode selects float/exact arithmetic.
template <typename Mode>
class FockAlgebra {
 public:
  using Scalar = typename Mode::Scalar;
  using Real = typename Mode::Real;
  using Op = OperatorMatrix<Scalar>;
  using Poly = NormalOrderedPoly<Real>;

  FockAlgebra(int n_max, Real lambda)
      : basis_(std::make_shared<const FockBasis>(n_max)), lambda_(std::move(lambda)) {
    for (int mode = 1; mode <= 2; ++mode) {
      a_[mode - 1] = std::make_unique<Op>(ladder_matrix(mode, LadderKind::annihilate));
      adag_[mode - 1] = std::make_unique<Op>(ladder_matrix(mode, LadderKind::create));
    }
    // su(2) bilinears a† σ_j a; x̂_j = λ T_j
    t_[0] = std::make_unique<Op>(*adag_[0] * *a_[1] + *adag_[1] * *a_[0]);
    t_[1] = std::make_unique<Op>((*adag_[1] * *a_[0] - *adag_[0] * *a_[1]).scaled(Mode::unit_imag()));
    t_[2] = std::make_unique<Op>(Op::diagonal(basis_, [](const FockState& s) { return Scalar(Real(s.n1 - s.n2)); }));
  }

  const FockBasis& basis() const { return *basis_; }
  const FockBasisPtr& basis_ptr() const { return basis_; }
  int n_max() const { return basis_->n_max(); }
  const Real& lambda() const { return lambda_; }

  /// Matrix of â_mode or â†_mode. Raising out of the truncated space drops the
  /// affected rows; every stored block matches the untruncated operator.
  Op ladder_matrix(int mode, LadderKind kind) const {
    if (mode != 1 && mode != 2) throw std::invalid_argument("ladder_matrix: mode must be 1 or 2");
    Op m(basis_);
    for (int i = 0; i < basis_->dimension(); ++i) {
      const FockState& s = basis_->state(i);
      int occ = (mode == 1) ? s.n1 : s.n2;
      if (kind == LadderKind::annihilate) {
        if (occ == 0) continue;
        int r = (mode == 1) ? basis_->index_of(s.n1 - 1, s.n2) : basis_->index_of(s.n1, s.n2 - 1);
        m.add_entry(r, i, Scalar(Mode::annihilate_factor(occ)));
      } else {
        if (s.level() >= basis_->n_max()) continue;  // truncation-lossy top level
        int r = (mode == 1) ? basis_->index_of(s.n1 + 1, s.n2) : basis_->index_of(s.n1, s.n2 + 1);
        m.add_entry(r, i, Scalar(Mode::create_factor(occ)));
      }
    }
    m.compress();
    return m;
  }

  const Op& annihilator(int mode) const { return *a_[mode - 1]; }
  const Op& creator(int mode) const { return *adag_[mode - 1]; }
  const Op& su2_generator(int axis) const { return *t_[axis - 1]; }  // a† σ_axis a

  Op coordinate(int axis) const { return su2_generator(axis).scaled(Scalar(lambda_)); }

  struct CoordinateSet {
    Op x1, x2, x3, number, radius;
  };

  /// x̂_j = λ a†σ_j a, N̂ and r̂ = λ(N̂+1), all level-conserving and exact on
  /// the whole truncated space.
  CoordinateSet coordinate_ops() const {
    return {coordinate(1), coordinate(2), coordinate(3), number_op(), radius_op()};
  }

  Op number_op() const {
    return Op::diagonal(basis_, [](const FockState& s) { return Scalar(Real(s.level())); });
  }
  Op rho_op() const {
    return Op::diagonal(basis_, [this](const FockState& s) { return Scalar(lambda_ * Real(s.level())); });
  }
  Op radius_op() const {
    return Op::diagonal(basis_, [this](const FockState& s) { return Scalar(lambda_ * Real(s.level() + 1)); });
  }

  /// Diagonal of :N̂^k: (eigenvalue N!/(N-k)!).
  Op normal_power(int k) const {
    return Op::diagonal(basis_, [k](const FockState& s) {
      if constexpr (Mode::exact) {
        return Scalar(Rational(normal_ordered_eval(k, s.level())));
      } else {
        return Scalar(normal_ordered_eval_d(k, s.level()));
      }
    });
  }

  static Op commutator(const Op& x, const Op& y) { return x * y - y * x; }

  /// Rotation generator: L_axis ψ = (1/2)[a† σ_axis a, ψ].
  Op rotation_apply(int axis, const Op& psi) const {
    return commutator(su2_generator(axis), psi).scaled(Scalar(Real(1) / Real(2)));
  }

  /// Σ_i L_i² as a superoperator.
  Op angular_momentum_squared(const Op& psi) const {
    Op out = Op::zero(basis_);
    for (int axis = 1; axis <= 3; ++axis) out += rotation_apply(axis, rotation_apply(axis, psi));
    return out;
  }

  /// Σ_α [a†_α, [a_α, ψ]]. The result needs ψ one level above each trusted
  /// block, so its valid_level drops by one.
  Op ladder_double_commutator(const Op& psi) const {
    Op acc = Op::zero(basis_);
    for (int alpha = 0; alpha < 2; ++alpha) {
      Op inner = *a_[alpha] * psi - psi * *a_[alpha];
      acc += *adag_[alpha] * inner - inner * *adag_[alpha];
    }
    acc.set_valid_level(std::min(psi.valid_level(), basis_->n_max()) - 1);
    return acc;
  }

  /// Δ_λ ψ = −(1/(λ² (N̂+1))) Σ_α [a†_α, [a_α, ψ]].
  Op laplacian_apply(const Op& psi) const {
    Op dc = ladder_double_commutator(psi);
    Real lam2 = lambda_ * lambda_;
    Op out = dc.left_diagonal_scaled(
        [&](int level) { return Scalar(-(Real(1) / (lam2 * Real(level + 1)))); });
    out.set_valid_level(dc.valid_level());
    return out;
  }

  /// r̂ ψ (left multiplication by the radius).
  Op radius_multiply(const Op& psi) const {
    return psi.left_diagonal_scaled([&](int level) { return Scalar(lambda_ * Real(level + 1)); });
  }

  /// V(N̂) ψ with V(N̂) = −q/(λ(N̂+1)) (the q0 = 0 Coulomb choice).
  Op coulomb_apply(const Op& psi, const Real& q) const {
    return psi.left_diagonal_scaled([&](int level) { return Scalar(-q / (lambda_ * Real(level + 1))); });
  }

  Op potential_op(const Real& q, const Real& q0) const {
    return Op::diagonal(basis_, [&](const FockState& s) {
      return Scalar(q0 - q / (lambda_ * Real(s.level() + 1)));
    });
  }

  /// Spin-j operator wavefunction with radial profile :R(ϱ̂): —
  ///   λ^j Σ (a†1)^{m1}(a†2)^{m2}/(m1! m2!) :R: a1^{n1}(−a2)^{n2}/(n1! n2!)
  /// over m1+m2 = n1+n2 = j, m1−m2−n1+n2 = 2m. Vanishes on levels < j.
  Op operator_wavefunction(int j, int m, const Poly& radial) const {
    if (j < 0) throw std::invalid_argument("operator_wavefunction: j must be >= 0");
    if (m < -j || m > j) throw std::invalid_argument("operator_wavefunction: m outside [-j, j]");
    if (radial.degree() > basis_->n_max() - j)
      throw std::invalid_argument("operator_wavefunction: radial degree exceeds truncation margin");
    if (!(radial.lambda == lambda_))
      throw std::invalid_argument("operator_wavefunction: radial length scale differs from algebra lambda");

    Op diag_r = Op::diagonal(basis_, [&](const FockState& s) { return Scalar(radial.eval_level(s.level())); });

    // incremental ladder powers
    std::vector<Op> pow_c1{Op::identity(basis_)}, pow_c2{Op::identity(basis_)};
    std::vector<Op> pow_a1{Op::identity(basis_)}, pow_a2{Op::identity(basis_)};
    for (int p = 1; p <= j; ++p) {
      pow_c1.push_back(*adag_[0] * pow_c1.back());
      pow_c2.push_back(*adag_[1] * pow_c2.back());
      pow_a1.push_back(*a_[0] * pow_a1.back());
      pow_a2.push_back(*a_[1] * pow_a2.back());
    }

    Real lam_j = int_pow(lambda_, j);
    Op result = Op::zero(basis_);
    for (int m1 = std::max(0, m); m1 <= std::min(j, j + m); ++m1) {
      int m2 = j - m1;
      int n1 = m1 - m;
      int n2 = j - n1;
      Op term = pow_c1[m1] * pow_c2[m2] * diag_r * pow_a1[n1] * pow_a2[n2];
      Real denom = real_factorial(m1) * real_factorial(m2) * real_factorial(n1) * real_factorial(n2);
      Real coef = lam_j / denom;
      if (n2 % 2 != 0) coef = -coef;
      result += term.scaled(Scalar(coef));
    }
    result.set_valid_level(basis_->n_max());  // exact at every stored level
    return result;
  }

  /// Mode-aware operator adjoint: plain conjugate transpose in the orthonormal
  /// basis, Gram-corrected in the monomial scaling.
  Op adjoint(const Op& op) const {
    Op out(basis_);
    out.set_valid_level(op.valid_level());
    for (int k = 0; k < op.dim(); ++k) {
      Real gk = Mode::gram(basis_->state(k));
      for (const auto& e : op.row(k)) {
        Real gi = Mode::gram(basis_->state(e.first));
        out.add_entry(e.first, k, Scalar(gk / gi) * scalar_conj(e.second));
      }
    }
    out.compress();
    return out;
  }

  /// Tr[(N̂+1) φ† ψ] — the weighted Hilbert–Schmidt pairing without the 4πλ³ front factor.
  Scalar hs_trace(const Op& phi, const Op& psi) const {
    Scalar acc(0);
    for (int k = 0; k < phi.dim(); ++k) {
      const auto& pr = phi.row(k);
      const auto& qr = psi.row(k);
      if (pr.empty() || qr.empty()) continue;
      Real gk = Mode::gram(basis_->state(k));
      std::size_t ia = 0, ib = 0;
      while (ia < pr.size() && ib < qr.size()) {
        if (pr[ia].first < qr[ib].first) {
          ++ia;
        } else if (qr[ib].first < pr[ia].first) {
          ++ib;
        } else {
          int i = pr[ia].first;
          Real w = Real(basis_->level_of(i) + 1) * gk / Mode::gram(basis_->state(i));
          acc += Scalar(w) * scalar_conj(pr[ia].second) * qr[ib].second;
          ++ia;
          ++ib;
        }
      }
    }
    return acc;
  }

  /// Radial values ℛ(ν), ν = level − j, recovered from the matrix elements
  /// <j, L−j| op |0, L> of an operator of spin-(j, m=j) wavefunction form.
  std::vector<Scalar> extract_radial(const Op& op, int j) const {
    std::vector<Scalar> out;
    Real lam_j = int_pow(lambda_, j);
    Real fact_j_sq = real_factorial(j) * real_factorial(j);
    for (int level = j; level <= op.valid_level(); ++level) {
      int row = basis_->index_of(j, level - j);
      int col = basis_->index_of(0, level);
      Scalar raw = op.coeff(row, col);
      Real f;
      if constexpr (Mode::exact) {
        f = Rational(normal_ordered_eval(j, level));  // L!/(L−j)!
      } else {
        f = std::sqrt(normal_ordered_eval_d(j, level) * normal_ordered_eval_d(j, j));
      }
      Real factor = lam_j * f / fact_j_sq;
      if (j % 2 != 0) factor = -factor;
      out.push_back(Scalar(Real(1) / factor) * raw);
    }
    return out;
  }

  static Real real_factorial(int n) {
    Real f(1);
    for (int t = 2; t <= n; ++t) f = f * Real(t);
    return f;
  }

 private:
  FockBasisPtr basis_;
  Real lambda_;
  std::array<std::unique_ptr<Op>, 2> a_, adag_;
  std::array<std::unique_ptr<Op>, 3> t_;
};

/// Rotationally invariant trace weight w(N) = 4πλ²·r = 4πλ³(N+1), chosen so
/// that fuzzy balls carry the standard volume at large radius.
inline double hs_weight(int level, double lambda) {
  const double pi = 3.14159265358979323846;
  return 4.0 * pi * lambda * lambda * lambda * double(level + 1);
}

/// ‖ψ̂‖² convention: 4πλ³ Tr[(N̂+1) ψ̂†ψ̂]. Float mode only; exact-mode callers
/// keep the 4π symbolic via hs_trace.
inline std::complex<double> weighted_inner(const FockAlgebra<FloatMode>& alg,
                                           const OperatorMatrix<std::complex<double>>& phi,
                                           const OperatorMatrix<std::complex<double>>& psi) {
  const double pi = 3.14159265358979323846;
  double lam = alg.lambda();
  return 4.0 * pi * lam * lam * lam * alg.hs_trace(phi, psi);
}

/// Residuals of the coordinate algebra: [x̂_i, x̂_j] = 2iλ ε_ijk x̂_k,
/// [x̂_i, ϱ̂] = 0 and r̂² − Σ x̂_j² = λ². Takes the operators explicitly so a
/// corrupted set can be checked as a negative control.
template <typename Mode>
std::vector<Check> check_coordinate_algebra(const FockAlgebra<Mode>& alg,
                                            const std::array<OperatorMatrix<typename Mode::Scalar>, 3>& x,
                                            const OperatorMatrix<typename Mode::Scalar>& rho,
                                            const OperatorMatrix<typename Mode::Scalar>& r,
                                            double rel_tol = 1e-12) {
  using Scalar = typename Mode::Scalar;
  using Real = typename Mode::Real;
  using Op = OperatorMatrix<Scalar>;
  std::vector<Check> checks;

  auto levi = [](int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;  // cyclic (i,j,k) of (0,1,2) -> +1
  };

  double scale = 1.0;
  for (const auto& xi : x) scale = std::max(scale, xi.max_abs());
  double tol = Mode::exact ? 0.0 : rel_tol * scale * scale;

  Scalar two_i_lambda = Scalar(Real(2) * alg.lambda()) * Mode::unit_imag();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Op resid = FockAlgebra<Mode>::commutator(x[i], x[j]);
      for (int k = 0; k < 3; ++k) {
        int e = levi(i, j, k);
        if (e == 0) continue;
        resid -= x[k].scaled(two_i_lambda * Scalar(Real(e)));
      }
      checks.push_back(make_check("coordinate-commutator[" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + "]",
                                  resid.max_abs(), tol));
    }
    Op c = FockAlgebra<Mode>::commutator(x[i], rho);
    checks.push_back(make_check("coordinate-rho-commutator[" + std::to_string(i + 1) + "]",
                                c.max_abs(), tol));
  }

  Op rsq = r * r;
  for (const auto& xi : x) rsq -= xi * xi;
  Real lam2 = alg.lambda() * alg.lambda();
  rsq -= Op::identity(alg.basis_ptr()).scaled(Scalar(lam2));
  checks.push_back(make_check("radius-square-identity", rsq.max_abs(), tol));
  return checks;
}

template <typename Mode>
std::vector<Check> check_coordinate_algebra(const FockAlgebra<Mode>& alg, double rel_tol = 1e-12) {
  std::array<OperatorMatrix<typename Mode::Scalar>, 3> x{alg.coordinate(1), alg.coordinate(2),
                                                         alg.coordinate(3)};
  return check_coordinate_algebra(alg, x, alg.rho_op(), alg.radius_op(), rel_tol);
}

}  // namespace ncqm
