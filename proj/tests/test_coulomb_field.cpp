#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "ncqm/coulomb_field.hpp"
#include "ncqm/fock_algebra.hpp"

using namespace ncqm;
using OpX = OperatorMatrix<GaussianRational>;

TEST_SUITE("coulomb_field") {
  TEST_CASE("poisson solve: constants, closed form, recurrence") {
    auto flat = poisson_solve<Rational>(Rational(0), Rational(3, 7), Rational(1), 20);
    for (const auto& v : flat.values) CHECK(v == Rational(3, 7));

    Rational lam(2, 3);
    auto pot = poisson_solve<Rational>(lam, Rational(0), lam, 25);  // q = λ
    for (int n = 0; n <= 25; ++n) CHECK(pot.values[n] == Rational(-1, n + 1));
    CHECK(poisson_recurrence_residual(pot) == Rational(0));
  }

  TEST_CASE("recurrence solutions with q0 = 0 are forced to -q/(lambda(N+1))") {
    std::mt19937 rng(17u);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 12);
    Rational lam(5, 4);
    for (int t = 0; t < 25; ++t) {
      Rational q(num(rng), den(rng));
      auto pot = poisson_solve<Rational>(q, Rational(0), lam, 30);
      for (int n = 0; n <= 30; ++n) CHECK(pot.values[n] == Rational(-q / (lam * Rational(n + 1))));
    }
  }

  TEST_CASE("potential is harmonic away from the origin, source sits at level 0") {
    Rational lam(1);
    Rational q(2, 3);
    FockAlgebra<ExactMode> alg(10, lam);
    auto pot = poisson_solve<Rational>(q, Rational(1, 9), lam, 10);
    OpX v = OpX::diagonal(alg.basis_ptr(),
                          [&](const FockState& s) { return GaussianRational(pot.values[s.level()]); });
    OpX dc = alg.ladder_double_commutator(v);
    for (int level = 1; level <= dc.valid_level(); ++level)
      for (int i = FockBasis::level_offset(level); i < FockBasis::level_offset(level + 1); ++i)
        for (const auto& e : dc.row(i)) CHECK(scalar_abs(e.second) == 0.0);
    CHECK(dc.coeff(0, 0) == GaussianRational(Rational(-q / lam)));
  }

  TEST_CASE("electric field: diagonal of E², classical falloff, covariance") {
    Rational lam(1, 2);
    Rational charge(3);
    FockAlgebra<ExactMode> alg(9, lam);
    auto e = electric_field_ops(alg, charge);

    OpX esq = OpX::zero(alg.basis_ptr());
    for (const auto& ej : e) esq += ej * ej;
    for (int i = 0; i < alg.basis().dimension(); ++i) {
      int level = alg.basis().level_of(i);
      if (level == 0) continue;
      Rational expect = charge * charge /
                        (int_pow(lam, 4) * Rational(level) * Rational(level + 1) *
                         Rational(level + 1) * Rational(level + 2));
      CHECK(esq.coeff(i, i) == GaussianRational(expect));
      for (const auto& entry : esq.row(i)) CHECK(entry.first == i);  // diagonal
    }
    CHECK(esq.coeff(0, 0) == GaussianRational(Rational(0)));
    CHECK_THROWS_AS((void)electric_field_squared_level(1.0, 1.0, 0), std::domain_error);

    // E² r⁴ / charge² = 1 + 1/(N(N+2)) -> 1
    for (int level : {10, 100, 2000}) {
      double val = electric_field_squared_level(2.0, 0.7, level);
      double r = 0.7 * (level + 1);
      CHECK(val * r * r * r * r / 4.0 ==
            doctest::Approx(1.0 + 1.0 / (double(level) * (level + 2))).epsilon(1e-12));
    }

    // rotational covariance L_i E_j = i eps_ijk E_k, exactly
    for (int i = 1; i <= 3; ++i) {
      for (int jx = 1; jx <= 3; ++jx) {
        OpX lhs = alg.rotation_apply(i, e[jx - 1]);
        if (i == jx) {
          CHECK(lhs.is_zero());
          continue;
        }
        int k = 6 - i - jx;
        int sign = ((jx - i + 3) % 3 == 1) ? 1 : -1;
        OpX rhs = e[k - 1].scaled(GaussianRational::unit_imag() * GaussianRational(Rational(sign)));
        CHECK((lhs - rhs).is_zero());
      }
    }
  }

  TEST_CASE("self energy: exact telescoping sum and the reported scales") {
    CHECK(self_energy_partial_sum_exact(1) == Rational(1, 3));
    for (int k : {1, 7, 100, 5000}) {
      Rational remainder = (Rational(1, k + 1) + Rational(1, k + 2)) / 2;
      CHECK(self_energy_partial_sum_exact(k) + remainder == Rational(3, 4));
    }
    CHECK(to_double(Rational(3, 4) - self_energy_partial_sum_exact(1000)) <= 1e-3);

    auto rep = self_energy_lambda0(PhysicalConstants::defaults());
    CHECK(rep.trace_sum == Rational(3, 4));
    CHECK(rep.lambda0_over_r0 == Rational(3, 8));
    CHECK(std::abs(rep.lambda0_m - 1.06e-15) <= 0.01 * 1.06e-15);
    CHECK(std::abs(rep.a0_m - 5.29e-11) <= 0.005 * 5.29e-11);
    double alpha = PhysicalConstants::defaults().fine_structure();
    CHECK(std::abs(alpha - 1.0 / 137.036) <= 1e-4 * alpha);
    CHECK(rep.lambda0_over_a0 == doctest::Approx(0.375 * alpha * alpha).epsilon(1e-10));
    CHECK(rep.level_shift_rel_n1 < 1e-9);  // far below spectroscopy, as reported
  }

  TEST_CASE("ball volume: single level, scaling, continuum approach") {
    auto v0 = ball_volume(0, 0.5);
    const double pi = 3.14159265358979323846;
    CHECK(v0.volume == doctest::Approx(4.0 * pi * 0.125));
    CHECK(v0.volume / v0.continuum == doctest::Approx(3.0));

    auto a = ball_volume(37, 1.0);
    auto b = ball_volume(37, 2.0);
    CHECK(b.volume == doctest::Approx(8.0 * a.volume).epsilon(1e-13));

    double prev = 1.0;
    for (int level : {10, 100, 1000, 10000}) {
      auto v = ball_volume(level, 0.3);
      CHECK(v.rel_dev == doctest::Approx(1.5 / (level + 1)).epsilon(0.05));
      CHECK(v.rel_dev < prev);
      prev = v.rel_dev;
      CHECK(v.rel_dev_upper_variant < 10.0 / (level + 1));
    }
    CHECK(ball_volume(10000, 1.0).rel_dev <= 2e-4);
  }

  TEST_CASE("constants file round trip and validation") {
    std::string path = "/tmp/ncqm_constants_test.txt";
    {
      std::ofstream out(path);
      out << "# overrides\n";
      out << "electron_mass = 9.2e-31\n";
      out << "hbar = 1.054571817e-34\n";
    }
    auto c = PhysicalConstants::from_file(path);
    CHECK(c.electron_mass_kg == 9.2e-31);
    CHECK(c.elementary_charge_c == PhysicalConstants::defaults().elementary_charge_c);
    {
      std::ofstream out(path);
      out << "speed_of_lite = 3e8\n";
    }
    CHECK_THROWS_AS((void)PhysicalConstants::from_file(path), std::runtime_error);
    CHECK_THROWS_AS((void)PhysicalConstants::from_file("/tmp/definitely_missing_ncqm.txt"),
                    std::runtime_error);
    std::remove(path.c_str());
  }
}
