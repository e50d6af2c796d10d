#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <random>

#include "ncqm/analytic.hpp"

using namespace ncqm;
using Float50 = boost::multiprecision::cpp_bin_float_50;

TEST_SUITE("analytic") {
  TEST_CASE("kummer series: anchors") {
    CHECK(kummer_F(0.3, 1.7, 0.0) == 1.0);
    CHECK(kummer_F(-1.0, 2.0, 0.8) == doctest::Approx(1.0 - 0.4).epsilon(1e-14));
    // e^x = F(a, a; x)
    CHECK(kummer_F(1.5, 1.5, 2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS((void)kummer_F(1.0, -2.0, 1.0), std::domain_error);
  }

  TEST_CASE("kummer transformation on random in-scope parameters") {
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> ua(-12.0, 3.0), uc(1.5, 25.0), ux(-10.0, 10.0);
    for (int trial = 0; trial < 300; ++trial) {
      double a = trial % 3 == 0 ? -double(trial % 13) : ua(rng);
      double c = uc(rng);
      double x = ux(rng);
      double lhs = kummer_F(a, c, x);
      double rhs = std::exp(x) * kummer_F(c - a, c, -x);
      double scale = std::max({1e-30, std::abs(lhs), std::abs(rhs)});
      INFO("a=", a, " c=", c, " x=", x);
      CHECK(std::abs(lhs - rhs) / scale <= 1e-12);
    }
  }

  TEST_CASE("cancellation fallback engages and fixes the digits") {
    // F(14, 5, −10) loses ~12 digits in a double-precision sum
    auto ev = kummer_F_detailed(14.0, 5.0, -10.0);
    CHECK(ev.extended_precision);
    Float50 exact = kummer_series<Float50>(Float50(14), Float50(5), Float50(-10));
    CHECK(std::abs(ev.value - exact.convert_to<double>()) <=
          1e-14 * std::abs(exact.convert_to<double>()));
    auto tame = kummer_F_detailed(-2.0, 3.0, 1.5);
    CHECK(!tame.extended_precision);
  }

  TEST_CASE("ode map reproduces the deformed radial solution") {
    double lam = 0.37, kappa = 0.81, alpha = 2.0;
    int j = 1;
    auto sol = ode_to_hypergeometric(-lam * kappa * kappa, 2.0 * j + 2.0, -kappa * kappa,
                                     alpha - (j + 1) * lam * kappa * kappa, -1);
    NCParameters p = nc_parameters(lam, kappa);
    CHECK(sol.d_value == doctest::Approx(-2.0 * kappa * p.d).epsilon(1e-14));
    CHECK(sol.exp_rate == doctest::Approx(-p.b * kappa).epsilon(1e-13));
    CHECK(sol.a == doctest::Approx(j + 1 - alpha / (2.0 * p.d * kappa)).epsilon(1e-13));
    CHECK(sol.c == 2.0 * j + 2.0);

    // λ = 0 reduces to the commutative solution data
    auto flat = ode_to_hypergeometric(0.0, 2.0 * j + 2.0, -kappa * kappa, alpha, -1);
    CHECK(flat.exp_rate == doctest::Approx(-kappa).epsilon(1e-14));
    CHECK(flat.a == doctest::Approx(j + 1 - alpha / (2.0 * kappa)).epsilon(1e-13));
  }

  TEST_CASE("both branches of D give the same function") {
    std::mt19937 rng(3u);
    std::uniform_real_distribution<double> u(0.1, 1.5);
    for (int trial = 0; trial < 40; ++trial) {
      double a1 = -u(rng), b1 = 2.0 + 2.0 * (trial % 3), a2 = -u(rng), b2 = u(rng) + 1.0;
      auto minus = ode_to_hypergeometric(a1, b1, a2, b2, -1);
      auto plus = ode_to_hypergeometric(a1, b1, a2, b2, +1);
      for (double rho : {0.0, 0.3, 1.1, 2.7}) {
        double lhs = minus(rho), rhs = plus(rho);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::max(std::abs(lhs), std::abs(rhs))));
      }
    }
  }

  TEST_CASE("ode residual vanishes under high-precision finite differences") {
    // independent oracle: second differences of the evaluated solution in
    // 50-digit arithmetic, h far below double resolution
    std::mt19937 rng(5u);
    std::uniform_real_distribution<double> u(0.2, 1.2);
    for (int trial = 0; trial < 10; ++trial) {
      double a1 = -u(rng), b1 = 4.0, a2 = -u(rng) * u(rng), b2 = 1.0 + u(rng);
      auto sol = ode_to_hypergeometric(a1, b1, a2, b2, -1);
      auto eval = [&](const Float50& rho) {
        return exp(Float50(sol.exp_rate) * rho) *
               kummer_series<Float50>(Float50(sol.a), Float50(sol.c), Float50(-sol.d_value) * rho);
      };
      Float50 h("1e-12");
      for (double rho_d : {0.4, 1.0, 2.2}) {
        Float50 rho(rho_d);
        Float50 r0 = eval(rho), rp = eval(rho + h), rm = eval(rho - h);
        Float50 d1 = (rp - rm) / (2 * h);
        Float50 d2 = (rp - 2 * r0 + rm) / (h * h);
        Float50 resid = rho * d2 + (Float50(a1) * rho + Float50(b1)) * d1 +
                        (Float50(a2) * rho + Float50(b2)) * r0;
        INFO("trial=", trial, " rho=", rho_d);
        CHECK(std::abs(resid.convert_to<double>()) <= 1e-10);
      }
    }
  }

  TEST_CASE("nc parameters: limits and algebraic relations") {
    NCParameters flat = nc_parameters(0.0, 0.7);
    CHECK(flat.b == 1.0);
    CHECK(flat.d == 1.0);

    NCParameters p = nc_parameters(1.5, 1.0);  // η = 3/4
    CHECK(p.b == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p.d == doctest::Approx(1.25).epsilon(1e-15));

    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> u(0.01, 4.0);
    for (int t = 0; t < 50; ++t) {
      double lam = u(rng), kap = u(rng);
      NCParameters q = nc_parameters(lam, kap);
      CHECK(q.d - q.b == doctest::Approx(q.eta).epsilon(1e-13));
      CHECK(q.d * q.d - 1.0 == doctest::Approx(q.eta * q.eta).epsilon(1e-12));
      CHECK(q.b > 0.0);
      CHECK(q.b <= 1.0);
      CHECK(q.d >= 1.0);
    }
  }

  TEST_CASE("bound energies: commutative tower is exact, deformed values pinned") {
    CHECK(bound_energy(1, 0.0).energy == -0.5);
    CHECK(bound_energy(2, 0.0).energy == -1.0 / 8.0);
    CHECK(bound_energy(3, 0.0).energy == -1.0 / 18.0);
    for (int n = 1; n <= 8; ++n) CHECK(bound_energy(n, 0.0).energy == -1.0 / (2.0 * n * n));

    CHECK(bound_energy(1, std::sqrt(3.0)).energy == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));

    std::mt19937 rng(13u);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int t = 0; t < 60; ++t) {
      int n = 1 + t % 6;
      BoundEnergy be = bound_energy(n, u(rng));
      CHECK(be.quantization_residual <= 1e-14);
      CHECK(be.energy < 0.0);
    }
  }

  TEST_CASE("deformed energies increase with lambda and flatten as n grows") {
    for (int n : {1, 2, 5}) {
      double prev = bound_energy(n, 0.0).energy;
      for (double lam : {0.5, 1.0, 2.0, 4.0}) {
        double e = bound_energy(n, lam).energy;
        CHECK(e > prev);
        prev = e;
      }
    }
    double lam = 2.0;
    double prev_ratio = 0.0;
    for (int n : {1, 2, 4, 8, 16, 32}) {
      double ratio = bound_energy(n, lam).energy / commutative_energy(n);
      CHECK(ratio > prev_ratio);
      prev_ratio = ratio;
    }
    CHECK(prev_ratio > 0.999);
  }

  TEST_CASE("radial polynomial coefficients: anchors and the series oracle") {
    auto c10 = radial_polynomial_coeffs(1, 0);
    REQUIRE(c10.size() == 1);
    CHECK(c10[0] == Rational(1));

    auto c20 = radial_polynomial_coeffs(2, 0);
    REQUIRE(c20.size() == 2);
    CHECK(c20[1] == Rational(1, 2));

    auto c30 = radial_polynomial_coeffs(3, 0);
    REQUIRE(c30.size() == 3);
    CHECK(c30[1] == Rational(1));
    CHECK(c30[2] == Rational(1, 3));

    // Pochhammer series of F(j+1−n, 2j+2; x): term_k = (a)_k/(c)_k x^k/k!,
    // and the stored form is term_k = c^k (−x)^k/k!  =>  c^k = (−1)^k (a)_k/(c)_k.
    for (int n = 1; n <= 8; ++n) {
      for (int j = 0; j < n; ++j) {
        auto ck = radial_polynomial_coeffs(n, j);
        Rational poch(1);
        for (int k = 0; k < int(ck.size()); ++k) {
          INFO("n=", n, " j=", j, " k=", k);
          CHECK(ck[k] == (k % 2 == 0 ? poch : Rational(-poch)));
          poch = poch * Rational(j + 1 - n + k) / Rational(2 * j + 2 + k);
        }
      }
    }
    CHECK_THROWS_AS((void)radial_polynomial_coeffs(2, 2), std::invalid_argument);
  }

  TEST_CASE("ground-state profile is pure geometric decay") {
    double lam = 0.25;
    BoundEnergy be = bound_energy(1, lam);
    NCParameters p = nc_parameters(lam, be.kappa);
    double g = 1.0 - p.b * be.kappa * lam;
    auto seq = analytic_radial_sequence(1, 0, lam, 40);
    double expect = 1.0;
    for (int nu = 0; nu <= 40; ++nu) {
      CHECK(seq.values[nu] == doctest::Approx(expect).epsilon(1e-13));
      expect *= g;
    }
  }

  TEST_CASE("lattice samples converge to the commutative radial function") {
    double lam = 1e-3;
    for (auto [n, j] : std::vector<std::pair<int, int>>{{1, 0}, {2, 0}, {2, 1}, {3, 1}}) {
      auto seq = analytic_radial_sequence(n, j, lam, 6000);
      for (double r : {0.5, 1.0, 2.0, 4.0}) {
        int nu = int(r / lam);
        double lattice = seq.values[nu];
        double continuum = commutative_radial(n, j, lam * nu);
        INFO("n=", n, " j=", j, " r=", r);
        CHECK(std::abs(lattice - continuum) <= 5e-3 * std::max(0.05, std::abs(continuum)));
      }
    }
  }

  TEST_CASE("normalization: unit norm, stability, tail bound, orthogonality") {
    double lam = 0.1;
    auto nz = normalization_constant(1, 0, lam, 400);
    CHECK(nz.tail_ok);
    auto seq = analytic_radial_sequence(1, 0, lam, 400);
    for (auto& v : seq.values) v *= nz.constant;
    CHECK(sequence_norm(seq) == doctest::Approx(1.0).epsilon(1e-12));

    auto nz2 = normalization_constant(1, 0, lam, 800);
    CHECK(std::abs(nz.constant - nz2.constant) <= 1e-10 * nz2.constant);

    // distinct n, same j: μ-orthogonal after normalization
    auto s1 = analytic_radial_sequence(1, 0, lam, 800);
    auto s2 = analytic_radial_sequence(2, 0, lam, 800);
    double c1 = normalization_constant(1, 0, lam, 800).constant;
    double c2 = normalization_constant(2, 0, lam, 800).constant;
    for (auto& v : s1.values) v *= c1;
    for (auto& v : s2.values) v *= c2;
    CHECK(std::abs(sequence_dot(s1, s2)) <= 1e-10);
  }

  TEST_CASE("sequences reject invalid arguments, warn path reachable") {
    CHECK_THROWS_AS((void)analytic_radial_sequence(2, 2, 0.1, 50), std::invalid_argument);
    auto shallow = normalization_constant(1, 0, 0.1, 20);  // box far too small
    CHECK(!shallow.tail_ok);
  }
}
