#include <doctest.h>

#include <complex>
#include <memory>

#include "ncqm/operator_matrix.hpp"

using namespace ncqm;
using Cd = std::complex<double>;

TEST_SUITE("operator_matrix") {
  TEST_CASE("compress merges duplicates and drops zeros") {
    auto basis = std::make_shared<const FockBasis>(2);
    OperatorMatrix<Cd> m(basis);
    m.add_entry(0, 1, {1.0, 0.0});
    m.add_entry(0, 1, {2.0, 0.0});
    m.add_entry(0, 2, {1.0, 0.0});
    m.add_entry(0, 2, {-1.0, 0.0});
    m.compress();
    CHECK(m.coeff(0, 1) == Cd{3.0, 0.0});
    CHECK(m.row(0).size() == 1);
  }

  TEST_CASE("product against hand-computed entries") {
    auto basis = std::make_shared<const FockBasis>(1);  // states: (0,0),(1,0),(0,1)
    OperatorMatrix<Cd> a(basis), b(basis);
    a.add_entry(1, 0, {2.0, 0.0});
    a.add_entry(2, 0, {0.0, 1.0});
    b.add_entry(0, 1, {3.0, 0.0});
    a.compress();
    b.compress();
    auto ab = a * b;
    CHECK(ab.coeff(1, 1) == Cd{6.0, 0.0});
    CHECK(ab.coeff(2, 1) == Cd{0.0, 3.0});
    CHECK(ab.coeff(0, 0) == Cd{0.0, 0.0});
  }

  TEST_CASE("exact rational arithmetic stays exact") {
    auto basis = std::make_shared<const FockBasis>(3);
    OperatorMatrix<GaussianRational> m(basis);
    m.add_entry(0, 0, GaussianRational(Rational(1, 3)));
    m.add_entry(0, 0, GaussianRational(Rational(2, 3)));
    m.compress();
    CHECK(m.coeff(0, 0) == GaussianRational(Rational(1)));
    auto sq = m * m;
    CHECK(sq.coeff(0, 0) == GaussianRational(Rational(1)));
    auto diff = sq - m;
    CHECK(diff.is_zero());
  }

  TEST_CASE("level_shift detects ladder structure") {
    auto basis = std::make_shared<const FockBasis>(2);
    OperatorMatrix<Cd> up(basis);
    up.add_entry(basis->index_of(1, 0), basis->index_of(0, 0), {1.0, 0.0});
    up.add_entry(basis->index_of(2, 0), basis->index_of(1, 0), {1.0, 0.0});
    up.compress();
    REQUIRE(up.level_shift().has_value());
    CHECK(*up.level_shift() == 1);
    CHECK(!up.is_level_diagonal());

    auto diag =
        OperatorMatrix<Cd>::diagonal(basis, [](const FockState& s) { return Cd(double(s.level()), 0.0); });
    CHECK(diag.is_level_diagonal());

    OperatorMatrix<Cd> mixed = up + diag;
    CHECK(!mixed.level_shift().has_value());
  }

  TEST_CASE("max_abs restricted to trusted levels") {
    auto basis = std::make_shared<const FockBasis>(2);
    OperatorMatrix<Cd> m(basis);
    m.add_entry(basis->index_of(0, 0), basis->index_of(0, 0), {0.5, 0.0});
    m.add_entry(basis->index_of(2, 0), basis->index_of(1, 1), {9.0, 0.0});
    m.compress();
    CHECK(m.max_abs() == doctest::Approx(9.0));
    CHECK(m.max_abs(1) == doctest::Approx(0.5));
    CHECK(m.is_zero(1) == false);
  }

  TEST_CASE("conjugate transpose and hermiticity probe") {
    auto basis = std::make_shared<const FockBasis>(1);
    OperatorMatrix<Cd> m(basis);
    m.add_entry(0, 1, {0.0, 1.0});
    m.add_entry(1, 0, {0.0, -1.0});
    m.compress();
    CHECK(m.is_hermitian(0.0));
    m.add_entry(2, 0, {1.0, 0.0});
    m.compress();
    CHECK(!m.is_hermitian(1e-3));
  }
}
