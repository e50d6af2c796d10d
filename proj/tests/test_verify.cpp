#include <doctest.h>

#include "ncqm/verify.hpp"

using namespace ncqm;

namespace {

VerifyOptions small_options(bool exact) {
  VerifyOptions opt;
  opt.n_max = 10;
  opt.lambda = 0.75;
  opt.lambda_exact = Rational(3, 4);
  opt.exact = exact;
  return opt;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("float suites pass at the default tolerance") {
    auto checks = run_verification(small_options(false));
    CHECK(checks.size() > 100);
    for (const auto& c : checks) {
      INFO(c.name, " residual=", c.residual, " tol=", c.tolerance);
      CHECK(c.pass);
    }
  }

  TEST_CASE("exact suites report literally zero residuals") {
    auto checks = run_verification(small_options(true));
    bool saw_exact = false;
    for (const auto& c : checks) {
      INFO(c.name);
      CHECK(c.pass);
      CHECK(c.tolerance == 0.0);
      CHECK(c.residual == 0.0);
      saw_exact = true;
    }
    CHECK(saw_exact);
  }

  TEST_CASE("binomial identity holds over the full requested range") {
    auto checks = verify_binomial_identity(30, 10);
    CHECK(checks.size() == 11);
    for (const auto& c : checks) CHECK(c.pass);
  }

  TEST_CASE("hermiticity probes are seed-stable") {
    VerifyOptions opt = small_options(false);
    auto a = verify_hermiticity(opt);
    auto b = verify_hermiticity(opt);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].residual == b[i].residual);
  }
}
