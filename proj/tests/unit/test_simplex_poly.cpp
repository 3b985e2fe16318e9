#include <doctest.h>

#include <gmpxx.h>

#include "sievelab/error.hpp"
#include "sievelab/simplex_poly.hpp"
#include "unit/oracles.hpp"

using namespace sievelab;

namespace {
mpz_class fact(int n) {
  mpz_class r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}
}  // namespace

TEST_SUITE("simplex_poly") {
  TEST_CASE("constant function") {
    for (int k = 1; k <= 8; ++k) {
      const auto F = SmoothFunction::constant(k);
      CHECK(integrate_Ik_exact(F) == oracle::ratio(mpz_class(1), fact(k)));
      // inner integral is 1 - P1 on the (k-1)-simplex
      CHECK(integrate_Jkm_exact(F, k) == oracle::ratio(mpz_class(2), fact(k + 1)));
    }
  }

  TEST_CASE("powers of 1 - P1 have closed forms") {
    for (int k = 1; k <= 6; ++k)
      for (int b = 1; b <= 4; ++b) {
        const auto F = SmoothFunction::one_minus_sum(k, b);
        const mpq_class I = oracle::ratio(fact(2 * b), fact(2 * b + k));
        const mpq_class J = oracle::ratio(fact(2 * b + 2), mpz_class(fact(2 * b + k + 1) * (b + 1) * (b + 1)));
        CHECK(integrate_Ik_exact(F) == I);
        CHECK(integrate_Jkm_exact(F, 1) == J);
        CHECK(integrate_Ik(F) == doctest::Approx(I.get_d()));
      }
  }

  TEST_CASE("mixed symmetric polynomial against a symbolic reference") {
    // reference values from iterated symbolic integration
    const auto F = SmoothFunction::parse(3, "2*(1-P1)^2*P2 - 1/3*P3*P1 + 5*P2^2");
    CHECK(integrate_Ik_exact(F) == mpq_class(15611, 166320));
    for (int m = 1; m <= 3; ++m) CHECK(integrate_Jkm_exact(F, m) == mpq_class(33437, 1425600));
  }

  TEST_CASE("parse, print and evaluate") {
    const auto F = SmoothFunction::parse(2, "1/2*(1-P1)^2*P2 + 3");
    CHECK(SmoothFunction::parse(2, F.to_string()).terms() == F.terms());
    const std::vector<double> t = {0.25, 0.5};
    CHECK(F(t) == doctest::Approx(0.5 * 0.0625 * 0.3125 + 3));
    CHECK(F.degree() == 4);
    CHECK_THROWS_AS(SmoothFunction::parse(2, "P0"), Error);
    CHECK_THROWS_AS(SmoothFunction::parse(2, "1 +"), Error);
    CHECK_THROWS_AS(integrate_Jkm_exact(F, 3), Error);
  }
}
