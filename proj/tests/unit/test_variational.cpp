#include <doctest.h>

#include "sievelab/error.hpp"
#include "sievelab/simplex_poly.hpp"
#include "sievelab/variational.hpp"
#include "unit/oracles.hpp"

using namespace sievelab;

TEST_SUITE("variational") {
  TEST_CASE("degree-zero basis gives 2k/(k+1) exactly") {
    for (int k = 1; k <= 10; ++k) {
      const auto r = mk_lower_bound(k, 0);
      REQUIRE(r.exact.has_value());
      CHECK(*r.exact == oracle::ratio(2 * k, k + 1));
      CHECK(r.mk_lower == doctest::Approx(2.0 * k / (k + 1)));
    }
  }

  TEST_CASE("one-dimensional problem is trivial") {
    for (int d = 0; d <= 4; ++d) CHECK(mk_lower_bound(1, d).mk_lower == doctest::Approx(1.0));
  }

  TEST_CASE("larger bases only improve the bound and the Rayleigh quotient is consistent") {
    for (int k : {2, 3, 5}) {
      double prev = 0;
      for (int d = 0; d <= 4; ++d) {
        const auto r = mk_lower_bound(k, d);
        CHECK(r.mk_lower >= prev - 1e-12);
        CHECK(r.rayleigh == doctest::Approx(r.mk_lower).epsilon(1e-9));
        // recompute k J / I from the returned function
        const double I = integrate_Ik(r.F);
        const double J = integrate_Jkm(r.F, 1);
        CHECK(k * J / I == doctest::Approx(r.mk_lower).epsilon(1e-9));
        prev = r.mk_lower;
      }
    }
  }

  TEST_CASE("bad arguments") {
    CHECK_THROWS_AS(mk_lower_bound(0, 1), Error);
    CHECK_THROWS_AS(mk_lower_bound(2, -1), Error);
  }
}
