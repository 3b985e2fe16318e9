#include <doctest.h>

#include <cmath>

#include "sievelab/error.hpp"
#include "sievelab/high_precision.hpp"

using namespace sievelab;

TEST_SUITE("high_precision") {
  TEST_CASE("parse forms and round trip") {
    for (const char* text : {"sqrt(2)", "3*sqrt(5)", "1/2+1/2*sqrt(5)", "-2/7", "0.45", "3.14159"}) {
      const ExactReal x = ExactReal::parse(text);
      CHECK(ExactReal::parse(x.to_string()) == x);
    }
    CHECK(ExactReal::parse("golden") == ExactReal::parse("1/2+1/2*sqrt(5)"));
    CHECK(ExactReal::parse("sqrt(2)").irrational());
    CHECK_FALSE(ExactReal::parse("-2/7").irrational());
    CHECK(ExactReal::parse("0.45").irrational());  // declared stand-in
    CHECK_FALSE(ExactReal::parse("0.45!").irrational());
    CHECK_FALSE(ExactReal::parse("sqrt(4)").irrational());
    CHECK_THROWS_AS(ExactReal::parse("sqrt(x)"), Error);
  }

  TEST_CASE("long double views") {
    const ExactReal s = ExactReal::parse("sqrt(2)");
    CHECK(static_cast<double>(s.to_long_double()) == doctest::Approx(std::sqrt(2.0)));
    CHECK(static_cast<double>(ExactReal::parse("-2/7").frac_long_double()) == doctest::Approx(5.0 / 7));
  }

  TEST_CASE("interval encloses sqrt(2) * n") {
    const ExactReal s = ExactReal::parse("sqrt(2)");
    for (long n : {1L, 1000L, 123456789L}) {
      Interval x(kStartPrecision);
      x.set(s);
      x.mul_z(n);
      const long double ref = std::sqrt(2.0L) * n;
      CHECK(mpfr_get_ld(x.lo(), MPFR_RNDD) <= ref + 1e-6L);
      CHECK(mpfr_get_ld(x.hi(), MPFR_RNDU) >= ref - 1e-6L);
      mpz_class f;
      REQUIRE(x.common_floor(f));
      CHECK(f.get_si() == static_cast<long>(std::floor(ref)));
    }
  }

  TEST_CASE("decisions on fractional parts") {
    Interval x(kStartPrecision);
    x.set(ExactReal::parse("1/4"));
    CHECK(frac_in_unit_prefix(x, mpq_class(1, 2)) == Decision::kTrue);
    CHECK(frac_in_unit_prefix(x, mpq_class(1, 8)) == Decision::kFalse);
    CHECK(dist_to_int_le(x, mpq_class(1, 3)) == Decision::kTrue);
    // An exact boundary point is decided, not left open.
    x.set(ExactReal::parse("1/2"));
    CHECK(frac_in_unit_prefix(x, mpq_class(1, 2)) == Decision::kTrue);
  }

  TEST_CASE("polynomial enclosure") {
    const std::vector<ExactReal> c = {ExactReal::integer(1), ExactReal::parse("sqrt(2)"), ExactReal::parse("1/3")};
    const Interval v = enclose_polynomial(c, mpz_class(10), kStartPrecision);
    const long double ref = 1 + 10 * std::sqrt(2.0L) + 100.0L / 3;
    CHECK(static_cast<double>(v.mid_long_double()) == doctest::Approx(static_cast<double>(ref)));
  }
}
