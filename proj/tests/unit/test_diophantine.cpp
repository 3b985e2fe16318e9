#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "sievelab/diophantine.hpp"
#include "sievelab/error.hpp"
#include "unit/oracles.hpp"

using namespace sievelab;

TEST_SUITE("diophantine") {
  TEST_CASE("continued fractions of quadratic irrationals") {
    const auto cf = continued_fraction(ExactReal::parse("sqrt(2)"), 12);
    REQUIRE(cf.quotients.size() >= 12);
    CHECK(cf.quotients[0] == 1);
    for (std::size_t i = 1; i < cf.quotients.size(); ++i) CHECK(cf.quotients[i] == 2);

    // golden ratio: all ones, convergents are ratios of consecutive Fibonacci numbers
    const auto g = continued_fraction(ExactReal::parse("golden"), 20);
    mpz_class a = 1, b = 1;
    for (std::size_t i = 0; i < g.convergents.size(); ++i) {
      CHECK(g.quotients[i] == 1);
      CHECK(g.convergents[i].first == b);
      CHECK(g.convergents[i].second == a);
      const mpz_class c = a + b;
      a = b;
      b = c;
    }
  }

  TEST_CASE("rational input is rejected") {
    CHECK_THROWS_AS(continued_fraction(ExactReal::parse("-2/7"), 20), Error);
  }

  TEST_CASE("type estimate of badly approximable numbers is near 1") {
    CHECK(diophantine_type_estimate(ExactReal::parse("sqrt(2)"), 1'000'000) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(diophantine_type_estimate(ExactReal::parse("golden"), 1'000'000) == doctest::Approx(1.0).epsilon(0.1));
  }

  TEST_CASE("three-distance ordering follows the recurrence") {
    for (const char* a : {"sqrt(2)", "golden", "sqrt(7)", "3*sqrt(5)"})
      for (std::uint64_t M : {5ull, 37ull, 1000ull}) {
        const auto t = three_distance_order(ExactReal::parse(a), M);
        CHECK(t.s.size() == M);
        CHECK(t.violations.empty());
        // sortedness against a long double oracle
        const long double al = ExactReal::parse(a).to_long_double();
        for (std::size_t j = 0; j + 1 < t.s.size(); ++j) {
          const long double x = al * t.s[j] - std::floor(al * t.s[j]);
          const long double y = al * t.s[j + 1] - std::floor(al * t.s[j + 1]);
          CHECK(x < y);
        }
      }
  }

  TEST_CASE("discrepancy against a brute-force interval scan") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> x(5 + trial * 3);
      for (double& v : x) v = u(rng);
      const double d = discrepancy(x);
      CHECK(d == doctest::Approx(oracle::brute_discrepancy(x)).epsilon(1e-9));
      CHECK(star_discrepancy(x) <= d + 1e-15);
      CHECK(etk_bound(x, 16) >= d);
    }
    CHECK_THROWS_AS(etk_bound(std::vector<double>{0.5}, 0), Error);
  }

  TEST_CASE("Kronecker sequence discrepancy decays") {
    const long double a = std::sqrt(2.0L);
    std::vector<double> x;
    for (int n = 1; n <= 10000; ++n) x.push_back(static_cast<double>(a * n - std::floor(a * n)));
    CHECK(discrepancy(x) < 0.005);
  }

  TEST_CASE("Weyl sums agree with a naive sum") {
    const std::vector<ExactReal> f = {ExactReal::integer(0), ExactReal::parse("1/3"), ExactReal::parse("sqrt(2)")};
    std::complex<long double> naive = 0;
    const long double s2 = std::sqrt(2.0L);
    for (std::uint64_t n = 1; n <= 2000; ++n) {
      // reduce each term before combining to keep long double precision
      const long double t = std::fmod(n / 3.0L, 1.0L) + std::fmod(s2 * n * n, 1.0L);
      naive += std::polar(1.0L, 2 * std::numbers::pi_v<long double> * t);
    }
    const auto w = weyl_sum(f, 2000);
    CHECK(w.real() == doctest::Approx(static_cast<double>(naive.real())).epsilon(1e-6));
    CHECK(w.imag() == doctest::Approx(static_cast<double>(naive.imag())).epsilon(1e-6));
    CHECK(std::abs(w) <= weyl_bound(2000, 2, 100));
  }

  TEST_CASE("first-derivative test on a quadratic phase") {
    // phi(x) = x^2 / 2 on [1, 50]: phi' = x >= 1 and increasing, so |integral| <= 1/pi
    const auto r = van_der_corput_check([](double x) { return x * x / 2; }, [](double x) { return x; }, 1, 50);
    CHECK(r.modulus <= 1 / std::numbers::pi + 1e-9);
    CHECK(r.modulus > 0);
    CHECK_THROWS_AS(van_der_corput_check([](double x) { return x; }, [](double) { return 0.5; }, 0, 1), Error);
  }
}
