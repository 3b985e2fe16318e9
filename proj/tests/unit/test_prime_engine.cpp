#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numeric>

#include "sievelab/error.hpp"
#include "sievelab/prime_engine.hpp"
#include "unit/oracles.hpp"

using namespace sievelab;

TEST_SUITE("prime_engine") {
  TEST_CASE("prime table agrees with trial division") {
    const PrimeTable t = PrimeTable::build(20000);
    for (std::uint64_t n = 0; n <= 20000; ++n) CHECK(t.is_prime(n) == oracle::is_prime(n));
    CHECK(t.pi(10) == 4);
    CHECK(t.pi(100) == 25);
    CHECK(*t.next_prime_after(13) == 17);
    CHECK_THROWS_AS(t.is_prime(20001), Error);
  }

  TEST_CASE("segment size and thread count do not change the table") {
    SieveOptions a, b;
    a.segment_size = 64;
    b.segment_size = 1000;
    b.threads = 4;
    CHECK(PrimeTable::build(300000, a) == PrimeTable::build(300000, b));
  }

  TEST_CASE("pi(10^6) matches an independent count") {
    const PrimeTable t = PrimeTable::build(1'000'000);
    const auto small = oracle::primes_upto(1'000'000);
    CHECK(t.pi(1'000'000) == small.size());
  }

  TEST_CASE("mu, phi, spf against naive factorization") {
    const ArithmeticTables a = ArithmeticTables::build(5000);
    for (std::uint64_t n = 1; n <= 5000; ++n) {
      CHECK(a.mu(n) == oracle::mobius(n));
      CHECK(a.phi(n) == oracle::totient(n));
      if (n > 1) CHECK(a.spf(n) == oracle::smallest_factor(n));
    }
    const auto f = a.factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<std::uint64_t, int>{2, 3});
    CHECK(a.omega(30) == 3);
  }

  TEST_CASE("theta, Lambda and k-freeness") {
    const Tables t = build_tables(1000);
    CHECK(theta_weight(7, t.primes) == doctest::Approx(std::log(7.0)));
    CHECK(theta_weight(8, t.primes) == 0.0);
    CHECK(von_mangoldt(8, t.arith) == doctest::Approx(std::log(2.0)));
    CHECK(von_mangoldt(12, t.arith) == 0.0);
    CHECK(is_kfree(12, 2, t.arith) == false);
    CHECK(is_kfree(12, 3, t.arith) == true);
    CHECK_THROWS_AS(is_kfree(12, 1, t.arith), Error);
  }

  TEST_CASE("cache round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "sievelab_cache_test";
    std::filesystem::remove_all(dir);
    const Tables built = load_or_build_tables(50000, dir);
    REQUIRE(std::filesystem::exists(TableCache::file_for(dir, 50000)));
    const auto loaded = TableCache::load(TableCache::file_for(dir, 50000), 50000);
    REQUIRE(loaded.has_value());
    CHECK(loaded->primes == built.primes);
    CHECK(loaded->arith == built.arith);
    CHECK_FALSE(TableCache::load(TableCache::file_for(dir, 50000), 40000).has_value());
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("invalid limits") {
    CHECK_THROWS_AS(build_tables(1), Error);
  }
}
