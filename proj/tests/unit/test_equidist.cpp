#include <doctest.h>

#include <cmath>
#include <complex>

#include "sievelab/characters.hpp"
#include "sievelab/equidist.hpp"
#include "sievelab/error.hpp"
#include "sievelab/prime_engine.hpp"
#include "sievelab/structured_sets.hpp"
#include "sievelab/tuples.hpp"
#include "unit/oracles.hpp"

using namespace sievelab;

TEST_SUITE("equidist") {
  const ArithmeticTables arith = ArithmeticTables::build(100000);

  TEST_CASE("tuple indicator and remainders") {
    const auto A = SetDescriptor::ap(1, 4);
    const KTuple H = KTuple::parse("0,4");
    const auto ind = tuple_indicator(A, H, 1000);
    for (std::uint64_t n = 1; n <= 1000; ++n) CHECK(static_cast<bool>(ind[n]) == (n % 4 == 1));
    const auto r = remainder_R(A, H, 1000, 5, 8, 0.25);
    std::uint64_t want = 0;
    for (std::uint64_t n = 1; n <= 1000; ++n) want += (n % 8 == 5) && (n % 4 == 1);
    CHECK(r.exact_count == want);
    CHECK(r.main_term == doctest::Approx(0.25 * 1000 / 8));
    CHECK(r.remainder == doctest::Approx(want - 0.25 * 1000 / 8));
    const auto all = tuple_indicator(SetDescriptor::whole(), KTuple(), 10);
    for (std::uint64_t n = 1; n <= 10; ++n) CHECK(all[n] == 1);
  }

  TEST_CASE("density constants") {
    const auto d = density_constants(SetDescriptor::ap(1, 4), KTuple::parse("0"), 10000, arith);
    CHECK(d.c1 == doctest::Approx(0.25));
    double lam = 0;
    for (std::uint64_t n = 1; n <= 10000; ++n)
      if (n % 4 == 1) lam += oracle::von_mangoldt(n);
    CHECK(d.c2 == doctest::Approx(lam / 10000).epsilon(1e-9));
  }

  TEST_CASE("psi with characters") {
    const auto chars1 = build_characters(1);
    const auto psi10 = psi_character_sum(SetDescriptor::whole(), KTuple::parse("0"), 10, chars1.front(), arith);
    CHECK(psi10.real() == doctest::Approx(std::log(2520.0)));
    for (const auto& chi : build_characters(7)) {
      std::complex<double> want = 0;
      for (std::uint64_t m = 1; m <= 5000; ++m) want += oracle::von_mangoldt(m) * chi(m);
      const auto got = psi_character_sum(SetDescriptor::whole(), KTuple::parse("0"), 5000, chi, arith);
      CHECK(std::abs(got - want) < 1e-7);
      const auto primed = psi_character_sum_primed(SetDescriptor::whole(), KTuple::parse("0"), 5000, chi, 1.0, arith);
      CHECK(std::abs(primed - (chi.is_principal() ? got - 5000.0 : got)) < 1e-7);
    }
  }

  TEST_CASE("Mobius sums along multiples") {
    for (std::uint64_t l : {1ull, 2ull, 6ull, 35ull}) {
      double want = 0;
      for (std::uint64_t t = l; t <= 5000; t += l) want += oracle::mobius(t) / static_cast<double>(t);
      const auto m = mobius_progression_sum(5000, l, arith);
      CHECK(m.sum == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK_THROWS_AS(mobius_progression_sum(100, 4, arith), Error);
  }

  TEST_CASE("Vaughan pieces add up") {
    const auto chars = build_characters(5);
    const std::vector<ArithmeticFunction> fs = {
        [](std::uint64_t) { return std::complex<double>(1); },
        [&](std::uint64_t n) { return chars.back()(n); },
        membership_character(SetDescriptor::ap(1, 4), chars[1]),
    };
    for (const auto& f : fs) {
      const auto v = vaughan_decompose(20000, 27, 27, f, arith);
      std::complex<double> direct = 0;
      for (std::uint64_t m = 1; m <= 20000; ++m) direct += oracle::von_mangoldt(m) * f(m);
      CHECK(std::abs(v.direct - direct) < 1e-6);
      CHECK(std::abs(v.total - direct) < 1e-6 * 20000);
      CHECK(std::abs(v.S1 + v.S2 + v.S3 + v.S4 - v.total) < 1e-9 * 20000);
    }
    CHECK_THROWS_AS(vaughan_decompose(100, 20, 20, fs[0], arith), Error);
  }

  TEST_CASE("bilinear large sieve") {
    const std::vector<double> zero(50, 0.0), ones(50, 1.0);
    CHECK(bilinear_check(zero, ones, 10).lhs == 0.0);
    const auto r = bilinear_check(ones, ones, 10);
    CHECK(r.lhs <= r.rhs);
    const auto s = bilinear_check(ones, ones, 8, SetDescriptor::ap(1, 4));
    CHECK(s.lhs <= s.rhs);
  }

  TEST_CASE("smooth cut-off coefficients decay") {
    for (const auto& row : smooth_cutoff_decay(0.3, 100, 0.5, 3, 200)) {
      CHECK(row.coeff <= row.envelope * (1 + 1e-9));
      CHECK(row.envelope > 0);
    }
  }
}
