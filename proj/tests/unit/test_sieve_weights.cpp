#include <doctest.h>

#include <cmath>
#include <numeric>

#include "sievelab/error.hpp"
#include "sievelab/prime_engine.hpp"
#include "sievelab/sieve_weights.hpp"
#include "sievelab/simplex_poly.hpp"
#include "unit/oracles.hpp"

using namespace sievelab;

namespace {
bool divides_all(const DivisorTuple& d, const DivisorTuple& r) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (r[i] % d[i]) return false;
  return true;
}
}  // namespace

TEST_SUITE("sieve_weights") {
  const ArithmeticTables arith = ArithmeticTables::build(2000);

  TEST_CASE("support matches a direct enumeration") {
    const auto s = weight_support(2, 60, 6, {7}, arith);
    std::size_t want = 0;
    for (std::uint64_t a = 1; a <= 60; ++a)
      for (std::uint64_t b = 1; a * b <= 60; ++b) {
        if (oracle::mobius(a) == 0 || oracle::mobius(b) == 0) continue;
        if (std::gcd(a, b) != 1 || std::gcd(a * b, std::uint64_t{6}) != 1 || (a * b) % 7 == 0) continue;
        ++want;
      }
    CHECK(s.tuples.size() == want);
  }

  TEST_CASE("lambda from y against the defining sum") {
    const auto F = SmoothFunction::one_minus_sum(2, 2);
    const auto w = lambda_from_y(F, 150, 2, {}, arith);
    for (const auto& d : w.support.tuples) {
      double sum = 0;
      for (const auto& r : w.support.tuples) {
        if (!divides_all(d, r)) continue;
        double phis = 1;
        for (auto ri : r) phis *= static_cast<double>(oracle::totient(ri));
        sum += w.y.at(r) / phis;
      }
      double f = 1;
      for (auto di : d) f *= oracle::mobius(di) * static_cast<double>(di);
      CHECK(w.lambda_at(d) == doctest::Approx(f * sum).epsilon(1e-10));
    }
    CHECK(w.lambda_max() > 0);
  }

  TEST_CASE("exact rational inversion round trip") {
    const auto s = weight_support(3, 200, 2, {}, arith);
    TupleMap<mpq_class> y;
    std::uint64_t i = 1;
    for (const auto& r : s.tuples) y[r] = oracle::ratio(static_cast<long>(i++ % 7) - 3, 5);
    const auto lambda = lambda_from_y_map(s, y, arith);
    const auto back = y_from_lambda_map(s, lambda, arith);
    for (const auto& [r, v] : y) {
      const auto it = back.find(r);
      const mpq_class got = it == back.end() ? mpq_class(0) : it->second;
      CHECK(got == v);
    }
  }

  TEST_CASE("weights vanish outside the support") {
    const auto w = lambda_from_y(SmoothFunction::constant(2), 40, 6, {}, arith);
    CHECK(w.lambda_at({2, 1}) == 0.0);
    CHECK(w.lambda_at({5, 11}) == 0.0);
    CHECK(w.lambda_at({1, 1}) != 0.0);
    CHECK_THROWS_AS(weight_support(2, 5000, 2, {}, arith), Error);
  }
}
