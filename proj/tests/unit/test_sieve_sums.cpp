#include <doctest.h>

#include <cmath>

#include "sievelab/error.hpp"
#include "sievelab/prime_engine.hpp"
#include "sievelab/sieve_sums.hpp"
#include "sievelab/sieve_weights.hpp"
#include "sievelab/simplex_poly.hpp"
#include "sievelab/structured_sets.hpp"
#include "sievelab/tuples.hpp"
#include "unit/oracles.hpp"

using namespace sievelab;

namespace {
double w_oracle(std::uint64_t n, const KTuple& H, const SieveWeights& w) {
  double s = 0;
  for (const auto& [d, l] : w.lambda) {
    bool ok = true;
    for (std::size_t i = 0; i < d.size() && ok; ++i) ok = (n + static_cast<std::uint64_t>(H[i])) % d[i] == 0;
    if (ok) s += l;
  }
  return s;
}
}  // namespace

TEST_SUITE("sieve_sums") {
  const Tables tables = build_tables(20000);

  TEST_CASE("fast weight agrees with the table scan") {
    const KTuple H = KTuple::parse("0,2,6");
    const auto w = lambda_from_y(SmoothFunction::one_minus_sum(3, 1), 300, 1, {}, tables.arith);
    const WeightEvaluator ev(w);
    for (std::uint64_t n = 1; n < 2000; n += 7) {
      CHECK(ev(n, H) == doctest::Approx(w_oracle(n, H, w)).epsilon(1e-9));
      CHECK(weight_w_scan(n, H, w) == doctest::Approx(w_oracle(n, H, w)).epsilon(1e-9));
    }
  }

  TEST_CASE("S1 against a direct sum") {
    const KTuple H = KTuple::parse("0,2");
    const auto w = lambda_from_y(SmoothFunction::constant(2), 50, 6, {}, tables.arith);
    const auto C = SetDescriptor::shifted_kfree(0, 2);
    SieveSumOptions opt;
    opt.W = 6;
    opt.a0 = 5;
    const std::uint64_t N = 3000;
    double want = 0;
    for (std::uint64_t n = N + 1; n <= 2 * N; ++n) {
      if (n % 6 != 5) continue;
      if (!oracle::kfree(n, 2) || !oracle::kfree(n + 2, 2)) continue;
      const double x = w_oracle(n, H, w);
      want += x * x;
    }
    CHECK(sum_S1(C, N, H, w, opt, &tables.arith) == doctest::Approx(want).epsilon(1e-9));
  }

  TEST_CASE("S2 per index against a direct sum") {
    const KTuple H = KTuple::parse("0,2");
    const auto w = lambda_from_y(SmoothFunction::one_minus_sum(2, 1), 40, 6, {}, tables.arith);
    SieveSumOptions opt;
    opt.W = 6;
    opt.a0 = 5;
    const std::uint64_t N = 4000;
    const auto r = sum_S2(SetDescriptor::whole(), N, H, w, opt, tables.primes);
    REQUIRE(r.per_index.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      double want = 0;
      for (std::uint64_t n = N + 1; n <= 2 * N; ++n) {
        if (n % 6 != 5) continue;
        const std::uint64_t m = n + static_cast<std::uint64_t>(H[i]);
        if (!oracle::is_prime(m)) continue;
        const double x = w_oracle(n, H, w);
        want += std::log(static_cast<double>(m)) * x * x;
      }
      CHECK(r.per_index[i] == doctest::Approx(want).epsilon(1e-9));
    }
  }

  TEST_CASE("GPY weight against the divisor sum") {
    const KTuple H = KTuple::parse("0,2");
    const double R = 30;
    for (std::uint64_t n = 1; n < 200; ++n) {
      const std::uint64_t P = n * (n + 2);
      double s = 0;
      for (std::uint64_t d = 1; d <= 30; ++d)
        if (P % d == 0) s += oracle::mobius(d) * std::pow(std::log(R / d), 3);
      CHECK(gpy_weight(n, H, R, 1) == doctest::Approx(s / 6).epsilon(1e-9));
    }
  }

  TEST_CASE("sieve sum estimate with a dimension-one density") {
    const auto one = [](std::uint64_t) { return 1.0; };
    const auto G = [](double) { return 1.0; };
    const double z = 10000;
    const auto e = sieve_sum_estimate(one, G, z, 0, Divisibility::kAny, 1.0, tables.arith);
    double want = 0;  // sum of 1/phi(d) over squarefree d < z
    for (std::uint64_t d = 1; d < 10000; ++d)
      if (oracle::mobius(d) != 0) want += 1.0 / static_cast<double>(oracle::totient(d));
    CHECK(e.exact == doctest::Approx(want).epsilon(1e-9));
    REQUIRE(e.ratio.has_value());
    CHECK(*e.ratio == doctest::Approx(1.0).epsilon(0.2));
  }
}
