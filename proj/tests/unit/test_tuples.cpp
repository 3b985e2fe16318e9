#include <doctest.h>

#include <cmath>
#include <set>

#include "sievelab/error.hpp"
#include "sievelab/tuples.hpp"
#include "unit/oracles.hpp"

using namespace sievelab;

namespace {
// Admissible iff no prime p <= k is covered by all residues.
bool admissible_oracle(const std::vector<std::int64_t>& h) {
  for (std::uint64_t p = 2; p <= h.size(); ++p) {
    if (!oracle::is_prime(p)) continue;
    std::set<std::int64_t> r;
    for (auto x : h) r.insert(((x % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(p));
    if (r.size() == p) return false;
  }
  return true;
}
}  // namespace

TEST_SUITE("tuples") {
  TEST_CASE("parse and print") {
    const KTuple t = KTuple::parse("0,2,6");
    CHECK(t.k() == 3);
    CHECK(t.height() == 6);
    CHECK(t.to_string() == "0,2,6");
    CHECK(KTuple::parse(t.to_string()) == t);
    CHECK_THROWS_AS(KTuple::parse("0,0"), Error);
    CHECK_THROWS_AS(KTuple::parse("a,b"), Error);
  }

  TEST_CASE("primorials") {
    CHECK(compute_W(2).u64() == 2);
    CHECK(compute_W(7).u64() == 210);
    CHECK(compute_W(13).u64() == 30030);
    CHECK_THROWS_AS(compute_W(200).u64(), Error);
  }

  TEST_CASE("admissibility against a residue scan") {
    CHECK(is_admissible(KTuple::parse("0,2,6")));
    CHECK(is_admissible(KTuple::parse("0,4,6")));
    CHECK_FALSE(is_admissible(KTuple::parse("0,2,4")));
    CHECK_FALSE(is_admissible(KTuple::parse("0,1")));
    for (std::int64_t a = 1; a < 20; ++a)
      for (std::int64_t b = a + 1; b < 24; ++b) {
        const std::vector<std::int64_t> h = {0, a, b};
        CHECK(is_admissible(KTuple(h)) == admissible_oracle(h));
      }
  }

  TEST_CASE("tuples of multiples of W") {
    const auto t = generate_hk_tuples(2, 12, 6, 100);
    const std::vector<KTuple> want = {KTuple::parse("0,6"), KTuple::parse("0,12"), KTuple::parse("6,12")};
    CHECK(t == want);
    for (const auto& x : generate_hk_tuples(4, 300, 30, 50)) {
      CHECK(is_admissible(x));
      for (auto v : x.values()) CHECK(v % 30 == 0);
      CHECK(x.height() <= 300);
    }
    CHECK_THROWS_AS(generate_hk_tuples(3, 5, 6, 10), Error);
  }

  TEST_CASE("Bohr constraint tuples satisfy every congruence") {
    const auto exps = bohr_constraint_exponents(3, 0.25);
    const auto tuples = bohr_constraint_tuples(3, 0.25, 100000, 5);
    REQUIRE_FALSE(tuples.empty());
    for (const auto& t : tuples) {
      REQUIRE(t.k() == 3);
      for (std::size_t i = 0; i < exps.size(); ++i) {
        const auto [p, e] = exps[i];
        std::int64_t pe = 1;
        for (int r = 0; r < e; ++r) pe *= static_cast<std::int64_t>(p);
        CHECK(std::pow(static_cast<double>(p), -e) < 0.25);
        for (std::size_t j = 0; j < t.k(); ++j) {
          if (j == i) CHECK(t[j] % static_cast<std::int64_t>(p) != 0);
          else CHECK(t[j] % pe == 0);
        }
      }
    }
  }
}
