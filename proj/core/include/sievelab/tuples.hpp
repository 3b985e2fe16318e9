#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sievelab/prime_engine.hpp"

namespace sievelab {

/// Strictly increasing list of distinct nonnegative shifts.
class KTuple {
 public:
  KTuple() = default;
  explicit KTuple(std::vector<std::int64_t> h);  // validates

  std::size_t k() const { return h_.size(); }
  std::int64_t height() const { return h_.empty() ? 0 : h_.back(); }
  const std::vector<std::int64_t>& values() const { return h_; }
  std::int64_t operator[](std::size_t i) const { return h_[i]; }
  std::span<const std::int64_t> span() const { return h_; }

  /// "0,2,6"
  std::string to_string() const;
  static KTuple parse(std::string_view text);

  friend bool operator==(const KTuple&, const KTuple&) = default;

 private:
  std::vector<std::int64_t> h_;
};

struct Primorial {
  mpz_class value;
  bool fits_u64() const { return mpz_sizeinbase(value.get_mpz_t(), 2) <= 64; }
  std::uint64_t u64() const;  // overflow error when it does not fit
};

/// Product of the primes <= D0, in arbitrary precision.
Primorial compute_W(std::uint64_t D0);

struct WTrickParams {
  std::uint64_t D0 = 2;
  std::uint64_t W = 2;
  std::uint64_t a0 = 1;
  static WTrickParams make(std::uint64_t D0, std::uint64_t a0 = 1);
};

/// |{h_i mod p}|.
std::uint64_t residues_occupied(const KTuple& h, std::uint64_t p);

/// Omits a class modulo every prime p <= k (larger primes cannot be covered).
bool is_admissible(const KTuple& h, const PrimeTable& t);
bool is_admissible(const KTuple& h);

/// Admissible tuples of multiples of W with entries in [0, height], lexicographic.
std::vector<KTuple> generate_hk_tuples(std::size_t k, std::int64_t height, std::uint64_t W, std::size_t count);

/// Increasing positive tuples with p_i^{e_i} | h_j for j != i and gcd(p_i, h_i) = 1,
/// where p_i is the i-th prime and e_i the least exponent with p_i^{-e_i} < d.
/// Such tuples are never admissible for k >= 2 (both parities occur), so
/// admissibility filtering is opt-in.
std::vector<KTuple> bohr_constraint_tuples(std::size_t k, double d, std::int64_t height, std::size_t count,
                                           bool require_admissible = false);

/// Exponents e_i used by bohr_constraint_tuples, with the primes.
std::vector<std::pair<std::uint64_t, int>> bohr_constraint_exponents(std::size_t k, double d);

}  // namespace sievelab
