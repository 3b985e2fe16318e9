#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sievelab {

struct SieveOptions {
  /// Entries per segment; rounded up to a multiple of 64.
  std::size_t segment_size = std::size_t{1} << 18;
  unsigned threads = 1;
};

/// Bit-packed primality over [0, limit] plus the increasing list of primes.
class PrimeTable {
 public:
  PrimeTable() = default;

  static PrimeTable build(std::uint64_t limit, const SieveOptions& options = {});

  std::uint64_t limit() const noexcept { return limit_; }

  /// Throws Error(kOutOfRange) when n > limit.
  bool is_prime(std::uint64_t n) const;

  /// Unchecked variant for hot loops.
  bool test(std::uint64_t n) const noexcept {
    return (bits_[n >> 6] >> (n & 63)) & 1u;
  }

  const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }
  const std::vector<std::uint64_t>& words() const noexcept { return bits_; }

  /// Number of primes <= x (x clamped to limit).
  std::uint64_t pi(std::uint64_t x) const;

  /// Smallest prime > n inside the table, if any.
  std::optional<std::uint64_t> next_prime_after(std::uint64_t n) const;

  friend bool operator==(const PrimeTable&, const PrimeTable&) = default;

 private:
  friend class TableCache;
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> primes_;
};

using Factorization = std::vector<std::pair<std::uint64_t, int>>;

/// mu, phi and smallest-prime-factor tables over [0, limit], from one linear sieve.
class ArithmeticTables {
 public:
  ArithmeticTables() = default;

  static ArithmeticTables build(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }

  int mu(std::uint64_t n) const;
  std::uint64_t phi(std::uint64_t n) const;
  std::uint64_t spf(std::uint64_t n) const;

  int mu_unchecked(std::uint64_t n) const noexcept { return mu_[n]; }
  std::uint64_t phi_unchecked(std::uint64_t n) const noexcept { return phi_[n]; }
  std::uint64_t spf_unchecked(std::uint64_t n) const noexcept { return spf_[n]; }

  Factorization factorize(std::uint64_t n) const;
  /// Distinct prime factors of n.
  std::vector<std::uint64_t> prime_divisors(std::uint64_t n) const;
  int omega(std::uint64_t n) const;

  friend bool operator==(const ArithmeticTables&, const ArithmeticTables&) = default;

 private:
  friend class TableCache;
  void check(std::uint64_t n) const;

  std::uint64_t limit_ = 0;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint32_t> phi_;
  std::vector<std::uint32_t> spf_;
};

struct Tables {
  PrimeTable primes;
  ArithmeticTables arith;
};

/// limit < 2 -> invalid-argument. Arithmetic tables require limit < 2^32.
Tables build_tables(std::uint64_t limit, const SieveOptions& options = {});

/// log n on primes, exactly 0 otherwise.
double theta_weight(std::uint64_t n, const PrimeTable& t);

/// log p when n = p^a, 0 otherwise.
double von_mangoldt(std::uint64_t n, const ArithmeticTables& a);

/// True iff no p^k divides n. k < 2 -> invalid-argument.
bool is_kfree(std::uint64_t n, int k, const ArithmeticTables& a);

/// Binary cache: magic, version, limit, then raw bitset and arrays, little-endian.
class TableCache {
 public:
  static constexpr std::uint32_t kMagic = 0x424c5653;  // "SVLB"
  static constexpr std::uint32_t kVersion = 1;

  static void save(const std::filesystem::path& file, const Tables& tables);
  /// nullopt when the file is missing, malformed, or built for another limit.
  static std::optional<Tables> load(const std::filesystem::path& file,
                                    std::uint64_t limit);
  static std::filesystem::path file_for(const std::filesystem::path& dir,
                                        std::uint64_t limit);
};

/// Loads from `cache_dir` when a matching cache exists, otherwise builds and
/// (when cache_dir is set) writes the cache.
Tables load_or_build_tables(std::uint64_t limit,
                            const std::optional<std::filesystem::path>& cache_dir,
                            const SieveOptions& options = {});

}  // namespace sievelab
