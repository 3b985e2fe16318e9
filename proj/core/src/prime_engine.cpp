#include "sievelab/prime_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <thread>

#include "sievelab/error.hpp"

namespace sievelab {

namespace {

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

// Sieves [lo, hi) into the packed word array. lo is a multiple of 64, so
// segments touch disjoint words.
void sieve_segment(std::uint64_t lo, std::uint64_t hi,
                   const std::vector<std::uint64_t>& base,
                   std::vector<std::uint8_t>& scratch,
                   std::vector<std::uint64_t>& words) {
  const std::size_t len = hi - lo;
  scratch.assign(len, 1);
  for (std::uint64_t n = lo; n < std::min<std::uint64_t>(hi, 2); ++n) scratch[n - lo] = 0;
  for (std::uint64_t p : base) {
    if (p * p >= hi) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (std::uint64_t j = start; j < hi; j += p) scratch[j - lo] = 0;
  }
  for (std::size_t i = 0; i < len; i += 64) {
    std::uint64_t w = 0;
    const std::size_t top = std::min<std::size_t>(64, len - i);
    for (std::size_t b = 0; b < top; ++b) w |= std::uint64_t{scratch[i + b]} << b;
    words[(lo + i) >> 6] = w;
  }
}

template <class T>
T byte_swap(T v) {
  auto* b = reinterpret_cast<unsigned char*>(&v);
  std::reverse(b, b + sizeof(T));
  return v;
}

template <class T>
void write_le(std::ostream& os, T v) {
  if constexpr (std::endian::native == std::endian::big) v = byte_swap(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
bool read_le(std::istream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if constexpr (std::endian::native == std::endian::big) v = byte_swap(v);
  return static_cast<bool>(is);
}

template <class T>
void write_array(std::ostream& os, const std::vector<T>& v) {
  write_le<std::uint64_t>(os, v.size());
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(T)));
  } else {
    for (T x : v) write_le(os, x);
  }
}

template <class T>
bool read_array(std::istream& is, std::vector<T>& v, std::uint64_t expected) {
  std::uint64_t n = 0;
  if (!read_le(is, n) || n != expected) return false;
  v.resize(n);
  is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
  if constexpr (std::endian::native == std::endian::big) {
    for (auto& x : v) x = byte_swap(x);
  }
  return static_cast<bool>(is);
}

}  // namespace

PrimeTable PrimeTable::build(std::uint64_t limit, const SieveOptions& options) {
  if (limit < 2) fail(ErrorKind::kInvalidArgument, "prime table limit must be >= 2");
  if (limit > (std::numeric_limits<std::uint64_t>::max() >> 8)) {
    fail(ErrorKind::kInvalidArgument, "prime table limit too large");
  }
  PrimeTable t;
  t.limit_ = limit;
  const std::uint64_t total = limit + 1;
  t.bits_.assign((total + 63) / 64, 0);

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(limit))) + 1;
  const std::vector<std::uint64_t> base = simple_sieve(root);

  std::uint64_t seg = std::max<std::uint64_t>(64, options.segment_size);
  seg = (seg + 63) / 64 * 64;
  const std::uint64_t nseg = (total + seg - 1) / seg;
  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(nseg)));

  auto work = [&](unsigned id) {
    std::vector<std::uint8_t> scratch;
    for (std::uint64_t s = id; s < nseg; s += threads) {
      const std::uint64_t lo = s * seg;
      sieve_segment(lo, std::min(total, lo + seg), base, scratch, t.bits_);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work, i);
  }

  // Clear padding bits past limit.
  if (total % 64) t.bits_.back() &= (std::uint64_t{1} << (total % 64)) - 1;

  for (std::size_t w = 0; w < t.bits_.size(); ++w) {
    std::uint64_t word = t.bits_[w];
    while (word) {
      t.primes_.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return t;
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > limit_) fail(ErrorKind::kOutOfRange, "n=" + std::to_string(n) + " exceeds prime table limit");
  return test(n);
}

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
  return static_cast<std::uint64_t>(
      std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

std::optional<std::uint64_t> PrimeTable::next_prime_after(std::uint64_t n) const {
  auto it = std::upper_bound(primes_.begin(), primes_.end(), n);
  if (it == primes_.end()) return std::nullopt;
  return *it;
}

ArithmeticTables ArithmeticTables::build(std::uint64_t limit) {
  if (limit < 2) fail(ErrorKind::kInvalidArgument, "arithmetic table limit must be >= 2");
  if (limit >= std::numeric_limits<std::uint32_t>::max()) {
    fail(ErrorKind::kInvalidArgument, "arithmetic tables require limit < 2^32");
  }
  ArithmeticTables a;
  a.limit_ = limit;
  a.mu_.assign(limit + 1, 0);
  a.phi_.assign(limit + 1, 0);
  a.spf_.assign(limit + 1, 0);
  a.mu_[1] = 1;
  a.phi_[1] = 1;
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (a.spf_[i] == 0) {
      a.spf_[i] = static_cast<std::uint32_t>(i);
      a.mu_[i] = -1;
      a.phi_[i] = static_cast<std::uint32_t>(i - 1);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t m = i * p;
      if (p > a.spf_[i] || m > limit) break;
      a.spf_[m] = p;
      if (p == a.spf_[i]) {
        a.mu_[m] = 0;
        a.phi_[m] = a.phi_[i] * p;
      } else {
        a.mu_[m] = static_cast<std::int8_t>(-a.mu_[i]);
        a.phi_[m] = a.phi_[i] * (p - 1);
      }
    }
  }
  return a;
}

void ArithmeticTables::check(std::uint64_t n) const {
  if (n == 0 || n > limit_) {
    fail(ErrorKind::kOutOfRange, "n=" + std::to_string(n) + " outside arithmetic table range");
  }
}

int ArithmeticTables::mu(std::uint64_t n) const { check(n); return mu_[n]; }
std::uint64_t ArithmeticTables::phi(std::uint64_t n) const { check(n); return phi_[n]; }
std::uint64_t ArithmeticTables::spf(std::uint64_t n) const { check(n); return spf_[n]; }

Factorization ArithmeticTables::factorize(std::uint64_t n) const {
  check(n);
  Factorization f;
  while (n > 1) {
    const std::uint64_t p = spf_[n];
    int e = 0;
    while (n % p == 0) { n /= p; ++e; }
    f.emplace_back(p, e);
  }
  return f;
}

std::vector<std::uint64_t> ArithmeticTables::prime_divisors(std::uint64_t n) const {
  check(n);
  std::vector<std::uint64_t> out;
  while (n > 1) {
    const std::uint64_t p = spf_[n];
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  return out;
}

int ArithmeticTables::omega(std::uint64_t n) const {
  return static_cast<int>(prime_divisors(n).size());
}

Tables build_tables(std::uint64_t limit, const SieveOptions& options) {
  if (limit < 2) fail(ErrorKind::kInvalidArgument, "limit must be >= 2");
  return Tables{PrimeTable::build(limit, options), ArithmeticTables::build(limit)};
}

double theta_weight(std::uint64_t n, const PrimeTable& t) {
  return t.is_prime(n) ? std::log(static_cast<double>(n)) : 0.0;
}

double von_mangoldt(std::uint64_t n, const ArithmeticTables& a) {
  if (n > a.limit() || n == 0) fail(ErrorKind::kOutOfRange, "n outside arithmetic table range");
  if (n < 2) return 0.0;
  const std::uint64_t p = a.spf_unchecked(n);
  std::uint64_t m = n;
  while (m % p == 0) m /= p;
  return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

bool is_kfree(std::uint64_t n, int k, const ArithmeticTables& a) {
  if (k < 2) fail(ErrorKind::kInvalidArgument, "k-free requires k >= 2");
  for (const auto& [p, e] : a.factorize(n)) {
    if (e >= k) return false;
  }
  return true;
}

void TableCache::save(const std::filesystem::path& file, const Tables& tables) {
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) fail(ErrorKind::kIo, "cannot open cache file " + file.string());
  write_le(os, kMagic);
  write_le(os, kVersion);
  write_le(os, tables.primes.limit_);
  write_array(os, tables.primes.bits_);
  write_array(os, tables.arith.mu_);
  write_array(os, tables.arith.phi_);
  write_array(os, tables.arith.spf_);
  if (!os) fail(ErrorKind::kIo, "failed writing cache file " + file.string());
}

std::optional<Tables> TableCache::load(const std::filesystem::path& file,
                                       std::uint64_t limit) {
  std::ifstream is(file, std::ios::binary);
  if (!is) return std::nullopt;
  std::uint32_t magic = 0, version = 0;
  std::uint64_t stored = 0;
  if (!read_le(is, magic) || magic != kMagic) return std::nullopt;
  if (!read_le(is, version) || version != kVersion) return std::nullopt;
  if (!read_le(is, stored) || stored != limit) return std::nullopt;
  Tables t;
  t.primes.limit_ = limit;
  t.arith.limit_ = limit;
  if (!read_array(is, t.primes.bits_, (limit + 1 + 63) / 64)) return std::nullopt;
  if (!read_array(is, t.arith.mu_, limit + 1)) return std::nullopt;
  if (!read_array(is, t.arith.phi_, limit + 1)) return std::nullopt;
  if (!read_array(is, t.arith.spf_, limit + 1)) return std::nullopt;
  for (std::size_t w = 0; w < t.primes.bits_.size(); ++w) {
    std::uint64_t word = t.primes.bits_[w];
    while (word) {
      t.primes.primes_.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return t;
}

std::filesystem::path TableCache::file_for(const std::filesystem::path& dir,
                                           std::uint64_t limit) {
  return dir / ("tables-" + std::to_string(limit) + ".bin");
}

Tables load_or_build_tables(std::uint64_t limit,
                            const std::optional<std::filesystem::path>& cache_dir,
                            const SieveOptions& options) {
  if (cache_dir) {
    const auto file = TableCache::file_for(*cache_dir, limit);
    if (auto cached = TableCache::load(file, limit)) return std::move(*cached);
    Tables t = build_tables(limit, options);
    std::error_code ec;
    std::filesystem::create_directories(*cache_dir, ec);
    TableCache::save(file, t);
    return t;
  }
  return build_tables(limit, options);
}

}  // namespace sievelab
