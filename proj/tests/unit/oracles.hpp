#pragma once

// Independent reference implementations for the unit and acceptance tests.
// Deliberately naive: trial division, direct sums, brute-force scans.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// mpq_class(a, b) is not reduced on construction.
inline mpq_class ratio(const auto& a, const auto& b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  std::vector<bool> comp(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

inline std::uint64_t smallest_factor(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

inline int mobius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

inline std::uint64_t totient(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
  return c;
}

inline bool kfree(std::uint64_t n, int k) {
  if (n == 0) return false;
  for (std::uint64_t p = 2; p * p <= n || p <= n; ++p) {
    std::uint64_t pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    if (pk > n) break;
    if (n % pk == 0) return false;
  }
  return true;
}

inline double von_mangoldt(std::uint64_t n) {
  if (n < 2) return 0;
  const std::uint64_t p = smallest_factor(n);
  while (n % p == 0) n /= p;
  return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

// Consecutive pairs (q_n, q_{n+1}) of an increasing list with q_n <= N and gap <= h.
inline std::uint64_t two_pointer_small_gaps(const std::vector<std::uint64_t>& q, std::uint64_t N, double h) {
  std::uint64_t c = 0;
  for (std::size_t i = 0, j = 1; j < q.size() && q[i] <= N; ++i, ++j)
    if (static_cast<double>(q[j] - q[i]) <= h * (1 + 1e-12)) ++c;
  return c;
}

// sup over intervals [a, b) of |count/N - (b - a)| by scanning endpoints.
inline double brute_discrepancy(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  std::vector<double> ends = x;
  ends.push_back(0.0);
  ends.push_back(1.0);
  std::sort(ends.begin(), ends.end());
  double best = 0;
  for (double a : ends)
    for (double b : ends) {
      if (b < a) continue;
      // closed and half-open counts bracket the supremum
      const auto lo_open = std::lower_bound(x.begin(), x.end(), a);
      const auto lo_closed = std::upper_bound(x.begin(), x.end(), a);
      const auto hi_open = std::lower_bound(x.begin(), x.end(), b);
      const auto hi_closed = std::upper_bound(x.begin(), x.end(), b);
      const double big = static_cast<double>(hi_closed - lo_open) / n - (b - a);
      const double small = static_cast<double>(std::max<std::ptrdiff_t>(0, hi_open - lo_closed)) / n - (b - a);
      best = std::max({best, big, -small});
    }
  return best;
}

}  // namespace oracle
