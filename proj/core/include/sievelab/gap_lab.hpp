#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sievelab/prime_engine.hpp"
#include "sievelab/simplex_poly.hpp"
#include "sievelab/structured_sets.hpp"
#include "sievelab/tuples.hpp"

namespace sievelab {

/// Primes p <= N with p in C, increasing. Requires N <= t.limit().
std::vector<std::uint64_t> primes_in_set(const SetDescriptor& C, std::uint64_t N, const PrimeTable& t);

struct GapReport {
  std::uint64_t N = 0;
  double eta = 0.0;
  double h = 0.0;  // eta * log N
  std::uint64_t count_pi = 0;
  // Largest parity class of small gaps between consecutive primes that both lie in C.
  std::uint64_t count_pi_star = 0;
  int pi_star_class = 1;  // 1 or 2; ties go to 1
  std::map<std::uint64_t, std::uint64_t> histogram;  // gap -> count over all consecutive pairs
  std::uint64_t pairs = 0;
  // m -> min q_{n+m} - q_n with q_{n+m} <= N. Upper proxies only.
  std::map<int, std::uint64_t> Hm;
  std::vector<std::string> warnings;
};

/// The table should reach N + 20 log N so the gap after the last q_n <= N is
/// decided; otherwise that pair is dropped with a warning.
GapReport pi_small_gaps(const SetDescriptor& C, std::uint64_t N, double eta, const PrimeTable& t);

/// min q_{n+m} - q_n over q_{n+m} <= N. Fewer than m + 1 primes -> insufficient-data.
std::uint64_t empirical_Hm(const SetDescriptor& C, std::uint64_t N, int m, const PrimeTable& t);

struct SimulationReport {
  double rho = 0.0;
  std::uint64_t N = 0;
  double eta = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t pi_star_full = 0;  // for the whole set of primes
  double lambda = 0.0;             // rho^2 * pi_star_full
  double frequency = 0.0;          // share of trials with pi_star_B >= lambda / 2
  double chernoff = 0.0;           // 1 - exp(-lambda)
  double mean_pi_star = 0.0;
};

/// Each prime joins B independently with probability rho. Trial i draws from
/// mt19937_64 seeded by splitmix64(seed + i), so results do not depend on `threads`.
SimulationReport random_subset_simulation(double rho, std::uint64_t N, double eta, std::uint64_t trials,
                                          std::uint64_t seed, const PrimeTable& t, unsigned threads = 1);

struct ProportionRow {
  std::uint64_t N = 0;
  std::uint64_t count_pi = 0;
  double proportion = 0.0;  // pi_C(N; eta) log N / N
};

std::vector<ProportionRow> positive_proportion_experiment(const SetDescriptor& C,
                                                          const std::vector<std::uint64_t>& grid, double eta,
                                                          const PrimeTable& t);

struct TildeSOptions {
  double theta = 0.5;
  double epsilon = 0.01;
  std::optional<double> R;  // default N^{theta/2 - epsilon}
  double delta = -1;        // default 0.05 / k
  std::uint64_t D0 = 2;
  std::size_t tuple_budget = 16;
};

struct TildeSResult {
  double value = 0.0;
  double R = 0.0;
  double h = 0.0;
  std::uint64_t W = 1;
  std::vector<KTuple> tuples;
  std::vector<double> per_tuple;  // normalized contributions; they sum to value
  std::vector<std::string> warnings;
};

/// (1/(h (log R)^k)) sum_H sum_{N <= n <= 2N, n = 1 mod W} (Theta_C(n, h) - log 3N) w(n)^2,
/// with Theta_C(n, h) = sum_{1 <= h0 <= h, n + h0 in C} theta(n + h0). H runs over
/// admissible k-tuples of positive multiples of W inside [1, h], and n must keep
/// every n + h_i free of primes <= R^delta. No tuple -> insufficient-tuples.
TildeSResult tilde_S_experiment(const SetDescriptor& C, std::uint64_t N, double eta, const SmoothFunction& F,
                                const TildeSOptions& opt, const PrimeTable& primes, const ArithmeticTables& arith);

}  // namespace sievelab
