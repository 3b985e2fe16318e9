#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sievelab/prime_engine.hpp"
#include "sievelab/sieve_weights.hpp"
#include "sievelab/simplex_poly.hpp"
#include "sievelab/structured_sets.hpp"
#include "sievelab/tuples.hpp"

namespace sievelab {

/// Evaluates w(n) = sum_{d_i | n + h_i} lambda_d. Only primes <= R can divide
/// a support entry, so factoring uses trial division by those primes.
class WeightEvaluator {
 public:
  explicit WeightEvaluator(const SieveWeights& w);
  double operator()(std::uint64_t n, const KTuple& H) const;
  /// Loops over the lambda table with divisibility tests (reference path).
  double scan(std::uint64_t n, const KTuple& H) const;

 private:
  const SieveWeights* w_;
  std::vector<std::uint64_t> primes_;  // primes <= R
};

double weight_w(std::uint64_t n, const KTuple& H, const SieveWeights& w);
double weight_w_scan(std::uint64_t n, const KTuple& H, const SieveWeights& w);

/// (1/(k+l)!) sum_{d | P_H(n), d <= R} mu(d) log(R/d)^{k+l}, P_H(n) = prod (n + h_i).
double gpy_weight(std::uint64_t n, const KTuple& H, double R, int l);

struct SieveSumOptions {
  double delta = 0.0;  // drop n with P_H(n) divisible by a prime <= R^delta
  std::uint64_t W = 1;
  std::uint64_t a0 = 0;
};

/// sum over n in (N, 2N], n = a0 mod W, n + H in C (sharp membership for type-B
/// sets) and the delta-coprimality condition, of w(n)^2.
double sum_S1(const SetDescriptor& C, std::uint64_t N, const KTuple& H, const SieveWeights& w,
              const SieveSumOptions& opt, const ArithmeticTables* tables = nullptr);

struct S2Result {
  std::vector<double> per_index;  // sum of theta(n + h_i) w(n)^2 with n + h_i in C
  double total = 0.0;
};

/// Requires primes.limit() >= 2N + max(H).
S2Result sum_S2(const SetDescriptor& C, std::uint64_t N, const KTuple& H, const SieveWeights& w,
                const SieveSumOptions& opt, const PrimeTable& primes, const ArithmeticTables* tables = nullptr);

enum class Divisibility { kAny, kDivisible, kCoprime };

struct SieveSumEstimate {
  double exact = 0.0;
  double main = 0.0;
  std::optional<double> ratio;  // exact / main when main != 0
  double singular_series = 1.0;
  bool series_converged = true;
  std::uint64_t series_cutoff = 0;
};

/// sum_{d < z squarefree, [q-condition]} g(d) G(log d / log z) with
/// g(p) = gamma(p) / (p - gamma(p)), against the main term
/// c_q S (log z)^kappa / Gamma(kappa) int_0^1 G(x) x^{kappa-1} dx.
/// `q` is ignored for Divisibility::kAny.
SieveSumEstimate sieve_sum_estimate(const std::function<double(std::uint64_t)>& gamma,
                                    const std::function<double(double)>& G, double z, std::uint64_t q,
                                    Divisibility mode, double kappa, const ArithmeticTables& tables);

struct AsymptoticReport {
  double R = 0.0;
  std::uint64_t W = 1;
  std::uint64_t a0 = 1;
  double S1 = 0.0, main1 = 0.0;
  std::optional<double> ratio1;
  double S2 = 0.0, main2 = 0.0;
  std::optional<double> ratio2;
  double gamma = 1.0, singular_series = 1.0;
  std::vector<std::string> warnings;
};

struct AsymptoticOptions {
  double theta = 0.5;
  double epsilon = 0.01;
  std::optional<double> R;  // default N^{theta/2 - epsilon}
  double delta = -1;        // default 0.05 / k
  std::uint64_t D0 = 5;
  bool with_S2 = true;
};

/// Empirical S1, S2 against the main terms
/// gamma S N (log R)^k phi(W)^k / W^{k+1} I_k(F) and
/// gamma S N (log R)^{k+1} phi(W)^k / W^{k+1} sum_m J_k^(m)(F).
/// `primes` must reach 2N + max(H); `arith` must reach R.
AsymptoticReport prop_asymptotic_check(const SetDescriptor& C, std::uint64_t N, const KTuple& H,
                                       const SmoothFunction& F, const AsymptoticOptions& opt,
                                       const PrimeTable& primes, const ArithmeticTables& arith);

}  // namespace sievelab
