#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "sievelab/high_precision.hpp"
#include "sievelab/prime_engine.hpp"

namespace sievelab {

struct ContinuedFraction {
  ExactReal alpha;
  std::vector<mpz_class> quotients;                         // a_0; a_1, a_2, ...
  std::vector<std::pair<mpz_class, mpz_class>> convergents;  // (p_i, q_i)
};

/// Throws invalid-argument for rational alpha and precision-exhausted when
/// 1024-bit enclosures cannot resolve `depth` quotients.
ContinuedFraction continued_fraction(const ExactReal& alpha, int depth);

/// Convergents with q_i <= q_max (the expansion is extended as needed).
ContinuedFraction continued_fraction_upto(const ExactReal& alpha, const mpz_class& q_max);

/// Irrationality-type proxy: least-squares slope of log(1/||q a||) against
/// log q over convergent denominators 10 <= q <= m_max, floored at 1 (the
/// Dirichlet lower bound). Falls back to the largest single ratio when fewer
/// than two denominators qualify.
double diophantine_type_estimate(const ExactReal& alpha, std::uint64_t m_max);

/// ||q alpha|| for an integer q, as a long double.
long double dist_to_int_of_multiple(const ExactReal& alpha, const mpz_class& q);

struct ThreeDistanceOrdering {
  std::uint64_t M = 0;
  std::vector<std::uint64_t> s;           // {s_1 a} < ... < {s_M a}
  std::vector<std::size_t> violations;    // j with s_{j+1} != recurrence(s_j)
  bool symmetric_case = false;            // ||s_1 a|| > ||s_M a||
};

ThreeDistanceOrdering three_distance_order(const ExactReal& alpha, std::uint64_t M);

/// {b <= M : ||m b^k alpha|| <= threshold}; threshold in (0, 1/2).
std::vector<std::uint64_t> small_denominator_set(const ExactReal& alpha, std::uint64_t M, double threshold,
                                                 std::uint64_t m, int k);

/// Extreme discrepancy: sup over [d, b) of |A/N - (b - d)|.
double discrepancy(std::span<const double> points);
/// Star discrepancy: sup over [0, b).
double star_discrepancy(std::span<const double> points);

/// 3 (1/H + sum_{r<=H} (1/r) |N^{-1} sum_n e(r x_n)|).
double etk_bound(std::span<const double> points, std::uint64_t H);

/// Evaluates {f(n)} for a polynomial with ExactReal coefficients (index = degree).
class PolynomialPhase {
 public:
  explicit PolynomialPhase(std::span<const ExactReal> coeffs);
  int degree() const { return static_cast<int>(frac_.size()) - 1; }
  /// {f(n)} in [0,1); accurate while n^degree stays below 2^63.
  long double frac(std::uint64_t n) const;

 private:
  std::vector<long double> frac_;
};

std::complex<double> weyl_sum(std::span<const ExactReal> f, std::uint64_t N);
/// N^{1+eps} (1/nu + 1/N + nu/N^k)^{2^{1-k}}.
double weyl_bound(std::uint64_t N, int k, double nu, double eps = 0.1);

std::complex<double> lambda_weighted_expsum(std::span<const ExactReal> f, std::uint64_t N,
                                            const ArithmeticTables& tables);
/// N^{1+eps} (N^{-1/2} + 1/nu + nu/N^k)^{4^{1-k}}.
double lambda_expsum_bound(std::uint64_t N, int k, double nu, double eps = 0.1);

/// Largest convergent denominator of alpha not exceeding `cap`.
std::uint64_t convergent_denominator_below(const ExactReal& alpha, std::uint64_t cap);

struct OscillatoryIntegral {
  std::complex<double> value;
  double modulus = 0.0;
};

/// Integral of e(phi(x)) over [a, b]; |phi'| >= 1 and monotone phi' are
/// spot-checked on a grid (invalid-argument otherwise).
OscillatoryIntegral van_der_corput_check(const std::function<double(double)>& phi,
                                         const std::function<double(double)>& dphi, double a, double b);

/// Compensated sum of e(x_n) pieces, exposed for reuse.
class KahanComplex {
 public:
  void add(std::complex<double> z);
  std::complex<double> value() const { return {re_, im_}; }

 private:
  double re_ = 0, im_ = 0, cre_ = 0, cim_ = 0;
};

/// e(x) = exp(2 pi i x) with x reduced mod 1 first.
std::complex<double> unit_phase(long double x);

}  // namespace sievelab
