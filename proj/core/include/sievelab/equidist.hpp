#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sievelab/characters.hpp"
#include "sievelab/prime_engine.hpp"
#include "sievelab/structured_sets.hpp"
#include "sievelab/tuples.hpp"

namespace sievelab {

/// n + H inside A for n in [1, N], as a 0/1 vector indexed by n (entry 0 unused).
std::vector<std::uint8_t> tuple_indicator(const SetDescriptor& A, const KTuple& H, std::uint64_t N);

struct RemainderRecord {
  std::uint64_t N = 0, q = 1, a = 0;
  std::uint64_t exact_count = 0;
  double main_term = 0.0;  // c1_hat * N / q
  double remainder = 0.0;  // exact_count - main_term
};

/// Counts n <= N with n = a mod q and n + H inside A.
RemainderRecord remainder_R(const SetDescriptor& A, const KTuple& H, std::uint64_t N, std::uint64_t a,
                            std::uint64_t q, double c1_hat);

struct BvReport {
  std::uint64_t N = 0, Q = 0;
  double sum = 0.0;    // sum_{q <= Q} max_a |R(N, a, q)|
  double ratio = 0.0;  // sum / N
};

/// Every residue when q <= 64, otherwise 64 residues floor(i q / 64).
BvReport bv_average(const SetDescriptor& A, const KTuple& H, std::uint64_t N, std::uint64_t Q, double c1_hat,
                    unsigned threads = 1);

struct DensityConstants {
  double c1 = 0.0;  // |{n <= N : n + H in A}| / N
  double c2 = 0.0;  // sum of Lambda(n) over the same n, / N
};

/// `arith` must reach N.
DensityConstants density_constants(const SetDescriptor& A, const KTuple& H, std::uint64_t N,
                                   const ArithmeticTables& arith);

/// sum_{m <= N, m + H in A} Lambda(m) chi(m). `arith` must reach N.
std::complex<double> psi_character_sum(const SetDescriptor& A, const KTuple& H, std::uint64_t N,
                                       const DirichletCharacter& chi, const ArithmeticTables& arith);
/// Same, minus c2_hat * N for the principal character.
std::complex<double> psi_character_sum_primed(const SetDescriptor& A, const KTuple& H, std::uint64_t N,
                                              const DirichletCharacter& chi, double c2_hat,
                                              const ArithmeticTables& arith);

struct MobiusProgression {
  double sum = 0.0;    // sum_{t <= x, l | t} mu(t) / t
  double bound = 0.0;  // omega(l)^omega(l) / exp((log x)^{1/4})
};

/// l squarefree, x <= arith.limit().
MobiusProgression mobius_progression_sum(double x, std::uint64_t l, const ArithmeticTables& arith);

using ArithmeticFunction = std::function<std::complex<double>(std::uint64_t)>;

struct VaughanParts {
  std::complex<double> S1, S2, S3, S4, total, direct;
};

/// sum_{m <= N} Lambda(m) f(m) split as
///   S1 = sum_{m <= U} Lambda(m) f(m)
///   S2 = -sum_{t <= UV} (sum_{dl = t, d <= V, l <= U} mu(d) Lambda(l)) sum_{r <= N/t} f(rt)
///   S3 = sum_{d <= V} mu(d) sum_{h <= N/d} log(h) f(hd)
///   S4 = -sum_{m > U, k > V, mk <= N} Lambda(m) (sum_{d | k, d <= V} mu(d)) f(mk).
/// Throws internal when |total - direct| > 1e-6 N.
VaughanParts vaughan_decompose(std::uint64_t N, std::uint64_t U, std::uint64_t V, const ArithmeticFunction& f,
                               const ArithmeticTables& arith);

/// n -> 1_A(n) chi(n).
ArithmeticFunction membership_character(const SetDescriptor& A, const DirichletCharacter& chi);

struct BilinearResult {
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
};

/// lhs = sum_{q <= Q} q/phi(q) sum_{chi primitive mod q} |sum_{m <= M, l <= L} a_m b_l chi(ml) [ml + H in A]|,
/// rhs = (M + Q^2)^{1/2} (L + Q^2)^{1/2} log(2ML)^3 |a|_2 |b|_2. Without A the
/// double sum factors.
BilinearResult bilinear_check(const std::vector<double>& a, const std::vector<double>& b, std::uint64_t Q,
                              const std::optional<SetDescriptor>& A = std::nullopt, const KTuple& H = KTuple({0}));

struct FourierDecayRow {
  std::int64_t k = 0;
  double coeff = 0.0;     // |c_k|
  double envelope = 0.0;  // min(1/k, N^{rC} / k^r)
};

/// Fourier coefficients of a smooth cut-off of [0, d] on R/Z: the indicator
/// convolved with a C-infinity bump of width N^{-C}. Reports |c_k| against
/// min(1/k, N^{rC}/k^r) for k = 1..kmax.
std::vector<FourierDecayRow> smooth_cutoff_decay(double d, double N, double C, int r, std::int64_t kmax);

}  // namespace sievelab
