#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sievelab/high_precision.hpp"
#include "sievelab/prime_engine.hpp"

namespace sievelab {

struct WholeNumbers {
  friend bool operator==(const WholeNumbers&, const WholeNumbers&) = default;
};

/// {n : n = a mod q}.
struct ArithmeticProgression {
  std::int64_t a = 0;
  std::uint64_t q = 1;
  friend bool operator==(const ArithmeticProgression&, const ArithmeticProgression&) = default;
};

/// {n : n + a is k-free}.
struct ShiftedKFree {
  std::int64_t a = 0;
  int k = 2;
  friend bool operator==(const ShiftedKFree&, const ShiftedKFree&) = default;
};

/// {n : {sum_j coeffs[j] n^j} in [0, d]}.
struct BohrPolynomial {
  std::vector<ExactReal> coeffs;
  mpq_class d;
  friend bool operator==(const BohrPolynomial& x, const BohrPolynomial& y) {
    return x.coeffs == y.coeffs && x.d == y.d;
  }
};

/// Allowed residues modulo m. The excluded classes are the complement.
struct ResidueProfile {
  std::uint64_t m = 1;
  std::vector<std::uint64_t> allowed;  // sorted, distinct, each < m

  std::size_t excluded_count() const { return m - allowed.size(); }
  bool allows(std::uint64_t r) const;
  friend bool operator==(const ResidueProfile&, const ResidueProfile&) = default;
};

struct TypeB {
  std::vector<ResidueProfile> moduli;  // pairwise coprime
  double kappa = 1.0;
  /// Bound used when the modulus list was generated from an infinite family.
  std::optional<std::uint64_t> truncation_bound;
  friend bool operator==(const TypeB&, const TypeB&) = default;
};

/// B(z): the base set with only the moduli m < z kept.
struct ApproxTypeB {
  TypeB base;
  double z = 1.0;
  std::vector<ResidueProfile> kept() const;
  friend bool operator==(const ApproxTypeB&, const ApproxTypeB&) = default;
};

enum class SetKind { kWhole, kAP, kShiftedKFree, kBohr, kTypeB, kApproxTypeB };

class SetDescriptor {
 public:
  using Variant =
      std::variant<WholeNumbers, ArithmeticProgression, ShiftedKFree, BohrPolynomial, TypeB, ApproxTypeB>;

  SetDescriptor() = default;
  SetDescriptor(Variant v);  // validates

  static SetDescriptor whole() { return SetDescriptor(WholeNumbers{}); }
  static SetDescriptor ap(std::int64_t a, std::uint64_t q);
  static SetDescriptor shifted_kfree(std::int64_t a, int k = 2);
  static SetDescriptor bohr(std::vector<ExactReal> coeffs, mpq_class d);
  static SetDescriptor type_b(TypeB b);
  /// Shifted k-free numbers as a type-B set with moduli p^k <= bound.
  static SetDescriptor shifted_kfree_type_b(std::int64_t a, int k, std::uint64_t bound);

  SetKind kind() const;
  const Variant& variant() const { return v_; }
  /// Short human label, e.g. "ap(1,4)".
  std::string label() const;
  /// True when membership needs factorization tables.
  bool needs_tables() const { return kind() == SetKind::kShiftedKFree; }

  friend bool operator==(const SetDescriptor&, const SetDescriptor&) = default;

 private:
  Variant v_{WholeNumbers{}};
};

/// Exact membership. Bohr sets escalate interval precision from 128 to 1024
/// bits and throw Error(kBoundaryAmbiguous) when still undecided.
bool contains(const SetDescriptor& s, std::uint64_t n, const ArithmeticTables* tables = nullptr);

/// Membership flags for n in [lo, hi].
std::vector<std::uint8_t> membership(const SetDescriptor& s, std::uint64_t lo, std::uint64_t hi,
                                     const ArithmeticTables* tables = nullptr);

/// n lies in Z_m^x and in the allowed classes for every kept modulus
/// (the selection used by the type-B sieve sums). Other kinds: contains().
bool contains_sharp(const SetDescriptor& s, std::uint64_t n, const ArithmeticTables* tables = nullptr);

/// Bohr membership primitive, exposed for diagnostics.
bool bohr_contains(const BohrPolynomial& b, std::uint64_t n);

ApproxTypeB truncate(const TypeB& b, double z);

/// tau_m(H) = |intersection over i of ((Z_m^x cap allowed) - h_i)|.
std::uint64_t residue_count_tau(std::span<const std::int64_t> h, const ResidueProfile& profile);

/// prod over p in F, D0 < p < z of (1/p)(1 - 1/p)^k; F = primes dividing the
/// moduli m <= z. Returns 1 for every non-type-B set.
double singular_series(const ApproxTypeB& s, int k, std::uint64_t D0);
double singular_series(const SetDescriptor& s, int k, std::uint64_t D0);

/// prod over m with D0 < m <= z of tau_m(H)/m.
double gamma_factor(const ApproxTypeB& s, std::span<const std::int64_t> h, std::uint64_t D0);

struct TailComparison {
  double partial_sum = 0.0;
  double claimed_bound = 0.0;  // x^{-kappa}
  std::optional<std::uint64_t> truncation_bound;
};

/// sum over listed moduli m >= x of |N_m| / phi(m).
TailComparison typeB_tail(const TypeB& s, double x, const ArithmeticTables& a);

/// Primes dividing the moduli m <= z of a type-B set.
std::vector<std::uint64_t> forbidden_primes(const ApproxTypeB& s);

}  // namespace sievelab
