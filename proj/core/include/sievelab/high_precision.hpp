#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sievelab {

/// A real constant of the form a + b*sqrt(r) with rational a, b. Decimal
/// strings are stored exactly as rationals and carry a user-declared
/// irrationality flag (the value stands in for the real it truncates).
class ExactReal {
 public:
  ExactReal() = default;

  static ExactReal rational(mpq_class value);
  static ExactReal integer(long value) { return rational(mpq_class(value)); }
  /// scale * sqrt(radicand) + offset.
  static ExactReal quadratic(mpq_class offset, mpq_class scale, std::uint64_t radicand);
  /// Exact decimal; `declared_irrational` marks it as an irrational stand-in.
  static ExactReal decimal(std::string_view text, bool declared_irrational = true);

  /// Accepts "sqrt(2)", "3*sqrt(5)", "1/2+1/2*sqrt(5)", "golden", "-2/7",
  /// and decimal literals ("0.45", "3.14159...", optionally suffixed "!" to
  /// declare the decimal rational).
  static ExactReal parse(std::string_view text);

  bool irrational() const;
  bool is_zero() const { return offset_ == 0 && (scale_ == 0 || radicand_ == 0); }
  const mpq_class& offset() const { return offset_; }
  const mpq_class& scale() const { return scale_; }
  std::uint64_t radicand() const { return radicand_; }

  /// Round-trippable text form.
  std::string to_string() const;

  long double to_long_double() const;
  /// Fractional part in [0,1), rounded to long double.
  long double frac_long_double() const;

  friend bool operator==(const ExactReal&, const ExactReal&) = default;

 private:
  mpq_class offset_{0};
  mpq_class scale_{0};
  std::uint64_t radicand_ = 0;
  bool declared_irrational_ = false;
  std::string text_;
};

/// Closed interval [lo, hi] with MPFR endpoints rounded outward.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec);
  Interval(const Interval& other);
  Interval& operator=(const Interval& other);
  ~Interval();

  mpfr_prec_t precision() const { return prec_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  mpfr_ptr lo() { return lo_; }
  mpfr_ptr hi() { return hi_; }

  void set(const ExactReal& x);
  void set_z(const mpz_class& z);
  void add(const Interval& other);
  void sub_z(const mpz_class& z);
  /// Multiply by any integer.
  void mul_z(const mpz_class& z);
  /// Reciprocal; requires 0 < lo.
  void invert();

  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
  long double mid_long_double() const;
  /// floor(lo) == floor(hi); stores it in `out` when decided.
  bool common_floor(mpz_class& out) const;

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

/// Encloses sum_j coeffs[j] * n^j.
Interval enclose_polynomial(std::span<const ExactReal> coeffs, const mpz_class& n,
                            mpfr_prec_t prec);

enum class Decision { kTrue, kFalse, kUndecided };

/// Decides {x} in [0, d] for the enclosed x.
Decision frac_in_unit_prefix(const Interval& x, const mpq_class& d);

/// Decides ||x|| <= threshold, where ||.|| is distance to the nearest integer.
Decision dist_to_int_le(const Interval& x, const mpq_class& threshold);

/// ||x|| enclosure midpoint as long double (for diagnostics, not decisions).
long double dist_to_int_estimate(const Interval& x);

constexpr mpfr_prec_t kStartPrecision = 128;
constexpr mpfr_prec_t kMaxPrecision = 1024;

}  // namespace sievelab
