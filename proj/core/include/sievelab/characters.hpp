#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace sievelab {

/// Unit group of Z/q as a product of cyclic factors, with discrete-log tables.
/// Odd prime powers contribute one cyclic factor (a primitive root); 2^e for
/// e >= 3 contributes the factors generated by -1 and 5.
class CharacterGroup {
 public:
  struct Factor {
    std::uint64_t p = 0;      // prime of the component
    int e = 0;                // exponent
    std::uint64_t pe = 1;     // p^e
    std::uint64_t order = 1;  // order of the generator
    // log[n mod pe] = discrete log, or kNone for non-units. For 2^e, e >= 3,
    // two factors share pe: the -1 factor (order 2) and the 5 factor.
    std::vector<std::uint32_t> log;
  };
  static constexpr std::uint32_t kNone = UINT32_MAX;

  explicit CharacterGroup(std::uint64_t q);
  std::uint64_t modulus() const { return q_; }
  const std::vector<Factor>& factors() const { return factors_; }
  std::uint64_t phi() const;
  /// Exponent of the group (lcm of the factor orders).
  std::uint64_t exponent() const { return exponent_; }

 private:
  std::uint64_t q_;
  std::uint64_t exponent_ = 1;
  std::vector<Factor> factors_;
};

/// chi(n) = e(phase(n) / order) on units, 0 elsewhere. Phases are exact integers.
class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<std::uint64_t> index);

  std::uint64_t modulus() const { return group_->modulus(); }
  std::uint64_t order() const { return group_->exponent(); }
  const std::vector<std::uint64_t>& index() const { return index_; }
  bool is_principal() const { return principal_; }
  bool is_primitive() const { return conductor_ == modulus(); }
  std::uint64_t conductor() const { return conductor_; }

  /// Phase in [0, order) when gcd(n, q) = 1.
  bool phase(std::uint64_t n, std::uint64_t& out) const;
  std::complex<double> operator()(std::uint64_t n) const;

 private:
  std::shared_ptr<const CharacterGroup> group_;
  std::vector<std::uint64_t> index_;
  bool principal_ = true;
  std::uint64_t conductor_ = 1;
};

/// All phi(q) characters mod q, principal first. q must lie in [1, 10^6].
std::vector<DirichletCharacter> build_characters(std::uint64_t q);

}  // namespace sievelab
