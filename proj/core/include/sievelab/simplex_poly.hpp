#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sievelab {

/// coeff * (1 - P_1)^b * prod_j P_j^{e_j}, where P_j = sum_i t_i^j.
struct SymmetricTerm {
  mpq_class coeff = 1;
  int b = 0;
  std::vector<int> e;  // e[j-1] is the exponent of P_j; trailing zeros are trimmed
  friend bool operator==(const SymmetricTerm&, const SymmetricTerm&) = default;
};

/// Symmetric polynomial in t_1..t_k restricted to the simplex
/// {t_i >= 0, sum t_i <= 1}; zero outside it.
class SmoothFunction {
 public:
  SmoothFunction() = default;
  SmoothFunction(int k, std::vector<SymmetricTerm> terms);

  static SmoothFunction constant(int k, mpq_class c = 1);
  /// (1 - sum t_i)^power.
  static SmoothFunction one_minus_sum(int k, int power = 1);

  int k() const { return k_; }
  const std::vector<SymmetricTerm>& terms() const { return terms_; }
  int degree() const;

  double operator()(std::span<const double> t) const;

  /// "1/2*(1-P1)^2*P2 + 3" style term list.
  std::string to_string() const;
  static SmoothFunction parse(int k, std::string_view text);

 private:
  int k_ = 1;
  std::vector<SymmetricTerm> terms_;
};

/// Exact integrals over the k-simplex of (1 - P_1)^B * prod_j P_j^{nu_j},
/// via the monomial-symmetric expansion of the power-sum product and
/// int prod t_i^{a_i} (1 - sum t)^B = prod a_i! B! / (k + sum a_i + B)!.
class SimplexIntegrator {
 public:
  explicit SimplexIntegrator(int k);
  int k() const { return k_; }
  const mpq_class& integral(int B, const std::vector<int>& nu);

 private:
  using Partition = std::vector<int>;
  using MonomialSum = std::map<Partition, mpz_class>;

  const MonomialSum& expansion(const std::vector<int>& nu);
  mpq_class monomial_integral(const Partition& mu, int B) const;

  int k_;
  std::map<std::vector<int>, MonomialSum> expansions_;
  std::map<std::pair<int, std::vector<int>>, mpq_class> cache_;
};

/// Lower-dimensional term list: the k-1 variable function obtained by
/// integrating out one coordinate over [0, 1 - sum of the others].
std::vector<SymmetricTerm> integrate_out_last(std::span<const SymmetricTerm> terms);

/// Sum of products, merged by (b, e).
std::vector<SymmetricTerm> normalize_terms(std::vector<SymmetricTerm> terms);

mpq_class integrate_Ik_exact(const SmoothFunction& F);
/// Same value for every m by symmetry; m outside [1, k] is out-of-range.
mpq_class integrate_Jkm_exact(const SmoothFunction& F, int m);
double integrate_Ik(const SmoothFunction& F);
double integrate_Jkm(const SmoothFunction& F, int m);

}  // namespace sievelab
