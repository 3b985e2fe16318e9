#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "sievelab/simplex_poly.hpp"

namespace sievelab {

struct VariationalResult {
  int k = 1;
  int basis_degree = 0;
  std::size_t basis_size = 0;
  std::size_t dropped = 0;             // basis functions removed by the pivot test
  double mk_lower = 0.0;               // largest generalized eigenvalue
  std::optional<mpq_class> exact;      // available when the basis has one function
  SmoothFunction F;                    // maximizer with exact rational coefficients
  std::vector<double> coeffs;          // coefficients of F in basis order
  double rayleigh = 0.0;               // k J(F) / I(F) evaluated from scratch
  double min_relative_pivot = 1.0;     // smallest pivot of the I-Gram factorization / its diagonal
};

/// (1 - P_1)^b prod_{j=2..k} P_j^{e_j} with b + sum_j j e_j <= degree.
std::vector<SymmetricTerm> variational_basis(int k, int degree);

/// Maximizes sum_m J_k^(m)(F) / I_k(F) over the span of variational_basis(k, degree).
VariationalResult mk_lower_bound(int k, int degree);

}  // namespace sievelab
