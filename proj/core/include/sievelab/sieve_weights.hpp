#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "sievelab/prime_engine.hpp"
#include "sievelab/simplex_poly.hpp"
#include "sievelab/tuples.hpp"

namespace sievelab {

using DivisorTuple = std::vector<std::uint64_t>;
template <class T>
using TupleMap = std::map<DivisorTuple, T>;

/// Pairwise coprime squarefree k-tuples, each entry prime to W and to the
/// forbidden primes, with product <= R.
struct WeightSupport {
  std::size_t k = 1;
  double R = 1.0;
  std::uint64_t W = 1;
  std::vector<std::uint64_t> forbidden;
  std::vector<DivisorTuple> tuples;
};

/// Requires floor(R) <= tables.limit().
WeightSupport weight_support(std::size_t k, double R, std::uint64_t W, std::vector<std::uint64_t> forbidden,
                             const ArithmeticTables& tables);

/// lambda_d = prod mu(d_i) d_i * sum_{d_i | r_i} y_r / prod phi(r_i), over the support.
template <class T>
TupleMap<T> lambda_from_y_map(const WeightSupport& s, const TupleMap<T>& y, const ArithmeticTables& tables);

/// y_r = prod mu(r_i) phi(r_i) * sum_{r_i | d_i} lambda_d / prod d_i.
template <class T>
TupleMap<T> y_from_lambda_map(const WeightSupport& s, const TupleMap<T>& lambda, const ArithmeticTables& tables);

struct SieveWeights {
  WeightSupport support;
  TupleMap<double> y;
  TupleMap<double> lambda;

  double lambda_at(const DivisorTuple& d) const;
  /// max |lambda_d|.
  double lambda_max() const;
};

/// y_r = F(log r_1 / log R, ..., log r_k / log R) on the support, then lambda from y.
SieveWeights lambda_from_y(const SmoothFunction& F, double R, std::uint64_t W,
                           std::vector<std::uint64_t> forbidden, const ArithmeticTables& tables);

/// Weights with an explicitly given lambda table (support = its keys).
SieveWeights weights_from_lambda(std::size_t k, double R, std::uint64_t W, TupleMap<double> lambda);

struct TransformTables {
  TupleMap<double> y, y_prime, x, x_prime;
};

/// y_r(q,l), x_r(q,l) and the primed variants (q not dividing d_l) by direct
/// summation over the lambda support. x carries rho(prod d_i), where rho(p) = 0
/// iff p divides prod_i (h_0 - h_i). Tables vanish when q is a forbidden prime.
/// `l` is 1-based; H0 holds h_0, h_1, ..., h_k.
TransformTables transform_yql_xql(const SieveWeights& w, std::uint64_t q, std::size_t l,
                                  const std::vector<std::int64_t>& H0, const ArithmeticTables& tables);

}  // namespace sievelab
