#include "sievelab/sieve_weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>

#include "sievelab/error.hpp"

namespace sievelab {

namespace {

// Calls fn(e) for every componentwise divisor tuple e of d (each d_i squarefree).
void for_each_divisor_tuple(const DivisorTuple& d, const ArithmeticTables& tables,
                            const std::function<void(const DivisorTuple&)>& fn) {
  std::vector<std::vector<std::uint64_t>> divs(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    divs[i] = {1};
    for (std::uint64_t p : tables.prime_divisors(d[i])) {
      const std::size_t n = divs[i].size();
      for (std::size_t j = 0; j < n; ++j) divs[i].push_back(divs[i][j] * p);
    }
  }
  DivisorTuple e(d.size());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == d.size()) {
      fn(e);
      return;
    }
    for (std::uint64_t v : divs[i]) {
      e[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
}

template <class T>
T from_int(std::int64_t v) {
  if constexpr (std::is_same_v<T, double>) {
    return static_cast<double>(v);
  } else {
    return T(static_cast<long>(v));
  }
}

std::uint64_t g_of(std::uint64_t r, const ArithmeticTables& tables) {
  std::uint64_t out = 1;
  for (std::uint64_t p : tables.prime_divisors(r)) out *= p - 2;
  return out;
}

}  // namespace

WeightSupport weight_support(std::size_t k, double R, std::uint64_t W, std::vector<std::uint64_t> forbidden,
                             const ArithmeticTables& tables) {
  if (k < 1) fail(ErrorKind::kInvalidArgument, "k must be positive");
  if (!(R >= 1)) fail(ErrorKind::kInvalidArgument, "R must be >= 1");
  if (W < 1) fail(ErrorKind::kInvalidArgument, "W must be positive");
  const auto Rf = static_cast<std::uint64_t>(std::floor(R));
  if (Rf > tables.limit()) fail(ErrorKind::kOutOfRange, "R exceeds the arithmetic table limit");
  WeightSupport s{k, R, W, std::move(forbidden), {}};
  std::sort(s.forbidden.begin(), s.forbidden.end());
  std::vector<std::uint64_t> allowed;
  for (std::uint64_t r = 1; r <= Rf; ++r) {
    if (r > 1 && tables.mu(r) == 0) continue;
    if (std::gcd(r, W) != 1) continue;
    if (std::any_of(s.forbidden.begin(), s.forbidden.end(), [r](std::uint64_t p) { return r % p == 0; })) continue;
    allowed.push_back(r);
  }
  DivisorTuple cur(k);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t prod) -> void {
    if (i == k) {
      s.tuples.push_back(cur);
      return;
    }
    for (std::uint64_t r : allowed) {
      if (prod * r > Rf) break;
      bool coprime = true;
      for (std::size_t j = 0; j < i && coprime; ++j) coprime = std::gcd(cur[j], r) == 1;
      if (!coprime) continue;
      cur[i] = r;
      self(self, i + 1, prod * r);
    }
  };
  rec(rec, 0, 1);
  std::sort(s.tuples.begin(), s.tuples.end());
  return s;
}

template <class T>
TupleMap<T> lambda_from_y_map(const WeightSupport& s, const TupleMap<T>& y, const ArithmeticTables& tables) {
  TupleMap<T> acc;
  for (const DivisorTuple& r : s.tuples) {
    const auto it = y.find(r);
    if (it == y.end() || it->second == 0) continue;
    std::int64_t phis = 1;
    for (std::uint64_t ri : r) phis *= static_cast<std::int64_t>(tables.phi(ri));
    const T weight = it->second / from_int<T>(phis);
    for_each_divisor_tuple(r, tables, [&](const DivisorTuple& d) { acc[d] += weight; });
  }
  for (auto& [d, v] : acc) {
    std::int64_t f = 1;
    for (std::uint64_t di : d) f *= tables.mu(di) * static_cast<std::int64_t>(di);
    v *= from_int<T>(f);
  }
  return acc;
}

template <class T>
TupleMap<T> y_from_lambda_map(const WeightSupport& s, const TupleMap<T>& lambda, const ArithmeticTables& tables) {
  (void)s;
  TupleMap<T> acc;
  for (const auto& [d, l] : lambda) {
    if (l == 0) continue;
    std::int64_t prod = 1;
    for (std::uint64_t di : d) prod *= static_cast<std::int64_t>(di);
    const T weight = l / from_int<T>(prod);
    for_each_divisor_tuple(d, tables, [&](const DivisorTuple& r) { acc[r] += weight; });
  }
  for (auto& [r, v] : acc) {
    std::int64_t f = 1;
    for (std::uint64_t ri : r) f *= tables.mu(ri) * static_cast<std::int64_t>(tables.phi(ri));
    v *= from_int<T>(f);
  }
  return acc;
}

template TupleMap<double> lambda_from_y_map(const WeightSupport&, const TupleMap<double>&, const ArithmeticTables&);
template TupleMap<mpq_class> lambda_from_y_map(const WeightSupport&, const TupleMap<mpq_class>&,
                                               const ArithmeticTables&);
template TupleMap<double> y_from_lambda_map(const WeightSupport&, const TupleMap<double>&, const ArithmeticTables&);
template TupleMap<mpq_class> y_from_lambda_map(const WeightSupport&, const TupleMap<mpq_class>&,
                                               const ArithmeticTables&);

double SieveWeights::lambda_at(const DivisorTuple& d) const {
  const auto it = lambda.find(d);
  return it == lambda.end() ? 0.0 : it->second;
}

double SieveWeights::lambda_max() const {
  double m = 0;
  for (const auto& [d, v] : lambda) m = std::max(m, std::abs(v));
  return m;
}

SieveWeights lambda_from_y(const SmoothFunction& F, double R, std::uint64_t W, std::vector<std::uint64_t> forbidden,
                           const ArithmeticTables& tables) {
  SieveWeights w;
  w.support = weight_support(static_cast<std::size_t>(F.k()), R, W, std::move(forbidden), tables);
  const double logR = std::log(R);
  std::vector<double> t(static_cast<std::size_t>(F.k()));
  for (const DivisorTuple& r : w.support.tuples) {
    for (std::size_t i = 0; i < r.size(); ++i) t[i] = logR > 0 ? std::log(static_cast<double>(r[i])) / logR : 0.0;
    const double v = F(t);
    if (v != 0) w.y[r] = v;
  }
  w.lambda = lambda_from_y_map(w.support, w.y, tables);
  return w;
}

SieveWeights weights_from_lambda(std::size_t k, double R, std::uint64_t W, TupleMap<double> lambda) {
  SieveWeights w;
  w.support.k = k;
  w.support.R = R;
  w.support.W = W;
  for (const auto& [d, v] : lambda) {
    if (d.size() != k) fail(ErrorKind::kInvalidArgument, "lambda tuple has the wrong length");
    w.support.tuples.push_back(d);
  }
  w.lambda = std::move(lambda);
  return w;
}

TransformTables transform_yql_xql(const SieveWeights& w, std::uint64_t q, std::size_t l,
                                  const std::vector<std::int64_t>& H0, const ArithmeticTables& tables) {
  const std::size_t k = w.support.k;
  if (l < 1 || l > k) fail(ErrorKind::kOutOfRange, "l must lie in [1, k]");
  if (H0.size() != k + 1) fail(ErrorKind::kInvalidArgument, "H0 must hold k + 1 shifts");
  if (q < 2 || q > tables.limit() || tables.spf(q) != q) fail(ErrorKind::kInvalidArgument, "q must be prime");
  TransformTables out;
  if (std::binary_search(w.support.forbidden.begin(), w.support.forbidden.end(), q)) return out;

  for (std::size_t i = 1; i <= k; ++i)
    if (H0[0] == H0[i]) fail(ErrorKind::kInvalidArgument, "h_0 must differ from every h_i");
  // rho(prod d_i) = 0 as soon as one prime of d divides some h_0 - h_i.
  auto rho = [&](const DivisorTuple& d) {
    for (std::uint64_t di : d)
      for (std::uint64_t p : tables.prime_divisors(di))
        for (std::size_t i = 1; i <= k; ++i)
          if ((H0[0] - H0[i]) % static_cast<std::int64_t>(p) == 0) return 0.0;
    return 1.0;
  };

  for (const DivisorTuple& r : w.support.tuples) {
    out.y[r] = out.y_prime[r] = out.x[r] = out.x_prime[r] = 0.0;
  }
  for (const auto& [d, lam] : w.lambda) {
    if (lam == 0) continue;
    const bool divides = d[l - 1] % q == 0;
    double prod_d = 1, prod_phi = 1;
    for (std::uint64_t di : d) {
      prod_d *= static_cast<double>(di);
      prod_phi *= static_cast<double>(tables.phi(di));
    }
    const double wy = lam / prod_d, wx = rho(d) * lam / prod_phi;
    for_each_divisor_tuple(d, tables, [&](const DivisorTuple& r) {
      (divides ? out.y : out.y_prime)[r] += wy;
      (divides ? out.x : out.x_prime)[r] += wx;
    });
  }
  auto finish = [&](TupleMap<double>& m, bool use_g) {
    for (auto& [r, v] : m) {
      double f = 1;
      for (std::uint64_t ri : r)
        f *= tables.mu(ri) * static_cast<double>(use_g ? g_of(ri, tables) : tables.phi(ri));
      v *= f;
    }
  };
  finish(out.y, false);
  finish(out.y_prime, false);
  finish(out.x, true);
  finish(out.x_prime, true);
  return out;
}

}  // namespace sievelab
