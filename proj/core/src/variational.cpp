#include "sievelab/variational.hpp"

#include <Eigen/Dense>
#include <mpfr.h>

#include <algorithm>
#include <cmath>

#include "sievelab/error.hpp"

namespace sievelab {

namespace {

// Working precision for the whitening step. Gram matrices of polynomial
// bases lose roughly a decimal digit per basis function, so plain doubles
// are not enough past small degrees.
constexpr mpfr_prec_t kPrec = 768;
// Pivots below this fraction of their diagonal are treated as linear dependence.
const double kDropLog2 = -256;

class Big {
 public:
  Big() { mpfr_init2(v_, kPrec), mpfr_set_zero(v_, 1); }
  Big(const Big& o) { mpfr_init2(v_, kPrec), mpfr_set(v_, o.v_, MPFR_RNDN); }
  Big& operator=(const Big& o) {
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Big() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

using BigMatrix = std::vector<std::vector<Big>>;

std::vector<int> add(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> out(std::max(x.size(), y.size()), 0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigMatrix to_big(const std::vector<std::vector<mpq_class>>& m) {
  BigMatrix out(m.size(), std::vector<Big>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) mpfr_set_q(out[i][j].get(), m[i][j].get_mpq_t(), MPFR_RNDN);
  return out;
}

}  // namespace

std::vector<SymmetricTerm> variational_basis(int k, int degree) {
  if (k < 1) fail(ErrorKind::kInvalidArgument, "k must be positive");
  if (degree < 0) fail(ErrorKind::kInvalidArgument, "basis degree must be nonnegative");
  std::vector<SymmetricTerm> out;
  std::vector<int> e(static_cast<std::size_t>(k), 0);
  // Enumerate exponents of P_2..P_k, then every b that fits.
  auto rec = [&](auto&& self, int j, int used) -> void {
    if (j > k) {
      for (int b = 0; used + b <= degree; ++b) {
        SymmetricTerm t{1, b, e};
        while (!t.e.empty() && t.e.back() == 0) t.e.pop_back();
        out.push_back(std::move(t));
      }
      return;
    }
    for (int x = 0; used + j * x <= degree; ++x) {
      e[j - 1] = x;
      self(self, j + 1, used + j * x);
    }
    e[j - 1] = 0;
  };
  rec(rec, 2, 0);
  return out;
}

VariationalResult mk_lower_bound(int k, int degree) {
  const std::vector<SymmetricTerm> basis = variational_basis(k, degree);
  const std::size_t n = basis.size();

  SimplexIntegrator full(k), face(k - 1);
  std::vector<std::vector<SymmetricTerm>> inner(n);
  for (std::size_t s = 0; s < n; ++s) inner[s] = integrate_out_last(std::span(&basis[s], 1));

  std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n)), B(n, std::vector<mpq_class>(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s; t < n; ++t) {
      B[s][t] = B[t][s] = full.integral(basis[s].b + basis[t].b, add(basis[s].e, basis[t].e));
      mpq_class a = 0;
      for (const SymmetricTerm& u : inner[s])
        for (const SymmetricTerm& v : inner[t]) a += u.coeff * v.coeff * face.integral(u.b + v.b, add(u.e, v.e));
      A[s][t] = A[t][s] = a * k;
    }

  VariationalResult out;
  out.k = k;
  out.basis_degree = degree;
  out.basis_size = n;

  if (n == 1) {
    const mpq_class ratio = A[0][0] / B[0][0];
    out.exact = ratio;
    out.mk_lower = ratio.get_d();
    out.coeffs = {1.0};
    out.F = SmoothFunction(k, basis);
    out.rayleigh = out.mk_lower;
    return out;
  }

  // Cholesky B = L L^T over the kept indices.
  BigMatrix Bb = to_big(B), Ab = to_big(A);
  std::vector<std::size_t> kept;
  BigMatrix L;  // rows over kept, lower triangular
  Big tmp, acc, pivot;
  double min_rel_log2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = kept.size();
    std::vector<Big> row(r + 1);
    for (std::size_t c = 0; c < r; ++c) {
      mpfr_set(acc.get(), Bb[i][kept[c]].get(), MPFR_RNDN);
      for (std::size_t m = 0; m < c; ++m) {
        mpfr_mul(tmp.get(), row[m].get(), L[c][m].get(), MPFR_RNDN);
        mpfr_sub(acc.get(), acc.get(), tmp.get(), MPFR_RNDN);
      }
      mpfr_div(row[c].get(), acc.get(), L[c][c].get(), MPFR_RNDN);
    }
    mpfr_set(pivot.get(), Bb[i][i].get(), MPFR_RNDN);
    for (std::size_t m = 0; m < r; ++m) {
      mpfr_sqr(tmp.get(), row[m].get(), MPFR_RNDN);
      mpfr_sub(pivot.get(), pivot.get(), tmp.get(), MPFR_RNDN);
    }
    mpfr_div(tmp.get(), pivot.get(), Bb[i][i].get(), MPFR_RNDN);
    long exp2 = 0;
    const double mant = mpfr_sgn(tmp.get()) > 0 ? mpfr_get_d_2exp(&exp2, tmp.get(), MPFR_RNDN) : 0.0;
    const double rel = mant > 0 ? std::log2(mant) + static_cast<double>(exp2) : -1e9;
    if (rel < kDropLog2) {
      ++out.dropped;
      continue;
    }
    min_rel_log2 = std::min(min_rel_log2, rel);
    mpfr_sqrt(row[r].get(), pivot.get(), MPFR_RNDN);
    L.push_back(std::move(row));
    kept.push_back(i);
  }
  out.min_relative_pivot = std::exp2(min_rel_log2);
  const std::size_t m = kept.size();

  // X = L^{-1} A_kept, then C = L^{-1} X^T.
  auto forward_solve = [&](std::vector<Big>& col) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        mpfr_mul(tmp.get(), L[i][j].get(), col[j].get(), MPFR_RNDN);
        mpfr_sub(col[i].get(), col[i].get(), tmp.get(), MPFR_RNDN);
      }
      mpfr_div(col[i].get(), col[i].get(), L[i][i].get(), MPFR_RNDN);
    }
  };
  BigMatrix X(m, std::vector<Big>(m));  // X[col][row]
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t r = 0; r < m; ++r) mpfr_set(X[c][r].get(), Ab[kept[r]][kept[c]].get(), MPFR_RNDN);
    forward_solve(X[c]);
  }
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> C(m, m);
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<Big> col(m);
    for (std::size_t c = 0; c < m; ++c) mpfr_set(col[c].get(), X[c][r].get(), MPFR_RNDN);
    forward_solve(col);
    for (std::size_t c = 0; c < m; ++c) C(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = mpfr_get_ld(col[c].get(), MPFR_RNDN);
  }
  C = (C + C.transpose()) / 2;
  Eigen::SelfAdjointEigenSolver<decltype(C)> solver(C);
  if (solver.info() != Eigen::Success) fail(ErrorKind::kInternal, "eigen solver failed");
  const auto top = static_cast<Eigen::Index>(m - 1);
  out.mk_lower = static_cast<double>(solver.eigenvalues()(top));
  const auto v = solver.eigenvectors().col(top);

  // Coefficients c = L^{-T} v, taken exactly as rationals.
  std::vector<Big> c(m);
  for (std::size_t i = 0; i < m; ++i) mpfr_set_ld(c[i].get(), v(static_cast<Eigen::Index>(i)), MPFR_RNDN);
  for (std::size_t ii = m; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < m; ++j) {
      mpfr_mul(tmp.get(), L[j][ii].get(), c[j].get(), MPFR_RNDN);
      mpfr_sub(c[ii].get(), c[ii].get(), tmp.get(), MPFR_RNDN);
    }
    mpfr_div(c[ii].get(), c[ii].get(), L[ii][ii].get(), MPFR_RNDN);
  }
  std::vector<SymmetricTerm> terms;
  out.coeffs.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    SymmetricTerm t = basis[kept[i]];
    mpfr_get_q(t.coeff.get_mpq_t(), c[i].get());
    out.coeffs[kept[i]] = mpfr_get_d(c[i].get(), MPFR_RNDN);
    terms.push_back(std::move(t));
  }
  out.F = SmoothFunction(k, std::move(terms));
  const mpq_class I = integrate_Ik_exact(out.F);
  const mpq_class J = integrate_Jkm_exact(out.F, 1);
  out.rayleigh = mpq_class(J * k / I).get_d();
  return out;
}

}  // namespace sievelab
