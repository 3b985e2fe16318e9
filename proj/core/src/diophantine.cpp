#include "sievelab/diophantine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sievelab/error.hpp"

namespace sievelab {

namespace {

constexpr long double kTwoPow60 = 0x1p-60L;

using StopFn = std::function<bool(const std::vector<std::pair<mpz_class, mpz_class>>&)>;

ContinuedFraction expand(const ExactReal& alpha, const StopFn& stop) {
  if (!alpha.irrational()) fail(ErrorKind::kInvalidArgument, "continued fraction of a rational number: " + alpha.to_string());
  bool terminated = false;
  for (mpfr_prec_t prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
    ContinuedFraction cf{alpha, {}, {}};
    Interval x(prec);
    x.set(alpha);
    mpz_class p1 = 1, p2 = 0, q1 = 0, q2 = 1;
    for (;;) {
      mpz_class a;
      if (!x.common_floor(a)) break;
      cf.quotients.push_back(a);
      const mpz_class p = a * p1 + p2, q = a * q1 + q2;
      p2 = p1, q2 = q1, p1 = p, q1 = q;
      cf.convergents.emplace_back(p, q);
      if (stop(cf.convergents)) return cf;
      x.sub_z(a);
      if (mpfr_sgn(x.lo()) <= 0) {
        if (x.is_point()) terminated = true;
        break;
      }
      x.invert();
    }
    if (terminated) break;
  }
  fail(ErrorKind::kPrecisionExhausted,
       terminated ? "expansion of " + alpha.to_string() + " terminates (decimal stand-in is rational)"
                  : "continued fraction of " + alpha.to_string() + " needs more than " +
                        std::to_string(kMaxPrecision) + " bits");
}

// {j alpha} as an interval, for exact tie-breaking.
bool exact_frac_less(const ExactReal& alpha, std::uint64_t i, std::uint64_t j) {
  for (mpfr_prec_t prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
    Interval xi(prec), xj(prec);
    xi.set(alpha);
    xi.mul_z(mpz_class(static_cast<unsigned long>(i)));
    xj.set(alpha);
    xj.mul_z(mpz_class(static_cast<unsigned long>(j)));
    mpz_class fi, fj;
    if (!xi.common_floor(fi) || !xj.common_floor(fj)) continue;
    xi.sub_z(fi);
    xj.sub_z(fj);
    if (mpfr_less_p(xi.hi(), xj.lo())) return true;
    if (mpfr_less_p(xj.hi(), xi.lo())) return false;
    if (xi.is_point() && xj.is_point()) break;
  }
  fail(ErrorKind::kPrecisionExhausted,
       "tie between {" + std::to_string(i) + "a} and {" + std::to_string(j) + "a}");
}

bool exact_dist_le(const ExactReal& alpha, const mpz_class& mult, const mpq_class& thr) {
  for (mpfr_prec_t prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
    Interval x(prec);
    x.set(alpha);
    x.mul_z(mult);
    const Decision d = dist_to_int_le(x, thr);
    if (d != Decision::kUndecided) return d == Decision::kTrue;
  }
  fail(ErrorKind::kBoundaryAmbiguous, "||m b^k a|| equals the threshold to 1024 bits");
}

long double frac_of(long double x) { return x - std::floor(x); }

struct GaussLegendre {
  static constexpr int kN = 20;
  std::array<double, kN> x{}, w{};
  GaussLegendre() {
    for (int i = 0; i < kN; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (kN + 0.5));
      double dp = 0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = z;
        for (int n = 2; n <= kN; ++n) {
          const double p2 = ((2 * n - 1) * z * p1 - (n - 1) * p0) / n;
          p0 = p1;
          p1 = p2;
        }
        dp = kN * (z * p1 - p0) / (z * z - 1);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2 / ((1 - z * z) * dp * dp);
    }
  }
};

}  // namespace

void KahanComplex::add(std::complex<double> z) {
  double y = z.real() - cre_;
  double t = re_ + y;
  cre_ = (t - re_) - y;
  re_ = t;
  y = z.imag() - cim_;
  t = im_ + y;
  cim_ = (t - im_) - y;
  im_ = t;
}

std::complex<double> unit_phase(long double x) {
  const double f = static_cast<double>(frac_of(x));
  return std::polar(1.0, 2 * std::numbers::pi * f);
}

ContinuedFraction continued_fraction(const ExactReal& alpha, int depth) {
  if (depth < 1) fail(ErrorKind::kInvalidArgument, "depth must be positive");
  return expand(alpha, [depth](const auto& c) { return static_cast<int>(c.size()) >= depth; });
}

ContinuedFraction continued_fraction_upto(const ExactReal& alpha, const mpz_class& q_max) {
  ContinuedFraction cf = expand(alpha, [&](const auto& c) { return c.back().second > q_max; });
  cf.convergents.pop_back();
  cf.quotients.pop_back();
  return cf;
}

long double dist_to_int_of_multiple(const ExactReal& alpha, const mpz_class& q) {
  Interval x(256);
  x.set(alpha);
  x.mul_z(q);
  return dist_to_int_estimate(x);
}

double diophantine_type_estimate(const ExactReal& alpha, std::uint64_t m_max) {
  if (m_max < 10) fail(ErrorKind::kInvalidArgument, "M_max must be >= 10");
  const ContinuedFraction cf = continued_fraction_upto(alpha, mpz_class(static_cast<unsigned long>(m_max)));
  std::vector<double> xs, ys;
  for (const auto& [p, q] : cf.convergents) {
    if (q < 10) continue;
    const long double d = dist_to_int_of_multiple(alpha, q);
    if (d <= 0) continue;
    xs.push_back(std::log(q.get_d()));
    ys.push_back(-std::log(static_cast<double>(d)));
  }
  double est = 1.0;
  if (xs.size() >= 2) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    est = sxy / sxx;
  } else if (xs.size() == 1) {
    est = ys[0] / xs[0];
  }
  return std::max(1.0, est);
}

ThreeDistanceOrdering three_distance_order(const ExactReal& alpha, std::uint64_t M) {
  if (M < 1) fail(ErrorKind::kInvalidArgument, "M must be positive");
  const long double fa = alpha.frac_long_double();
  std::vector<long double> v(M + 1);
  for (std::uint64_t j = 1; j <= M; ++j) v[j] = frac_of(fa * static_cast<long double>(j));
  const long double err = static_cast<long double>(M) * kTwoPow60 * 4;
  ThreeDistanceOrdering out;
  out.M = M;
  out.s.resize(M);
  std::iota(out.s.begin(), out.s.end(), 1);
  std::sort(out.s.begin(), out.s.end(), [&](std::uint64_t i, std::uint64_t j) {
    const long double gap = v[j] - v[i];
    if (std::abs(gap) > err && std::abs(gap) < 1 - err) return gap > 0;
    return exact_frac_less(alpha, i, j);
  });
  const std::uint64_t s1 = out.s.front(), sM = out.s.back();
  for (std::size_t j = 0; j + 1 < M; ++j) {
    const std::uint64_t sj = out.s[j];
    std::uint64_t next;
    if (sj <= M - s1) next = sj + s1;
    else if (sj < sM) next = sj + s1 - sM;
    else next = sj - sM;
    if (next != out.s[j + 1]) out.violations.push_back(j);
  }
  out.symmetric_case = v[s1] > 1 - v[sM];
  return out;
}

std::vector<std::uint64_t> small_denominator_set(const ExactReal& alpha, std::uint64_t M, double threshold,
                                                 std::uint64_t m, int k) {
  if (!(threshold > 0 && threshold < 0.5)) fail(ErrorKind::kInvalidArgument, "threshold must lie in (0, 1/2)");
  if (m < 1 || k < 1) fail(ErrorKind::kInvalidArgument, "m and k must be positive");
  const long double fa = alpha.frac_long_double();
  const mpq_class thr(threshold);
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = 1; b <= M; ++b) {
    mpz_class mult = m;
    for (int i = 0; i < k; ++i) mult *= static_cast<unsigned long>(b);
    if (mult < mpz_class(1UL << 62)) {
      const long double val = mult.get_d();
      const long double f = frac_of(fa * val);
      const long double d = std::min(f, 1 - f);
      const long double err = (val + 1) * kTwoPow60;
      if (d < threshold - err) {
        out.push_back(b);
        continue;
      }
      if (d > threshold + err) continue;
    }
    if (exact_dist_le(alpha, mult, thr)) out.push_back(b);
  }
  return out;
}

namespace {

std::vector<double> sorted_points(std::span<const double> points) {
  if (points.empty()) fail(ErrorKind::kInvalidArgument, "discrepancy of an empty point set");
  std::vector<double> x(points.begin(), points.end());
  for (double p : x)
    if (!(p >= 0 && p < 1)) fail(ErrorKind::kInvalidArgument, "points must lie in [0,1)");
  std::sort(x.begin(), x.end());
  return x;
}

}  // namespace

double discrepancy(std::span<const double> points) {
  const std::vector<double> x = sorted_points(points);
  const double n = static_cast<double>(x.size());
  double hi = -1e300, lo = 1e300;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = static_cast<double>(i + 1) / n - x[i];
    hi = std::max(hi, t);
    lo = std::min(lo, t);
  }
  return 1.0 / n + hi - lo;
}

double star_discrepancy(std::span<const double> points) {
  const std::vector<double> x = sorted_points(points);
  const double n = static_cast<double>(x.size());
  double worst = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    worst = std::max(worst, std::abs(x[i] - (2.0 * static_cast<double>(i) + 1) / (2 * n)));
  return 1.0 / (2 * n) + worst;
}

double etk_bound(std::span<const double> points, std::uint64_t H) {
  if (H < 1) fail(ErrorKind::kInvalidArgument, "H must be positive");
  if (points.empty()) fail(ErrorKind::kInvalidArgument, "empty point set");
  std::vector<std::complex<double>> acc(H + 1);
  for (double p : points) {
    const std::complex<double> z = unit_phase(p);
    std::complex<double> w = 1;
    for (std::uint64_t r = 1; r <= H; ++r) {
      w *= z;
      acc[r] += w;
    }
  }
  const double n = static_cast<double>(points.size());
  double sum = 1.0 / static_cast<double>(H);
  for (std::uint64_t r = 1; r <= H; ++r) sum += std::abs(acc[r]) / n / static_cast<double>(r);
  return 3 * sum;
}

PolynomialPhase::PolynomialPhase(std::span<const ExactReal> coeffs) {
  if (coeffs.empty()) fail(ErrorKind::kInvalidArgument, "empty polynomial");
  for (const ExactReal& c : coeffs) frac_.push_back(c.frac_long_double());
}

long double PolynomialPhase::frac(std::uint64_t n) const {
  long double x = 0, power = 1;
  for (long double c : frac_) {
    x += frac_of(c * power);
    power *= static_cast<long double>(n);
  }
  return frac_of(x);
}

std::complex<double> weyl_sum(std::span<const ExactReal> f, std::uint64_t N) {
  const PolynomialPhase phase(f);
  KahanComplex acc;
  for (std::uint64_t n = 1; n <= N; ++n) acc.add(unit_phase(phase.frac(n)));
  return acc.value();
}

double weyl_bound(std::uint64_t N, int k, double nu, double eps) {
  if (k < 1) fail(ErrorKind::kInvalidArgument, "degree must be >= 1");
  const double n = static_cast<double>(N);
  return std::pow(n, 1 + eps) * std::pow(1 / nu + 1 / n + nu / std::pow(n, k), std::pow(2.0, 1 - k));
}

std::complex<double> lambda_weighted_expsum(std::span<const ExactReal> f, std::uint64_t N,
                                            const ArithmeticTables& tables) {
  if (N > tables.limit()) fail(ErrorKind::kOutOfRange, "N exceeds table limit");
  const PolynomialPhase phase(f);
  KahanComplex acc;
  for (std::uint64_t n = 2; n <= N; ++n) {
    const double w = von_mangoldt(n, tables);
    if (w > 0) acc.add(w * unit_phase(phase.frac(n)));
  }
  return acc.value();
}

double lambda_expsum_bound(std::uint64_t N, int k, double nu, double eps) {
  if (k < 1) fail(ErrorKind::kInvalidArgument, "degree must be >= 1");
  const double n = static_cast<double>(N);
  return std::pow(n, 1 + eps) *
         std::pow(1 / std::sqrt(n) + 1 / nu + nu / std::pow(n, k), std::pow(4.0, 1 - k));
}

std::uint64_t convergent_denominator_below(const ExactReal& alpha, std::uint64_t cap) {
  const ContinuedFraction cf = continued_fraction_upto(alpha, mpz_class(static_cast<unsigned long>(cap)));
  if (cf.convergents.empty()) return 1;
  return cf.convergents.back().second.get_ui();
}

OscillatoryIntegral van_der_corput_check(const std::function<double(double)>& phi,
                                         const std::function<double(double)>& dphi, double a, double b) {
  if (!(b > a)) fail(ErrorKind::kInvalidArgument, "need a < b");
  constexpr int kGrid = 1000;
  int direction = 0;
  double prev = dphi(a);
  for (int i = 0; i <= kGrid; ++i) {
    const double x = a + (b - a) * i / kGrid;
    const double d = dphi(x);
    if (std::abs(d) < 1 - 1e-12) fail(ErrorKind::kInvalidArgument, "|phi'| < 1 on the interval");
    if (i > 0 && d != prev) {
      const int dir = d > prev ? 1 : -1;
      if (direction != 0 && dir != direction) fail(ErrorKind::kInvalidArgument, "phi' is not monotone");
      direction = dir;
    }
    prev = d;
  }
  static const GaussLegendre gl;
  KahanComplex acc;
  double x = a;
  while (x < b) {
    // Panels span at most half a cycle of the phase.
    const double h0 = 0.5 / std::abs(dphi(x));
    const double h = std::min(b - x, 0.5 / std::max(std::abs(dphi(x)), std::abs(dphi(std::min(b, x + h0)))));
    const double mid = x + h / 2;
    std::complex<double> panel = 0;
    for (int i = 0; i < GaussLegendre::kN; ++i) {
      const double t = mid + h / 2 * gl.x[i];
      panel += gl.w[i] * unit_phase(phi(t));
    }
    acc.add(panel * (h / 2));
    x += h;
  }
  const std::complex<double> v = acc.value();
  return {v, std::abs(v)};
}

}  // namespace sievelab
