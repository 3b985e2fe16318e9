#include "sievelab/sieve_sums.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sievelab/error.hpp"

namespace sievelab {

namespace {

std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> comp(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

std::uint64_t floor_R(double R) { return R < 1 ? 0 : static_cast<std::uint64_t>(std::floor(R)); }

std::vector<std::uint64_t> small_factors(std::uint64_t v, const std::vector<std::uint64_t>& primes) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : primes)
    if (v % p == 0) out.push_back(p);
  return out;
}

std::uint64_t shifted(std::uint64_t n, std::int64_t h) { return static_cast<std::uint64_t>(static_cast<std::int64_t>(n) + h); }

// Membership of n + h over the summation window, with sharp selection for type-B sets.
struct WindowMembership {
  std::uint64_t lo = 0;
  std::vector<std::uint8_t> bits;
  WindowMembership(const SetDescriptor& C, std::uint64_t lo_, std::uint64_t hi, const ArithmeticTables* tables)
      : lo(lo_) {
    const SetKind kind = C.kind();
    if (kind == SetKind::kTypeB || kind == SetKind::kApproxTypeB) {
      bits.resize(hi - lo + 1);
      for (std::uint64_t v = lo; v <= hi; ++v) bits[v - lo] = contains_sharp(C, v, tables);
    } else {
      bits = membership(C, lo, hi, tables);
    }
  }
  bool operator()(std::uint64_t v) const { return bits[v - lo] != 0; }
};

bool passes_delta(std::uint64_t n, const KTuple& H, const std::vector<std::uint64_t>& small) {
  for (std::int64_t h : H.values())
    for (std::uint64_t p : small)
      if (shifted(n, h) % p == 0) return false;
  return true;
}

void check_sum_args(std::uint64_t N, const KTuple& H, const SieveWeights& w, const SieveSumOptions& opt) {
  if (N < 1) fail(ErrorKind::kInvalidArgument, "N must be positive");
  if (H.k() != w.support.k) fail(ErrorKind::kInvalidArgument, "tuple size differs from the weight dimension");
  if (opt.W < 1) fail(ErrorKind::kInvalidArgument, "W must be positive");
}

}  // namespace

WeightEvaluator::WeightEvaluator(const SieveWeights& w) : w_(&w), primes_(primes_upto(floor_R(w.support.R))) {}

double WeightEvaluator::operator()(std::uint64_t n, const KTuple& H) const {
  const std::size_t k = H.k();
  const std::uint64_t Rf = floor_R(w_->support.R);
  std::vector<std::vector<std::uint64_t>> factors(k);
  for (std::size_t i = 0; i < k; ++i) factors[i] = small_factors(shifted(n, H[i]), primes_);
  DivisorTuple d(k, 1);
  double total = 0;
  // Choose d_i as a product of a subset of the small primes of n + h_i.
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t prod) -> void {
    if (i == k) {
      total += w_->lambda_at(d);
      return;
    }
    const auto& f = factors[i];
    auto sub = [&](auto&& inner, std::size_t j, std::uint64_t di) -> void {
      if (j == f.size()) {
        for (std::size_t m = 0; m < i; ++m)
          if (std::gcd(d[m], di) != 1) return;
        d[i] = di;
        self(self, i + 1, prod * di);
        return;
      }
      inner(inner, j + 1, di);
      if (prod * di * f[j] <= Rf) inner(inner, j + 1, di * f[j]);
    };
    sub(sub, 0, 1);
  };
  rec(rec, 0, 1);
  return total;
}

double WeightEvaluator::scan(std::uint64_t n, const KTuple& H) const {
  double total = 0;
  for (const auto& [d, lam] : w_->lambda) {
    bool ok = true;
    for (std::size_t i = 0; i < d.size() && ok; ++i) ok = shifted(n, H[i]) % d[i] == 0;
    if (ok) total += lam;
  }
  return total;
}

double weight_w(std::uint64_t n, const KTuple& H, const SieveWeights& w) { return WeightEvaluator(w)(n, H); }

double weight_w_scan(std::uint64_t n, const KTuple& H, const SieveWeights& w) { return WeightEvaluator(w).scan(n, H); }

double gpy_weight(std::uint64_t n, const KTuple& H, double R, int l) {
  if (l < 0) fail(ErrorKind::kInvalidArgument, "l must be nonnegative");
  const int power = static_cast<int>(H.k()) + l;
  const std::uint64_t Rf = floor_R(R);
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p : primes_upto(Rf))
    for (std::int64_t h : H.values())
      if (shifted(n, h) % p == 0) {
        ps.push_back(p);
        break;
      }
  double total = 0;
  auto rec = [&](auto&& self, std::size_t j, std::uint64_t d, int sign) -> void {
    if (j == ps.size()) {
      total += sign * std::pow(std::log(R / static_cast<double>(d)), power);
      return;
    }
    self(self, j + 1, d, sign);
    if (d * ps[j] <= Rf) self(self, j + 1, d * ps[j], -sign);
  };
  rec(rec, 0, 1, 1);
  return total / std::tgamma(power + 1.0);
}

double sum_S1(const SetDescriptor& C, std::uint64_t N, const KTuple& H, const SieveWeights& w,
              const SieveSumOptions& opt, const ArithmeticTables* tables) {
  check_sum_args(N, H, w, opt);
  if (w.lambda.empty()) return 0.0;
  const WeightEvaluator eval(w);
  const auto small = primes_upto(floor_R(std::pow(w.support.R, opt.delta)));
  const WindowMembership in_c(C, N + 1 + static_cast<std::uint64_t>(H[0]),
                              2 * N + static_cast<std::uint64_t>(H.height()), tables);
  const std::uint64_t a0 = opt.a0 % opt.W;
  std::uint64_t n = N + 1 + (a0 + opt.W - (N + 1) % opt.W) % opt.W;
  double total = 0;
  for (; n <= 2 * N; n += opt.W) {
    bool ok = true;
    for (std::int64_t h : H.values())
      if (!in_c(shifted(n, h))) {
        ok = false;
        break;
      }
    if (!ok || !passes_delta(n, H, small)) continue;
    const double v = eval(n, H);
    total += v * v;
  }
  return total;
}

S2Result sum_S2(const SetDescriptor& C, std::uint64_t N, const KTuple& H, const SieveWeights& w,
                const SieveSumOptions& opt, const PrimeTable& primes, const ArithmeticTables* tables) {
  check_sum_args(N, H, w, opt);
  const std::uint64_t top = 2 * N + static_cast<std::uint64_t>(H.height());
  if (top > primes.limit()) fail(ErrorKind::kOutOfRange, "prime table must reach 2N + max(H)");
  S2Result out;
  out.per_index.assign(H.k(), 0.0);
  if (w.lambda.empty()) return out;
  const WeightEvaluator eval(w);
  const auto small = primes_upto(floor_R(std::pow(w.support.R, opt.delta)));
  const WindowMembership in_c(C, N + 1 + static_cast<std::uint64_t>(H[0]), top, tables);
  const std::uint64_t a0 = opt.a0 % opt.W;
  for (std::uint64_t n = N + 1 + (a0 + opt.W - (N + 1) % opt.W) % opt.W; n <= 2 * N; n += opt.W) {
    if (!passes_delta(n, H, small)) continue;
    double wn = std::nan("");
    for (std::size_t i = 0; i < H.k(); ++i) {
      const std::uint64_t v = shifted(n, H[i]);
      if (!primes.test(v) || !in_c(v)) continue;
      if (std::isnan(wn)) {
        wn = eval(n, H);
        wn *= wn;
      }
      out.per_index[i] += std::log(static_cast<double>(v)) * wn;
    }
  }
  out.total = std::accumulate(out.per_index.begin(), out.per_index.end(), 0.0);
  return out;
}

SieveSumEstimate sieve_sum_estimate(const std::function<double(std::uint64_t)>& gamma,
                                    const std::function<double(double)>& G, double z, std::uint64_t q,
                                    Divisibility mode, double kappa, const ArithmeticTables& tables) {
  if (!(z > 1)) fail(ErrorKind::kInvalidArgument, "z must exceed 1");
  if (!(kappa > 0)) fail(ErrorKind::kInvalidArgument, "kappa must be positive");
  const auto zf = static_cast<std::uint64_t>(std::ceil(z)) - 1;  // d < z
  if (zf > tables.limit()) fail(ErrorKind::kOutOfRange, "z exceeds the arithmetic table limit");
  if (mode != Divisibility::kAny && (q < 2 || q > tables.limit() || tables.spf(q) != q))
    fail(ErrorKind::kInvalidArgument, "q must be a prime inside the tables");

  auto g_prime = [&](std::uint64_t p) {
    const double gp = gamma(p);
    if (!(gp >= 0 && gp < static_cast<double>(p)))
      fail(ErrorKind::kInvalidArgument, "gamma(p)/p must lie in [0, 1)");
    return gp / (static_cast<double>(p) - gp);
  };

  SieveSumEstimate out;
  const double logz = std::log(z);
  for (std::uint64_t d = 1; d <= zf; ++d) {
    if (d > 1 && tables.mu_unchecked(d) == 0) continue;
    if (mode == Divisibility::kDivisible && d % q != 0) continue;
    if (mode == Divisibility::kCoprime && d % q == 0) continue;
    double g = 1;
    for (std::uint64_t p : tables.prime_divisors(d)) g *= g_prime(p);
    out.exact += g * G(std::log(static_cast<double>(d)) / logz);
  }

  // Partial singular series, compared against the half-way value.
  const std::uint64_t cutoff = std::max<std::uint64_t>(zf, std::min<std::uint64_t>(tables.limit(), 1000000));
  double prod = 1, half = 1;
  for (std::uint64_t p = 2; p <= cutoff; ++p) {
    if (tables.spf_unchecked(p) != p) continue;
    const double gp = gamma(p) / static_cast<double>(p);
    prod *= std::pow(1 - 1.0 / static_cast<double>(p), kappa) / (1 - gp);
    if (p <= cutoff / 2) half = prod;
  }
  out.singular_series = prod;
  out.series_cutoff = cutoff;
  out.series_converged = std::abs(prod - half) <= 1e-2 * std::abs(prod);

  // int_0^1 G(x) x^{kappa-1} dx = (1/kappa) int_0^1 G(u^{1/kappa}) du, composite Simpson.
  constexpr int kSteps = 4000;
  double integral = 0;
  for (int i = 0; i <= kSteps; ++i) {
    const double u = static_cast<double>(i) / kSteps;
    const double wgt = (i == 0 || i == kSteps) ? 1 : (i % 2 ? 4 : 2);
    integral += wgt * G(std::pow(u, 1 / kappa));
  }
  integral = integral / (3.0 * kSteps) / kappa;

  double c = 1;
  if (mode != Divisibility::kAny) {
    const double qd = static_cast<double>(q), gq = gamma(q);
    c = mode == Divisibility::kDivisible ? (qd - gq) / (qd * (qd - 1)) : (qd - gq) / qd;
  }
  out.main = c * out.singular_series * std::pow(logz, kappa) / std::tgamma(kappa) * integral;
  if (out.main != 0) out.ratio = out.exact / out.main;
  return out;
}

AsymptoticReport prop_asymptotic_check(const SetDescriptor& C, std::uint64_t N, const KTuple& H,
                                       const SmoothFunction& F, const AsymptoticOptions& opt,
                                       const PrimeTable& primes, const ArithmeticTables& arith) {
  const std::size_t k = H.k();
  if (static_cast<std::size_t>(F.k()) != k) fail(ErrorKind::kInvalidArgument, "F dimension differs from the tuple size");
  AsymptoticReport rep;
  rep.R = opt.R ? *opt.R : std::pow(static_cast<double>(N), opt.theta / 2 - opt.epsilon);
  if (rep.R < 1e3) rep.warnings.push_back("R below 1e3; main terms are far from asymptotic");
  const double delta = opt.delta >= 0 ? opt.delta : 0.05 / static_cast<double>(k);
  rep.W = compute_W(opt.D0).u64();

  std::vector<std::uint64_t> forbidden;
  if (const auto* ab = std::get_if<ApproxTypeB>(&C.variant())) {
    forbidden = forbidden_primes(*ab);
    rep.gamma = gamma_factor(*ab, H.span(), opt.D0);
  }
  rep.singular_series = singular_series(C, static_cast<int>(k), opt.D0);

  // Smallest a0 with every a0 + h_i prime to W.
  rep.a0 = 0;
  for (std::uint64_t a = 1; a < rep.W + 1; ++a) {
    bool ok = true;
    for (std::int64_t h : H.values()) ok = ok && std::gcd((a + static_cast<std::uint64_t>(h)) % rep.W, rep.W) == 1;
    if (ok) {
      rep.a0 = a % rep.W;
      break;
    }
  }

  const SieveWeights w = lambda_from_y(F, rep.R, rep.W, forbidden, arith);
  const SieveSumOptions so{delta, rep.W, rep.a0};
  rep.S1 = sum_S1(C, N, H, w, so, nullptr);

  const double logR = std::log(rep.R);
  double phiW = 1;
  for (std::uint64_t p = 2; p <= opt.D0; ++p)
    if (arith.spf(p) == p) phiW *= static_cast<double>(p - 1);
  const double W = static_cast<double>(rep.W);
  const double scale = rep.gamma * rep.singular_series * static_cast<double>(N) * std::pow(phiW, static_cast<double>(k)) /
                       std::pow(W, static_cast<double>(k + 1));
  rep.main1 = scale * std::pow(logR, static_cast<double>(k)) * integrate_Ik(F);
  if (rep.main1 != 0 && !w.lambda.empty()) rep.ratio1 = rep.S1 / rep.main1;
  if (opt.with_S2) {
    rep.S2 = sum_S2(C, N, H, w, so, primes, nullptr).total;
    rep.main2 = scale * std::pow(logR, static_cast<double>(k + 1)) * static_cast<double>(k) * integrate_Jkm(F, 1);
    if (rep.main2 != 0 && !w.lambda.empty()) rep.ratio2 = rep.S2 / rep.main2;
  }
  return rep;
}

}  // namespace sievelab
