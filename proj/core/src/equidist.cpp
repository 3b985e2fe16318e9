#include "sievelab/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "sievelab/error.hpp"

namespace sievelab {

namespace {

using cld = std::complex<long double>;

std::vector<std::uint64_t> sampled_residues(std::uint64_t q) {
  std::vector<std::uint64_t> out;
  if (q <= 64) {
    for (std::uint64_t a = 0; a < q; ++a) out.push_back(a);
  } else {
    for (std::uint64_t i = 0; i < 64; ++i) out.push_back(i * q / 64);
  }
  return out;
}

double von_mangoldt_fast(std::uint64_t n, const ArithmeticTables& t) {
  if (n < 2) return 0.0;
  const std::uint64_t p = t.spf_unchecked(n);
  std::uint64_t m = n;
  while (m % p == 0) m /= p;
  return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

}  // namespace

std::vector<std::uint8_t> tuple_indicator(const SetDescriptor& A, const KTuple& H, std::uint64_t N) {
  std::vector<std::uint8_t> out(N + 1, 0);
  if (N == 0) return out;
  if (H.k() == 0) {
    std::fill(out.begin() + 1, out.end(), 1);
    return out;
  }
  const auto top = N + static_cast<std::uint64_t>(H.height());
  const std::vector<std::uint8_t> in = membership(A, 1, top, nullptr);
  for (std::uint64_t n = 1; n <= N; ++n) {
    bool ok = true;
    for (std::int64_t h : H.values()) ok = ok && in[n + static_cast<std::uint64_t>(h) - 1];
    out[n] = ok;
  }
  return out;
}

RemainderRecord remainder_R(const SetDescriptor& A, const KTuple& H, std::uint64_t N, std::uint64_t a,
                            std::uint64_t q, double c1_hat) {
  if (q < 1) fail(ErrorKind::kInvalidArgument, "q must be positive");
  const auto in = tuple_indicator(A, H, N);
  RemainderRecord r{N, q, a % q, 0, c1_hat * static_cast<double>(N) / static_cast<double>(q), 0.0};
  for (std::uint64_t n = r.a == 0 ? q : r.a; n <= N; n += q) r.exact_count += in[n];
  r.remainder = static_cast<double>(r.exact_count) - r.main_term;
  return r;
}

BvReport bv_average(const SetDescriptor& A, const KTuple& H, std::uint64_t N, std::uint64_t Q, double c1_hat,
                    unsigned threads) {
  if (Q < 1 || Q > N) fail(ErrorKind::kInvalidArgument, "Q must lie in [1, N]");
  const auto in = tuple_indicator(A, H, N);
  std::vector<double> per_q(Q + 1, 0.0);
  auto work = [&](unsigned id, unsigned nt) {
    for (std::uint64_t q = 1 + id; q <= Q; q += nt) {
      const double main = c1_hat * static_cast<double>(N) / static_cast<double>(q);
      double best = 0;
      for (std::uint64_t a : sampled_residues(q)) {
        std::uint64_t c = 0;
        for (std::uint64_t n = a == 0 ? q : a; n <= N; n += q) c += in[n];
        best = std::max(best, std::abs(static_cast<double>(c) - main));
      }
      per_q[q] = best;
    }
  };
  const unsigned nt = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < nt; ++i) pool.emplace_back(work, i, nt);
  for (auto& t : pool) t.join();
  BvReport rep{N, Q, 0.0, 0.0};
  for (double v : per_q) rep.sum += v;
  rep.ratio = rep.sum / static_cast<double>(N);
  return rep;
}

DensityConstants density_constants(const SetDescriptor& A, const KTuple& H, std::uint64_t N,
                                   const ArithmeticTables& arith) {
  if (N < 1) fail(ErrorKind::kInvalidArgument, "N must be positive");
  if (N > arith.limit()) fail(ErrorKind::kOutOfRange, "N exceeds the arithmetic table limit");
  const auto in = tuple_indicator(A, H, N);
  std::uint64_t count = 0;
  long double lam = 0;
  for (std::uint64_t n = 1; n <= N; ++n)
    if (in[n]) {
      ++count;
      lam += von_mangoldt_fast(n, arith);
    }
  const double dn = static_cast<double>(N);
  return {static_cast<double>(count) / dn, static_cast<double>(lam) / dn};
}

std::complex<double> psi_character_sum(const SetDescriptor& A, const KTuple& H, std::uint64_t N,
                                       const DirichletCharacter& chi, const ArithmeticTables& arith) {
  if (N > arith.limit()) fail(ErrorKind::kOutOfRange, "N exceeds the arithmetic table limit");
  const auto in = tuple_indicator(A, H, N);
  cld acc = 0;
  for (std::uint64_t n = 2; n <= N; ++n) {
    if (!in[n]) continue;
    const double lam = von_mangoldt_fast(n, arith);
    if (lam != 0) acc += cld(chi(n)) * static_cast<long double>(lam);
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::complex<double> psi_character_sum_primed(const SetDescriptor& A, const KTuple& H, std::uint64_t N,
                                              const DirichletCharacter& chi, double c2_hat,
                                              const ArithmeticTables& arith) {
  std::complex<double> s = psi_character_sum(A, H, N, chi, arith);
  if (chi.is_principal()) s -= c2_hat * static_cast<double>(N);
  return s;
}

MobiusProgression mobius_progression_sum(double x, std::uint64_t l, const ArithmeticTables& arith) {
  if (l < 1 || l > arith.limit() || arith.mu(l) == 0)
    fail(ErrorKind::kInvalidArgument, "l must be squarefree and inside the table");
  const auto X = x < 1 ? 0 : static_cast<std::uint64_t>(std::floor(x));
  if (X > arith.limit()) fail(ErrorKind::kOutOfRange, "x exceeds the arithmetic table limit");
  MobiusProgression out;
  long double acc = 0;
  for (std::uint64_t t = l; t <= X; t += l) acc += static_cast<long double>(arith.mu_unchecked(t)) / t;
  out.sum = static_cast<double>(acc);
  const double w = arith.omega(l);
  const double num = w == 0 ? 1.0 : std::pow(w, w);
  out.bound = x > 1 ? num / std::exp(std::pow(std::log(x), 0.25)) : num;
  return out;
}

VaughanParts vaughan_decompose(std::uint64_t N, std::uint64_t U, std::uint64_t V, const ArithmeticFunction& f,
                               const ArithmeticTables& arith) {
  if (U < 1 || V < 1) fail(ErrorKind::kInvalidArgument, "U and V must be at least 1");
  if (U * V > N) fail(ErrorKind::kInvalidArgument, "UV must not exceed N");
  if (N > arith.limit()) fail(ErrorKind::kOutOfRange, "N exceeds the arithmetic table limit");

  std::vector<std::complex<double>> fv(N + 1);
  std::vector<double> lam(N + 1, 0.0);
  for (std::uint64_t n = 1; n <= N; ++n) {
    fv[n] = f(n);
    lam[n] = von_mangoldt_fast(n, arith);
  }
  cld S1 = 0, S2 = 0, S3 = 0, S4 = 0, direct = 0;
  for (std::uint64_t m = 1; m <= N; ++m) {
    if (lam[m] == 0) continue;
    const cld term = cld(fv[m]) * static_cast<long double>(lam[m]);
    direct += term;
    if (m <= U) S1 += term;
  }

  const std::uint64_t T = U * V;
  std::vector<long double> c(T + 1, 0.0L);
  for (std::uint64_t d = 1; d <= V; ++d) {
    const int mu = arith.mu_unchecked(d);
    if (mu == 0) continue;
    for (std::uint64_t l = 2; l <= U; ++l)
      if (lam[l] != 0) c[d * l] += mu * static_cast<long double>(lam[l]);
  }
  for (std::uint64_t t = 1; t <= T; ++t) {
    if (c[t] == 0) continue;
    cld inner = 0;
    for (std::uint64_t n = t; n <= N; n += t) inner += cld(fv[n]);
    S2 -= c[t] * inner;
  }

  for (std::uint64_t d = 1; d <= V; ++d) {
    const int mu = arith.mu_unchecked(d);
    if (mu == 0) continue;
    cld inner = 0;
    for (std::uint64_t h = 2; h * d <= N; ++h) inner += cld(fv[h * d]) * std::log(static_cast<long double>(h));
    S3 += static_cast<long double>(mu) * inner;
  }

  const std::uint64_t K = N / (U + 1);
  std::vector<int> s(K + 1, 0);  // sum_{d | k, d <= V} mu(d)
  for (std::uint64_t d = 1; d <= std::min(V, K); ++d) {
    const int mu = arith.mu_unchecked(d);
    if (mu == 0) continue;
    for (std::uint64_t k = d; k <= K; k += d) s[k] += mu;
  }
  for (std::uint64_t m = U + 1; m <= N; ++m) {
    if (lam[m] == 0) continue;
    cld inner = 0;
    for (std::uint64_t k = V + 1; k * m <= N; ++k)
      if (s[k]) inner += static_cast<long double>(s[k]) * cld(fv[k * m]);
    S4 -= static_cast<long double>(lam[m]) * inner;
  }

  auto cd = [](const cld& z) { return std::complex<double>(static_cast<double>(z.real()), static_cast<double>(z.imag())); };
  VaughanParts out{cd(S1), cd(S2), cd(S3), cd(S4), cd(S1 + S2 + S3 + S4), cd(direct)};
  if (std::abs(out.total - out.direct) > 1e-6 * static_cast<double>(N))
    fail(ErrorKind::kInternal, "Vaughan identity violated beyond tolerance");
  return out;
}

ArithmeticFunction membership_character(const SetDescriptor& A, const DirichletCharacter& chi) {
  return [A, chi](std::uint64_t n) -> std::complex<double> { return contains(A, n) ? chi(n) : 0.0; };
}

BilinearResult bilinear_check(const std::vector<double>& a, const std::vector<double>& b, std::uint64_t Q,
                              const std::optional<SetDescriptor>& A, const KTuple& H) {
  if (a.empty() || b.empty()) fail(ErrorKind::kInvalidArgument, "coefficient vectors must be nonempty");
  if (Q < 1) fail(ErrorKind::kInvalidArgument, "Q must be positive");
  const std::uint64_t M = a.size(), L = b.size();
  std::vector<std::uint8_t> in;
  if (A) in = tuple_indicator(*A, H, M * L);

  BilinearResult out;
  long double lhs = 0;
  const std::uint64_t top = std::max(M, L);
  std::vector<std::complex<double>> cv(top + 1);
  for (std::uint64_t q = 1; q <= Q; ++q) {
    const auto chars = build_characters(q);
    const double weight = static_cast<double>(q) / static_cast<double>(chars.size());
    for (const DirichletCharacter& chi : chars) {
      if (!chi.is_primitive()) continue;
      for (std::uint64_t n = 1; n <= top; ++n) cv[n] = chi(n);
      std::complex<double> s = 0;
      if (!A) {
        std::complex<double> sa = 0, sb = 0;
        for (std::uint64_t m = 1; m <= M; ++m) sa += a[m - 1] * cv[m];
        for (std::uint64_t l = 1; l <= L; ++l) sb += b[l - 1] * cv[l];
        s = sa * sb;
      } else {
        for (std::uint64_t m = 1; m <= M; ++m) {
          if (a[m - 1] == 0 || cv[m] == 0.0) continue;
          std::complex<double> inner = 0;
          for (std::uint64_t l = 1; l <= L; ++l)
            if (in[m * l]) inner += b[l - 1] * cv[l];
          s += a[m - 1] * cv[m] * inner;
        }
      }
      lhs += weight * std::abs(s);
    }
  }
  double na = 0, nb = 0;
  for (double v : a) na += v * v;
  for (double v : b) nb += v * v;
  const double Q2 = static_cast<double>(Q) * static_cast<double>(Q);
  const double lg = std::log(2.0 * static_cast<double>(M) * static_cast<double>(L));
  out.lhs = static_cast<double>(lhs);
  out.rhs = std::sqrt(static_cast<double>(M) + Q2) * std::sqrt(static_cast<double>(L) + Q2) * lg * lg * lg *
            std::sqrt(na) * std::sqrt(nb);
  out.ratio = out.rhs > 0 ? out.lhs / out.rhs : 0.0;
  return out;
}

std::vector<FourierDecayRow> smooth_cutoff_decay(double d, double N, double C, int r, std::int64_t kmax) {
  if (!(d > 0 && d < 1)) fail(ErrorKind::kInvalidArgument, "d must lie in (0, 1)");
  if (!(N > 1) || !(C > 0) || r < 1 || kmax < 1) fail(ErrorKind::kInvalidArgument, "need N > 1, C > 0, r >= 1, kmax >= 1");
  const double width = std::pow(N, -C);
  // Bump exp(-1 / (1 - 4x^2)) on (-1/2, 1/2), normalized; its transform is
  // computed by composite Simpson on a grid fine enough for the largest frequency.
  const double xi_max = static_cast<double>(kmax) * width;
  const int n = 2 * std::max(2000, static_cast<int>(std::ceil(40 * xi_max)));
  const double step = 1.0 / n;
  std::vector<double> xs(n + 1), ws(n + 1);
  double mass = 0;
  for (int i = 0; i <= n; ++i) {
    const double x = -0.5 + i * step;
    const double u = 1 - 4 * x * x;
    const double v = u > 0 ? std::exp(-1 / u) : 0.0;
    const double sw = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    xs[i] = x;
    ws[i] = v * sw * step / 3;
    mass += ws[i];
  }
  std::vector<FourierDecayRow> out;
  for (std::int64_t k = 1; k <= kmax; ++k) {
    const double kd = static_cast<double>(k);
    const double xi = kd * width;
    double bump = 0;
    for (int i = 0; i <= n; ++i) bump += ws[i] * std::cos(2 * std::numbers::pi * xi * xs[i]);
    bump /= mass;
    const double ind = std::abs(std::sin(std::numbers::pi * kd * d)) / (std::numbers::pi * kd);
    const double env = std::min(1.0 / kd, std::pow(1.0 / (kd * width), r));
    out.push_back({k, ind * std::abs(bump), env});
  }
  return out;
}

}  // namespace sievelab
