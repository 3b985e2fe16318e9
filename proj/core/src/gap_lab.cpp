#include "sievelab/gap_lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "sievelab/error.hpp"
#include "sievelab/sieve_sums.hpp"
#include "sievelab/sieve_weights.hpp"

namespace sievelab {

namespace {

// Primes of the table in [lo, hi] that lie in C.
std::vector<std::uint64_t> set_primes(const SetDescriptor& C, std::uint64_t lo, std::uint64_t hi,
                                      const PrimeTable& t) {
  std::vector<std::uint64_t> out;
  const auto& ps = t.primes();
  auto first = std::lower_bound(ps.begin(), ps.end(), lo);
  auto last = std::upper_bound(ps.begin(), ps.end(), hi);
  if (first == last) return out;
  const std::uint64_t a = *first, b = *(last - 1);
  const std::vector<std::uint8_t> in = membership(C, a, b, nullptr);
  for (auto it = first; it != last; ++it)
    if (in[*it - a]) out.push_back(*it);
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// gap <= h, allowing for the rounding in h = eta log N.
bool small_gap(std::uint64_t gap, double h) { return static_cast<double>(gap) <= h * (1 + 1e-12); }

std::uint64_t extended_top(std::uint64_t N) {
  return N + static_cast<std::uint64_t>(std::ceil(20 * std::log(std::max<double>(static_cast<double>(N), 2))));
}

}  // namespace

std::vector<std::uint64_t> primes_in_set(const SetDescriptor& C, std::uint64_t N, const PrimeTable& t) {
  if (N > t.limit()) fail(ErrorKind::kOutOfRange, "N exceeds the prime table limit");
  return set_primes(C, 0, N, t);
}

GapReport pi_small_gaps(const SetDescriptor& C, std::uint64_t N, double eta, const PrimeTable& t) {
  if (!(eta > 0)) fail(ErrorKind::kInvalidArgument, "eta must be positive");
  if (N < 2) fail(ErrorKind::kInvalidArgument, "N must be at least 2");
  if (N > t.limit()) fail(ErrorKind::kOutOfRange, "N exceeds the prime table limit");
  GapReport rep;
  rep.N = N;
  rep.eta = eta;
  rep.h = eta * std::log(static_cast<double>(N));

  const std::uint64_t top = std::min(extended_top(N), t.limit());
  if (top < extended_top(N)) rep.warnings.push_back("prime table stops short of N + 20 log N");

  // pi_C over consecutive primes of C.
  const std::vector<std::uint64_t> q = set_primes(C, 0, top, t);
  const std::size_t below = static_cast<std::size_t>(std::upper_bound(q.begin(), q.end(), N) - q.begin());
  for (std::size_t i = 0; i < below; ++i) {
    if (i + 1 >= q.size()) {
      rep.warnings.push_back("successor of the last prime below N lies outside the table; pair dropped");
      break;
    }
    const std::uint64_t gap = q[i + 1] - q[i];
    ++rep.histogram[gap];
    ++rep.pairs;
    if (small_gap(gap, rep.h)) ++rep.count_pi;
  }

  // pi_C^*: consecutive primes p_n, p_{n+1} both in C, split by the parity of n (p_1 = 2).
  const auto& ps = t.primes();
  const std::size_t nps = static_cast<std::size_t>(std::upper_bound(ps.begin(), ps.end(), top) - ps.begin());
  std::vector<std::uint8_t> in_c;
  if (nps > 0) in_c = membership(C, 2, ps[nps - 1], nullptr);
  std::uint64_t cls[2] = {0, 0};
  for (std::size_t i = 0; i + 1 < nps && ps[i] <= N; ++i) {
    if (!in_c[ps[i] - 2] || !in_c[ps[i + 1] - 2]) continue;
    if (small_gap(ps[i + 1] - ps[i], rep.h)) ++cls[i % 2];  // index n = i + 1
  }
  rep.pi_star_class = cls[0] >= cls[1] ? 1 : 2;
  rep.count_pi_star = std::max(cls[0], cls[1]);

  for (int m = 1; m <= 4; ++m) {
    if (below < static_cast<std::size_t>(m) + 1) break;
    std::uint64_t best = UINT64_MAX;
    for (std::size_t i = 0; i + static_cast<std::size_t>(m) < below; ++i)
      best = std::min(best, q[i + static_cast<std::size_t>(m)] - q[i]);
    rep.Hm[m] = best;
  }
  return rep;
}

std::uint64_t empirical_Hm(const SetDescriptor& C, std::uint64_t N, int m, const PrimeTable& t) {
  if (m < 1) fail(ErrorKind::kInvalidArgument, "m must be positive");
  const std::vector<std::uint64_t> q = primes_in_set(C, N, t);
  const auto mm = static_cast<std::size_t>(m);
  if (q.size() < mm + 1) fail(ErrorKind::kInsufficientData, "fewer than m + 1 primes of C up to N");
  std::uint64_t best = UINT64_MAX;
  for (std::size_t i = 0; i + mm < q.size(); ++i) best = std::min(best, q[i + mm] - q[i]);
  return best;
}

SimulationReport random_subset_simulation(double rho, std::uint64_t N, double eta, std::uint64_t trials,
                                          std::uint64_t seed, const PrimeTable& t, unsigned threads) {
  if (!(rho >= 0 && rho <= 1)) fail(ErrorKind::kInvalidArgument, "rho must lie in [0, 1]");
  if (trials < 100) fail(ErrorKind::kInvalidArgument, "at least 100 trials are required");
  const GapReport full = pi_small_gaps(SetDescriptor::whole(), N, eta, t);

  // Small-gap pairs by prime index; the draws cover indices 0..last + 1.
  const auto& ps = t.primes();
  std::vector<std::size_t> pair_index;
  for (std::size_t i = 0; i + 1 < ps.size() && ps[i] <= N; ++i)
    if (small_gap(ps[i + 1] - ps[i], full.h)) pair_index.push_back(i);
  const std::size_t draws = pair_index.empty() ? 0 : pair_index.back() + 2;

  SimulationReport rep;
  rep.rho = rho;
  rep.N = N;
  rep.eta = eta;
  rep.trials = trials;
  rep.seed = seed;
  rep.pi_star_full = full.count_pi_star;
  rep.lambda = rho * rho * static_cast<double>(full.count_pi_star);
  rep.chernoff = 1 - std::exp(-rep.lambda);

  std::vector<std::uint64_t> result(trials);
  auto run = [&](std::uint64_t from, std::uint64_t to) {
    std::vector<std::uint8_t> in(draws);
    for (std::uint64_t tr = from; tr < to; ++tr) {
      std::mt19937_64 gen(splitmix64(seed + tr));
      for (auto& b : in) b = static_cast<double>(gen() >> 11) * 0x1.0p-53 < rho;
      std::uint64_t cls[2] = {0, 0};
      for (std::size_t i : pair_index)
        if (in[i] && in[i + 1]) ++cls[i % 2];
      result[tr] = std::max(cls[0], cls[1]);
    }
  };
  const unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < nt; ++w) pool.emplace_back(run, trials * w / nt, trials * (w + 1) / nt);
  for (auto& th : pool) th.join();

  std::uint64_t hits = 0;
  double sum = 0;
  for (std::uint64_t v : result) {
    if (static_cast<double>(v) >= rep.lambda / 2) ++hits;
    sum += static_cast<double>(v);
  }
  rep.frequency = static_cast<double>(hits) / static_cast<double>(trials);
  rep.mean_pi_star = sum / static_cast<double>(trials);
  return rep;
}

std::vector<ProportionRow> positive_proportion_experiment(const SetDescriptor& C,
                                                          const std::vector<std::uint64_t>& grid, double eta,
                                                          const PrimeTable& t) {
  std::vector<ProportionRow> out;
  for (std::uint64_t N : grid) {
    const GapReport r = pi_small_gaps(C, N, eta, t);
    out.push_back({N, r.count_pi,
                   static_cast<double>(r.count_pi) * std::log(static_cast<double>(N)) / static_cast<double>(N)});
  }
  return out;
}

TildeSResult tilde_S_experiment(const SetDescriptor& C, std::uint64_t N, double eta, const SmoothFunction& F,
                                const TildeSOptions& opt, const PrimeTable& primes, const ArithmeticTables& arith) {
  if (N < 2) fail(ErrorKind::kInvalidArgument, "N must be at least 2");
  if (!(eta > 0)) fail(ErrorKind::kInvalidArgument, "eta must be positive");
  const auto k = static_cast<std::size_t>(F.k());
  TildeSResult res;
  res.h = eta * std::log(static_cast<double>(N));
  const auto hmax = static_cast<std::uint64_t>(std::floor(res.h));
  if (2 * N + hmax > primes.limit()) fail(ErrorKind::kOutOfRange, "prime table must reach 2N + h");
  res.R = opt.R ? *opt.R : std::pow(static_cast<double>(N), opt.theta / 2 - opt.epsilon);
  if (!(res.R > 1)) fail(ErrorKind::kInvalidArgument, "R must exceed 1");
  res.W = compute_W(opt.D0).u64();
  const double delta = opt.delta >= 0 ? opt.delta : 0.05 / static_cast<double>(k);

  // Admissible tuples of positive multiples of W inside [1, h].
  if (static_cast<std::uint64_t>(k) * res.W <= hmax) {
    const auto all = generate_hk_tuples(k, static_cast<std::int64_t>(hmax), res.W, SIZE_MAX);
    for (const KTuple& H : all) {
      if (H[0] < 1) continue;
      res.tuples.push_back(H);
      if (res.tuples.size() >= opt.tuple_budget) break;
    }
  }
  if (res.tuples.empty()) fail(ErrorKind::kInsufficientTuples, "no admissible tuple of multiples of W fits in [1, h]");

  std::vector<std::uint64_t> forbidden;
  if (const auto* ab = std::get_if<ApproxTypeB>(&C.variant())) forbidden = forbidden_primes(*ab);
  const SieveWeights w = lambda_from_y(F, res.R, res.W, forbidden, arith);
  const WeightEvaluator eval(w);

  // Prefix sums of theta over primes of C in [N + 1, 2N + h].
  const std::uint64_t lo = N + 1, hi = 2 * N + hmax;
  std::vector<double> prefix(hi - lo + 2, 0.0);
  {
    std::vector<double> theta(hi - lo + 1, 0.0);
    for (std::uint64_t p : set_primes(C, lo, hi, primes)) theta[p - lo] = std::log(static_cast<double>(p));
    for (std::size_t i = 0; i < theta.size(); ++i) prefix[i + 1] = prefix[i] + theta[i];
  }
  auto big_theta = [&](std::uint64_t n) { return prefix[n + hmax - lo + 1] - prefix[n + 1 - lo]; };

  std::vector<std::uint64_t> small;
  for (std::uint64_t p : primes.primes()) {
    if (static_cast<double>(p) > std::pow(res.R, delta)) break;
    small.push_back(p);
  }
  const double log3N = std::log(3.0 * static_cast<double>(N));
  const double norm = res.h * std::pow(std::log(res.R), static_cast<double>(k));
  std::uint64_t n0 = N + (1 + res.W - N % res.W) % res.W;  // least n >= N with n = 1 mod W
  if (res.W == 1) n0 = N;
  for (const KTuple& H : res.tuples) {
    double acc = 0;
    for (std::uint64_t n = n0; n <= 2 * N; n += res.W) {
      bool ok = true;
      for (std::int64_t hi_ : H.values())
        for (std::uint64_t p : small)
          if ((n + static_cast<std::uint64_t>(hi_)) % p == 0) ok = false;
      if (!ok) continue;
      const double v = eval(n, H);
      if (v == 0) continue;
      acc += (big_theta(n) - log3N) * v * v;
    }
    res.per_tuple.push_back(acc / norm);
    res.value += acc / norm;
  }
  if (w.lambda.empty()) res.warnings.push_back("all sieve weights vanish");
  return res;
}

}  // namespace sievelab
