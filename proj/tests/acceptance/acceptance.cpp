// Acceptance run: one PASS/FAIL line per criterion.
//
//   sievelab_acceptance [--only 1,5,...] [--expect-red 8,13]
//
// Exit status is 0 when every failing criterion is listed in --expect-red.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sievelab/characters.hpp"
#include "sievelab/diophantine.hpp"
#include "sievelab/equidist.hpp"
#include "sievelab/error.hpp"
#include "sievelab/gap_lab.hpp"
#include "sievelab/prime_engine.hpp"
#include "sievelab/sieve_sums.hpp"
#include "sievelab/sieve_weights.hpp"
#include "sievelab/simplex_poly.hpp"
#include "sievelab/structured_sets.hpp"
#include "sievelab/tuples.hpp"
#include "sievelab/variational.hpp"
#include "unit/oracles.hpp"

using namespace sievelab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const PrimeTable& primes_to(std::uint64_t limit) {
  static std::unique_ptr<PrimeTable> t;
  if (!t || t->limit() < limit) t = std::make_unique<PrimeTable>(PrimeTable::build(limit, {1 << 18, 4}));
  return *t;
}

// Lambda(n) for n <= N from a plain sieve.
std::vector<double> lambda_table(std::uint64_t N) {
  std::vector<double> L(N + 1, 0.0);
  for (std::uint64_t p : oracle::primes_upto(N))
    for (std::uint64_t q = p; q <= N; q *= p) {
      L[q] = std::log(static_cast<double>(p));
      if (q > N / p) break;
    }
  return L;
}

// 1. closed forms of the variational ratio
Outcome c1() {
  std::ostringstream os;
  bool ok = true;
  for (int d = 0; d <= 3; ++d) ok = ok && std::abs(mk_lower_bound(1, d).mk_lower - 1) <= 1e-9;
  for (int k = 1; k <= 10; ++k) {
    const auto r = mk_lower_bound(k, 0);
    ok = ok && r.exact && *r.exact == oracle::ratio(2 * k, k + 1);
  }
  int steps = 0;
  for (int k = 2; k <= 8; ++k) {
    double prev = 0;
    for (int d = 0; d <= 4; ++d) {
      const double v = mk_lower_bound(k, d).mk_lower;
      ok = ok && v >= prev - 1e-12;
      prev = v;
      ++steps;
    }
  }
  os << "M_1 = 1, M_k(deg 0) = 2k/(k+1) exact for k <= 10, monotone over " << steps << " (k, d) cells";
  return {ok, os.str()};
}

// 2. M_5 > 2 at degree 11
Outcome c2() {
  double prev = 0;
  bool strict = true;
  double v = 0;
  for (int d = 0; d <= 11; ++d) {
    v = mk_lower_bound(5, d).mk_lower;
    if (d > 0 && v < prev - 1e-12) strict = false;
    prev = v;
  }
  return {v > 2 && strict, fmt("M_5 lower bound at degree 11 = %.9f (> 2 required)", v)};
}

// 3. exact lambda <-> y inversion
Outcome c3() {
  const ArithmeticTables arith = ArithmeticTables::build(200);
  std::mt19937_64 rng(3);
  int cases = 0;
  bool ok = true;
  for (std::size_t k : {1u, 2u})
    for (double R : {10.0, 37.0, 100.0})
      for (std::uint64_t W : {1u, 6u}) {
        const auto s = weight_support(k, R, W, {}, arith);
        TupleMap<mpq_class> y;
        for (const auto& r : s.tuples)
          y[r] = oracle::ratio(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97 + 1));
        const auto back = y_from_lambda_map(s, lambda_from_y_map(s, y, arith), arith);
        for (const auto& [r, v] : y) {
          const auto it = back.find(r);
          ok = ok && (it == back.end() ? v == 0 : it->second == v);
        }
        // also lambda -> y -> lambda
        TupleMap<mpq_class> lam;
        for (const auto& r : s.tuples) lam[r] = oracle::ratio(static_cast<long>(rng() % 201) - 100, 7);
        const auto again = lambda_from_y_map(s, y_from_lambda_map(s, lam, arith), arith);
        for (const auto& [d, v] : lam) {
          const auto it = again.find(d);
          ok = ok && (it == again.end() ? v == 0 : it->second == v);
        }
        ++cases;
      }
  return {ok, fmt("%d supports, both directions exact in rational arithmetic", cases)};
}

// 4. Vaughan identity
Outcome c4() {
  std::mt19937_64 rng(4);
  const ArithmeticTables arith = ArithmeticTables::build(100000);
  const auto L = lambda_table(100000);
  double worst = 0;
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint64_t N = 1000 + rng() % 99001;
    const std::uint64_t U = 2 + rng() % static_cast<std::uint64_t>(std::sqrt(static_cast<double>(N)));
    const std::uint64_t V = 2 + rng() % std::max<std::uint64_t>(1, N / U - 1);
    if (U * V > N) {
      --trial;
      continue;
    }
    ArithmeticFunction f;
    switch (trial % 4) {
      case 0: f = [](std::uint64_t) { return std::complex<double>(1); }; break;
      case 1: {
        auto chars = std::make_shared<std::vector<DirichletCharacter>>(build_characters(3 + rng() % 40));
        const std::size_t i = rng() % chars->size();
        f = [chars, i](std::uint64_t n) { return (*chars)[i](n); };
        break;
      }
      case 2: {
        const double a = std::sqrt(2.0) * (1 + static_cast<double>(rng() % 5));
        f = [a](std::uint64_t n) { return std::polar(1.0, 2 * std::numbers::pi * a * static_cast<double>(n)); };
        break;
      }
      default: {
        const auto chars = build_characters(5);
        f = membership_character(SetDescriptor::bohr({ExactReal::integer(0), ExactReal::parse("sqrt(2)")},
                                                     mpq_class(1, 2)),
                                 chars[1 + rng() % 3]);
      }
    }
    std::complex<double> direct = 0;
    for (std::uint64_t m = 1; m <= N; ++m)
      if (L[m] != 0) direct += L[m] * f(m);
    try {
      const auto v = vaughan_decompose(N, U, V, f, arith);
      const double err = std::abs(v.S1 + v.S2 + v.S3 + v.S4 - direct);
      worst = std::max(worst, err / static_cast<double>(N));
      ok = ok && err <= 1e-6 * static_cast<double>(N);
    } catch (const Error&) {
      ok = false;
    }
  }
  return {ok, fmt("20 configurations, worst |total - direct| / N = %.3g (<= 1e-6)", worst)};
}

// 5. three-distance recurrence
Outcome c5() {
  std::mt19937_64 rng(5);
  std::uint64_t violations = 0, order_mismatch = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::string text;
    std::uint64_t r = 2 + rng() % 200;
    while (static_cast<std::uint64_t>(std::sqrt(static_cast<double>(r))) *
               static_cast<std::uint64_t>(std::sqrt(static_cast<double>(r))) ==
           r)
      ++r;
    text = std::to_string(1 + rng() % 5) + "/" + std::to_string(1 + rng() % 7) + "*sqrt(" + std::to_string(r) + ")";
    const ExactReal alpha = ExactReal::parse(text);
    const std::uint64_t M = 2 + rng() % 9999;
    const auto t = three_distance_order(alpha, M);
    violations += t.violations.size();

    // Oracle: sort by long double fractional part, then check the recurrence.
    const long double a = alpha.to_long_double();
    std::vector<std::uint64_t> s(M);
    std::iota(s.begin(), s.end(), 1);
    auto frac = [a](std::uint64_t n) { return a * n - std::floor(a * n); };
    std::sort(s.begin(), s.end(), [&](auto x, auto y) { return frac(x) < frac(y); });
    if (s != t.s) ++order_mismatch;
    const std::int64_t first = static_cast<std::int64_t>(s.front()), last = static_cast<std::int64_t>(s.back());
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
      const std::int64_t x = static_cast<std::int64_t>(s[j]);
      std::int64_t next;
      if (x + first <= static_cast<std::int64_t>(M)) next = x + first;
      else if (x - last >= 1) next = x - last;
      else next = x + first - last;
      if (next != static_cast<std::int64_t>(s[j + 1])) ++order_mismatch;
    }
  }
  return {violations == 0 && order_mismatch == 0,
          fmt("1000 (alpha, M) pairs: %llu module violations, %llu oracle mismatches",
              static_cast<unsigned long long>(violations), static_cast<unsigned long long>(order_mismatch))};
}

// 6. ETK and Weyl inequalities
Outcome c6() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  bool ok = true;
  double min_gap = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 10 + rng() % 9991;
    const std::uint64_t H = 1 + rng() % 1000;
    std::vector<double> x(n);
    if (trial % 2) {
      for (double& v : x) v = u(rng);
    } else {
      const double a = std::sqrt(static_cast<double>(2 + rng() % 50)) ;
      for (std::size_t i = 0; i < n; ++i) x[i] = std::fmod(a * static_cast<double>(i + 1), 1.0);
    }
    // Oracle: extreme discrepancy from the sorted sample.
    std::vector<double> s = x;
    std::sort(s.begin(), s.end());
    double hi = -1e300, lo = 1e300;
    for (std::size_t i = 0; i < n; ++i) {
      hi = std::max(hi, static_cast<double>(i + 1) / n - s[i]);
      lo = std::min(lo, static_cast<double>(i + 1) / n - s[i]);
    }
    const double D = 1.0 / n + hi - lo;
    ok = ok && std::abs(D - discrepancy(x)) < 1e-12;
    const double e = etk_bound(x, H);
    ok = ok && e >= D;
    min_gap = std::min(min_gap, e - D);
  }
  const std::vector<ExactReal> f = {ExactReal::integer(0), ExactReal::integer(0), ExactReal::parse("sqrt(2)")};
  std::string weyl;
  for (std::uint64_t N : {1000u, 10000u}) {
    const double q = static_cast<double>(convergent_denominator_below(ExactReal::parse("sqrt(2)"), N));
    const double s = std::abs(weyl_sum(f, N));
    const double b = weyl_bound(N, 2, q, 0.1);
    ok = ok && s <= b;
    weyl += fmt(" |S(%llu)| = %.1f <= %.1f;", static_cast<unsigned long long>(N), s, b);
  }
  return {ok, fmt("100 point sets, min ETK - D = %.3g;", min_gap) + weyl};
}

// 7. gap statistics against a naive scan
Outcome c7() {
  const PrimeTable& t = primes_to(1'001'000);
  const auto all = oracle::primes_upto(1'001'000);
  bool ok = true;
  int cells = 0;
  for (std::uint64_t N : {10000u, 100000u, 1000000u})
    for (double eta : {0.1, 0.25, 0.5, 1.0}) {
      const double h = eta * std::log(static_cast<double>(N));
      ok = ok && pi_small_gaps(SetDescriptor::whole(), N, eta, t).count_pi == oracle::two_pointer_small_gaps(all, N, h);
      ++cells;
    }
  const auto small = pi_small_gaps(SetDescriptor::whole(), 30, 2 / std::log(30.0), t).count_pi;
  const auto h1 = empirical_Hm(SetDescriptor::ap(1, 4), 100, 1, t);
  ok = ok && small == 6 && h1 == 4;
  return {ok, fmt("%d (N, eta) cells match; pi(30; h=2) = %llu, H_1(AP(1,4), 100) = %llu", cells,
                  static_cast<unsigned long long>(small), static_cast<unsigned long long>(h1))};
}

// 8. positive proportion trend
Outcome c8() {
  const PrimeTable& t = primes_to(1'001'000);
  const std::vector<std::pair<std::string, SetDescriptor>> sets = {
      {"AP(1,3)", SetDescriptor::ap(1, 3)},
      {"kfree(1)", SetDescriptor::shifted_kfree(1, 2)},
      {"Bohr(sqrt2, 1/2)",
       SetDescriptor::bohr({ExactReal::integer(0), ExactReal::parse("sqrt(2)")}, mpq_class(1, 2))}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, C] : sets) {
    const auto rows = positive_proportion_experiment(C, {10000, 100000, 1000000}, 0.5, t);
    double mn = 1e300, mx = 0;
    for (const auto& r : rows) {
      mn = std::min(mn, r.proportion);
      mx = std::max(mx, r.proportion);
    }
    const bool good = mn > 0 && mx < 4 * mn;
    ok = ok && good;
    detail += fmt("%s %.4g/%.4g/%.4g%s; ", name.c_str(), rows[0].proportion, rows[1].proportion, rows[2].proportion,
                  good ? "" : " (fails)");
  }
  return {ok, detail};
}

// 9. random subset simulation
Outcome c9() {
  const PrimeTable& t = primes_to(1'001'000);
  const auto r = random_subset_simulation(0.5, 1000000, 0.5, 1000, 1, t, 4);
  const double need = 1 - std::exp(-r.lambda) - 0.02;
  return {r.frequency >= need, fmt("lambda = %.1f, frequency = %.4f >= %.4f", r.lambda, r.frequency, need)};
}

// 10. Bohr remainder average decreases
Outcome c10() {
  const auto A = SetDescriptor::bohr({ExactReal::integer(0), ExactReal::parse("sqrt(2)")}, mpq_class(1, 2));
  std::vector<double> ratios;
  for (std::uint64_t N : {10000u, 100000u, 1000000u}) {
    const auto ind = tuple_indicator(A, KTuple({0}), N);
    double c = 0;
    for (std::uint64_t n = 1; n <= N; ++n) c += ind[n];
    const auto Q = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(N)));
    ratios.push_back(bv_average(A, KTuple({0}), N, Q, c / static_cast<double>(N), 4).ratio);
  }
  const bool ok = ratios[0] > ratios[1] && ratios[1] > ratios[2];
  return {ok, fmt("sum_q max_a |R| / N = %.4g, %.4g, %.4g", ratios[0], ratios[1], ratios[2])};
}

// 11. dimension-one sieve sum main term
Outcome c11() {
  const ArithmeticTables arith = ArithmeticTables::build(100000);
  bool ok = true;
  std::string detail;
  for (double z : {1e3, 1e4, 1e5}) {
    const auto e = sieve_sum_estimate([](std::uint64_t) { return 1.0; }, [](double) { return 1.0; }, z, 0,
                                      Divisibility::kAny, 1.0, arith);
    // oracle sum of 1/phi(d) over squarefree d < z
    double want = 0;
    for (std::uint64_t d = 1; static_cast<double>(d) < z; ++d)
      if (arith.mu(d) != 0) want += 1.0 / static_cast<double>(arith.phi(d));
    const double dev = std::abs(e.exact - std::log(z));
    ok = ok && std::abs(e.exact - want) < 1e-9 * want && dev <= 2.0;
    detail += fmt("z=%.0e: |exact - log z| = %.3f; ", z, dev);
  }
  return {ok, detail};
}

// 12. bilinear large-sieve inequality
Outcome c12() {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0, 1);
  const auto bohr = SetDescriptor::bohr({ExactReal::integer(0), ExactReal::parse("sqrt(2)")}, mpq_class(1, 2));
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(1 + rng() % 60), b(1 + rng() % 60);
    for (double& v : a) v = g(rng);
    for (double& v : b) v = g(rng);
    const std::uint64_t Q = 1 + rng() % 12;
    const auto r = trial % 2 ? bilinear_check(a, b, Q, bohr) : bilinear_check(a, b, Q);
    worst = std::max(worst, r.ratio);
  }
  return {worst <= 1.0, fmt("200 trials, worst lhs/rhs = %.4g", worst)};
}

// 13. finite-N sieve sum ratio for k = 1
Outcome c13() {
  const PrimeTable& t = primes_to(20'000'200);
  const ArithmeticTables arith = ArithmeticTables::build(100000);
  const auto F = SmoothFunction::one_minus_sum(1, 1);
  std::vector<double> med;
  std::string detail;
  for (std::uint64_t N : {100000u, 1000000u, 10000000u}) {
    std::vector<double> r;
    AsymptoticOptions opt;
    opt.D0 = 5;
    opt.with_S2 = false;
    double R = 0;
    for (std::int64_t h : {0, 30, 60, 90, 120}) {
      const auto rep = prop_asymptotic_check(SetDescriptor::whole(), N, KTuple({h}), F, opt, t, arith);
      r.push_back(rep.ratio1.value_or(0));
      R = rep.R;
    }
    std::sort(r.begin(), r.end());
    med.push_back(r[2]);
    detail += fmt("N=%.0e R=%.1f median=%.3f; ", static_cast<double>(N), R, r[2]);
  }
  const bool in_band = med[1] >= 0.5 && med[1] <= 2;
  const bool improving = std::abs(med[2] - 1) < std::abs(med[0] - 1);
  detail += fmt("band at 1e6 %s, trend %s", in_band ? "ok" : "missed", improving ? "ok" : "missed");
  return {in_band && improving, detail};
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, expect_red;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--only") only = parse_list(argv[i + 1]);
    else if (flag == "--expect-red") expect_red = parse_list(argv[i + 1]);
    else {
      std::fprintf(stderr, "unknown flag %s\n", flag.c_str());
      return 2;
    }
  }
  const std::vector<std::function<Outcome()>> criteria = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13};
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) failed.insert(id);
    std::printf("%s criterion %2d (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", id, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  bool unexpected = false;
  for (int id : failed)
    if (!expect_red.count(id)) unexpected = true;
  std::printf("%zu failed%s\n", failed.size(), unexpected ? " (unexpected)" : "");
  return unexpected ? 1 : 0;
}
