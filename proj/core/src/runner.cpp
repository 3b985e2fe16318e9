#include "sievelab/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sievelab/diophantine.hpp"
#include "sievelab/equidist.hpp"
#include "sievelab/error.hpp"
#include "sievelab/gap_lab.hpp"
#include "sievelab/sieve_sums.hpp"
#include "sievelab/variational.hpp"

namespace sievelab {

namespace {

// Largest table the runner will build (about 9 bytes per entry).
constexpr std::uint64_t kMaxTable = 400'000'000;

const std::string kDefaultBohr = "bohr:0;sqrt(2),1/2";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end || !std::isfinite(out))
    fail(ErrorKind::kInvalidArgument, key + ": not a number: '" + v + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec == std::errc() && p == end) return out;
  // "1e6" style
  const double d = parse_double(key, v);
  if (d < 0 || d > 9.0e18 || d != std::floor(d))
    fail(ErrorKind::kInvalidArgument, key + ": expected a nonnegative integer, got '" + v + "'");
  return static_cast<std::uint64_t>(d);
}

int parse_int(const std::string& key, const std::string& v) {
  const std::uint64_t u = parse_u64(key, v);
  if (u > 1'000'000) fail(ErrorKind::kInvalidArgument, key + ": value too large");
  return static_cast<int>(u);
}

std::vector<std::uint64_t> parse_grid(const std::string& v) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_u64("grid", trim(item)));
  return out;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t icbrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(n)));
  while (r * r * r > n) --r;
  while ((r + 1) * (r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t log_pad(std::uint64_t N) {
  return static_cast<std::uint64_t>(std::ceil(20 * std::log(std::max<double>(static_cast<double>(N), 2)))) + 2;
}

Tables tables_for(std::uint64_t limit, const ExperimentConfig& c, const std::optional<std::filesystem::path>& cache) {
  if (limit > kMaxTable) fail(ErrorKind::kOutOfRange, "required table limit exceeds " + std::to_string(kMaxTable));
  SieveOptions so;
  so.threads = std::max(1u, c.threads);
  return load_or_build_tables(std::max<std::uint64_t>(limit, 2), cache, so);
}

std::vector<std::uint64_t> grid_of(const ExperimentConfig& c) {
  return c.grid.empty() ? std::vector<std::uint64_t>{*c.N} : c.grid;
}

KTuple tuple_or_default(const ExperimentConfig& c, std::uint64_t W) {
  if (c.tuple) return KTuple::parse(*c.tuple);
  const auto k = static_cast<std::size_t>(*c.k);
  const auto height = static_cast<std::int64_t>(W * 4 * k);
  const auto ts = generate_hk_tuples(k, height, W, 1);
  if (ts.empty()) fail(ErrorKind::kInsufficientTuples, "no admissible default tuple; pass --tuple");
  return ts.front();
}

void require_positive_eta(const ExperimentConfig& c) {
  if (!(*c.eta > 0)) fail(ErrorKind::kInvalidArgument, "eta must be positive");
}

// ---- experiments ----

ExperimentResult run_gaps(const ExperimentConfig& c, const std::optional<std::filesystem::path>& cache) {
  const SetDescriptor C = parse_set_spec(*c.set);
  const auto grid = grid_of(c);
  const std::uint64_t top = *std::max_element(grid.begin(), grid.end());
  const Tables t = tables_for(top + log_pad(top), c, cache);
  ExperimentResult r;
  ResultTable main{"gaps", {"N", "eta", "h", "pi", "pi_star", "proportion", "Hm_1", "Hm_2", "Hm_3", "Hm_4"}, {}};
  PlotSeries prop{"proportion", "N", "pi_log_N_over_N", {}};
  GapReport last;
  for (std::uint64_t N : grid) {
    last = pi_small_gaps(C, N, *c.eta, t.primes);
    const double p = static_cast<double>(last.count_pi) * std::log(static_cast<double>(N)) / static_cast<double>(N);
    std::vector<Cell> row{static_cast<std::int64_t>(N), last.eta, last.h, static_cast<std::int64_t>(last.count_pi),
                          static_cast<std::int64_t>(last.count_pi_star), p};
    for (int m = 1; m <= 4; ++m) {
      const auto it = last.Hm.find(m);
      row.push_back(it == last.Hm.end() ? Cell{std::string()} : Cell{static_cast<std::int64_t>(it->second)});
    }
    main.rows.push_back(std::move(row));
    prop.points.emplace_back(static_cast<double>(N), p);
    for (const auto& w : last.warnings) r.warnings.push_back("N=" + std::to_string(N) + ": " + w);
  }
  ResultTable hist{"hist", {"gap", "count"}, {}};
  PlotSeries hplot{"hist", "gap", "count", {}};
  for (const auto& [g, n] : last.histogram) {
    hist.rows.push_back({static_cast<std::int64_t>(g), static_cast<std::int64_t>(n)});
    hplot.points.emplace_back(static_cast<double>(g), static_cast<double>(n));
  }
  r.tables = {std::move(main), std::move(hist)};
  r.plots = {std::move(prop), std::move(hplot)};
  r.headline = "pi=" + std::to_string(last.count_pi) + " pi_star=" + std::to_string(last.count_pi_star) +
               " h=" + format_cell(last.h) + " (N=" + std::to_string(last.N) + ")";
  r.warnings.push_back("H_C(m) columns are finite-N upper proxies, not liminf values");
  return r;
}

ExperimentResult run_mk(const ExperimentConfig& c) {
  const VariationalResult v = mk_lower_bound(*c.k, *c.degree);
  ExperimentResult r;
  ResultTable main{"mk", {"k", "degree", "basis_size", "dropped", "mk_lower", "rayleigh", "exact"}, {}};
  main.rows.push_back({static_cast<std::int64_t>(v.k), static_cast<std::int64_t>(v.basis_degree),
                       static_cast<std::int64_t>(v.basis_size), static_cast<std::int64_t>(v.dropped), v.mk_lower,
                       v.rayleigh, v.exact ? Cell{v.exact->get_str()} : Cell{std::string()}});
  const auto basis = variational_basis(*c.k, *c.degree);
  ResultTable coeffs{"coeffs", {"index", "term", "coefficient"}, {}};
  for (std::size_t i = 0; i < basis.size(); ++i)
    coeffs.rows.push_back({static_cast<std::int64_t>(i), SmoothFunction(*c.k, {basis[i]}).to_string(),
                           i < v.coeffs.size() ? v.coeffs[i] : 0.0});
  r.tables = {std::move(main), std::move(coeffs)};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v.exact ? v.exact->get_d() : v.mk_lower);
  r.headline = buf;
  return r;
}

ExperimentResult run_sieve_sums(const ExperimentConfig& c, const std::optional<std::filesystem::path>& cache) {
  const SetDescriptor C = parse_set_spec(*c.set);
  const std::uint64_t W = compute_W(*c.D0).u64();
  const KTuple H = tuple_or_default(c, W);
  const SmoothFunction F = SmoothFunction::parse(static_cast<int>(H.k()), *c.F);
  const std::uint64_t N = *c.N;
  const Tables t = tables_for(2 * N + static_cast<std::uint64_t>(H.height()) + 1, c, cache);
  AsymptoticOptions opt;
  opt.D0 = *c.D0;
  opt.delta = *c.delta;
  const AsymptoticReport a = prop_asymptotic_check(C, N, H, F, opt, t.primes, t.arith);
  auto opt_cell = [](const std::optional<double>& x) { return x ? Cell{*x} : Cell{std::string()}; };
  ExperimentResult r;
  ResultTable main{"sieve_sums",
                   {"N", "tuple", "R", "W", "a0", "S1", "main1", "ratio1", "S2", "main2", "ratio2", "gamma",
                    "singular_series"},
                   {}};
  main.rows.push_back({static_cast<std::int64_t>(N), H.to_string(), a.R, static_cast<std::int64_t>(a.W),
                       static_cast<std::int64_t>(a.a0), a.S1, a.main1, opt_cell(a.ratio1), a.S2, a.main2,
                       opt_cell(a.ratio2), a.gamma, a.singular_series});
  r.tables = {std::move(main)};
  r.warnings = a.warnings;
  r.headline = "ratio1=" + (a.ratio1 ? format_cell(*a.ratio1) : std::string("n/a")) +
               " ratio2=" + (a.ratio2 ? format_cell(*a.ratio2) : std::string("n/a"));
  return r;
}

ExperimentResult run_bohr(const ExperimentConfig& c, const std::optional<std::filesystem::path>& cache) {
  const SetDescriptor C = parse_set_spec(*c.set);
  const auto* b = std::get_if<BohrPolynomial>(&C.variant());
  if (!b) fail(ErrorKind::kInvalidArgument, "bohr-diagnostics needs a bohr set");
  const auto grid = grid_of(c);
  const std::uint64_t top = *std::max_element(grid.begin(), grid.end());
  const Tables t = tables_for(top, c, cache);
  const ExactReal& lead = b->coeffs.back();
  const double d = b->d.get_d();
  const PolynomialPhase phase(b->coeffs);
  ExperimentResult r;
  ResultTable main{"bohr",
                   {"N", "M", "c1_hat", "c2_hat", "density_error", "star_discrepancy", "etk_bound", "type_estimate",
                    "three_distance_violations"},
                   {}};
  PlotSeries plot{"density_error", "N", "abs_c1_hat_minus_d", {}};
  for (std::uint64_t N : grid) {
    const DensityConstants dc = density_constants(C, KTuple({0}), N, t.arith);
    const std::uint64_t M = std::min<std::uint64_t>(N, 10'000);
    std::vector<double> pts(M);
    for (std::uint64_t n = 1; n <= M; ++n) pts[n - 1] = static_cast<double>(phase.frac(n));
    Cell viol = std::int64_t{-1};
    if (b->coeffs.size() == 2 && lead.irrational()) {
      const auto td = three_distance_order(lead, M);
      viol = static_cast<std::int64_t>(td.violations.size());
      if (td.symmetric_case)
        r.warnings.push_back("three-distance: ||s_1 a|| > ||s_M a|| at M = " + std::to_string(M) +
                             "; mirrored ordering used");
    }
    double type = 0;
    try {
      type = diophantine_type_estimate(lead, N);
    } catch (const Error& e) {
      r.warnings.push_back(std::string("type estimate: ") + e.what());
    }
    main.rows.push_back({static_cast<std::int64_t>(N), static_cast<std::int64_t>(M), dc.c1, dc.c2, dc.c1 - d,
                         star_discrepancy(pts), etk_bound(pts, 100), type, viol});
    plot.points.emplace_back(static_cast<double>(N), std::abs(dc.c1 - d));
  }
  r.tables = {std::move(main)};
  r.plots = {std::move(plot)};
  r.headline = "c1_hat - d = " + format_cell(std::get<double>(r.tables[0].rows.back()[4]));
  return r;
}

ExperimentResult run_bv(const ExperimentConfig& c) {
  const SetDescriptor C = parse_set_spec(*c.set);
  const KTuple H = c.tuple ? KTuple::parse(*c.tuple) : KTuple({0});
  ExperimentResult r;
  ResultTable main{"bv", {"N", "Q", "c1_hat", "sum", "ratio"}, {}};
  PlotSeries plot{"ratio", "N", "sum_over_N", {}};
  for (std::uint64_t N : grid_of(c)) {
    const std::uint64_t Q = c.Q ? *c.Q : std::max<std::uint64_t>(1, isqrt(N));
    if (Q > N) fail(ErrorKind::kInvalidArgument, "Q must not exceed N");
    const auto in = tuple_indicator(C, H, N);
    std::uint64_t count = 0;
    for (std::uint8_t v : in) count += v;
    const double c1 = static_cast<double>(count) / static_cast<double>(N);
    const BvReport rep = bv_average(C, H, N, Q, c1, c.threads);
    main.rows.push_back({static_cast<std::int64_t>(N), static_cast<std::int64_t>(Q), c1, rep.sum, rep.ratio});
    plot.points.emplace_back(static_cast<double>(N), rep.ratio);
  }
  r.tables = {std::move(main)};
  r.plots = {std::move(plot)};
  r.headline = "ratio=" + format_cell(r.plots[0].points.back().second);
  r.warnings.push_back("residues are sampled (64 per modulus) when q > 64");
  return r;
}

ExperimentResult run_vaughan(const ExperimentConfig& c, const std::optional<std::filesystem::path>& cache) {
  const SetDescriptor C = parse_set_spec(*c.set);
  const std::uint64_t N = *c.N;
  const Tables t = tables_for(N, c, cache);
  const auto chars = build_characters(*c.Q);
  const DirichletCharacter& chi = chars.back();
  const VaughanParts v = vaughan_decompose(N, *c.U, *c.V, membership_character(C, chi), t.arith);
  ExperimentResult r;
  ResultTable main{"vaughan", {"N", "U", "V", "q", "part", "re", "im"}, {}};
  const std::pair<const char*, std::complex<double>> parts[] = {
      {"S1", v.S1}, {"S2", v.S2}, {"S3", v.S3}, {"S4", v.S4}, {"total", v.total}, {"direct", v.direct}};
  for (const auto& [name, z] : parts)
    main.rows.push_back({static_cast<std::int64_t>(N), static_cast<std::int64_t>(*c.U),
                         static_cast<std::int64_t>(*c.V), static_cast<std::int64_t>(*c.Q), std::string(name), z.real(),
                         z.imag()});
  r.tables = {std::move(main)};
  r.headline = "|total - direct| = " + format_cell(std::abs(v.total - v.direct));
  return r;
}

ExperimentResult run_simulation(const ExperimentConfig& c, const std::optional<std::filesystem::path>& cache) {
  const std::uint64_t N = *c.N;
  const Tables t = tables_for(N + log_pad(N), c, cache);
  const SimulationReport s = random_subset_simulation(*c.rho, N, *c.eta, *c.trials, *c.seed, t.primes, c.threads);
  ExperimentResult r;
  ResultTable main{"simulation",
                   {"rho", "N", "eta", "trials", "seed", "pi_star_full", "lambda", "frequency", "chernoff",
                    "mean_pi_star"},
                   {}};
  main.rows.push_back({s.rho, static_cast<std::int64_t>(s.N), s.eta, static_cast<std::int64_t>(s.trials),
                       std::to_string(s.seed), static_cast<std::int64_t>(s.pi_star_full), s.lambda, s.frequency,
                       s.chernoff, s.mean_pi_star});
  r.tables = {std::move(main)};
  r.headline = "frequency=" + format_cell(s.frequency) + " chernoff=" + format_cell(s.chernoff);
  return r;
}

ExperimentResult run_tilde_s(const ExperimentConfig& c, const std::optional<std::filesystem::path>& cache) {
  const SetDescriptor C = parse_set_spec(*c.set);
  const std::uint64_t N = *c.N;
  const SmoothFunction F = SmoothFunction::parse(*c.k, *c.F);
  const auto h = static_cast<std::uint64_t>(std::floor(*c.eta * std::log(static_cast<double>(N))));
  const Tables t = tables_for(2 * N + h + 1, c, cache);
  TildeSOptions opt;
  opt.D0 = *c.D0;
  opt.delta = *c.delta;
  opt.tuple_budget = *c.budget;
  const TildeSResult s = tilde_S_experiment(C, N, *c.eta, F, opt, t.primes, t.arith);
  ExperimentResult r;
  ResultTable main{"tilde_s", {"tuple", "contribution", "cumulative"}, {}};
  double acc = 0;
  for (std::size_t i = 0; i < s.tuples.size(); ++i) {
    acc += s.per_tuple[i];
    main.rows.push_back({s.tuples[i].to_string(), s.per_tuple[i], acc});
  }
  r.tables = {std::move(main)};
  r.warnings = s.warnings;
  r.headline = "tilde_S=" + format_cell(s.value) + " sign=" + (s.value > 0 ? "+" : s.value < 0 ? "-" : "0") +
               " R=" + format_cell(s.R) + " tuples=" + std::to_string(s.tuples.size());
  return r;
}

}  // namespace

const std::vector<ExperimentInfo>& list_experiments() {
  static const std::vector<ExperimentInfo> kList = {
      {"gaps", "small prime gaps inside a set: pi, pi_star, histogram, H(m) proxies", {"set", "N|grid", "eta"}},
      {"mk", "lower bound for M_k from the symmetric polynomial basis", {"k", "degree"}},
      {"sieve-sums", "S1 and S2 against their main terms", {"set", "N", "k|tuple", "D0", "delta", "F"}},
      {"bohr-diagnostics", "densities, discrepancy and Diophantine type for a Bohr set", {"set", "N|grid"}},
      {"bv", "averaged remainders over progressions up to Q", {"set", "N|grid", "Q"}},
      {"vaughan", "four-part Vaughan split of sum Lambda(n) 1_C(n) chi(n)", {"set", "N", "U", "V", "Q"}},
      {"simulate-lemma1", "random subsets of the primes against the Chernoff benchmark",
       {"rho", "N", "eta", "trials", "seed"}},
      {"tilde-s", "sign of the weighted small-gap sum over admissible tuples",
       {"set", "N", "k", "eta", "D0", "delta", "F", "budget"}},
  };
  return kList;
}

bool is_experiment(std::string_view name) {
  const auto& l = list_experiments();
  return std::any_of(l.begin(), l.end(), [&](const ExperimentInfo& e) { return e.name == name; });
}

ExperimentConfig config_from_key_values(const KeyValues& kv) {
  ExperimentConfig c;
  for (const auto& [key, raw] : kv) {
    const std::string v = trim(raw);
    if (key == "experiment") c.experiment = v;
    else if (key == "set") c.set = v;
    else if (key == "N") c.N = parse_u64(key, v);
    else if (key == "grid") c.grid = parse_grid(v);
    else if (key == "eta") c.eta = parse_double(key, v);
    else if (key == "k") c.k = parse_int(key, v);
    else if (key == "D0") c.D0 = parse_u64(key, v);
    else if (key == "delta") c.delta = parse_double(key, v);
    else if (key == "degree") c.degree = parse_int(key, v);
    else if (key == "Q") c.Q = parse_u64(key, v);
    else if (key == "trials") c.trials = parse_u64(key, v);
    else if (key == "seed") c.seed = parse_u64(key, v);
    else if (key == "rho") c.rho = parse_double(key, v);
    else if (key == "U") c.U = parse_u64(key, v);
    else if (key == "V") c.V = parse_u64(key, v);
    else if (key == "budget") c.budget = parse_u64(key, v);
    else if (key == "F") c.F = v;
    else if (key == "tuple") c.tuple = v;
    else if (key == "threads") c.threads = static_cast<unsigned>(parse_int(key, v));
    else fail(ErrorKind::kInvalidArgument, "unknown config key '" + key + "'");
  }
  if (!is_experiment(c.experiment)) fail(ErrorKind::kInvalidArgument, "unknown experiment '" + c.experiment + "'");
  return c;
}

KeyValues to_key_values(const ExperimentConfig& c) {
  KeyValues kv{{"experiment", c.experiment}};
  auto put = [&](const char* k, const auto& v) {
    if (!v) return;
    using T = std::decay_t<decltype(*v)>;
    if constexpr (std::is_same_v<T, std::string>) kv.emplace_back(k, *v);
    else if constexpr (std::is_same_v<T, double>) kv.emplace_back(k, fmt_double(*v));
    else kv.emplace_back(k, std::to_string(*v));
  };
  put("set", c.set);
  put("N", c.N);
  if (!c.grid.empty()) {
    std::string g;
    for (std::uint64_t x : c.grid) g += (g.empty() ? "" : ",") + std::to_string(x);
    kv.emplace_back("grid", g);
  }
  put("eta", c.eta);
  put("k", c.k);
  put("D0", c.D0);
  put("delta", c.delta);
  put("degree", c.degree);
  put("Q", c.Q);
  put("trials", c.trials);
  put("seed", c.seed);
  put("rho", c.rho);
  put("U", c.U);
  put("V", c.V);
  put("budget", c.budget);
  put("F", c.F);
  put("tuple", c.tuple);
  return kv;
}

ExperimentConfig resolve(const ExperimentConfig& in) {
  ExperimentConfig c = in;
  const std::string& e = c.experiment;
  if (!is_experiment(e)) fail(ErrorKind::kInvalidArgument, "unknown experiment '" + e + "'");
  if (c.threads < 1) fail(ErrorKind::kInvalidArgument, "threads must be positive");
  auto def = [](auto& field, auto value) {
    if (!field) field = value;
  };
  auto need_N = [&](std::uint64_t dflt) {
    def(c.N, dflt);
    if (*c.N < 2) fail(ErrorKind::kInvalidArgument, "N must be at least 2");
    for (std::uint64_t g : c.grid)
      if (g < 2) fail(ErrorKind::kInvalidArgument, "grid entries must be at least 2");
  };
  auto need_k = [&](int dflt) {
    def(c.k, dflt);
    if (*c.k < 1 || *c.k > 12) fail(ErrorKind::kInvalidArgument, "k must lie in [1, 12]");
  };
  auto need_D0 = [&](std::uint64_t dflt) {
    def(c.D0, dflt);
    if (*c.D0 < 2 || *c.D0 > 50) fail(ErrorKind::kInvalidArgument, "D0 must lie in [2, 50]");
  };

  if (e == "gaps") {
    def(c.set, std::string("nat"));
    need_N(1'000'000);
    def(c.eta, 0.25);
    require_positive_eta(c);
  } else if (e == "mk") {
    need_k(2);
    def(c.degree, 0);
    if (*c.degree > 16) fail(ErrorKind::kInvalidArgument, "degree must lie in [0, 16]");
  } else if (e == "sieve-sums") {
    def(c.set, std::string("nat"));
    need_N(1'000'000);
    if (c.tuple) c.k = static_cast<int>(KTuple::parse(*c.tuple).k());
    need_k(1);
    need_D0(5);
    def(c.delta, 0.05 / *c.k);
    def(c.F, std::string("(1-P1)"));
  } else if (e == "bohr-diagnostics") {
    def(c.set, kDefaultBohr);
    need_N(100'000);
  } else if (e == "bv") {
    def(c.set, kDefaultBohr);
    need_N(100'000);
    if (c.Q && *c.Q < 1) fail(ErrorKind::kInvalidArgument, "Q must be positive");
  } else if (e == "vaughan") {
    def(c.set, std::string("nat"));
    need_N(100'000);
    def(c.U, icbrt(*c.N));
    def(c.V, icbrt(*c.N));
    def(c.Q, std::uint64_t{1});
    if (*c.U < 1 || *c.V < 1 || *c.U * *c.V > *c.N) fail(ErrorKind::kInvalidArgument, "need U, V >= 1 and UV <= N");
    if (*c.Q < 1 || *c.Q > 1'000'000) fail(ErrorKind::kInvalidArgument, "Q must lie in [1, 10^6]");
  } else if (e == "simulate-lemma1") {
    need_N(1'000'000);
    def(c.eta, 0.5);
    require_positive_eta(c);
    def(c.rho, 0.5);
    def(c.trials, std::uint64_t{1000});
    def(c.seed, std::uint64_t{1});
    if (!(*c.rho >= 0 && *c.rho <= 1)) fail(ErrorKind::kInvalidArgument, "rho must lie in [0, 1]");
    if (*c.trials < 100) fail(ErrorKind::kInvalidArgument, "trials must be at least 100");
  } else if (e == "tilde-s") {
    def(c.set, std::string("nat"));
    need_N(1'000'000);
    need_k(2);
    def(c.eta, 1.0);
    require_positive_eta(c);
    need_D0(2);
    def(c.delta, 0.05 / *c.k);
    def(c.F, std::string("1"));
    def(c.budget, std::uint64_t{16});
    if (*c.budget < 1) fail(ErrorKind::kInvalidArgument, "budget must be positive");
  }
  if (c.set) (void)parse_set_spec(*c.set);
  if (c.F && c.k) (void)SmoothFunction::parse(*c.k, *c.F);
  if (c.delta && *c.delta < 0) fail(ErrorKind::kInvalidArgument, "delta must be nonnegative");
  return c;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const std::optional<std::filesystem::path>& cache) {
  const ExperimentConfig c = resolve(config);
  ExperimentResult r;
  const std::string& e = c.experiment;
  if (e == "gaps") r = run_gaps(c, cache);
  else if (e == "mk") r = run_mk(c);
  else if (e == "sieve-sums") r = run_sieve_sums(c, cache);
  else if (e == "bohr-diagnostics") r = run_bohr(c, cache);
  else if (e == "bv") r = run_bv(c);
  else if (e == "vaughan") r = run_vaughan(c, cache);
  else if (e == "simulate-lemma1") r = run_simulation(c, cache);
  else r = run_tilde_s(c, cache);
  r.config = c;
  return r;
}

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", *d);
    return buf;
  }
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string format_csv(const ExperimentResult& r, std::size_t table) {
  if (table >= r.tables.size()) fail(ErrorKind::kOutOfRange, "no such result table");
  std::string out;
  for (const auto& [k, v] : to_key_values(r.config)) out += "# " + k + " = " + v + "\n";
  for (const auto& w : r.warnings) out += "# warning: " + w + "\n";
  const ResultTable& t = r.tables[table];
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
    out += "\n";
  }
  return out;
}

std::string format_plot(const PlotSeries& s) {
  std::string out = "# " + s.x_label + " " + s.y_label + "\n";
  char buf[96];
  for (const auto& [x, y] : s.points) {
    std::snprintf(buf, sizeof buf, "%.12g %.12g\n", x, y);
    out += buf;
  }
  return out;
}

ExperimentConfig config_from_csv_header(std::string_view csv) {
  KeyValues kv;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t end = std::min(csv.find('\n', pos), csv.size());
    const std::string_view line = csv.substr(pos, end - pos);
    pos = end + 1;
    if (!line.starts_with("# ")) break;
    const std::string_view body = line.substr(2);
    if (body.starts_with("warning:")) continue;
    const auto eq = body.find(" = ");
    if (eq == std::string_view::npos) continue;
    kv.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 3)));
  }
  return config_from_key_values(kv);
}

std::vector<std::filesystem::path> write_outputs(const ExperimentResult& r, const std::filesystem::path& out) {
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) fail(ErrorKind::kIo, "cannot write " + p.string());
    f << text;
    if (!f) fail(ErrorKind::kIo, "write failed for " + p.string());
    written.push_back(p);
  };
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  const auto stem = (out.parent_path() / out.stem()).string();
  for (std::size_t i = 0; i < r.tables.size(); ++i)
    put(i == 0 ? out : std::filesystem::path(stem + "." + r.tables[i].name + ".csv"), format_csv(r, i));
  for (const PlotSeries& s : r.plots) put(stem + "." + s.name + ".dat", format_plot(s));
  return written;
}

}  // namespace sievelab
