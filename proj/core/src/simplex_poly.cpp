#include "sievelab/simplex_poly.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "sievelab/error.hpp"

namespace sievelab {

namespace {

void trim(std::vector<int>& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

std::vector<int> add(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> out(std::max(x.size(), y.size()), 0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
  trim(out);
  return out;
}

mpz_class binomial(int n, int r) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

mpz_class factorial(int n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && s[i] == sep) {
      out.push_back(strip(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(strip(s.substr(start)));
  return out;
}

// Splits on top-level binary + and -, returning (negated, term) pairs.
std::vector<std::pair<bool, std::string_view>> split_terms(std::string_view s) {
  std::vector<std::pair<bool, std::string_view>> out;
  int depth = 0;
  bool neg = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && (s[i] == '+' || s[i] == '-')) {
      const std::string_view pending = strip(s.substr(start, i - start));
      if (pending.empty()) {  // unary sign
        if (s[i] == '-') neg = !neg;
        start = i + 1;
        continue;
      }
      out.emplace_back(neg, pending);
      neg = s[i] == '-';
      start = i + 1;
    }
  }
  out.emplace_back(neg, strip(s.substr(start)));
  return out;
}

int parse_small_int(std::string_view s) {
  int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    fail(ErrorKind::kInvalidArgument, "bad integer '" + std::string(s) + "'");
  return v;
}

int parse_exponent(std::string_view s) {
  if (s.empty()) return 1;
  if (s.front() != '^') fail(ErrorKind::kInvalidArgument, "expected '^' in term factor");
  return parse_small_int(s.substr(1));
}

}  // namespace

SmoothFunction::SmoothFunction(int k, std::vector<SymmetricTerm> terms) : k_(k) {
  if (k < 1) fail(ErrorKind::kInvalidArgument, "dimension k must be positive");
  for (SymmetricTerm& t : terms) {
    if (t.b < 0 || std::any_of(t.e.begin(), t.e.end(), [](int x) { return x < 0; }))
      fail(ErrorKind::kInvalidArgument, "negative exponent in smooth function term");
    trim(t.e);
  }
  terms_ = normalize_terms(std::move(terms));
}

SmoothFunction SmoothFunction::constant(int k, mpq_class c) { return SmoothFunction(k, {{std::move(c), 0, {}}}); }

SmoothFunction SmoothFunction::one_minus_sum(int k, int power) { return SmoothFunction(k, {{1, power, {}}}); }

int SmoothFunction::degree() const {
  int d = 0;
  for (const SymmetricTerm& t : terms_) {
    int td = t.b;
    for (std::size_t j = 0; j < t.e.size(); ++j) td += static_cast<int>(j + 1) * t.e[j];
    d = std::max(d, td);
  }
  return d;
}

double SmoothFunction::operator()(std::span<const double> t) const {
  if (static_cast<int>(t.size()) != k_) fail(ErrorKind::kInvalidArgument, "point dimension differs from k");
  double s = 0;
  for (double x : t) {
    if (x < 0) return 0;
    s += x;
  }
  if (s > 1) return 0;
  std::size_t jmax = 0;
  for (const SymmetricTerm& term : terms_) jmax = std::max(jmax, term.e.size());
  std::vector<double> P(jmax, 0.0);
  for (std::size_t j = 0; j < jmax; ++j)
    for (double x : t) P[j] += std::pow(x, static_cast<double>(j + 1));
  double out = 0;
  for (const SymmetricTerm& term : terms_) {
    double v = term.coeff.get_d() * std::pow(1 - s, term.b);
    for (std::size_t j = 0; j < term.e.size(); ++j) v *= std::pow(P[j], term.e[j]);
    out += v;
  }
  return out;
}

std::string SmoothFunction::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const SymmetricTerm& t = terms_[i];
    if (i) os << " + ";
    os << t.coeff.get_str();
    if (t.b) os << "*(1-P1)" << (t.b > 1 ? "^" + std::to_string(t.b) : "");
    for (std::size_t j = 0; j < t.e.size(); ++j)
      if (t.e[j]) os << "*P" << j + 1 << (t.e[j] > 1 ? "^" + std::to_string(t.e[j]) : "");
  }
  return os.str();
}

SmoothFunction SmoothFunction::parse(int k, std::string_view text) {
  std::vector<SymmetricTerm> terms;
  text = strip(text);
  if (text == "0") return SmoothFunction(k, {});
  for (const auto& [neg, term] : split_terms(text)) {
    if (term.empty()) fail(ErrorKind::kInvalidArgument, "empty term in '" + std::string(text) + "'");
    SymmetricTerm t;
    if (neg) t.coeff = -1;
    for (std::string_view f : split_top(term, '*')) {
      if (f.starts_with("(1-P1)")) {
        t.b += parse_exponent(f.substr(6));
      } else if (f.starts_with("P")) {
        const auto caret = f.find('^');
        const int j = parse_small_int(f.substr(1, caret == std::string_view::npos ? f.npos : caret - 1));
        if (j < 1) fail(ErrorKind::kInvalidArgument, "power sums start at P1");
        if (static_cast<int>(t.e.size()) < j) t.e.resize(j, 0);
        t.e[j - 1] += caret == std::string_view::npos ? 1 : parse_exponent(f.substr(caret));
      } else {
        try {
          t.coeff *= mpq_class(std::string(f));
        } catch (const std::invalid_argument&) {
          fail(ErrorKind::kInvalidArgument, "bad coefficient '" + std::string(f) + "'");
        }
        t.coeff.canonicalize();
      }
    }
    terms.push_back(std::move(t));
  }
  return SmoothFunction(k, std::move(terms));
}

std::vector<SymmetricTerm> normalize_terms(std::vector<SymmetricTerm> terms) {
  std::map<std::pair<int, std::vector<int>>, mpq_class> merged;
  for (SymmetricTerm& t : terms) {
    trim(t.e);
    merged[{t.b, t.e}] += t.coeff;
  }
  std::vector<SymmetricTerm> out;
  for (auto& [key, c] : merged)
    if (c != 0) out.push_back({c, key.first, key.second});
  return out;
}

SimplexIntegrator::SimplexIntegrator(int k) : k_(k) {
  if (k < 0) fail(ErrorKind::kInvalidArgument, "negative simplex dimension");
}

const SimplexIntegrator::MonomialSum& SimplexIntegrator::expansion(const std::vector<int>& nu) {
  if (auto it = expansions_.find(nu); it != expansions_.end()) return it->second;
  MonomialSum out;
  if (nu.empty()) {
    out[{}] = 1;
  } else {
    // Peel one factor P_j off the last nonzero exponent.
    std::vector<int> rest = nu;
    const int j = static_cast<int>(rest.size());
    --rest.back();
    trim(rest);
    const MonomialSum base = expansion(rest);
    for (const auto& [mu, c] : base) {
      std::vector<int> values(mu.begin(), mu.end());
      if (static_cast<int>(mu.size()) < k_) values.push_back(0);
      values.erase(std::unique(values.begin(), values.end()), values.end());
      for (int v : values) {
        Partition lambda = mu;
        if (v == 0) {
          lambda.push_back(j);
        } else {
          *std::find(lambda.begin(), lambda.end(), v) += j;
        }
        std::sort(lambda.begin(), lambda.end(), std::greater<>());
        const auto mult = std::count(lambda.begin(), lambda.end(), v + j);
        out[lambda] += c * static_cast<long>(mult);
      }
    }
  }
  return expansions_.emplace(nu, std::move(out)).first->second;
}

mpq_class SimplexIntegrator::monomial_integral(const Partition& mu, int B) const {
  const int len = static_cast<int>(mu.size());
  if (len > k_) return 0;
  int total = B;
  mpz_class num = factorial(k_) * factorial(B);
  mpz_class den = factorial(k_ - len);
  for (std::size_t i = 0; i < mu.size();) {
    std::size_t j = i;
    while (j < mu.size() && mu[j] == mu[i]) ++j;
    den *= factorial(static_cast<int>(j - i));
    i = j;
  }
  for (int part : mu) {
    num *= factorial(part);
    total += part;
  }
  den *= factorial(k_ + total);
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

const mpq_class& SimplexIntegrator::integral(int B, const std::vector<int>& nu) {
  auto key = std::make_pair(B, nu);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  mpq_class sum = 0;
  for (const auto& [mu, c] : expansion(nu)) sum += mpq_class(c) * monomial_integral(mu, B);
  return cache_.emplace(std::move(key), std::move(sum)).first->second;
}

std::vector<SymmetricTerm> integrate_out_last(std::span<const SymmetricTerm> terms) {
  std::vector<SymmetricTerm> out;
  for (const SymmetricTerm& t : terms) {
    // Expand prod_j (P'_j + x^j)^{e_j}, then int_0^s (s - x)^b x^a dx = s^{a+b+1} a! b! / (a+b+1)!.
    std::vector<int> pick(t.e.size(), 0);
    for (;;) {
      mpq_class c = t.coeff;
      int a = 0;
      std::vector<int> rest(t.e.size());
      for (std::size_t j = 0; j < t.e.size(); ++j) {
        c *= binomial(t.e[j], pick[j]);
        a += static_cast<int>(j + 1) * pick[j];
        rest[j] = t.e[j] - pick[j];
      }
      c *= mpq_class(factorial(a) * factorial(t.b), factorial(a + t.b + 1));
      c.canonicalize();
      trim(rest);
      out.push_back({c, a + t.b + 1, rest});
      std::size_t j = 0;
      while (j < pick.size() && pick[j] == t.e[j]) pick[j++] = 0;
      if (j == pick.size()) break;
      ++pick[j];
    }
  }
  return normalize_terms(std::move(out));
}

namespace {

mpq_class quadratic_form(SimplexIntegrator& integ, std::span<const SymmetricTerm> terms) {
  mpq_class sum = 0;
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i; j < terms.size(); ++j) {
      mpq_class v = terms[i].coeff * terms[j].coeff *
                    integ.integral(terms[i].b + terms[j].b, add(terms[i].e, terms[j].e));
      sum += i == j ? v : 2 * v;
    }
  return sum;
}

}  // namespace

mpq_class integrate_Ik_exact(const SmoothFunction& F) {
  SimplexIntegrator integ(F.k());
  return quadratic_form(integ, F.terms());
}

mpq_class integrate_Jkm_exact(const SmoothFunction& F, int m) {
  if (m < 1 || m > F.k()) fail(ErrorKind::kOutOfRange, "J index m must lie in [1, k]");
  const std::vector<SymmetricTerm> inner = integrate_out_last(F.terms());
  SimplexIntegrator integ(F.k() - 1);
  return quadratic_form(integ, inner);
}

double integrate_Ik(const SmoothFunction& F) { return integrate_Ik_exact(F).get_d(); }

double integrate_Jkm(const SmoothFunction& F, int m) { return integrate_Jkm_exact(F, m).get_d(); }

}  // namespace sievelab
