#include "sievelab/structured_sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "sievelab/error.hpp"

namespace sievelab {

namespace {

std::uint64_t mod_floor(std::int64_t a, std::uint64_t q) {
  const auto qq = static_cast<std::int64_t>(q);
  std::int64_t r = a % qq;
  if (r < 0) r += qq;
  return static_cast<std::uint64_t>(r);
}

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> comp(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
  }
  return out;
}

// p^k, or 0 when it exceeds `cap`.
std::uint64_t bounded_power(std::uint64_t p, int k, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > cap / p) return 0;
    r *= p;
  }
  return r;
}

bool kfree_trial(std::uint64_t n, int k) {
  if (n == 0) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e >= k) return false;
  }
  return true;
}

std::uint64_t shifted_value(std::uint64_t n, std::int64_t a) {
  const std::int64_t v = static_cast<std::int64_t>(n) + a;
  return static_cast<std::uint64_t>(v < 0 ? -v : v);
}

bool kfree_member(const ShiftedKFree& s, std::uint64_t n, const ArithmeticTables* tables) {
  const std::uint64_t v = shifted_value(n, s.a);
  if (v == 0) return false;
  if (tables && v <= tables->limit()) return is_kfree(v, s.k, *tables);
  return kfree_trial(v, s.k);
}

bool profiles_contain(const std::vector<ResidueProfile>& profiles, std::uint64_t n, bool sharp) {
  for (const ResidueProfile& p : profiles) {
    const std::uint64_t r = n % p.m;
    if (sharp && std::gcd(r, p.m) != 1) return false;
    if (!p.allows(r)) return false;
  }
  return true;
}

void validate(const ResidueProfile& p) {
  if (p.m == 0) fail(ErrorKind::kInvalidArgument, "residue profile modulus must be positive");
  for (std::uint64_t r : p.allowed)
    if (r >= p.m) fail(ErrorKind::kInvalidArgument, "allowed residue outside Z_m");
}

TypeB normalized(TypeB b) {
  if (!(b.kappa > 0)) fail(ErrorKind::kInvalidArgument, "kappa must be positive");
  for (ResidueProfile& p : b.moduli) {
    validate(p);
    std::sort(p.allowed.begin(), p.allowed.end());
    p.allowed.erase(std::unique(p.allowed.begin(), p.allowed.end()), p.allowed.end());
  }
  for (std::size_t i = 0; i < b.moduli.size(); ++i)
    for (std::size_t j = i + 1; j < b.moduli.size(); ++j)
      if (std::gcd(b.moduli[i].m, b.moduli[j].m) != 1)
        fail(ErrorKind::kInvalidArgument, "type-B moduli must be pairwise coprime");
  std::sort(b.moduli.begin(), b.moduli.end(),
            [](const ResidueProfile& x, const ResidueProfile& y) { return x.m < y.m; });
  return b;
}

// Long double evaluation of {g(n)} with a rigorous error radius; callers fall
// back to interval arithmetic when the comparison is within the radius.
struct BohrFast {
  std::vector<long double> frac;
  explicit BohrFast(const BohrPolynomial& b) {
    frac.reserve(b.coeffs.size());
    for (const ExactReal& c : b.coeffs) frac.push_back(c.frac_long_double());
  }
  Decision decide(std::uint64_t n, long double d) const {
    const long double eps = std::ldexp(1.0L, -62);
    long double x = 0, err = 0, power = 1;
    for (long double c : frac) {
      if (power >= 0x1p63L) return Decision::kUndecided;
      const long double t = c * power;
      x += t - std::floor(t);
      err += 4 * power * eps + eps;
      power *= static_cast<long double>(n);
    }
    x -= std::floor(x);
    err += 8 * eps;
    if (x >= err && x <= d - err) return Decision::kTrue;
    if (x > d + err && x < 1 - err) return Decision::kFalse;
    return Decision::kUndecided;
  }
};

}  // namespace

bool ResidueProfile::allows(std::uint64_t r) const {
  return std::binary_search(allowed.begin(), allowed.end(), r % m);
}

std::vector<ResidueProfile> ApproxTypeB::kept() const {
  std::vector<ResidueProfile> out;
  for (const ResidueProfile& p : base.moduli)
    if (static_cast<double>(p.m) < z) out.push_back(p);
  return out;
}

SetDescriptor::SetDescriptor(Variant v) : v_(std::move(v)) {
  if (auto* ap = std::get_if<ArithmeticProgression>(&v_)) {
    if (ap->q == 0) fail(ErrorKind::kInvalidArgument, "AP modulus must be positive");
  } else if (auto* kf = std::get_if<ShiftedKFree>(&v_)) {
    if (kf->k < 2) fail(ErrorKind::kInvalidArgument, "k-free requires k >= 2");
  } else if (auto* b = std::get_if<BohrPolynomial>(&v_)) {
    if (b->coeffs.size() < 2) fail(ErrorKind::kInvalidArgument, "Bohr polynomial needs degree >= 1");
    if (!(b->d > 0 && b->d < 1)) fail(ErrorKind::kInvalidArgument, "Bohr width d must lie in (0,1)");
    if (std::none_of(b->coeffs.begin(), b->coeffs.end(),
                     [](const ExactReal& c) { return c.irrational(); }))
      fail(ErrorKind::kInvalidArgument, "Bohr polynomial needs an irrational coefficient");
  } else if (auto* tb = std::get_if<TypeB>(&v_)) {
    *tb = normalized(std::move(*tb));
  } else if (auto* ab = std::get_if<ApproxTypeB>(&v_)) {
    if (!(ab->z >= 1)) fail(ErrorKind::kInvalidArgument, "z must be >= 1");
    ab->base = normalized(std::move(ab->base));
  }
}

SetDescriptor SetDescriptor::ap(std::int64_t a, std::uint64_t q) {
  return SetDescriptor(ArithmeticProgression{a, q});
}

SetDescriptor SetDescriptor::shifted_kfree(std::int64_t a, int k) {
  return SetDescriptor(ShiftedKFree{a, k});
}

SetDescriptor SetDescriptor::bohr(std::vector<ExactReal> coeffs, mpq_class d) {
  return SetDescriptor(BohrPolynomial{std::move(coeffs), std::move(d)});
}

SetDescriptor SetDescriptor::type_b(TypeB b) { return SetDescriptor(std::move(b)); }

SetDescriptor SetDescriptor::shifted_kfree_type_b(std::int64_t a, int k, std::uint64_t bound) {
  if (k < 2) fail(ErrorKind::kInvalidArgument, "k-free requires k >= 2");
  TypeB b;
  b.kappa = 1.0 - 1.0 / k;
  b.truncation_bound = bound;
  const auto root = static_cast<std::uint64_t>(std::pow(static_cast<double>(bound), 1.0 / k)) + 2;
  for (std::uint64_t p : small_primes(root)) {
    const std::uint64_t m = bounded_power(p, k, bound);
    if (m == 0) break;
    ResidueProfile prof{m, {}};
    // n + a = 0 mod m is the single excluded class.
    const std::uint64_t bad = mod_floor(-a, m);
    prof.allowed.reserve(m - 1);
    for (std::uint64_t r = 0; r < m; ++r)
      if (r != bad) prof.allowed.push_back(r);
    b.moduli.push_back(std::move(prof));
  }
  return SetDescriptor(std::move(b));
}

SetKind SetDescriptor::kind() const { return static_cast<SetKind>(v_.index()); }

std::string SetDescriptor::label() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeNumbers>) {
          os << "nat";
        } else if constexpr (std::is_same_v<T, ArithmeticProgression>) {
          os << "ap(" << s.a << "," << s.q << ")";
        } else if constexpr (std::is_same_v<T, ShiftedKFree>) {
          os << "kfree(a=" << s.a << ",k=" << s.k << ")";
        } else if constexpr (std::is_same_v<T, BohrPolynomial>) {
          os << "bohr(";
          for (std::size_t i = 0; i < s.coeffs.size(); ++i) os << (i ? ";" : "") << s.coeffs[i].to_string();
          os << ",d=" << s.d.get_str() << ")";
        } else if constexpr (std::is_same_v<T, TypeB>) {
          os << "typeb(" << s.moduli.size() << " moduli)";
        } else {
          os << "typeb(" << s.base.moduli.size() << " moduli,z=" << s.z << ")";
        }
      },
      v_);
  return os.str();
}

bool bohr_contains(const BohrPolynomial& b, std::uint64_t n) {
  const mpz_class nz(static_cast<unsigned long>(n));
  for (mpfr_prec_t prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
    const Interval x = enclose_polynomial(b.coeffs, nz, prec);
    const Decision d = frac_in_unit_prefix(x, b.d);
    if (d == Decision::kTrue) return true;
    if (d == Decision::kFalse) return false;
  }
  fail(ErrorKind::kBoundaryAmbiguous,
       "Bohr membership undecided at " + std::to_string(kMaxPrecision) + " bits for n=" + std::to_string(n));
}

bool contains(const SetDescriptor& s, std::uint64_t n, const ArithmeticTables* tables) {
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, WholeNumbers>) {
          return true;
        } else if constexpr (std::is_same_v<T, ArithmeticProgression>) {
          return n % v.q == mod_floor(v.a, v.q);
        } else if constexpr (std::is_same_v<T, ShiftedKFree>) {
          return kfree_member(v, n, tables);
        } else if constexpr (std::is_same_v<T, BohrPolynomial>) {
          return bohr_contains(v, n);
        } else if constexpr (std::is_same_v<T, TypeB>) {
          return profiles_contain(v.moduli, n, false);
        } else {
          return profiles_contain(v.kept(), n, false);
        }
      },
      s.variant());
}

bool contains_sharp(const SetDescriptor& s, std::uint64_t n, const ArithmeticTables* tables) {
  if (const auto* b = std::get_if<TypeB>(&s.variant())) return profiles_contain(b->moduli, n, true);
  if (const auto* b = std::get_if<ApproxTypeB>(&s.variant())) return profiles_contain(b->kept(), n, true);
  return contains(s, n, tables);
}

std::vector<std::uint8_t> membership(const SetDescriptor& s, std::uint64_t lo, std::uint64_t hi,
                                     const ArithmeticTables* tables) {
  if (hi < lo) return {};
  const std::uint64_t len = hi - lo + 1;
  std::vector<std::uint8_t> out(len, 0);
  if (const auto* kf = std::get_if<ShiftedKFree>(&s.variant())) {
    // Sieve out multiples of p^k over the shifted window when it stays positive.
    const std::int64_t first = static_cast<std::int64_t>(lo) + kf->a;
    if (first >= 1) {
      std::fill(out.begin(), out.end(), 1);
      const std::uint64_t top = static_cast<std::uint64_t>(first) + len - 1;
      const auto root = static_cast<std::uint64_t>(std::pow(static_cast<double>(top), 1.0 / kf->k)) + 2;
      for (std::uint64_t p : small_primes(root)) {
        const std::uint64_t m = bounded_power(p, kf->k, top);
        if (m == 0) break;
        const auto f = static_cast<std::uint64_t>(first);
        for (std::uint64_t v = (f + m - 1) / m * m; v <= top; v += m) out[v - f] = 0;
      }
      return out;
    }
  }
  if (const auto* b = std::get_if<BohrPolynomial>(&s.variant())) {
    const BohrFast fast(*b);
    const long double d = mpq_get_d(b->d.get_mpq_t());
    for (std::uint64_t i = 0; i < len; ++i) {
      const Decision dec = fast.decide(lo + i, d);
      out[i] = dec == Decision::kUndecided ? bohr_contains(*b, lo + i) : dec == Decision::kTrue;
    }
    return out;
  }
  for (std::uint64_t i = 0; i < len; ++i) out[i] = contains(s, lo + i, tables);
  return out;
}

ApproxTypeB truncate(const TypeB& b, double z) {
  if (!(z >= 1)) fail(ErrorKind::kInvalidArgument, "z must be >= 1");
  return ApproxTypeB{b, z};
}

std::uint64_t residue_count_tau(std::span<const std::int64_t> h, const ResidueProfile& profile) {
  std::uint64_t count = 0;
  for (std::uint64_t r = 0; r < profile.m; ++r) {
    bool ok = true;
    for (std::int64_t hi : h) {
      const std::uint64_t v = (r + mod_floor(hi, profile.m)) % profile.m;
      if (std::gcd(v, profile.m) != 1 || !profile.allows(v)) {
        ok = false;
        break;
      }
    }
    count += ok;
  }
  return count;
}

std::vector<std::uint64_t> forbidden_primes(const ApproxTypeB& s) {
  std::set<std::uint64_t> ps;
  for (const ResidueProfile& p : s.base.moduli) {
    if (static_cast<double>(p.m) > s.z) continue;
    std::uint64_t m = p.m;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
      if (m % d) continue;
      ps.insert(d);
      while (m % d == 0) m /= d;
    }
    if (m > 1) ps.insert(m);
  }
  return {ps.begin(), ps.end()};
}

double singular_series(const ApproxTypeB& s, int k, std::uint64_t D0) {
  if (k < 1) fail(ErrorKind::kInvalidArgument, "k must be positive");
  if (D0 < 2) fail(ErrorKind::kInvalidArgument, "D0 must be >= 2");
  double prod = 1.0;
  for (std::uint64_t p : forbidden_primes(s)) {
    if (p <= D0 || static_cast<double>(p) >= s.z) continue;
    const double inv = 1.0 / static_cast<double>(p);
    prod *= inv * std::pow(1.0 - inv, k);
  }
  return prod;
}

double singular_series(const SetDescriptor& s, int k, std::uint64_t D0) {
  if (const auto* ab = std::get_if<ApproxTypeB>(&s.variant())) return singular_series(*ab, k, D0);
  if (const auto* b = std::get_if<TypeB>(&s.variant())) {
    double z = 1.0;
    for (const ResidueProfile& p : b->moduli) z = std::max(z, static_cast<double>(p.m) + 1);
    return singular_series(ApproxTypeB{*b, z}, k, D0);
  }
  return 1.0;
}

double gamma_factor(const ApproxTypeB& s, std::span<const std::int64_t> h, std::uint64_t D0) {
  if (D0 < 2) fail(ErrorKind::kInvalidArgument, "D0 must be >= 2");
  double prod = 1.0;
  for (const ResidueProfile& p : s.base.moduli) {
    if (p.m <= D0 || static_cast<double>(p.m) > s.z) continue;
    prod *= static_cast<double>(residue_count_tau(h, p)) / static_cast<double>(p.m);
  }
  return prod;
}

TailComparison typeB_tail(const TypeB& s, double x, const ArithmeticTables& a) {
  if (!(x > 0)) fail(ErrorKind::kInvalidArgument, "x must be positive");
  TailComparison out;
  for (const ResidueProfile& p : s.moduli) {
    if (static_cast<double>(p.m) < x) continue;
    out.partial_sum += static_cast<double>(p.excluded_count()) / static_cast<double>(a.phi(p.m));
  }
  out.claimed_bound = std::pow(x, -s.kappa);
  out.truncation_bound = s.truncation_bound;
  return out;
}

}  // namespace sievelab
