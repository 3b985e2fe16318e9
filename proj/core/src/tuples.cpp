#include "sievelab/tuples.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "sievelab/error.hpp"

namespace sievelab {

namespace {

std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= n; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(p);
  }
  return out;
}

std::vector<std::uint64_t> first_primes(std::size_t k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; out.size() < k; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(p);
  }
  return out;
}

std::uint64_t mod_floor(std::int64_t a, std::uint64_t q) {
  const auto qq = static_cast<std::int64_t>(q);
  std::int64_t r = a % qq;
  if (r < 0) r += qq;
  return static_cast<std::uint64_t>(r);
}

bool admissible_for(const KTuple& h, const std::vector<std::uint64_t>& primes) {
  for (std::uint64_t p : primes)
    if (residues_occupied(h, p) >= p) return false;
  return true;
}

}  // namespace

KTuple::KTuple(std::vector<std::int64_t> h) : h_(std::move(h)) {
  for (std::size_t i = 0; i < h_.size(); ++i) {
    if (h_[i] < 0) fail(ErrorKind::kInvalidArgument, "tuple entries must be nonnegative");
    if (i > 0 && h_[i] <= h_[i - 1]) fail(ErrorKind::kInvalidArgument, "tuple entries must be strictly increasing");
  }
}

std::string KTuple::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < h_.size(); ++i) os << (i ? "," : "") << h_[i];
  return os.str();
}

KTuple KTuple::parse(std::string_view text) {
  std::vector<std::int64_t> h;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    std::string_view part = text.substr(pos, comma - pos);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    std::int64_t v = 0;
    const auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || p != part.data() + part.size())
      fail(ErrorKind::kInvalidArgument, "bad tuple '" + std::string(text) + "'");
    h.push_back(v);
    pos = comma + 1;
  }
  return KTuple(std::move(h));
}

std::uint64_t Primorial::u64() const {
  if (!fits_u64()) fail(ErrorKind::kOverflow, "primorial " + value.get_str() + " exceeds 64 bits");
  return mpz_get_ui(value.get_mpz_t());
}

Primorial compute_W(std::uint64_t D0) {
  if (D0 < 2) fail(ErrorKind::kInvalidArgument, "D0 must be >= 2");
  Primorial w{1};
  mpz_primorial_ui(w.value.get_mpz_t(), D0);
  return w;
}

WTrickParams WTrickParams::make(std::uint64_t D0, std::uint64_t a0) {
  WTrickParams p;
  p.D0 = D0;
  p.W = compute_W(D0).u64();
  p.a0 = a0 % p.W;
  if (std::gcd(p.a0, p.W) != 1) fail(ErrorKind::kInvalidArgument, "a0 must be coprime to W");
  return p;
}

std::uint64_t residues_occupied(const KTuple& h, std::uint64_t p) {
  if (p == 0) fail(ErrorKind::kInvalidArgument, "modulus must be positive");
  std::vector<std::uint64_t> r;
  r.reserve(h.k());
  for (std::int64_t x : h.values()) r.push_back(mod_floor(x, p));
  std::sort(r.begin(), r.end());
  return static_cast<std::uint64_t>(std::unique(r.begin(), r.end()) - r.begin());
}

bool is_admissible(const KTuple& h, const PrimeTable& t) {
  if (t.limit() < h.k()) return is_admissible(h);
  for (std::uint64_t p : t.primes()) {
    if (p > h.k()) break;
    if (residues_occupied(h, p) >= p) return false;
  }
  return true;
}

bool is_admissible(const KTuple& h) { return admissible_for(h, primes_upto(h.k())); }

std::vector<KTuple> generate_hk_tuples(std::size_t k, std::int64_t height, std::uint64_t W, std::size_t count) {
  if (k < 1 || W < 1) fail(ErrorKind::kInvalidArgument, "k and W must be positive");
  if (height < 0 || static_cast<std::uint64_t>(height) < (k - 1) * W)
    fail(ErrorKind::kInvalidArgument, "height too small to fit k multiples of W");
  const std::vector<std::uint64_t> primes = primes_upto(k);
  const std::int64_t step = static_cast<std::int64_t>(W);
  std::vector<KTuple> out;
  std::vector<std::int64_t> cur;
  // occupied[p_idx][r]: number of entries in class r mod primes[p_idx].
  std::vector<std::vector<int>> occupied(primes.size());
  std::vector<std::uint64_t> distinct(primes.size(), 0);
  for (std::size_t i = 0; i < primes.size(); ++i) occupied[i].assign(primes[i], 0);

  auto recurse = [&](auto&& self, std::int64_t start) -> void {
    if (out.size() >= count) return;
    if (cur.size() == k) {
      out.emplace_back(cur);
      return;
    }
    const auto remaining = static_cast<std::int64_t>(k - cur.size() - 1);
    for (std::int64_t v = start; v + remaining * step <= height && out.size() < count; v += step) {
      bool ok = true;
      for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t r = mod_floor(v, primes[i]);
        if (occupied[i][r] == 0 && distinct[i] + 1 >= primes[i]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (std::size_t i = 0; i < primes.size(); ++i)
        if (occupied[i][mod_floor(v, primes[i])]++ == 0) ++distinct[i];
      cur.push_back(v);
      self(self, v + step);
      cur.pop_back();
      for (std::size_t i = 0; i < primes.size(); ++i)
        if (--occupied[i][mod_floor(v, primes[i])] == 0) --distinct[i];
    }
  };
  recurse(recurse, 0);
  return out;
}

std::vector<std::pair<std::uint64_t, int>> bohr_constraint_exponents(std::size_t k, double d) {
  if (!(d > 0 && d < 1)) fail(ErrorKind::kInvalidArgument, "d must lie in (0,1)");
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p : first_primes(k)) {
    int e = 1;
    double pe = static_cast<double>(p);
    while (!(1.0 / pe < d)) {
      pe *= static_cast<double>(p);
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

std::vector<KTuple> bohr_constraint_tuples(std::size_t k, double d, std::int64_t height, std::size_t count,
                                           bool require_admissible) {
  if (k < 1) fail(ErrorKind::kInvalidArgument, "k must be positive");
  const auto exps = bohr_constraint_exponents(k, d);
  // Entry i must be a multiple of L_i = prod_{j != i} p_j^{e_j} and prime to p_i.
  std::vector<std::int64_t> L(k, 1);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      for (int e = 0; e < exps[j].second; ++e) {
        if (L[i] > height) break;
        L[i] *= static_cast<std::int64_t>(exps[j].first);
      }
    }
  const std::vector<std::uint64_t> primes = primes_upto(k);
  std::vector<KTuple> out;
  std::vector<std::int64_t> cur;
  auto recurse = [&](auto&& self, std::int64_t prev) -> void {
    if (out.size() >= count) return;
    const std::size_t i = cur.size();
    if (i == k) {
      KTuple t(cur);
      if (!require_admissible || admissible_for(t, primes)) out.push_back(std::move(t));
      return;
    }
    const std::int64_t p = static_cast<std::int64_t>(exps[i].first);
    for (std::int64_t v = (prev / L[i] + 1) * L[i]; v <= height && out.size() < count; v += L[i]) {
      if (v % p == 0) continue;
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
    }
  };
  recurse(recurse, 0);
  if (out.empty()) fail(ErrorKind::kInvalidArgument, "no tuple satisfies the constraints within the height");
  return out;
}

}  // namespace sievelab
