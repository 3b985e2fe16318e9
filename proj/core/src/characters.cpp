#include "sievelab/characters.hpp"

#include <numbers>
#include <numeric>

#include "sievelab/error.hpp"

namespace sievelab {

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  const auto rs = prime_factors(p - 1);
  for (std::uint64_t g = 2;; ++g) {
    bool ok = true;
    for (std::uint64_t r : rs) ok = ok && powmod(g, (p - 1) / r, p) != 1;
    if (ok) return g;
  }
}

}  // namespace

CharacterGroup::CharacterGroup(std::uint64_t q) : q_(q) {
  if (q < 1 || q > 1'000'000) fail(ErrorKind::kInvalidArgument, "character modulus must lie in [1, 10^6]");
  std::uint64_t n = q;
  for (std::uint64_t p = 2; n > 1; ++p) {
    if (p * p > n) p = n;
    if (n % p) continue;
    int e = 0;
    std::uint64_t pe = 1;
    while (n % p == 0) n /= p, pe *= p, ++e;
    if (p == 2) {
      if (e == 1) continue;  // trivial unit group
      Factor minus{2, e, pe, 2, std::vector<std::uint32_t>(pe, kNone)};
      if (e == 2) {
        minus.log[1] = 0;
        minus.log[3] = 1;
        factors_.push_back(std::move(minus));
        continue;
      }
      Factor five{2, e, pe, pe / 4, std::vector<std::uint32_t>(pe, kNone)};
      std::uint64_t v = 1;
      for (std::uint64_t b = 0; b < pe / 4; ++b, v = v * 5 % pe) {
        five.log[v] = five.log[pe - v] = static_cast<std::uint32_t>(b);
        minus.log[v] = 0;
        minus.log[pe - v] = 1;
      }
      factors_.push_back(std::move(minus));
      factors_.push_back(std::move(five));
      continue;
    }
    std::uint64_t g = primitive_root(p);
    if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
    const std::uint64_t order = pe / p * (p - 1);
    Factor f{p, e, pe, order, std::vector<std::uint32_t>(pe, kNone)};
    std::uint64_t v = 1;
    for (std::uint64_t x = 0; x < order; ++x, v = v * g % pe) f.log[v] = static_cast<std::uint32_t>(x);
    factors_.push_back(std::move(f));
  }
  for (const Factor& f : factors_) exponent_ = std::lcm(exponent_, f.order);
}

std::uint64_t CharacterGroup::phi() const {
  std::uint64_t out = 1;
  for (const Factor& f : factors_) out *= f.order;
  return out;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<std::uint64_t> index)
    : group_(std::move(group)), index_(std::move(index)) {
  const auto& fs = group_->factors();
  if (index_.size() != fs.size()) fail(ErrorKind::kInvalidArgument, "character index has the wrong length");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (index_[i] >= fs[i].order) fail(ErrorKind::kInvalidArgument, "character index out of range");
    principal_ = principal_ && index_[i] == 0;
  }
  // Conductor, one prime at a time. A cyclic character with index j mod
  // phi(p^e) factors through p^f iff p^{e-f} divides j.
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& f = fs[i];
    if (f.p == 2 && f.e >= 3 && f.order == 2) {
      const std::uint64_t j5 = index_[i + 1];
      if (j5 == 0) {
        if (index_[i]) conductor_ *= 4;
      } else {
        std::uint64_t c = 8;
        while (j5 % (f.pe / c) != 0) c *= 2;
        conductor_ *= c;
      }
      ++i;  // the 5 factor is handled
      continue;
    }
    if (index_[i] == 0) continue;
    if (f.p == 2) {  // 2^2
      conductor_ *= 4;
      continue;
    }
    std::uint64_t c = f.p;
    while (index_[i] % (f.pe / c) != 0) c *= f.p;
    conductor_ *= c;
  }
}

bool DirichletCharacter::phase(std::uint64_t n, std::uint64_t& out) const {
  const std::uint64_t q = modulus();
  if (std::gcd(n % q, q) != 1) return false;
  const std::uint64_t L = group_->exponent();
  std::uint64_t acc = 0;
  const auto& fs = group_->factors();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (index_[i] == 0) continue;
    const std::uint64_t x = fs[i].log[n % fs[i].pe];
    acc = (acc + index_[i] * x % fs[i].order * (L / fs[i].order)) % L;
  }
  out = acc;
  return true;
}

std::complex<double> DirichletCharacter::operator()(std::uint64_t n) const {
  std::uint64_t ph = 0;
  if (!phase(n, ph)) return {0.0, 0.0};
  if (ph == 0) return {1.0, 0.0};
  const std::uint64_t L = order();
  if (2 * ph == L) return {-1.0, 0.0};
  const double a = 2 * std::numbers::pi * static_cast<double>(ph) / static_cast<double>(L);
  return std::polar(1.0, a);
}

std::vector<DirichletCharacter> build_characters(std::uint64_t q) {
  auto group = std::make_shared<const CharacterGroup>(q);
  const auto& fs = group->factors();
  std::vector<DirichletCharacter> out;
  out.reserve(group->phi());
  std::vector<std::uint64_t> idx(fs.size(), 0);
  while (true) {
    out.emplace_back(group, idx);
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < fs[i].order) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  return out;
}

}  // namespace sievelab
