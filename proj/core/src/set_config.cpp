#include "sievelab/set_config.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "sievelab/error.hpp"

namespace sievelab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(ErrorKind::kInvalidArgument, "bad integer for " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

double parse_double(std::string_view s, std::string_view what) {
  const std::string t(trim(s));
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    fail(ErrorKind::kInvalidArgument, "bad number for " + std::string(what) + ": '" + t + "'");
  return v;
}

mpq_class parse_rational_value(std::string_view s) {
  const ExactReal x = ExactReal::parse(s);
  if (x.scale() != 0) fail(ErrorKind::kInvalidArgument, "expected a rational, got '" + std::string(s) + "'");
  return x.offset();
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::string* find(const KeyValues& kv, std::string_view key) {
  const std::string* out = nullptr;
  for (const auto& [k, v] : kv)
    if (k == key) out = &v;  // last one wins
  return out;
}

const std::string& need(const KeyValues& kv, std::string_view key) {
  const std::string* v = find(kv, key);
  if (!v) fail(ErrorKind::kInvalidArgument, "missing config key " + std::string(key));
  return *v;
}

ResidueProfile parse_profile(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) fail(ErrorKind::kInvalidArgument, "profile must read 'm: r1, r2, ...'");
  ResidueProfile p;
  p.m = parse_int<std::uint64_t>(s.substr(0, colon), "profile modulus");
  const std::string_view rest = trim(s.substr(colon + 1));
  if (!rest.empty())
    for (std::string_view r : split(rest, ',')) p.allowed.push_back(parse_int<std::uint64_t>(r, "residue"));
  return p;
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view l = line;
    if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorKind::kInvalidArgument, "config line " + std::to_string(lineno) + " has no '='");
    out.emplace_back(std::string(trim(l.substr(0, eq))), std::string(trim(l.substr(eq + 1))));
  }
  return out;
}

SetDescriptor set_from_config(const KeyValues& kv) {
  const std::string* kind_p = find(kv, "set.kind");
  const std::string kind = kind_p ? *kind_p : "nat";
  if (kind == "nat") return SetDescriptor::whole();
  if (kind == "ap")
    return SetDescriptor::ap(parse_int<std::int64_t>(need(kv, "set.a"), "set.a"),
                             parse_int<std::uint64_t>(need(kv, "set.q"), "set.q"));
  if (kind == "kfree") {
    const std::string* k = find(kv, "set.k");
    return SetDescriptor::shifted_kfree(parse_int<std::int64_t>(need(kv, "set.a"), "set.a"),
                                        k ? parse_int<int>(*k, "set.k") : 2);
  }
  if (kind == "bohr") {
    std::vector<ExactReal> coeffs;
    for (std::string_view c : split(need(kv, "set.coeffs"), ',')) coeffs.push_back(ExactReal::parse(c));
    return SetDescriptor::bohr(std::move(coeffs), parse_rational_value(need(kv, "set.d")));
  }
  if (kind == "typeb") {
    TypeB b;
    if (const std::string* k = find(kv, "set.kappa")) b.kappa = parse_double(*k, "set.kappa");
    if (const std::string* t = find(kv, "set.bound")) b.truncation_bound = parse_int<std::uint64_t>(*t, "set.bound");
    for (const auto& [k, v] : kv)
      if (k == "set.profile") b.moduli.push_back(parse_profile(v));
    if (const std::string* z = find(kv, "set.z"))
      return SetDescriptor(ApproxTypeB{std::move(b), parse_double(*z, "set.z")});
    return SetDescriptor::type_b(std::move(b));
  }
  fail(ErrorKind::kInvalidArgument, "unknown set.kind '" + kind + "'");
}

std::string set_to_config(const SetDescriptor& s) {
  std::ostringstream os;
  auto typeb = [&](const TypeB& b) {
    os << "set.kind = typeb\n";
    os << "set.kappa = " << fmt_double(b.kappa) << "\n";
    if (b.truncation_bound) os << "set.bound = " << *b.truncation_bound << "\n";
    for (const ResidueProfile& p : b.moduli) {
      os << "set.profile = " << p.m << ":";
      for (std::size_t i = 0; i < p.allowed.size(); ++i) os << (i ? ", " : " ") << p.allowed[i];
      os << "\n";
    }
  };
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, WholeNumbers>) {
          os << "set.kind = nat\n";
        } else if constexpr (std::is_same_v<T, ArithmeticProgression>) {
          os << "set.kind = ap\nset.a = " << v.a << "\nset.q = " << v.q << "\n";
        } else if constexpr (std::is_same_v<T, ShiftedKFree>) {
          os << "set.kind = kfree\nset.a = " << v.a << "\nset.k = " << v.k << "\n";
        } else if constexpr (std::is_same_v<T, BohrPolynomial>) {
          os << "set.kind = bohr\nset.coeffs = ";
          for (std::size_t i = 0; i < v.coeffs.size(); ++i) os << (i ? ", " : "") << v.coeffs[i].to_string();
          os << "\nset.d = " << v.d.get_str() << "\n";
        } else if constexpr (std::is_same_v<T, TypeB>) {
          typeb(v);
        } else {
          typeb(v.base);
          os << "set.z = " << fmt_double(v.z) << "\n";
        }
      },
      s.variant());
  return os.str();
}

SetDescriptor parse_set_spec(std::string_view spec) {
  spec = trim(spec);
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (head == "nat" && body.empty()) return SetDescriptor::whole();
  const auto args = split(body, ',');
  if (head == "ap" && args.size() == 2)
    return SetDescriptor::ap(parse_int<std::int64_t>(args[0], "a"), parse_int<std::uint64_t>(args[1], "q"));
  if (head == "kfree" && (args.size() == 1 || args.size() == 2))
    return SetDescriptor::shifted_kfree(parse_int<std::int64_t>(args[0], "a"),
                                        args.size() == 2 ? parse_int<int>(args[1], "k") : 2);
  if (head == "kfreeb" && (args.size() == 3 || args.size() == 4)) {
    SetDescriptor b = SetDescriptor::shifted_kfree_type_b(parse_int<std::int64_t>(args[0], "a"),
                                                          parse_int<int>(args[1], "k"),
                                                          parse_int<std::uint64_t>(args[2], "bound"));
    if (args.size() == 3) return b;
    return SetDescriptor(truncate(std::get<TypeB>(b.variant()), parse_double(args[3], "z")));
  }
  if (head == "bohr" && args.size() == 2) {
    std::vector<ExactReal> coeffs;
    for (std::string_view c : split(args[0], ';')) coeffs.push_back(ExactReal::parse(c));
    return SetDescriptor::bohr(std::move(coeffs), parse_rational_value(args[1]));
  }
  fail(ErrorKind::kInvalidArgument, "unrecognized set spec '" + std::string(spec) + "'");
}

}  // namespace sievelab
