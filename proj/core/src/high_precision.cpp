#include "sievelab/high_precision.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "sievelab/error.hpp"

namespace sievelab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_perfect_square(std::uint64_t r) {
  mpz_class z(static_cast<unsigned long>(r));
  return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

mpq_class parse_decimal(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  std::size_t frac_digits = 0;
  bool seen_dot = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_dot) fail(ErrorKind::kInvalidArgument, "malformed decimal");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      fail(ErrorKind::kInvalidArgument, "malformed decimal literal");
    }
  }
  if (digits.empty()) fail(ErrorKind::kInvalidArgument, "empty decimal literal");
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
  mpq_class q(num, den);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

mpq_class parse_rational(std::string_view s) {
  s = trim(s);
  if (s.empty()) fail(ErrorKind::kInvalidArgument, "empty rational");
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (s.find('.') != std::string_view::npos) return parse_decimal(s);
    mpq_class q;
    if (q.set_str(std::string(s), 10) != 0) fail(ErrorKind::kInvalidArgument, "bad integer '" + std::string(s) + "'");
    return q;
  }
  mpq_class q;
  if (q.set_str(std::string(trim(s.substr(0, slash))) + "/" +
                    std::string(trim(s.substr(slash + 1))),
                10) != 0) {
    fail(ErrorKind::kInvalidArgument, "bad rational '" + std::string(s) + "'");
  }
  if (q.get_den() == 0) fail(ErrorKind::kInvalidArgument, "zero denominator");
  q.canonicalize();
  return q;
}

void append_rational(std::ostringstream& os, const mpq_class& q) { os << q.get_str(); }

}  // namespace

ExactReal ExactReal::rational(mpq_class value) {
  ExactReal x;
  value.canonicalize();
  x.offset_ = std::move(value);
  return x;
}

ExactReal ExactReal::quadratic(mpq_class offset, mpq_class scale, std::uint64_t radicand) {
  ExactReal x;
  offset.canonicalize();
  scale.canonicalize();
  x.offset_ = std::move(offset);
  x.scale_ = std::move(scale);
  x.radicand_ = radicand;
  if (radicand == 0 || x.scale_ == 0) {
    x.scale_ = 0;
    x.radicand_ = 0;
  } else if (is_perfect_square(radicand)) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), mpz_class(static_cast<unsigned long>(radicand)).get_mpz_t());
    x.offset_ += x.scale_ * mpq_class(root);
    x.scale_ = 0;
    x.radicand_ = 0;
  }
  return x;
}

ExactReal ExactReal::decimal(std::string_view text, bool declared_irrational) {
  ExactReal x = rational(parse_decimal(trim(text)));
  x.declared_irrational_ = declared_irrational;
  x.text_ = std::string(trim(text));
  return x;
}

ExactReal ExactReal::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) fail(ErrorKind::kInvalidArgument, "empty real constant");
  if (s == "golden" || s == "phi") return quadratic(mpq_class(1, 2), mpq_class(1, 2), 5);
  if (s.find('.') != std::string_view::npos && s.find("sqrt") == std::string_view::npos &&
      s.find('/') == std::string_view::npos) {
    const bool rational_marker = s.back() == '!';
    if (rational_marker) s.remove_suffix(1);
    return decimal(s, !rational_marker);
  }

  // Sum of terms: [rational] ['*'] ['sqrt(' int ')'].
  mpq_class offset = 0, scale = 0;
  std::uint64_t radicand = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-' || std::isspace(static_cast<unsigned char>(s[pos])))) {
      if (s[pos] == '-') sign = -sign;
      ++pos;
    }
    std::size_t end = pos;
    int depth = 0;
    while (end < s.size()) {
      const char c = s[end];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && end > pos && (c == '+' || c == '-')) break;
      ++end;
    }
    std::string_view term = trim(s.substr(pos, end - pos));
    pos = end;
    if (term.empty()) fail(ErrorKind::kInvalidArgument, "malformed real constant '" + std::string(s) + "'");
    const auto sq = term.find("sqrt(");
    if (sq == std::string_view::npos) {
      offset += sign * parse_rational(term);
      continue;
    }
    std::string_view coef = trim(term.substr(0, sq));
    if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
    mpq_class c = coef.empty() ? mpq_class(1) : parse_rational(coef);
    const auto close = term.find(')', sq);
    if (close == std::string_view::npos) fail(ErrorKind::kInvalidArgument, "unclosed sqrt(");
    std::string_view rest = trim(term.substr(close + 1));
    if (!rest.empty()) {
      // Allow a trailing "/den" as in sqrt(5)/2.
      if (rest.front() != '/') fail(ErrorKind::kInvalidArgument, "unexpected text after sqrt()");
      c /= parse_rational(rest.substr(1));
    }
    const std::string inner(trim(term.substr(sq + 5, close - sq - 5)));
    unsigned long long r = 0;
    const auto [rend, rec] = std::from_chars(inner.data(), inner.data() + inner.size(), r);
    if (rec != std::errc() || rend != inner.data() + inner.size())
      fail(ErrorKind::kInvalidArgument, "sqrt() needs a positive integer, got '" + inner + "'");
    if (radicand != 0 && r != radicand) {
      fail(ErrorKind::kInvalidArgument, "only one distinct radicand per constant is supported");
    }
    radicand = r;
    scale += sign * c;
  }
  return quadratic(offset, scale, radicand);
}

bool ExactReal::irrational() const {
  if (declared_irrational_) return true;
  return scale_ != 0 && radicand_ != 0;
}

std::string ExactReal::to_string() const {
  if (!text_.empty()) return declared_irrational_ ? text_ : text_ + "!";
  std::ostringstream os;
  const bool has_sqrt = scale_ != 0;
  if (offset_ != 0 || !has_sqrt) append_rational(os, offset_);
  if (has_sqrt) {
    if (offset_ != 0) os << (scale_ < 0 ? "-" : "+");
    else if (scale_ < 0) os << "-";
    mpq_class a = abs(scale_);
    if (a != 1) {
      append_rational(os, a);
      os << "*";
    }
    os << "sqrt(" << radicand_ << ")";
  }
  return os.str();
}

long double ExactReal::to_long_double() const {
  Interval iv(192);
  iv.set(*this);
  return iv.mid_long_double();
}

long double ExactReal::frac_long_double() const {
  Interval iv(256);
  iv.set(*this);
  mpz_class f;
  if (!iv.common_floor(f)) {
    mpfr_floor(iv.hi(), iv.lo());
    mpfr_get_z(f.get_mpz_t(), iv.hi(), MPFR_RNDD);
    iv.set(*this);
  }
  iv.sub_z(f);
  long double v = iv.mid_long_double();
  if (v < 0) v = 0;
  if (v >= 1) v = std::nextafter(1.0L, 0.0L);
  return v;
}

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    if (prec_ != other.prec_) {
      prec_ = other.prec_;
      mpfr_set_prec(lo_, prec_);
      mpfr_set_prec(hi_, prec_);
    }
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void Interval::set(const ExactReal& x) {
  mpfr_set_q(lo_, x.offset().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, x.offset().get_mpq_t(), MPFR_RNDU);
  if (x.scale() == 0) return;
  mpfr_t slo, shi;
  mpfr_init2(slo, prec_);
  mpfr_init2(shi, prec_);
  mpfr_sqrt_ui(slo, x.radicand(), MPFR_RNDD);
  mpfr_sqrt_ui(shi, x.radicand(), MPFR_RNDU);
  if (x.scale() > 0) {
    mpfr_mul_q(slo, slo, x.scale().get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(shi, shi, x.scale().get_mpq_t(), MPFR_RNDU);
    mpfr_add(lo_, lo_, slo, MPFR_RNDD);
    mpfr_add(hi_, hi_, shi, MPFR_RNDU);
  } else {
    // scale < 0: lower end uses the larger sqrt bound.
    mpfr_mul_q(shi, shi, x.scale().get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(slo, slo, x.scale().get_mpq_t(), MPFR_RNDU);
    mpfr_add(lo_, lo_, shi, MPFR_RNDD);
    mpfr_add(hi_, hi_, slo, MPFR_RNDU);
  }
  mpfr_clear(slo);
  mpfr_clear(shi);
}

void Interval::set_z(const mpz_class& z) {
  mpfr_set_z(lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, z.get_mpz_t(), MPFR_RNDU);
}

void Interval::add(const Interval& other) {
  mpfr_add(lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, other.hi_, MPFR_RNDU);
}

void Interval::sub_z(const mpz_class& z) {
  mpfr_sub_z(lo_, lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_sub_z(hi_, hi_, z.get_mpz_t(), MPFR_RNDU);
}

void Interval::mul_z(const mpz_class& z) {
  if (z >= 0) {
    mpfr_mul_z(lo_, lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi_, hi_, z.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_t t;
    mpfr_init2(t, prec_);
    mpfr_mul_z(t, hi_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi_, lo_, z.get_mpz_t(), MPFR_RNDU);
    mpfr_swap(lo_, t);
    mpfr_clear(t);
  }
}

void Interval::invert() {
  if (mpfr_sgn(lo_) <= 0) fail(ErrorKind::kPrecisionExhausted, "interval reciprocal straddles zero");
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_ui_div(t, 1, hi_, MPFR_RNDD);
  mpfr_ui_div(hi_, 1, lo_, MPFR_RNDU);
  mpfr_swap(lo_, t);
  mpfr_clear(t);
}

long double Interval::mid_long_double() const {
  mpfr_t m;
  mpfr_init2(m, prec_ + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  const long double v = mpfr_get_ld(m, MPFR_RNDN);
  mpfr_clear(m);
  return v;
}

bool Interval::common_floor(mpz_class& out) const {
  mpz_class a, b;
  mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDD);
  mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDD);
  if (a != b) return false;
  out = a;
  return true;
}

Interval enclose_polynomial(std::span<const ExactReal> coeffs, const mpz_class& n,
                            mpfr_prec_t prec) {
  Interval acc(prec);
  Interval term(prec);
  mpz_class power = 1;
  for (const ExactReal& c : coeffs) {
    if (!c.is_zero()) {
      term.set(c);
      term.mul_z(power);
      acc.add(term);
    }
    power *= n;
  }
  return acc;
}

Decision frac_in_unit_prefix(const Interval& x, const mpq_class& d) {
  mpz_class f;
  if (!x.common_floor(f)) return Decision::kUndecided;
  Interval fr(x);
  fr.sub_z(f);
  if (mpfr_cmp_q(fr.hi(), d.get_mpq_t()) <= 0) return Decision::kTrue;
  if (mpfr_cmp_q(fr.lo(), d.get_mpq_t()) > 0) return Decision::kFalse;
  return Decision::kUndecided;
}

Decision dist_to_int_le(const Interval& x, const mpq_class& threshold) {
  mpz_class f;
  const mpq_class upper = 1 - threshold;
  if (x.common_floor(f)) {
    Interval fr(x);
    fr.sub_z(f);
    const bool hi_le_t = mpfr_cmp_q(fr.hi(), threshold.get_mpq_t()) <= 0;
    const bool lo_ge_1mt = mpfr_cmp_q(fr.lo(), upper.get_mpq_t()) >= 0;
    if (hi_le_t || lo_ge_1mt) return Decision::kTrue;
    const bool lo_gt_t = mpfr_cmp_q(fr.lo(), threshold.get_mpq_t()) > 0;
    const bool hi_lt_1mt = mpfr_cmp_q(fr.hi(), upper.get_mpq_t()) < 0;
    if (lo_gt_t && hi_lt_1mt) return Decision::kFalse;
    return Decision::kUndecided;
  }
  // Straddles the integer k = floor(hi).
  mpz_class k;
  mpfr_get_z(k.get_mpz_t(), x.hi(), MPFR_RNDD);
  Interval shifted(x);
  shifted.sub_z(k);
  const mpq_class neg = -threshold;
  if (mpfr_cmp_q(shifted.lo(), neg.get_mpq_t()) >= 0 &&
      mpfr_cmp_q(shifted.hi(), threshold.get_mpq_t()) <= 0) {
    return Decision::kTrue;
  }
  return Decision::kUndecided;
}

long double dist_to_int_estimate(const Interval& x) {
  // Reduce at full precision first so the long double stays small.
  Interval r(x);
  mpz_class k;
  mpfr_t m;
  mpfr_init2(m, x.precision());
  mpfr_add(m, x.lo(), x.hi(), MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  mpfr_get_z(k.get_mpz_t(), m, MPFR_RNDN);
  mpfr_clear(m);
  r.sub_z(k);
  return std::fabs(r.mid_long_double());
}

}  // namespace sievelab
