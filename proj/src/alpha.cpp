#include "brjuno/alpha.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace brjuno {

namespace {

void check_digit_list(const std::vector<Integer>& digits, const char* what) {
  if (digits.empty())
    throw std::invalid_argument(std::string(what) + ": empty digit list");
  for (std::size_t i = 1; i < digits.size(); ++i)
    if (digits[i] < 1)
      throw std::invalid_argument(std::string(what) +
                                  ": partial quotient below 1 past a_0");
}

// Exact value of a finite continued fraction [a_0; a_1, ..., a_m].
Rational eval_finite_cf(const std::vector<Integer>& a) {
  Rational v(a.back());
  for (std::size_t i = a.size() - 1; i-- > 0;) v = Rational(a[i]) + 1 / v;
  return v;
}

// Purely periodic value [0; b_1, ..., b_m, b_1, ...] as an exact surd.
QuadraticSurd purely_periodic_value(const std::vector<Integer>& period) {
  // y = f_1(f_2(...f_m(y))) with f_k(t) = 1/(b_k + t) = (0*t + 1)/(1*t + b_k);
  // composing Moebius maps multiplies their matrices in the same order.
  Integer A = 1, B = 0, C = 0, D = 1;
  for (const Integer& b : period) {
    // (A,B;C,D) * (0,1;1,b)
    Integer A2 = B, B2 = A + B * b;
    Integer C2 = D, D2 = C + D * b;
    A = A2;
    B = B2;
    C = C2;
    D = D2;
  }
  // y = (A y + B)/(C y + D)  =>  C y^2 + (D - A) y - B = 0, take the positive root.
  Integer disc = (D - A) * (D - A) + 4 * B * C;
  return QuadraticSurd(A - D, 1, 2 * C, disc);
}

}  // namespace

Integer floor_rational(const Rational& r);

AlphaSpec AlphaSpec::rational_of(const Rational& r) {
  AlphaSpec s;
  s.kind = Kind::rational;
  s.rat = r;
  return s;
}

AlphaSpec AlphaSpec::periodic(std::vector<Integer> preperiod,
                              std::vector<Integer> period) {
  check_digit_list(preperiod, "periodic_cf preperiod");
  if (period.empty())
    throw std::invalid_argument("periodic_cf: empty period");
  for (const Integer& b : period)
    if (b < 1) throw std::invalid_argument("periodic_cf: period digit below 1");
  AlphaSpec s;
  s.kind = Kind::periodic_cf;
  s.preperiod = std::move(preperiod);
  s.period = std::move(period);
  return s;
}

AlphaSpec AlphaSpec::decimal(std::string literal, unsigned precision_bits) {
  if (precision_bits < 64)
    throw std::invalid_argument("decimal: precision below 64 bits");
  AlphaSpec s;
  s.kind = Kind::decimal;
  s.literal = std::move(literal);
  s.precision_bits = precision_bits;
  resolve_kernel(s);  // validates the literal
  return s;
}

AlphaSpec AlphaSpec::finite_digits(std::vector<Integer> digits, bool terminal) {
  check_digit_list(digits, "digits");
  AlphaSpec s;
  s.kind = Kind::digits;
  s.digit_list = std::move(digits);
  s.terminal = terminal;
  return s;
}

AlphaSpec AlphaSpec::golden() { return periodic({Integer(0)}, {Integer(1)}); }

std::string AlphaSpec::text() const {
  std::ostringstream o;
  switch (kind) {
    case Kind::rational:
      o << numerator(rat) << "/" << denominator(rat);
      break;
    case Kind::periodic_cf: {
      o << "pcf:[" << preperiod[0] << ";";
      for (std::size_t i = 1; i < preperiod.size(); ++i) {
        if (i > 1) o << ",";
        o << preperiod[i];
      }
      o << "|";
      for (std::size_t i = 0; i < period.size(); ++i) {
        if (i > 0) o << ",";
        o << period[i];
      }
      o << "]";
      break;
    }
    case Kind::decimal:
      o << "dec:" << literal << "@" << precision_bits;
      break;
    case Kind::digits: {
      o << "cf:[" << digit_list[0];
      if (digit_list.size() > 1 || !terminal) o << ";";
      for (std::size_t i = 1; i < digit_list.size(); ++i) {
        if (i > 1) o << ",";
        o << digit_list[i];
      }
      if (!terminal) {
        if (digit_list.size() > 1) o << ",";
        o << "...";
      }
      o << "]";
      break;
    }
  }
  return o.str();
}

// --- parser -----------------------------------------------------------------

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "' in " + what, i);
  }
  bool starts_with(const char* prefix) {
    skip_ws();
    std::size_t n = std::string(prefix).size();
    return s.compare(i, n, prefix) == 0;
  }
  Integer integer(const char* what) {
    skip_ws();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits_start)
      throw ParseError(std::string("expected integer in ") + what, start);
    return Integer(s.substr(start, i - start));
  }
  void done() {
    skip_ws();
    if (i != s.size()) throw ParseError("trailing characters", i);
  }
};

// digit list "d,d,d"; returns true if it ended with a ",..." marker.
bool parse_digit_tail(Cursor& c, std::vector<Integer>& out) {
  for (;;) {
    c.skip_ws();
    if (c.starts_with("...")) {
      c.i += 3;
      return true;
    }
    std::size_t at = c.i;
    Integer d = c.integer("digit list");
    if (d < 1) throw ParseError("partial quotient must be >= 1", at);
    out.push_back(d);
    if (!c.eat(',')) return false;
  }
}

}  // namespace

AlphaSpec parse_alpha(const std::string& text) {
  Cursor c{text};
  c.skip_ws();

  if (c.starts_with("cf:")) {
    c.i += 3;
    c.expect('[', "cf digit list");
    std::vector<Integer> digits;
    digits.push_back(c.integer("cf a_0"));
    bool open_ended = false;
    if (c.eat(';')) open_ended = parse_digit_tail(c, digits);
    c.expect(']', "cf digit list");
    c.done();
    return AlphaSpec::finite_digits(std::move(digits), !open_ended);
  }

  if (c.starts_with("pcf:")) {
    c.i += 4;
    c.expect('[', "periodic cf");
    std::vector<Integer> pre;
    pre.push_back(c.integer("pcf a_0"));
    c.expect(';', "periodic cf");
    c.skip_ws();
    if (c.i < text.size() && text[c.i] != '|') {
      if (parse_digit_tail(c, pre))
        throw ParseError("'...' not allowed in periodic cf", c.i);
    }
    c.expect('|', "periodic cf");
    std::vector<Integer> period;
    if (parse_digit_tail(c, period))
      throw ParseError("'...' not allowed in periodic cf", c.i);
    if (period.empty()) throw ParseError("empty period", c.i);
    c.expect(']', "periodic cf");
    c.done();
    return AlphaSpec::periodic(std::move(pre), std::move(period));
  }

  if (c.starts_with("dec:")) {
    c.i += 4;
    c.skip_ws();
    std::size_t start = c.i;
    if (c.i < text.size() && (text[c.i] == '+' || text[c.i] == '-')) ++c.i;
    std::size_t int_start = c.i;
    while (c.i < text.size() && std::isdigit(static_cast<unsigned char>(text[c.i]))) ++c.i;
    if (c.i == int_start) throw ParseError("expected decimal literal", start);
    if (c.i < text.size() && text[c.i] == '.') {
      ++c.i;
      while (c.i < text.size() && std::isdigit(static_cast<unsigned char>(text[c.i]))) ++c.i;
    }
    if (c.i < text.size() && (text[c.i] == 'e' || text[c.i] == 'E')) {
      ++c.i;
      if (c.i < text.size() && (text[c.i] == '+' || text[c.i] == '-')) ++c.i;
      std::size_t es = c.i;
      while (c.i < text.size() && std::isdigit(static_cast<unsigned char>(text[c.i]))) ++c.i;
      if (c.i == es) throw ParseError("expected exponent digits", es);
    }
    std::string literal = text.substr(start, c.i - start);
    c.expect('@', "decimal precision");
    std::size_t bits_at = c.i;
    Integer bits = c.integer("precision bits");
    if (bits < 64 || bits > 1 << 24)
      throw ParseError("precision bits out of range [64, 2^24]", bits_at);
    c.done();
    return AlphaSpec::decimal(std::move(literal), bits.convert_to<unsigned>());
  }

  // p/q or a bare integer
  Integer p = c.integer("rational");
  if (c.eat('/')) {
    std::size_t at = c.i;
    Integer q = c.integer("rational denominator");
    if (q <= 0) throw ParseError("denominator must be positive", at);
    c.done();
    return AlphaSpec::rational_of(Rational(p, q));
  }
  c.done();
  return AlphaSpec::rational_of(Rational(p));
}

// --- kernel -----------------------------------------------------------------

Integer floor_rational(const Rational& r) {
  Integer q, rem;
  divide_qr(numerator(r), denominator(r), q, rem);
  if (rem != 0 && numerator(r).sign() < 0) q -= 1;
  return q;
}

namespace {

Rational parse_decimal_literal(const std::string& lit) {
  // [+-] digits [. digits] [ (e|E) [+-] digits ]
  // Validated here (factory and parser both funnel in).
  std::size_t i = 0;
  bool neg = false;
  if (i < lit.size() && (lit[i] == '+' || lit[i] == '-')) {
    neg = lit[i] == '-';
    ++i;
  }
  std::size_t start = i;
  while (i < lit.size() && std::isdigit(static_cast<unsigned char>(lit[i]))) ++i;
  if (i == start) throw std::invalid_argument("decimal literal: no digits");
  Integer int_part(lit.substr(start, i - start));
  Rational v(int_part);
  if (i < lit.size() && lit[i] == '.') {
    ++i;
    std::size_t fs = i;
    while (i < lit.size() && std::isdigit(static_cast<unsigned char>(lit[i]))) ++i;
    if (i > fs) {
      Integer frac(lit.substr(fs, i - fs));
      Integer den = pow(Integer(10), static_cast<unsigned>(i - fs));
      v += Rational(frac, den);
    }
  }
  if (i < lit.size() && (lit[i] == 'e' || lit[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < lit.size() && (lit[i] == '+' || lit[i] == '-')) {
      eneg = lit[i] == '-';
      ++i;
    }
    std::size_t es = i;
    while (i < lit.size() && std::isdigit(static_cast<unsigned char>(lit[i]))) ++i;
    if (i == es) throw std::invalid_argument("decimal literal: empty exponent");
    if (i - es > 4) throw std::invalid_argument("decimal literal: exponent too large");
    unsigned e = Integer(lit.substr(es, i - es)).convert_to<unsigned>();
    Integer scale = pow(Integer(10), e);
    if (eneg) v /= scale;
    else v *= scale;
  }
  if (i != lit.size()) throw std::invalid_argument("decimal literal: bad character");
  return neg ? -v : v;
}

}  // namespace

Kernel resolve_kernel(const AlphaSpec& x) {
  switch (x.kind) {
    case AlphaSpec::Kind::rational:
      return x.rat;
    case AlphaSpec::Kind::digits:
      if (x.terminal) return eval_finite_cf(x.digit_list);
      else {
        // Value is [a_0; ..., a_m + t] with the unknown continuation t in (0,1];
        // the two endpoint evaluations bracket it.
        Rational v0 = eval_finite_cf(x.digit_list);
        std::vector<Integer> bumped = x.digit_list;
        bumped.back() += 1;
        Rational v1 = eval_finite_cf(bumped);
        if (v0 < v1) return RatInterval{v0, v1};
        return RatInterval{v1, v0};
      }
    case AlphaSpec::Kind::periodic_cf: {
      QuadraticSurd t = purely_periodic_value(x.period);
      // Fold the preperiod from the inside out:
      // x = a_0 + 1/(p_1 + 1/(... + 1/(p_r + t)))
      for (std::size_t k = x.preperiod.size(); k-- > 1;)
        t = t.add_integer(x.preperiod[k]).reciprocal();
      return t.add_integer(x.preperiod[0]);
    }
    case AlphaSpec::Kind::decimal: {
      Rational v = parse_decimal_literal(x.literal);
      Rational eps(Integer(1), pow(Integer(2), x.precision_bits));
      return RatInterval{v - eps, v + eps};
    }
  }
  throw std::logic_error("resolve_kernel: bad kind");
}

bool kernel_is_rational(const Kernel& k) {
  return std::holds_alternative<Rational>(k);
}

Rational kernel_rational(const Kernel& k) { return std::get<Rational>(k); }

Real kernel_to_real(const Kernel& k, mpfr_prec_t prec) {
  if (auto* r = std::get_if<Rational>(&k)) return Real::of(*r, prec);
  if (auto* s = std::get_if<QuadraticSurd>(&k)) return s->to_real(prec);
  return Real::of(std::get<RatInterval>(k).mid(), prec);
}

Real kernel_frac_mul(const Kernel& k, const Integer& n, mpfr_prec_t prec) {
  if (auto* r = std::get_if<Rational>(&k)) {
    Rational v = *r * n;
    return Real::of(v - floor_rational(v), prec);
  }
  if (auto* s = std::get_if<QuadraticSurd>(&k))
    return s->mul_integer(n).frac().to_real(prec);
  Rational v = std::get<RatInterval>(k).mid() * n;
  return Real::of(v - floor_rational(v), prec);
}

Real kernel_sub_rational(const Kernel& k, const Rational& r, mpfr_prec_t prec) {
  if (auto* v = std::get_if<Rational>(&k)) return Real::of(*v - r, prec);
  if (auto* s = std::get_if<QuadraticSurd>(&k))
    return s->add_rational(-r).to_real(prec);
  return Real::of(std::get<RatInterval>(k).mid() - r, prec);
}

int kernel_cmp_rational(const Kernel& k, const Rational& r) {
  if (auto* v = std::get_if<Rational>(&k)) return v->compare(r);
  if (auto* s = std::get_if<QuadraticSurd>(&k)) return s->cmp_rational(r);
  const auto& iv = std::get<RatInterval>(k);
  if (iv.lo >= r) return 1;
  if (iv.hi <= r) return -1;
  return 0;
}

}  // namespace brjuno
