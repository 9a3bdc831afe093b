#include "margulis/interval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "margulis/errors.hpp"

namespace margulis::certnum {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();
// Below this magnitude FMA residuals may be inexact (subnormal range).
constexpr double kTiny = 1e-290;

double next_down(double v) { return std::nextafter(v, -kInf); }
double next_up(double v) { return std::nextafter(v, kInf); }

// libm transcendental results are within 2 ulps on the supported platforms.
double down2(double v) { return next_down(next_down(v)); }
double up2(double v) { return next_up(next_up(v)); }

double overflow_down(double s) { return s > 0 ? kMax : -kInf; }
double overflow_up(double s) { return s < 0 ? -kMax : kInf; }

// Rounded sum plus the sign of its rounding error (TwoSum).
double add_down(double x, double y) {
  const double s = x + y;
  if (!std::isfinite(s)) {
    return (std::isfinite(x) && std::isfinite(y)) ? overflow_down(s) : s;
  }
  const double bp = s - x;
  const double err = (x - (s - bp)) + (y - bp);
  return err < 0 ? next_down(s) : s;
}

double add_up(double x, double y) {
  const double s = x + y;
  if (!std::isfinite(s)) {
    return (std::isfinite(x) && std::isfinite(y)) ? overflow_up(s) : s;
  }
  const double bp = s - x;
  const double err = (x - (s - bp)) + (y - bp);
  return err > 0 ? next_up(s) : s;
}

double mul_down(double x, double y) {
  if (x == 0.0 || y == 0.0) return 0.0;
  const double p = x * y;
  if (!std::isfinite(p)) {
    return (std::isfinite(x) && std::isfinite(y)) ? overflow_down(p) : p;
  }
  if (std::abs(p) < kTiny) return next_down(p);
  const double err = std::fma(x, y, -p);
  return err < 0 ? next_down(p) : p;
}

double mul_up(double x, double y) {
  if (x == 0.0 || y == 0.0) return 0.0;
  const double p = x * y;
  if (!std::isfinite(p)) {
    return (std::isfinite(x) && std::isfinite(y)) ? overflow_up(p) : p;
  }
  if (std::abs(p) < kTiny) return next_up(p);
  const double err = std::fma(x, y, -p);
  return err > 0 ? next_up(p) : p;
}

// Sign of (true quotient - rounded quotient).
int div_error_sign(double x, double y, double q) {
  if (!std::isfinite(q) || !std::isfinite(x)) return 0;
  if (std::abs(q) < kTiny) return 2;  // unknown: widen both ways
  const double r = std::fma(-q, y, x);
  if (r == 0.0) return 0;
  return ((r > 0) == (y > 0)) ? 1 : -1;
}

double div_down(double x, double y) {
  if (x == 0.0) return 0.0;
  const double q = x / y;
  if (!std::isfinite(q) && std::isfinite(x)) return overflow_down(q);
  const int s = div_error_sign(x, y, q);
  return (s < 0 || s == 2) ? next_down(q) : q;
}

double div_up(double x, double y) {
  if (x == 0.0) return 0.0;
  const double q = x / y;
  if (!std::isfinite(q) && std::isfinite(x)) return overflow_up(q);
  const int s = div_error_sign(x, y, q);
  return (s > 0 || s == 2) ? next_up(q) : q;
}

double sqrt_down(double v) {
  const double s = std::sqrt(v);
  if (!std::isfinite(s) || s == 0.0) return s;
  if (v < kTiny) return next_down(s);
  return std::fma(-s, s, v) < 0 ? next_down(s) : s;
}

double sqrt_up(double v) {
  const double s = std::sqrt(v);
  if (!std::isfinite(s) || s == 0.0) return s;
  if (v < kTiny) return next_up(s);
  return std::fma(-s, s, v) > 0 ? next_up(s) : s;
}

std::string fmt(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

Interval exact_integer(std::int64_t n) {
  constexpr std::int64_t kExact = std::int64_t{1} << 53;
  const double d = static_cast<double>(n);
  if (n >= -kExact && n <= kExact) return Interval(d);
  return {next_down(d), next_up(d)};
}

}  // namespace

Interval::Interval(double v) : lo_(v), hi_(v) {
  if (std::isnan(v)) throw DomainError("interval endpoint is NaN");
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi)) throw DomainError("interval endpoint is NaN");
  if (lo > hi) throw DomainError("interval with lo > hi: [" + fmt(lo, 17) + ", " + fmt(hi, 17) + "]");
}

Interval Interval::ratio(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("ratio with zero denominator");
  return exact_integer(n) / exact_integer(d);
}

Interval Interval::decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::int64_t mantissa = 0;
  int scale = 0;  // value = mantissa * 10^scale
  int digits = 0;
  bool seen_point = false;
  bool inexact_mantissa = false;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '.') {
      if (seen_point) break;
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') break;
    if (digits < 18) {
      mantissa = mantissa * 10 + (c - '0');
      if (mantissa != 0) ++digits;
      if (seen_point) --scale;
    } else {
      if (c != '0') inexact_mantissa = true;
      if (!seen_point) ++scale;
    }
  }
  if (i == 0 || (seen_point && i == 1 && s.size() == 1)) {
    throw DomainError("not a decimal number: " + std::string(text));
  }
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw DomainError("not a decimal number: " + std::string(text));
    int exp10 = 0;
    std::string_view rest = s.substr(i + 1);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exp10);
    if (ec != std::errc{} || ptr != rest.data() + rest.size()) {
      throw DomainError("bad exponent in decimal: " + std::string(text));
    }
    scale += exp10;
  }
  Interval m = exact_integer(mantissa);
  if (inexact_mantissa) m = Interval(m.lo(), next_up(m.hi() + 1.0));
  Interval power(1.0);
  const Interval ten(10.0);
  for (int k = 0; k < std::abs(scale); ++k) power *= ten;
  Interval v = scale >= 0 ? m * power : m / power;
  return negative ? -v : v;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
}

Interval Interval::pi() {
  // M_PI is the double nearest pi and lies below it.
  constexpr double kPiLow = 3.141592653589793115997963468544185161590576171875;
  return {kPiLow, next_up(kPiLow)};
}

double Interval::mid() const {
  if (!std::isfinite(lo_) || !std::isfinite(hi_)) return lo_ + hi_;
  return lo_ / 2 + hi_ / 2;
}

Interval& Interval::operator+=(const Interval& o) {
  *this = Interval(add_down(lo_, o.lo_), add_up(hi_, o.hi_));
  return *this;
}

Interval& Interval::operator-=(const Interval& o) { return *this += -o; }

Interval& Interval::operator*=(const Interval& o) {
  const double a[4] = {mul_down(lo_, o.lo_), mul_down(lo_, o.hi_), mul_down(hi_, o.lo_),
                       mul_down(hi_, o.hi_)};
  const double b[4] = {mul_up(lo_, o.lo_), mul_up(lo_, o.hi_), mul_up(hi_, o.lo_),
                       mul_up(hi_, o.hi_)};
  *this = Interval(*std::min_element(a, a + 4), *std::max_element(b, b + 4));
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (o.contains(0.0)) {
    throw DomainError("division by an interval containing 0: " + o.to_string());
  }
  const double a[4] = {div_down(lo_, o.lo_), div_down(lo_, o.hi_), div_down(hi_, o.lo_),
                       div_down(hi_, o.hi_)};
  const double b[4] = {div_up(lo_, o.lo_), div_up(lo_, o.hi_), div_up(hi_, o.lo_),
                       div_up(hi_, o.hi_)};
  *this = Interval(*std::min_element(a, a + 4), *std::max_element(b, b + 4));
  return *this;
}

std::string Interval::to_string(int digits) const {
  return "[" + fmt(lo_, digits) + ", " + fmt(hi_, digits) + "]";
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << x.to_string(); }

Interval sqr(const Interval& x) {
  if (x.lo() >= 0) return {mul_down(x.lo(), x.lo()), mul_up(x.hi(), x.hi())};
  if (x.hi() <= 0) return {mul_down(x.hi(), x.hi()), mul_up(x.lo(), x.lo())};
  const double m = std::max(-x.lo(), x.hi());
  return {0.0, mul_up(m, m)};
}

Interval sqrt(const Interval& x) {
  if (x.lo() < 0) throw DomainError("sqrt of interval with negative endpoint " + x.to_string());
  return {sqrt_down(x.lo()), sqrt_up(x.hi())};
}

Interval exp(const Interval& x) {
  auto lo_of = [](double v) {
    if (v == 0.0) return 1.0;
    return std::max(0.0, down2(std::exp(v)));
  };
  auto hi_of = [](double v) {
    if (v == 0.0) return 1.0;
    const double e = std::exp(v);
    return e == 0.0 ? std::numeric_limits<double>::denorm_min() : up2(e);
  };
  return {lo_of(x.lo()), hi_of(x.hi())};
}

Interval log(const Interval& x) {
  if (x.lo() < 0) throw DomainError("log of interval with negative endpoint " + x.to_string());
  auto lo_of = [](double v) {
    if (v == 1.0) return 0.0;
    if (v == 0.0) return -kInf;
    return down2(std::log(v));
  };
  auto hi_of = [](double v) {
    if (v == 1.0) return 0.0;
    if (v == 0.0) return -kMax;  // log(0) only as an upper endpoint of [0,0]
    return up2(std::log(v));
  };
  if (x.hi() == 0.0) throw DomainError("log of [0, 0]");
  return {lo_of(x.lo()), hi_of(x.hi())};
}

Interval cosh(const Interval& x) {
  auto lo_of = [](double v) { return v == 0.0 ? 1.0 : std::max(1.0, down2(std::cosh(v))); };
  auto hi_of = [](double v) { return v == 0.0 ? 1.0 : up2(std::cosh(v)); };
  if (x.lo() >= 0) return {lo_of(x.lo()), hi_of(x.hi())};
  if (x.hi() <= 0) return {lo_of(x.hi()), hi_of(x.lo())};
  return {1.0, std::max(hi_of(x.lo()), hi_of(x.hi()))};
}

Interval sinh(const Interval& x) {
  auto lo_of = [](double v) { return v == 0.0 ? 0.0 : down2(std::sinh(v)); };
  auto hi_of = [](double v) { return v == 0.0 ? 0.0 : up2(std::sinh(v)); };
  return {lo_of(x.lo()), hi_of(x.hi())};
}

Interval arccosh(const Interval& x) {
  if (x.lo() < 1.0) throw DomainError("arccosh of interval below 1: " + x.to_string());
  auto lo_of = [](double v) { return v == 1.0 ? 0.0 : std::max(0.0, down2(std::acosh(v))); };
  auto hi_of = [](double v) { return v == 1.0 ? 0.0 : up2(std::acosh(v)); };
  return {lo_of(x.lo()), hi_of(x.hi())};
}

Interval arccos(const Interval& x) {
  if (x.lo() < -1.0 || x.hi() > 1.0) {
    throw DomainError("arccos of interval outside [-1, 1]: " + x.to_string());
  }
  const double pi_hi = Interval::pi().hi();
  auto lo_of = [](double v) { return v == 1.0 ? 0.0 : std::max(0.0, down2(std::acos(v))); };
  auto hi_of = [&](double v) { return v == 1.0 ? 0.0 : std::min(pi_hi, up2(std::acos(v))); };
  return {lo_of(x.hi()), hi_of(x.lo())};
}

Interval cos(const Interval& x) {
  if (x.lo() < 0.0 || x.hi() > Interval::pi().hi()) {
    throw DomainError("cos is only supported on subsets of [0, pi]: " + x.to_string());
  }
  auto lo_of = [](double v) { return std::max(-1.0, down2(std::cos(v))); };
  auto hi_of = [](double v) { return v == 0.0 ? 1.0 : std::min(1.0, up2(std::cos(v))); };
  return {lo_of(x.hi()), hi_of(x.lo())};
}

Interval max(const Interval& a, const Interval& b) {
  return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Interval min(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

Interval intersect(const Interval& a, const Interval& b) {
  if (!a.overlaps(b)) {
    throw DomainError("empty intersection of " + a.to_string() + " and " + b.to_string());
  }
  return {std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

Interval ival_fn(Fn fn, const Interval& x) {
  switch (fn) {
    case Fn::Exp: return exp(x);
    case Fn::Log: return log(x);
    case Fn::Cosh: return cosh(x);
    case Fn::Sinh: return sinh(x);
    case Fn::Arccosh: return arccosh(x);
    case Fn::Arccos: return arccos(x);
    case Fn::Sqrt: return sqrt(x);
  }
  throw DomainError("unknown interval function");
}

Interval ival_fn(std::string_view name, const Interval& x) {
  if (name == "exp") return exp(x);
  if (name == "log") return log(x);
  if (name == "cosh") return cosh(x);
  if (name == "sinh") return sinh(x);
  if (name == "arccosh") return arccosh(x);
  if (name == "arccos") return arccos(x);
  if (name == "sqrt") return sqrt(x);
  throw DomainError("unknown interval function '" + std::string(name) + "'");
}

}  // namespace margulis::certnum
