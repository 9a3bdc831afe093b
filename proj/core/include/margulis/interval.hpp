#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace margulis::certnum {

/// Closed real interval [lo, hi] with outward-rounded arithmetic.
///
/// Every operation returns an interval containing the exact image of its
/// arguments. Basic arithmetic uses error-free transformations (TwoSum and
/// FMA residuals) so a result is widened by one ulp only in the direction
/// where the rounded value may have crossed the true one; exact results stay
/// exact. Endpoints may be infinite (e.g. log of an interval touching 0) but
/// never NaN.
class Interval {
 public:
  constexpr Interval() = default;
  Interval(double v);  // NOLINT(google-explicit-constructor): point interval
  Interval(double lo, double hi);

  /// Smallest interval containing the rational n/d.
  static Interval ratio(std::int64_t n, std::int64_t d);
  /// Exact enclosure of a decimal literal such as "0.286" or "-1.5e-3".
  static Interval decimal(std::string_view text);
  static Interval hull(const Interval& a, const Interval& b);
  /// Enclosure of pi.
  static Interval pi();

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const;
  double width() const { return hi_ - lo_; }
  bool is_point() const { return lo_ == hi_; }

  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool overlaps(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  /// Every element is < x (resp. > x).
  bool certainly_lt(const Interval& x) const { return hi_ < x.lo_; }
  bool certainly_gt(const Interval& x) const { return lo_ > x.hi_; }
  bool certainly_le(const Interval& x) const { return hi_ <= x.lo_; }
  bool certainly_ge(const Interval& x) const { return lo_ >= x.hi_; }
  /// Strictly inside the open interval (a, b).
  bool inside_open(double a, double b) const { return a < lo_ && hi_ < b; }

  Interval operator-() const { return {-hi_, -lo_}; }
  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  friend bool operator==(const Interval&, const Interval&) = default;

  std::string to_string(int digits = 17) const;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const Interval& x);

Interval sqr(const Interval& x);
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval cosh(const Interval& x);
Interval sinh(const Interval& x);
Interval arccosh(const Interval& x);
Interval arccos(const Interval& x);
/// cos restricted to subsets of [0, pi].
Interval cos(const Interval& x);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
/// Intersection; throws DomainError when empty.
Interval intersect(const Interval& a, const Interval& b);

enum class Fn { Exp, Log, Cosh, Sinh, Arccosh, Arccos, Sqrt };

/// Dispatch by name: "exp", "log", "cosh", "sinh", "arccosh", "arccos", "sqrt".
Interval ival_fn(std::string_view name, const Interval& x);
Interval ival_fn(Fn fn, const Interval& x);

}  // namespace margulis::certnum
