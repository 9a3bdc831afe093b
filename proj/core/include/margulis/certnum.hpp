#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "margulis/interval.hpp"

namespace margulis::certnum {

enum class Verdict { Verified, Refuted, Undecided, ErratumSuspected };

std::string to_string(Verdict v);

/// Polar angle of the spherical cap of normalized area a: arccos(1 - 2a).
Interval cap_angle(const Interval& a);

/// Upper bound a / ((c - s)(c - s + 2as)), c = cosh nu, s = sinh nu, for the
/// integral of the squared conformal factor over the cap of area a. Both
/// closed forms are evaluated and must overlap; the intersection is returned.
Interval cap_integral_bound(const Interval& nu, const Interval& a);

/// The two closed forms separately (rational form, cap form).
struct CapIntegralForms {
  Interval rational;
  Interval via_cap_angle;
};
CapIntegralForms cap_integral_forms(const Interval& nu, const Interval& a);

/// Displacement lower bound (1/2) log(b(1-a) / (a(1-b))); may be negative.
Interval lemma_bound(const Interval& a, const Interval& b);

/// g(D) = (sqrt(8D + 1) - 3) / (D - 1), evaluated as 8 / (sqrt(8D + 1) + 3).
Interval g_func(const Interval& d);

/// alpha = g(Dbar) / 2; checks that (1 - alpha)(2 - alpha) / alpha^2 meets Dbar.
Interval alpha_from_dbar(const Interval& dbar);

struct NamedVerdict {
  std::string name;
  Verdict verdict;
  Interval lhs;
  Interval rhs;
};

struct DoubleTroubleInput {
  Interval alpha, beta, alpha_plus, alpha_minus, beta_plus, beta_minus, dx, dy;
};

/// Checks alpha + beta = 1, the two mass budgets and the four displacement
/// inequalities. Never throws on failed inequalities; verdicts carry them.
std::vector<NamedVerdict> double_trouble_check(const DoubleTroubleInput& in);
bool all_verified(const std::vector<NamedVerdict>& checks);

struct LongSquaresResult {
  Verdict verdict;  // Verified when g(Dx) + g(Dy) <= 2 is certified
  Interval sum;
  Interval slack;   // 2 - sum
};

LongSquaresResult long_squares_check(const Interval& dx, const Interval& dy);

struct Rational {
  std::int64_t num;
  std::int64_t den = 1;
};

/// Coefficients ordered from the leading term down to the constant.
Interval poly_eval(const std::vector<Rational>& coeffs, const Interval& t);

/// Bisection with certified sign evaluation; returns an interval of width at
/// most `width` containing a root. Throws NoSignChange.
Interval poly_root(const std::vector<Rational>& coeffs, const Interval& bracket, double width);

struct ConstantCheck {
  std::string id;        // "a1", "b2", ...
  std::string claim;     // the printed value or inequality being checked
  Interval computed;
  Verdict verdict;
  double slack;          // certified margin; negative when the claim fails
  std::string note;
};

struct ConstantsReport {
  std::vector<ConstantCheck> checks;
  /// No check Refuted or Undecided (ErratumSuspected does not count).
  bool all_verified() const;
  std::string to_text() const;
  std::string to_json() const;
};

inline constexpr double kConstantsWidth = 1e-6;

ConstantsReport verify_constants();

}  // namespace margulis::certnum
