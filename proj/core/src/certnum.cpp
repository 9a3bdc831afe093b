#include "margulis/certnum.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "margulis/errors.hpp"
#include "margulis/hyp3.hpp"

namespace margulis::certnum {
namespace {

constexpr int kMaxBisections = 60;

Verdict le_verdict(const Interval& lhs, const Interval& rhs) {
  if (lhs.certainly_le(rhs)) return Verdict::Verified;
  if (lhs.certainly_gt(rhs)) return Verdict::Refuted;
  return Verdict::Undecided;
}

// num / den for den >= 0 that may touch 0; unbounded above in that case.
Interval nonneg_ratio(const Interval& num, const Interval& den) {
  if (den.lo() > 0.0) return num / den;
  if (num.lo() > 0.0) {
    const double lo = den.hi() > 0.0 ? (Interval(num.lo()) / Interval(den.hi())).lo() : 0.0;
    return {den.hi() > 0.0 ? lo : std::numeric_limits<double>::max(),
            std::numeric_limits<double>::infinity()};
  }
  return {0.0, std::numeric_limits<double>::infinity()};
}

int sign_of(const Interval& v) {
  if (v.lo() > 0.0) return 1;
  if (v.hi() < 0.0) return -1;
  if (v.lo() == 0.0 && v.hi() == 0.0) return 0;
  return 2;  // undetermined
}

std::string fmt(double v, int digits = 10) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

Interval dec(const char* s) { return Interval::decimal(s); }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "Verified";
    case Verdict::Refuted: return "Refuted";
    case Verdict::Undecided: return "Undecided";
    case Verdict::ErratumSuspected: return "ErratumSuspected";
  }
  return "?";
}

Interval cap_angle(const Interval& a) {
  if (a.lo() < 0.0 || a.hi() > 1.0) throw DomainError("cap_angle needs a in [0, 1], got " + a.to_string());
  return arccos(Interval(1.0) - Interval(2.0) * a);
}

CapIntegralForms cap_integral_forms(const Interval& nu, const Interval& a) {
  if (nu.contains(0.0)) throw DegenerateNu("sinh(nu) contains 0 for nu = " + nu.to_string());
  if (nu.lo() < 0.0) throw DomainError("cap_integral_bound needs nu > 0, got " + nu.to_string());
  if (!(a.lo() > 0.0) || a.hi() > 1.0) {
    throw DomainError("cap_integral_bound needs a in (0, 1], got " + a.to_string());
  }
  const Interval c = cosh(nu);
  const Interval s = sinh(nu);
  const Interval c_minus_s = exp(-nu);  // cosh - sinh, without cancellation
  const Interval two(2.0);

  CapIntegralForms forms;
  forms.rational = a / (c_minus_s * (c_minus_s + two * a * s));
  const Interval cos_phi0 = cos(cap_angle(a));
  forms.via_cap_angle =
      (Interval(1.0) / (two * s)) * (Interval(1.0) / c_minus_s - Interval(1.0) / (c - s * cos_phi0));
  return forms;
}

Interval cap_integral_bound(const Interval& nu, const Interval& a) {
  const CapIntegralForms f = cap_integral_forms(nu, a);
  if (!f.rational.overlaps(f.via_cap_angle)) {
    throw std::logic_error("cap integral closed forms disagree: " + f.rational.to_string() + " vs " +
                           f.via_cap_angle.to_string());
  }
  return intersect(f.rational, f.via_cap_angle);
}

Interval lemma_bound(const Interval& a, const Interval& b) {
  if (!(a.lo() > 0.0)) throw DomainError("lemma_bound: a contains 0: " + a.to_string());
  if (a.hi() > 1.0) throw DomainError("lemma_bound: a exceeds 1: " + a.to_string());
  if (!(b.hi() < 1.0)) throw DomainError("lemma_bound: b contains 1: " + b.to_string());
  if (b.lo() < 0.0) throw DomainError("lemma_bound: b is negative: " + b.to_string());
  const Interval one(1.0);
  const Interval num = b * (one - a);
  const Interval den = a * (one - b);
  return Interval(0.5) * log(num / den);
}

Interval g_func(const Interval& d) {
  if (!(d.lo() > 1.0)) throw DomainError("g_func needs D > 1, got " + d.to_string());
  // (sqrt(8D+1) - 3)/(D - 1) == 8 / (sqrt(8D+1) + 3)
  return Interval(8.0) / (sqrt(Interval(8.0) * d + Interval(1.0)) + Interval(3.0));
}

Interval alpha_from_dbar(const Interval& dbar) {
  if (!(dbar.lo() > 1.0)) throw DomainError("alpha_from_dbar needs Dbar > 1, got " + dbar.to_string());
  const Interval alpha = g_func(dbar) / Interval(2.0);
  const Interval one(1.0);
  const Interval back = (one - alpha) * (Interval(2.0) - alpha) / sqr(alpha);
  if (!back.overlaps(dbar)) {
    throw std::logic_error("alpha_from_dbar round trip " + back.to_string() + " misses " + dbar.to_string());
  }
  return alpha;
}

std::vector<NamedVerdict> double_trouble_check(const DoubleTroubleInput& in) {
  std::vector<NamedVerdict> out;
  const Interval one(1.0);
  const Interval unit(0.0, 1.0);

  bool ranges_ok = true;
  for (const Interval* m : {&in.alpha, &in.beta, &in.alpha_plus, &in.alpha_minus, &in.beta_plus,
                            &in.beta_minus}) {
    ranges_ok = ranges_ok && unit.contains(*m);
  }
  ranges_ok = ranges_ok && in.dx.lo() >= 1.0 && in.dy.lo() >= 1.0;
  out.push_back({"mass and displacement ranges", ranges_ok ? Verdict::Verified : Verdict::Refuted,
                 Interval(0.0), Interval(0.0)});

  const Interval total = in.alpha + in.beta;
  out.push_back({"alpha + beta = 1", total.contains(1.0) ? Verdict::Verified : Verdict::Refuted, total, one});

  const Interval a_split = in.alpha_plus + in.alpha_minus;
  out.push_back({"alpha+ + alpha- <= alpha", le_verdict(a_split, in.alpha), a_split, in.alpha});
  const Interval b_split = in.beta_plus + in.beta_minus;
  out.push_back({"beta+ + beta- <= beta", le_verdict(b_split, in.beta), b_split, in.beta});

  auto displacement_check = [&](const std::string& name, const Interval& b, const Interval& a,
                                const Interval& d) {
    // b (1 - a) / (a (1 - b)) <= D
    const Interval ratio = nonneg_ratio(b * (one - a), a * (one - b));
    out.push_back({name, le_verdict(ratio, d), ratio, d});
  };
  displacement_check("beta(1-alpha+)/(alpha+(1-beta)) <= Dx", in.beta, in.alpha_plus, in.dx);
  displacement_check("beta(1-alpha-)/(alpha-(1-beta)) <= Dx", in.beta, in.alpha_minus, in.dx);
  displacement_check("alpha(1-beta+)/(beta+(1-alpha)) <= Dy", in.alpha, in.beta_plus, in.dy);
  displacement_check("alpha(1-beta-)/(beta-(1-alpha)) <= Dy", in.alpha, in.beta_minus, in.dy);
  return out;
}

bool all_verified(const std::vector<NamedVerdict>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const NamedVerdict& c) { return c.verdict == Verdict::Verified; });
}

LongSquaresResult long_squares_check(const Interval& dx, const Interval& dy) {
  const Interval sum = g_func(dx) + g_func(dy);
  const Interval two(2.0);
  return {le_verdict(sum, two), sum, two - sum};
}

Interval poly_eval(const std::vector<Rational>& coeffs, const Interval& t) {
  Interval acc(0.0);
  for (const Rational& c : coeffs) acc = acc * t + Interval::ratio(c.num, c.den);
  return acc;
}

Interval poly_root(const std::vector<Rational>& coeffs, const Interval& bracket, double width) {
  if (!(width > 0.0)) throw DomainError("poly_root needs a positive target width");
  if (coeffs.empty()) throw DomainError("poly_root needs a nonzero polynomial");
  double lo = bracket.lo();
  double hi = bracket.hi();
  const int s_lo = sign_of(poly_eval(coeffs, Interval(lo)));
  const int s_hi = sign_of(poly_eval(coeffs, Interval(hi)));
  if (s_lo == 0) return Interval(lo);
  if (s_hi == 0) return Interval(hi);
  if (s_lo == 2 || s_hi == 2 || s_lo == s_hi) {
    throw NoSignChange("no certified sign change on " + bracket.to_string());
  }

  for (int step = 0; step < kMaxBisections && hi - lo > width; ++step) {
    double cut = lo / 2 + hi / 2;
    int s = sign_of(poly_eval(coeffs, Interval(cut)));
    // Nudge off a cut where rounding hides the sign.
    for (int k = 1; s == 2 && k <= 4; ++k) {
      cut = lo + (hi - lo) * (0.5 + (k % 2 ? 0.1 : -0.1) * ((k + 1) / 2));
      s = sign_of(poly_eval(coeffs, Interval(cut)));
    }
    if (s == 0) return Interval(cut);
    if (s == 2) break;
    if (s == s_lo) {
      lo = cut;
    } else {
      hi = cut;
    }
  }
  if (hi - lo > width) {
    throw DomainError("poly_root could not reach width " + fmt(width) + " within " +
                      std::to_string(kMaxBisections) + " bisections");
  }
  return {lo, hi};
}

bool ConstantsReport::all_verified() const {
  return std::none_of(checks.begin(), checks.end(), [](const ConstantCheck& c) {
    return c.verdict == Verdict::Refuted || c.verdict == Verdict::Undecided;
  });
}

std::string ConstantsReport::to_text() const {
  std::ostringstream os;
  os << std::left << std::setw(4) << "id" << std::setw(18) << "verdict" << std::setw(44)
     << "certified interval" << "claim\n";
  for (const auto& c : checks) {
    os << std::left << std::setw(4) << c.id << std::setw(18) << to_string(c.verdict) << std::setw(44)
       << c.computed.to_string(12) << c.claim << "\n";
    if (!c.note.empty()) os << "      " << c.note << "\n";
  }
  os << (all_verified() ? "all checks verified" : "some checks FAILED") << "\n";
  return os.str();
}

std::string ConstantsReport::to_json() const {
  nlohmann::json j;
  j["report"] = "constants";
  j["all_verified"] = all_verified();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"id", c.id},
                           {"claim", c.claim},
                           {"lo", c.computed.lo()},
                           {"hi", c.computed.hi()},
                           {"verdict", to_string(c.verdict)},
                           {"slack", c.slack},
                           {"note", c.note}});
  }
  return j.dump(2);
}

namespace {

// value inside the open window (a, b) with certified width <= kConstantsWidth.
ConstantCheck window_check(std::string id, std::string claim, const Interval& v, double a, double b,
                           std::string note = {}) {
  const bool ok = v.inside_open(a, b) && v.width() <= kConstantsWidth;
  const double slack = std::min(v.lo() - a, b - v.hi());
  return {std::move(id), std::move(claim), v, ok ? Verdict::Verified : Verdict::Refuted, slack,
          std::move(note)};
}

ConstantCheck less_check(std::string id, std::string claim, const Interval& v, const Interval& bound,
                         std::string note = {}) {
  Verdict verdict = Verdict::Undecided;
  if (v.certainly_lt(bound)) verdict = Verdict::Verified;
  if (v.certainly_ge(bound)) verdict = Verdict::Refuted;
  if (v.width() > kConstantsWidth) verdict = Verdict::Undecided;
  return {std::move(id), std::move(claim), v, verdict, bound.lo() - v.hi(), std::move(note)};
}

ConstantCheck greater_in_window(std::string id, std::string claim, const Interval& v,
                                const Interval& bound, double a, double b, std::string note = {}) {
  Verdict verdict = Verdict::Undecided;
  if (v.certainly_gt(bound) && v.inside_open(a, b)) verdict = Verdict::Verified;
  if (v.certainly_le(bound) || !v.overlaps(Interval(a, b))) verdict = Verdict::Refuted;
  if (v.width() > kConstantsWidth) verdict = Verdict::Undecided;
  const double slack = std::min({v.lo() - bound.hi(), v.lo() - a, b - v.hi()});
  return {std::move(id), std::move(claim), v, verdict, slack, std::move(note)};
}

}  // namespace

ConstantsReport verify_constants() {
  ConstantsReport r;
  const Interval half(0.5);
  const Interval one(1.0);
  const Interval two(2.0);

  // (a) the two classical thresholds
  r.checks.push_back(window_check("a1", "1/2 log 2 = 0.346... (0.34657 +- 1e-5)",
                                  half * log(two), 0.34656, 0.34658));
  r.checks.push_back(window_check("a2", "1/2 log 3 (0.54931 +- 1e-5)", half * log(Interval(3.0)),
                                  0.54930, 0.54932));

  // (b) gamma = 1.8105..., log gamma = 0.593...
  const std::vector<Rational> quartic{{1}, {-1}, {0}, {-1}, {-3}};
  const Interval gamma = poly_root(quartic, Interval(1.0, 2.0), 1e-9);
  r.checks.push_back(window_check("b1", "root of t^4-t^3-t-3 is gamma = 1.8105...", gamma, 1.8104, 1.8106));
  r.checks.push_back(window_check("b2", "log gamma = 0.593... (0.5936 +- 1e-3)", log(gamma), 0.5926, 0.5946));

  // (c) phi(0.286)/2 + 0.286 < 0.8227
  const Interval nu286 = dec("0.286");
  const Interval conj_bound = hyp3::phi(nu286) / two + nu286;
  r.checks.push_back(less_check("c", "phi(0.286)/2 + 0.286 < 0.8227", conj_bound, dec("0.8227")));

  // (d) the long-squares contradiction at 0.286
  const Interval d1 = exp(two * nu286);
  const Interval d2 = exp(two * dec("0.8227"));
  r.checks.push_back(less_check("d1", "exp(2*0.286) < 1.772", d1, dec("1.772")));
  r.checks.push_back(less_check("d2", "exp(2*0.8227) < 5.1831", d2, dec("5.1831")));
  r.checks.push_back(greater_in_window("d3", "g(1.772) + g(5.1831) = 2.0007... > 2",
                                       g_func(dec("1.772")) + g_func(dec("5.1831")), two, 2.0006, 2.0009));
  r.checks.push_back(greater_in_window("d4", "g(exp(2*0.286)) + g(exp(2*0.8227)) > 2",
                                       g_func(d1) + g_func(d2), two, 2.00060, 2.00090));

  // (e) 2/(1 + exp phi(0.292)) = 0.5009... > 1/2
  const Interval nu292 = dec("0.292");
  r.checks.push_back(greater_in_window("e", "2/(1+exp phi(0.292)) = 0.5009... > 1/2",
                                       two / (one + exp(hyp3::phi(nu292))), half, 0.50085, 0.50110));

  // (f) 1/(1+e^0.584) + 1/(1+e^1.168) = 0.595... > 1/2
  r.checks.push_back(greater_in_window(
      "f", "1/(1+exp(0.584)) + 1/(1+exp(1.168)) = 0.595... > 1/2",
      one / (one + exp(dec("0.584"))) + one / (one + exp(dec("1.168"))), half, 0.594, 0.596));

  // (g) the printed root of t^3 - t^2 - t - 3
  {
    const std::vector<Rational> cubic{{1}, {-1}, {-1}, {-3}};
    const Interval root = poly_root(cubic, Interval(2.0, 3.0), 1e-9);
    const Interval half_log = half * log(root);
    const bool matches_print = root.overlaps(Interval(1.839, 1.840));
    const std::vector<Rational> alt{{1}, {-1}, {-1}, {-1}};
    const Interval alt_root = poly_root(alt, Interval(1.0, 2.0), 1e-9);
    const Interval alt_half_log = half * log(alt_root);
    std::string note = "printed alpha = 1.839..., 1/2 log alpha = 0.304...; certified root of t^3-t^2-t-3 is " +
                       root.to_string(8) + " with 1/2 log = " + half_log.to_string(6) +
                       "; t^3-t^2-t-1 has root " + alt_root.to_string(8) + " with 1/2 log = " +
                       alt_half_log.to_string(6);
    r.checks.push_back({"g", "alpha = 1.839... is the real root of t^3-t^2-t-3", root,
                        matches_print ? Verdict::Verified : Verdict::ErratumSuspected,
                        root.lo() - 1.840, std::move(note)});
    r.checks.push_back(window_check("g'", "candidate: root of t^3-t^2-t-1 is 1.839..., 1/2 log = 0.304...",
                                    alt_half_log, 0.304, 0.305,
                                    "reported alongside (g); which polynomial was intended is not decided"));
  }

  // (h) direction of the 1/2 log 3 corollary: g(3) = 1 and g decreasing
  {
    const Interval g3 = g_func(Interval(3.0));
    const bool decreasing_through_3 =
        g_func(dec("2.99")).certainly_gt(one) && g_func(dec("3.01")).certainly_lt(one);
    const bool exact = g3 == one;
    r.checks.push_back({"h", "g(D_x) <= 1 gives D_x <= 3 (as printed)", g3,
                        (exact && decreasing_through_3) ? Verdict::ErratumSuspected : Verdict::Undecided,
                        0.0,
                        "g(3) = 1 and g is decreasing, so g(D_x) <= 1 forces D_x >= 3, which is what "
                        "d_P(x) >= 1/2 log 3 needs; the printed direction looks like a typo"});
  }
  return r;
}

}  // namespace margulis::certnum
