#include "margulis/hyp3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "margulis/errors.hpp"

namespace margulis::hyp3 {
namespace {

using certnum::Interval;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt(Complex z) { return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")"; }

double max_abs4(Complex a, Complex b, Complex c, Complex d) {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

}  // namespace

PointH3::PointH3(double z_re, double z_im, double t) : z_re_(z_re), z_im_(z_im), t_(t) {
  if (!std::isfinite(z_re) || !std::isfinite(z_im) || !std::isfinite(t)) {
    throw DomainError("PointH3 with non-finite coordinate");
  }
  if (!(t > 0.0)) throw DomainError("PointH3 requires t > 0, got t = " + fmt(t));
}

Isometry::Isometry(Complex a, Complex b, Complex c, Complex d, double det_tol)
    : a_(a), b_(b), c_(c), d_(d) {
  const Complex det = a * d - b * c;
  if (!(std::abs(det - 1.0) <= det_tol)) {
    throw DomainError("matrix determinant " + fmt(det) + " differs from 1 by more than " +
                      fmt(det_tol));
  }
  normalize();
}

Isometry::Isometry(Raw, Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
  normalize();
}

void Isometry::normalize() {
  for (const Complex* e : {&a_, &b_, &c_, &d_}) {
    if (*e == Complex{}) continue;
    const bool flip = e->real() < 0.0 || (e->real() == 0.0 && e->imag() < 0.0);
    if (flip) {
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
      d_ = -d_;
    }
    return;
  }
}

Isometry Isometry::identity() { return {Raw{}, 1.0, 0.0, 0.0, 1.0}; }

Isometry Isometry::diagonal(Complex lambda) {
  if (lambda == Complex{}) throw DomainError("diagonal isometry needs lambda != 0");
  return {Raw{}, lambda, 0.0, 0.0, 1.0 / lambda};
}

Isometry Isometry::translation(double length, double twist) {
  const Complex half{length / 2, twist / 2};
  return {Raw{}, std::exp(half), 0.0, 0.0, std::exp(-half)};
}

Isometry Isometry::rotation_at_origin(double polar, double azimuth, double angle) {
  const double n1 = std::sin(polar) * std::cos(azimuth);
  const double n2 = std::sin(polar) * std::sin(azimuth);
  const double n3 = std::cos(polar);
  const double ch = std::cos(angle / 2);
  const double sh = std::sin(angle / 2);
  const Complex i{0.0, 1.0};
  // cos(a/2) I - i sin(a/2) [[n3, n1 - i n2], [n1 + i n2, -n3]]
  return {Raw{}, ch - i * sh * n3, -i * sh * Complex{n1, -n2}, -i * sh * Complex{n1, n2},
          ch + i * sh * n3};
}

Isometry Isometry::moving_origin_to(const PointH3& p) {
  const double s = std::sqrt(p.t());
  return {Raw{}, s, p.z() / s, 0.0, 1.0 / s};
}

Isometry Isometry::inverse() const { return {Raw{}, d_, -b_, -c_, a_}; }

Isometry Isometry::pow(int n) const {
  Isometry base = n < 0 ? inverse() : *this;
  unsigned k = n < 0 ? static_cast<unsigned>(-static_cast<long>(n)) : static_cast<unsigned>(n);
  Isometry acc = identity();
  while (k != 0) {
    if (k & 1u) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

double Isometry::frobenius_sq() const {
  return std::norm(a_) + std::norm(b_) + std::norm(c_) + std::norm(d_);
}

double Isometry::max_abs() const { return max_abs4(a_, b_, c_, d_); }

double Isometry::projective_distance(const Isometry& o) const {
  const double minus = max_abs4(a_ - o.a_, b_ - o.b_, c_ - o.c_, d_ - o.d_);
  const double plus = max_abs4(a_ + o.a_, b_ + o.b_, c_ + o.c_, d_ + o.d_);
  return std::min(minus, plus);
}

Isometry operator*(const Isometry& x, const Isometry& y) {
  return {Isometry::Raw{}, x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
          x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_};
}

std::string Isometry::to_string() const {
  return "[[" + fmt(a_) + ", " + fmt(b_) + "], [" + fmt(c_) + ", " + fmt(d_) + "]]";
}

std::string to_string(IsomTag tag) {
  switch (tag) {
    case IsomTag::Identity: return "Identity";
    case IsomTag::Elliptic: return "Elliptic";
    case IsomTag::Parabolic: return "Parabolic";
    case IsomTag::Loxodromic: return "Loxodromic";
  }
  return "?";
}

PointH3 apply(const Isometry& g, const PointH3& p) {
  const Complex z = p.z();
  const double t2 = p.t() * p.t();
  const Complex cz_d = g.c() * z + g.d();
  const double den = std::norm(cz_d) + std::norm(g.c()) * t2;
  if (!(den > 0.0) || !std::isfinite(den)) {
    throw DegenerateHeight("Moebius denominator is " + fmt(den));
  }
  const Complex num = (g.a() * z + g.b()) * std::conj(cz_d) + g.a() * std::conj(g.c()) * t2;
  const double t = p.t() / den;
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DegenerateHeight("image height underflowed: t = " + fmt(t));
  }
  return {num / den, t};
}

double dist(const PointH3& p, const PointH3& q) {
  const double dz = std::norm(p.z() - q.z());
  const double dt = p.t() - q.t();
  const double chord = std::sqrt(dz + dt * dt);
  // cosh d = 1 + 2 sinh^2(d/2); the asinh form keeps small distances accurate.
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.t() * q.t())));
}

double displacement(const Isometry& g, const PointH3& p) { return dist(p, apply(g, p)); }

double displacement_at_origin(const Isometry& g) {
  return std::acosh(std::max(1.0, g.frobenius_sq() / 2.0));
}

IsomClass classify(const Isometry& g, double tol) {
  const double band = kAmbiguityFactor * tol;
  if (g.projective_distance(Isometry::identity()) <= tol) return {IsomTag::Identity, 0.0};

  const Complex tr = g.trace();
  const double to_parabolic = std::min(std::abs(tr - 2.0), std::abs(tr + 2.0));
  if (to_parabolic <= tol) return {IsomTag::Parabolic, 0.0};
  if (to_parabolic <= band) {
    throw AmbiguousClass("trace " + fmt(tr) + " within " + fmt(band) + " of +-2");
  }

  const double im = std::abs(tr.imag());
  if (std::abs(tr.real()) < 2.0) {
    if (im <= tol) return {IsomTag::Elliptic, 0.0};
    if (im <= band) {
      throw AmbiguousClass("trace " + fmt(tr) + " within " + fmt(band) + " of the real segment (-2, 2)");
    }
  }
  const double length = 2.0 * std::abs(std::acosh(tr / 2.0).real());
  if (!(length > 0.0)) {
    throw AmbiguousClass("loxodromic trace " + fmt(tr) + " gives zero translation length");
  }
  return {IsomTag::Loxodromic, length};
}

double cos_angle(const PointH3& q, const PointH3& p, const PointH3& r) {
  const double b = dist(p, q);
  const double c = dist(p, r);
  if (b == 0.0) throw DegenerateVertex("angle: Q coincides with the vertex P");
  if (c == 0.0) throw DegenerateVertex("angle: R coincides with the vertex P");
  const double a = dist(q, r);
  // Half-angle form of the hyperbolic law of cosines:
  // sin^2(A/2) = sinh(s-b) sinh(s-c) / (sinh b sinh c), s = (a+b+c)/2.
  const double sb = std::max(0.0, (a + c - b) / 2);
  const double sc = std::max(0.0, (a + b - c) / 2);
  const double half_sin_sq = std::sinh(sb) * std::sinh(sc) / (std::sinh(b) * std::sinh(c));
  return std::clamp(1.0 - 2.0 * half_sin_sq, -1.0, 1.0);
}

double angle(const PointH3& q, const PointH3& p, const PointH3& r) {
  return std::acos(cos_angle(q, p, r));
}

double cos_angle_sum(const PointH3& p, std::span<const PointH3> qs) {
  if (qs.size() < 2) throw DomainError("cos_angle_sum needs at least two points");
  double sum = 0.0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    for (std::size_t j = i + 1; j < qs.size(); ++j) sum += cos_angle(qs[i], p, qs[j]);
  }
  return sum;
}

double alhambra_bound(double nu, double theta) {
  if (!(nu > 0.0)) throw DomainError("alhambra_bound requires nu > 0");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("alhambra_bound requires theta in [0, pi]");
  }
  const double ch = std::cosh(nu);
  const double sh = std::sinh(nu);
  const double arg = std::max(1.0, ch * ch - std::cos(theta) * sh * sh);
  return std::max(nu, std::acosh(arg));
}

double phi(double t) {
  if (!(t > 0.0)) throw DomainError("phi requires t > 0, got " + fmt(t));
  const double ch = std::cosh(t);
  const double arg = std::max(1.0, 2.0 * ch * ch - 0.5 * ch - 0.5);
  return std::max(3.0 * t, 2.0 * std::acosh(arg));
}

double dalembert_constant(double nu) {
  if (!(nu > 0.0)) throw DomainError("dalembert_constant requires nu > 0");
  // (cosh^2 - cosh) / sinh^2 = cosh / (cosh + 1)
  const double ch = std::cosh(nu);
  return ch / (ch + 1.0);
}

double dalembert_sum(const Isometry& x, const Isometry& y, const PointH3& p) {
  const PointH3 xs[2] = {apply(x, p), apply(x.inverse(), p)};
  const PointH3 ys[2] = {apply(y, p), apply(y.inverse(), p)};
  double sum = 0.0;
  for (const auto& q : xs) {
    for (const auto& r : ys) sum += cos_angle(q, p, r);
  }
  return sum;
}

MlleHusResult mlle_hus_gap(const Isometry& x, const Isometry& y, const PointH3& p, double nu) {
  if (!(nu > 0.0)) throw HypothesisViolated("nu must be positive");
  const double dx = displacement(x, p);
  const double dx2 = displacement(x * x, p);
  const double dy = displacement(y, p);
  const double dy2 = displacement(y * y, p);
  if (!(dx <= nu)) throw HypothesisViolated("d_P(x) <= nu fails: d_P(x) = " + fmt(dx));
  if (!(nu < dx2)) throw HypothesisViolated("nu < d_P(x^2) fails: d_P(x^2) = " + fmt(dx2));
  if (!(dy <= nu)) throw HypothesisViolated("d_P(y) <= nu fails: d_P(y) = " + fmt(dy));
  if (!(nu < dy2)) throw HypothesisViolated("nu < d_P(y^2) fails: d_P(y^2) = " + fmt(dy2));

  const Isometry yi = y.inverse();
  MlleHusResult r{};
  r.e_sum = displacement(x * y, p) + displacement(y * x, p);
  r.e_prime_sum = displacement(x * yi, p) + displacement(yi * x, p);
  r.value = std::min(r.e_sum, r.e_prime_sum);
  r.phi_nu = phi(nu);
  r.slack = r.phi_nu - r.value;
  r.dalembert_sum = dalembert_sum(x, y, p);
  r.dalembert_bound = -2.0 - 2.0 * dalembert_constant(nu);
  return r;
}

Interval phi(const Interval& t) {
  if (!(t.lo() > 0.0)) throw DomainError("phi requires t > 0, got " + t.to_string());
  const Interval ch = certnum::cosh(t);
  Interval arg = Interval(2.0) * certnum::sqr(ch) - Interval(0.5) * ch - Interval(0.5);
  // The exact argument exceeds 1 for t > 0.
  arg = certnum::max(arg, Interval(1.0));
  return certnum::max(Interval(3.0) * t, Interval(2.0) * certnum::arccosh(arg));
}

Interval alhambra_bound(const Interval& nu, const Interval& theta) {
  if (!(nu.lo() > 0.0)) throw DomainError("alhambra_bound requires nu > 0");
  const Interval ch = certnum::cosh(nu);
  const Interval sh = certnum::sinh(nu);
  Interval arg = certnum::sqr(ch) - certnum::cos(theta) * certnum::sqr(sh);
  arg = certnum::max(arg, Interval(1.0));
  return certnum::max(nu, certnum::arccosh(arg));
}

Interval dist_enclosure(const PointH3& p, const PointH3& q) {
  const Interval dx = Interval(p.z_re()) - Interval(q.z_re());
  const Interval dy = Interval(p.z_im()) - Interval(q.z_im());
  const Interval dt = Interval(p.t()) - Interval(q.t());
  const Interval num = certnum::sqr(dx) + certnum::sqr(dy) + certnum::sqr(dt);
  const Interval den = Interval(2.0) * Interval(p.t()) * Interval(q.t());
  return certnum::arccosh(Interval(1.0) + num / den);
}

Interval dalembert_constant(const Interval& nu) {
  if (!(nu.lo() > 0.0)) throw DomainError("dalembert_constant requires nu > 0");
  const Interval ch = certnum::cosh(nu);
  return ch / (ch + Interval(1.0));
}

}  // namespace margulis::hyp3
