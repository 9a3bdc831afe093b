#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "margulis/interval.hpp"

namespace margulis::hyp3 {

using Complex = std::complex<double>;

/// Point z + t*j of upper half-space, t > 0.
class PointH3 {
 public:
  PointH3(double z_re, double z_im, double t);
  PointH3(Complex z, double t) : PointH3(z.real(), z.imag(), t) {}

  /// The base point (0, 0, 1).
  static PointH3 origin() { return {0.0, 0.0, 1.0}; }

  double z_re() const { return z_re_; }
  double z_im() const { return z_im_; }
  double t() const { return t_; }
  Complex z() const { return {z_re_, z_im_}; }

  friend bool operator==(const PointH3&, const PointH3&) = default;

 private:
  double z_re_;
  double z_im_;
  double t_;
};

inline constexpr double kDefaultDetTol = 1e-12;

/// Orientation-preserving isometry of H^3 as a unit-determinant matrix
/// [[a, b], [c, d]], always stored in canonical sign so that M and -M are
/// the same value.
class Isometry {
 public:
  /// Validates |ad - bc - 1| <= det_tol and normalizes the sign.
  Isometry(Complex a, Complex b, Complex c, Complex d, double det_tol = kDefaultDetTol);

  static Isometry identity();
  /// diag(lambda, 1/lambda).
  static Isometry diagonal(Complex lambda);
  /// Loxodromic along the vertical axis with complex length l + i*theta.
  static Isometry translation(double length, double twist = 0.0);
  /// The SU(2) element exp(-i angle/2 (n . sigma)) with n the unit vector of
  /// spherical angles (polar, azimuth). Fixes (0,0,1); polar = 0 rotates
  /// about the vertical geodesic.
  static Isometry rotation_at_origin(double polar, double azimuth, double angle);
  /// Some isometry taking (0,0,1) to P.
  static Isometry moving_origin_to(const PointH3& p);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  Complex trace() const { return a_ + d_; }
  Complex det() const { return a_ * d_ - b_ * c_; }
  Isometry inverse() const;
  Isometry pow(int n) const;
  /// |a|^2 + |b|^2 + |c|^2 + |d|^2.
  double frobenius_sq() const;
  /// Largest entry modulus.
  double max_abs() const;
  /// Entrywise distance to `o` or `-o`, whichever is smaller.
  double projective_distance(const Isometry& o) const;

  friend Isometry operator*(const Isometry& x, const Isometry& y);
  friend bool operator==(const Isometry&, const Isometry&) = default;

  std::string to_string() const;

 private:
  struct Raw {};
  Isometry(Raw, Complex a, Complex b, Complex c, Complex d);
  void normalize();

  Complex a_, b_, c_, d_;
};

enum class IsomTag { Identity, Elliptic, Parabolic, Loxodromic };

struct IsomClass {
  IsomTag tag;
  double translation_length = 0.0;
};

std::string to_string(IsomTag tag);

/// g . P via the quaternionic expression (aP + b)(cP + d)^{-1}.
PointH3 apply(const Isometry& g, const PointH3& p);
double dist(const PointH3& p, const PointH3& q);
/// d_P(g) = dist(P, g.P).
double displacement(const Isometry& g, const PointH3& p);
/// Closed form at the base point: arccosh(|g|_F^2 / 2).
double displacement_at_origin(const Isometry& g);

inline constexpr double kDefaultClassTol = 1e-9;
/// Traces within (tol, kAmbiguityFactor * tol] of a class boundary raise
/// AmbiguousClass.
inline constexpr double kAmbiguityFactor = 10.0;

IsomClass classify(const Isometry& g, double tol = kDefaultClassTol);

/// Cosine of the angle at P of the triangle Q P R, clamped to [-1, 1].
double cos_angle(const PointH3& q, const PointH3& p, const PointH3& r);
/// Angle at P of the triangle Q P R, in [0, pi].
double angle(const PointH3& q, const PointH3& p, const PointH3& r);
/// Sum over i < j of cos angle(Q_i, P, Q_j); bounded below by -n/2.
double cos_angle_sum(const PointH3& p, std::span<const PointH3> qs);

/// Upper bound for dist(Q, S) when dist(Q,R), dist(R,S) <= nu and the angle
/// at R is theta.
double alhambra_bound(double nu, double theta);
/// max(3t, 2 arccosh(2 cosh^2 t - cosh t / 2 - 1/2)).
double phi(double t);

/// (cosh^2 nu - cosh nu) / sinh^2 nu.
double dalembert_constant(double nu);

struct MlleHusResult {
  double value;           // min(d(xy) + d(yx), d(xy^-1) + d(y^-1 x))
  double e_sum;           // d(xy) + d(yx)
  double e_prime_sum;     // d(xy^-1) + d(y^-1 x)
  double phi_nu;
  double slack;           // phi_nu - value
  double dalembert_sum;   // sum over u,v of cos angle(x^u P, P, y^v P)
  double dalembert_bound; // -2 - 2A
  bool holds() const { return slack >= -1e-9; }
  bool dalembert_holds() const { return dalembert_sum > dalembert_bound; }
};

/// Requires d_P(x) <= nu < d_P(x^2) and the same for y; throws
/// HypothesisViolated naming the failing inequality otherwise.
MlleHusResult mlle_hus_gap(const Isometry& x, const Isometry& y, const PointH3& p, double nu);

/// Sum over (u, v) in {+-1}^2 of cos angle(x^u P, P, y^v P).
double dalembert_sum(const Isometry& x, const Isometry& y, const PointH3& p);

// Certified twins of the scalar formulas.
certnum::Interval phi(const certnum::Interval& t);
certnum::Interval alhambra_bound(const certnum::Interval& nu, const certnum::Interval& theta);
/// Enclosure of dist(P, Q) for exactly represented coordinates.
certnum::Interval dist_enclosure(const PointH3& p, const PointH3& q);
certnum::Interval dalembert_constant(const certnum::Interval& nu);

}  // namespace margulis::hyp3
