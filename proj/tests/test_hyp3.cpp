#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "margulis/errors.hpp"
#include "margulis/hyp3.hpp"

using namespace margulis;
using namespace margulis::hyp3;

namespace {

// Arc length of the semicircular geodesic between (x1,0,t) and (x2,0,t) by
// Simpson's rule on ds = dtheta / sin(theta).
double metric_integral_same_height(double x1, double x2, double t) {
  const double center = 0.5 * (x1 + x2);
  const double r = std::hypot(x2 - center, t);
  const double th1 = std::acos((x2 - center) / r);
  const double th2 = std::acos((x1 - center) / r);
  const int n = 20000;
  const double h = (th2 - th1) / n;
  double s = 1.0 / std::sin(th1) + 1.0 / std::sin(th2);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) / std::sin(th1 + i * h);
  return s * h / 3.0;
}

// Unit tangent at (0,0,1) of the geodesic towards q: the geodesic is a
// circle orthogonal to the boundary in the vertical plane through q.
std::array<double, 3> tangent_at_origin(const PointH3& q) {
  const double rho = std::hypot(q.z_re(), q.z_im());
  if (rho < 1e-14) return {0.0, 0.0, q.t() > 1.0 ? 1.0 : -1.0};
  const double c = (rho * rho + q.t() * q.t() - 1.0) / (2.0 * rho);
  const double norm = std::sqrt(1.0 + c * c);
  return {q.z_re() / rho / norm, q.z_im() / rho / norm, c / norm};
}

// A point at distance r from (0,0,1) in a random direction.
PointH3 point_at(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Isometry rot = Isometry::rotation_at_origin(std::acos(1 - 2 * u(rng)), 2 * M_PI * u(rng), M_PI * u(rng));
  return apply(rot, PointH3(0.0, 0.0, std::exp(r)));
}

}  // namespace

TEST_CASE("apply examples") {
  CHECK(apply(Isometry::identity(), PointH3::origin()) == PointH3::origin());
  const PointH3 up = apply(Isometry::diagonal(std::exp(0.5)), PointH3::origin());
  CHECK(up.z_re() == doctest::Approx(0.0));
  CHECK(up.t() == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  const PointH3 side = apply(Isometry(1.0, 1.0, 0.0, 1.0), PointH3::origin());
  CHECK(side.z_re() == doctest::Approx(1.0));
  CHECK(side.t() == doctest::Approx(1.0));
  CHECK_THROWS_AS(PointH3(0.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(Isometry(1.0, 0.0, 0.0, 2.0), DomainError);
}

TEST_CASE("canonical sign identifies M and -M") {
  const Isometry m(Complex(-1.0, 0.5), 2.0, 0.0, 1.0 / Complex(-1.0, 0.5));
  const Isometry neg(Complex(1.0, -0.5), -2.0, 0.0, -1.0 / Complex(-1.0, 0.5));
  CHECK(m == neg);
  CHECK(m.a().real() > 0.0);
  const Isometry zero_first(0.0, Complex(0.0, -1.0), Complex(0.0, -1.0), 0.0);
  CHECK(zero_first.b().imag() > 0.0);
}

TEST_CASE("dist examples with metric-integration oracle") {
  CHECK(dist(PointH3::origin(), PointH3(0, 0, std::exp(1.0))) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dist(PointH3::origin(), PointH3::origin()) == 0.0);
  const double d = dist(PointH3::origin(), PointH3(3, 0, 1));
  CHECK(d == doctest::Approx(std::acosh(5.5)).epsilon(1e-14));
  CHECK(std::abs(d - 2.38953) < 1e-5);
  CHECK(std::abs(d - metric_integral_same_height(0.0, 3.0, 1.0)) < 1e-8);
  CHECK(dist_enclosure(PointH3::origin(), PointH3(3, 0, 1)).contains(d));
}

TEST_CASE("displacement examples") {
  CHECK(displacement(Isometry::identity(), PointH3(0.3, -1, 2)) == 0.0);
  CHECK(displacement(Isometry::diagonal(std::exp(0.5)), PointH3::origin()) == doctest::Approx(1.0));
  const Isometry par(1.0, 1.0, 0.0, 1.0);
  CHECK(displacement(par, PointH3::origin()) == doctest::Approx(std::acosh(1.5)));
  CHECK(std::abs(displacement_at_origin(par) - 0.96242) < 1e-5);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Isometry g = fixtures::random_isometry(rng);
    CHECK(std::abs(displacement_at_origin(g) - displacement(g, PointH3::origin())) < 1e-8);
  }
}

TEST_CASE("metric and isometry properties") {
  std::mt19937_64 rng(7);
  int bad_sym = 0, bad_tri = 0, bad_iso = 0, bad_inv = 0, bad_conj = 0;
  for (int i = 0; i < 10000; ++i) {
    const PointH3 p = fixtures::random_point(rng), q = fixtures::random_point(rng), r = fixtures::random_point(rng);
    bad_sym += dist(p, q) != dist(q, p);
    bad_tri += dist(p, r) > dist(p, q) + dist(q, r) + 1e-9;
    const Isometry g = fixtures::random_isometry(rng);
    const Isometry h = fixtures::random_isometry(rng);
    bad_iso += std::abs(dist(apply(g, p), apply(g, q)) - dist(p, q)) > 1e-9 * std::max(1.0, dist(p, q));
    bad_inv += std::abs(displacement(g, p) - displacement(g.inverse(), p)) > 1e-9;
    bad_conj += std::abs(displacement(h * g * h.inverse(), apply(h, p)) - displacement(g, p)) > 1e-8;
  }
  CHECK(bad_sym == 0);
  CHECK(bad_tri == 0);
  CHECK(bad_iso == 0);
  CHECK(bad_inv == 0);
  CHECK(bad_conj == 0);
}

TEST_CASE("classify") {
  CHECK(classify(Isometry::identity()).tag == IsomTag::Identity);
  CHECK(classify(Isometry(1.0, 1.0, 0.0, 1.0)).tag == IsomTag::Parabolic);
  const IsomClass lox = classify(Isometry::diagonal(2.0));
  CHECK(lox.tag == IsomTag::Loxodromic);
  CHECK(lox.translation_length == doctest::Approx(2 * std::log(2.0)));
  CHECK(classify(Isometry::diagonal(std::exp(0.25))).translation_length == doctest::Approx(0.5));
  CHECK(classify(Isometry::rotation_at_origin(0.3, 1.0, 1.2)).tag == IsomTag::Elliptic);
  CHECK(classify(Isometry::translation(0.7, 2.0)).translation_length == doctest::Approx(0.7));
  for (double lam : {0.3, 1.5, 7.0, 1e-3}) {
    CHECK(classify(Isometry::diagonal(lam)).translation_length == doctest::Approx(2 * std::abs(std::log(lam))));
  }
  // trace 2 + 5e-9: inside the ambiguity band
  const double lam = 1.0 + std::sqrt(5e-9);
  CHECK_THROWS_AS(classify(Isometry::diagonal(lam)), AmbiguousClass);
}

TEST_CASE("angle examples with tangent-vector oracle") {
  const PointH3 o = PointH3::origin();
  CHECK(angle(PointH3(0, 0, std::exp(1.0)), o, PointH3(0, 0, std::exp(-1.0))) == doctest::Approx(M_PI));
  CHECK(angle(PointH3(1, 2, 3), o, PointH3(1, 2, 3)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(angle(o, o, PointH3(1, 0, 1)), DegenerateVertex);

  const double a = angle(PointH3(1, 0, 1), o, PointH3(0, 1, 1));
  CHECK(a > 0.0);
  CHECK(a < M_PI);
  CHECK(a == doctest::Approx(std::acos(0.2)).epsilon(1e-12));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const PointH3 q = fixtures::random_point(rng), r = fixtures::random_point(rng);
    const auto u = tangent_at_origin(q), v = tangent_at_origin(r);
    const double oracle = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    CHECK(std::abs(cos_angle(q, o, r) - oracle) < 1e-7);
  }
}

TEST_CASE("cos_angle_sum") {
  const PointH3 o = PointH3::origin();
  const std::vector<PointH3> opposite{PointH3(0, 0, 2), PointH3(0, 0, 0.5)};
  CHECK(cos_angle_sum(o, opposite) == doctest::Approx(-1.0));
  const std::vector<PointH3> same(5, PointH3(1, 1, 1));
  CHECK(cos_angle_sum(o, same) == doctest::Approx(10.0));
  CHECK_THROWS_AS(cos_angle_sum(o, std::vector<PointH3>{PointH3(1, 1, 1)}), DomainError);

  // Gram oracle: sum_{i<j} <v_i, v_j> = (|sum v|^2 - n) / 2
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> r_d(0.1, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<PointH3> qs;
    for (int i = 0; i < 4; ++i) qs.push_back(point_at(rng, r_d(rng)));
    double sx = 0, sy = 0, sz = 0;
    for (const auto& q : qs) {
      const auto v = tangent_at_origin(q);
      sx += v[0];
      sy += v[1];
      sz += v[2];
    }
    const double gram = (sx * sx + sy * sy + sz * sz - 4.0) / 2.0;
    const double s = cos_angle_sum(o, qs);
    CHECK(s >= -2.0 - 1e-9);
    CHECK(std::abs(s - gram) < 1e-7);
  }
}

TEST_CASE("alhambra_bound against constructed triangles") {
  CHECK(alhambra_bound(0.4, M_PI) == doctest::Approx(0.8));
  CHECK(alhambra_bound(0.4, 0.0) == doctest::Approx(0.4));
  // nu = 0.5, theta = pi/2: two points at distance 0.5 from (0,0,1) at a right angle
  const PointH3 r = PointH3::origin();
  const PointH3 q(0, 0, std::exp(0.5));
  const PointH3 s = apply(Isometry::rotation_at_origin(M_PI / 2, 0.0, M_PI / 2), q);
  CHECK(angle(q, r, s) == doctest::Approx(M_PI / 2));
  CHECK(alhambra_bound(0.5, M_PI / 2) == doctest::Approx(dist(q, s)).epsilon(1e-12));
  CHECK(alhambra_bound(0.5, M_PI / 2) == doctest::Approx(std::acosh(std::cosh(0.5) * std::cosh(0.5))));
  CHECK(hyp3::alhambra_bound(certnum::Interval(0.5), certnum::Interval::pi() / certnum::Interval(2.0))
            .contains(alhambra_bound(0.5, M_PI / 2)));

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> nu_d(0.01, 2.0);
  std::uniform_real_distribution<double> f(0.0, 1.0);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const double nu = nu_d(rng);
    const PointH3 q1 = point_at(rng, nu * f(rng));
    const PointH3 s1 = point_at(rng, nu * f(rng));
    if (dist(q1, r) < 1e-6 || dist(s1, r) < 1e-6) continue;
    bad += dist(q1, s1) > alhambra_bound(nu, angle(q1, r, s1)) + 1e-9;
  }
  CHECK(bad == 0);
}

TEST_CASE("phi") {
  // high-precision reference value 1.0960512638521...
  CHECK(std::abs(phi(0.292) - 1.0960512638521) < 1e-12);
  CHECK(2.0 / (1.0 + std::exp(phi(0.292))) > 0.5);
  CHECK(phi(0.286) / 2 + 0.286 < 0.8227);
  CHECK(phi(0.01) > 0.03);
  CHECK(hyp3::phi(certnum::Interval(0.292)).contains(phi(0.292)));
  double prev = 0.0;
  for (int i = 1; i <= 2000; ++i) {
    const double v = phi(i * 1e-3);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(phi(-1.0), DomainError);
}

TEST_CASE("mlle_hus_gap and the d'Alembert sub-check") {
  const PointH3 o = PointH3::origin();
  const Isometry x = Isometry::translation(0.2, 0.0);
  const MlleHusResult inverse_pair = mlle_hus_gap(x, x.inverse(), o, 0.3);
  CHECK(inverse_pair.e_sum == doctest::Approx(0.0));
  CHECK(inverse_pair.value == doctest::Approx(0.0));
  CHECK(inverse_pair.holds());
  CHECK_THROWS_AS(mlle_hus_gap(x, x, o, 0.1), HypothesisViolated);
  CHECK_THROWS_AS(mlle_hus_gap(x, x, o, 0.5), HypothesisViolated);

  CHECK(dalembert_constant(0.5) ==
        doctest::Approx((std::cosh(0.5) * std::cosh(0.5) - std::cosh(0.5)) / std::pow(std::sinh(0.5), 2)));
  CHECK(hyp3::dalembert_constant(certnum::Interval(0.5)).contains(dalembert_constant(0.5)));
}
