#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "fixtures.hpp"
#include "margulis/errors.hpp"
#include "margulis/growth.hpp"
#include "margulis/margulis.hpp"
#include "margulis/pipelines.hpp"

using namespace margulis;
using hyp3::Isometry;
using hyp3::PointH3;
using certnum::Interval;

namespace {

const char* kGroupDoc = R"({
  "name": "pair",
  "generators": [
    {"a": [2, 0], "b": [0, 0], "c": [0, 0], "d": [0.5, 0]},
    {"a": [1, 0], "b": [0, 1], "c": [0, 0], "d": [1, 0]}
  ],
  "claims_discrete": true,
  "tolerances": {"commute_tol": 1e-7}
})";

std::string with_generators(const std::string& gens) { return R"({"generators": )" + gens + "}"; }

}  // namespace

TEST_CASE("group file parsing") {
  const GroupFile g = GroupFile::parse(kGroupDoc);
  CHECK(g.name == "pair");
  REQUIRE(g.generators.size() == 2);
  CHECK(g.generators[0].projective_distance(Isometry::diagonal(2.0)) == 0.0);
  CHECK(g.claims_discrete);
  CHECK_FALSE(g.claims_torsion_free);
  CHECK(g.tolerances.commute_tol == 1e-7);
  CHECK(g.tolerances.dedup_eps == 1e-9);

  const GroupFile back = GroupFile::parse(g.to_json());
  CHECK(back.name == g.name);
  for (std::size_t i = 0; i < 2; ++i) CHECK(back.generators[i] == g.generators[i]);
  CHECK(back.tolerances.commute_tol == g.tolerances.commute_tol);

  CHECK_THROWS_AS(GroupFile::parse("{"), InputError);
  CHECK_THROWS_AS(GroupFile::parse("[]"), InputError);
  CHECK_THROWS_AS(GroupFile::parse("{}"), InputError);
  CHECK_THROWS_AS(GroupFile::parse(with_generators("[]")), InputError);
  CHECK_THROWS_AS(GroupFile::parse(with_generators(R"([{"a": [1, 0], "b": [0, 0], "c": [0, 0]}])")),
                  InputError);
  CHECK_THROWS_AS(
      GroupFile::parse(with_generators(R"([{"a": [1, 0, 0], "b": [0, 0], "c": [0, 0], "d": [1, 0]}])")),
      InputError);
  CHECK_THROWS_AS(GroupFile::parse(with_generators(R"([{"a": [2, 0], "b": [0, 0], "c": [0, 0], "d": [1, 0]}])")),
                  InputError);
  CHECK_THROWS_AS(GroupFile::parse(R"({"name": 3, "generators": []})"), InputError);
  CHECK_THROWS_AS(GroupFile::parse(R"({"claims_discrete": "yes", "generators": []})"), InputError);

  std::string many = "[";
  for (int i = 0; i < 27; ++i) many += std::string(i ? "," : "") + R"({"a":[1,0],"b":[0,0],"c":[0,0],"d":[1,0]})";
  CHECK_THROWS_AS(GroupFile::parse(with_generators(many + "]")), InputError);
  CHECK_THROWS_AS(GroupFile::load("/nonexistent/group.json"), InputError);
}

TEST_CASE("commutes examples") {
  const Isometry x = Isometry::translation(0.7, 0.3);
  const CommuteResult self = commutes(x, x.pow(3));
  CHECK(self.commute);
  CHECK(self.deviation < 1e-12);

  const CommuteResult para = commutes(Isometry(1.0, 1.0, 0.0, 1.0), Isometry(1.0, 0.0, 1.0, 1.0));
  CHECK_FALSE(para.commute);
  // [[1,1],[0,1]] [[1,0],[1,1]] commutator is [[3,-1],[1,0]] up to sign: trace 3
  CHECK(para.deviation == doctest::Approx(3.0 - 1.0));

  const GroupFile tw = fixtures::twisted_pair();
  const Isometry a = tw.generators[0];
  const Isometry b = tw.generators[1];
  CHECK_FALSE(commutes(a, b * a * b.inverse()).commute);
  // the two commutators [a, b] and [b, a^-1] do not commute either
  const Isometry c1 = a * b * a.inverse() * b.inverse();
  const Isometry c2 = b * a.inverse() * b.inverse() * a;
  CHECK_FALSE(commutes(c1, c2, 1e-12).commute);
}

TEST_CASE("commutes properties") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const Isometry x = fixtures::random_isometry(rng, 1.0);
    const Isometry y = fixtures::random_isometry(rng, 1.0);
    const CommuteResult xy = commutes(x, y);
    const CommuteResult yx = commutes(y, x);
    CHECK(xy.commute == yx.commute);
    for (int n = -5; n <= 5; ++n) {
      const Isometry xn = x.pow(n);
      CHECK(commutes(x, xn, 1e-8 * std::max(1.0, xn.max_abs() * x.max_abs() * xn.max_abs() * x.max_abs())).commute);
    }
  }

  // loxodromics on a common axis: powers commute, and so do the elements
  for (int trial = 0; trial < 500; ++trial) {
    std::uniform_real_distribution<double> u(0.1, 1.0);
    const Isometry h = fixtures::random_isometry(rng, 1.0);
    const Isometry x = h * Isometry::translation(u(rng), u(rng)) * h.inverse();
    const Isometry y = h * Isometry::translation(u(rng), -u(rng)) * h.inverse();
    const double tol = 1e-8 * std::pow(h.max_abs(), 4);
    REQUIRE(commutes(x.pow(3), y.pow(2), tol * 100).commute);
    CHECK(commutes(x, y, tol).commute);
  }
}

TEST_CASE("sample points") {
  SamplingSpec spec;
  spec.count = 50;
  spec.radius = 1.5;
  const auto pts = sample_points(spec);
  REQUIRE(pts.size() == 50);
  CHECK(pts[0] == PointH3::origin());
  for (const PointH3& p : pts) CHECK(hyp3::dist(PointH3::origin(), p) <= 1.5 + 1e-12);
  CHECK(sample_points(spec) == pts);
  spec.seed = 9;
  const auto other = sample_points(spec);
  CHECK(other[0] == PointH3::origin());
  CHECK_FALSE(other[1] == pts[1]);

  SamplingSpec explicit_pts;
  explicit_pts.points = {PointH3(1.0, 2.0, 3.0)};
  CHECK(sample_points(explicit_pts).size() == 1);
  SamplingSpec none;
  none.count = 0;
  CHECK_THROWS_AS(sample_points(none), InputError);
}

TEST_CASE("Schottky group has no short noncommuting pairs") {
  MargulisOptions opt;
  opt.mu = 0.292;
  opt.depth = 4;
  opt.sampling.count = 30;
  const MargulisReport r = margulis_test(fixtures::schottky_group(), opt);
  CHECK(r.violations.empty());
  CHECK(r.violation_count == 0);
  CHECK(r.empirical_min > 1.0);
  CHECK(r.elements == 160);
  CHECK(r.disclaimers.size() >= 2);
  const auto doc = nlohmann::json::parse(r.to_json());
  CHECK(doc["violations"].empty());
  CHECK(doc["empirical_min"].get<double>() == r.empirical_min);
}

TEST_CASE("trivial group") {
  GroupFile g;
  g.generators = {Isometry::identity()};
  MargulisOptions opt;
  opt.depth = 3;
  opt.sampling.count = 5;
  const MargulisReport r = margulis_test(g, opt);
  CHECK(r.elements == 0);
  CHECK(r.violations.empty());
  CHECK(std::isinf(r.empirical_min));
  CHECK(nlohmann::json::parse(r.to_json())["empirical_min"].is_null());
  CHECK(r.to_text().find("violations") != std::string::npos);
}

TEST_CASE("synthetic near-identity pair") {
  const GroupFile g = fixtures::twisted_pair();
  MargulisOptions opt;
  opt.mu = 0.292;
  opt.depth = 2;
  opt.sampling.count = 10;
  const MargulisReport r = margulis_test(g, opt);
  REQUIRE_FALSE(r.violations.empty());
  bool origin_hit = false;
  for (const Violation& v : r.violations) {
    CHECK(std::max(v.d_x, v.d_y) < opt.mu);
    CHECK(v.deviation > g.tolerances.commute_tol);
    const Revalidation rv = revalidate(g, v);
    CHECK(rv.ok);
    CHECK(rv.max_error <= 1e-9);
    if (v.point_index == 0 && v.word_x == "a" && v.word_y == "b") {
      origin_hit = true;
      CHECK(v.d_x == doctest::Approx(0.02).epsilon(1e-6));
      CHECK(v.d_y == doctest::Approx(0.02).epsilon(1e-6));
      CHECK(v.deviation > 1e-3);
    }
  }
  CHECK(origin_hit);
  CHECK(r.empirical_min < opt.mu);

  // a tampered violation fails revalidation
  Violation bad = r.violations.front();
  bad.d_x += 1e-6;
  CHECK_FALSE(revalidate(g, bad).ok);

  MargulisOptions capped = opt;
  capped.max_violations = 3;
  const MargulisReport c = margulis_test(g, capped);
  CHECK(c.violations.size() == 3);
  CHECK(c.truncated);
  CHECK(c.violation_count == r.violation_count);
}

TEST_CASE("empirical min agrees with the violation list") {
  const GroupFile g = fixtures::twisted_pair();
  for (double mu : {0.01, 0.02, 0.03, 0.05, 0.1, 0.2}) {
    MargulisOptions opt;
    opt.mu = mu;
    opt.depth = 2;
    opt.sampling.count = 8;
    const MargulisReport r = margulis_test(g, opt);
    CHECK((r.empirical_min >= mu) == r.violations.empty());
  }
}

TEST_CASE("conjugation equivariance") {
  std::mt19937_64 rng(12);
  const GroupFile g = fixtures::twisted_pair();
  const Isometry h = fixtures::random_isometry(rng, 0.8);
  GroupFile conj = g;
  for (Isometry& x : conj.generators) x = h * x * h.inverse();
  // looser commute test: conjugation inflates entries
  conj.tolerances.commute_tol = g.tolerances.commute_tol;

  MargulisOptions opt;
  opt.mu = 0.1;
  opt.depth = 2;
  opt.sampling.count = 6;
  opt.sampling.radius = 1.0;
  const auto pts = sample_points(opt.sampling);
  MargulisOptions opt_h = opt;
  for (const PointH3& p : pts) opt_h.sampling.points.push_back(hyp3::apply(h, p));

  const MargulisReport a = margulis_test(g, opt);
  const MargulisReport b = margulis_test(conj, opt_h);
  REQUIRE(a.violations.size() == b.violations.size());
  auto disps = [](const MargulisReport& r) {
    std::vector<double> d;
    for (const Violation& v : r.violations) {
      d.push_back(v.d_x);
      d.push_back(v.d_y);
    }
    std::sort(d.begin(), d.end());
    return d;
  };
  const auto da = disps(a);
  const auto db = disps(b);
  for (std::size_t i = 0; i < da.size(); ++i) CHECK(std::abs(da[i] - db[i]) < 1e-9);
  CHECK(std::abs(a.empirical_min - b.empirical_min) < 1e-9);

  // element displacement multisets at every point
  const auto ga = growth::ball_sizes(g.generators, 2, true);
  const auto gb = growth::ball_sizes(conj.generators, 2, true);
  REQUIRE(ga.elements.size() == gb.elements.size());
  for (std::size_t p = 0; p < pts.size(); ++p) {
    std::vector<double> x, y;
    for (const auto& e : ga.elements) x.push_back(hyp3::displacement(e.g, pts[p]));
    for (const auto& e : gb.elements) y.push_back(hyp3::displacement(e.g, opt_h.sampling.points[p]));
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - y[i]) < 1e-9);
  }
}

TEST_CASE("tester input errors and budget") {
  const GroupFile g = fixtures::schottky_group();
  MargulisOptions opt;
  opt.depth = 3;
  opt.sampling.count = 4;
  opt.budget = 50;
  CHECK_THROWS_AS(margulis_test(g, opt), BudgetExceeded);
  opt.budget = kDefaultBudget;
  opt.mu = 0.0;
  CHECK_THROWS_AS(margulis_test(g, opt), InputError);
  opt.mu = 0.3;
  opt.depth = 0;
  CHECK_THROWS_AS(margulis_test(g, opt), InputError);
}

TEST_CASE("pipeline 286") {
  const PipelineTrace t = pipeline_286(Interval::decimal("0.286"));
  CHECK(t.verdict == PipelineVerdict::Contradiction);
  const Interval sum = t.steps.back().value;
  CHECK(sum.lo() > 2.0006);
  CHECK(sum.hi() < 2.0009);
  CHECK(t.steps[1].value.hi() < 0.8227);
  CHECK(pipeline_286(Interval::decimal("0.2")).verdict == PipelineVerdict::Contradiction);
  CHECK(pipeline_286(Interval::decimal("0.35")).verdict == PipelineVerdict::NoContradiction);
  CHECK_THROWS_AS(pipeline_286(Interval(0.0)), DomainError);
  CHECK_THROWS_AS(pipeline_286(Interval(-0.1)), DomainError);

  // sum decreases in nu on a grid
  double prev = INFINITY;
  for (int k = 1; k <= 40; ++k) {
    const double s = pipeline_286(Interval(0.01 * k)).steps.back().value.mid();
    CHECK(s < prev);
    prev = s;
  }
  CHECK(nlohmann::json::parse(t.to_json())["verdict"] == "Contradiction");
  CHECK(t.to_text().find("verdict: Contradiction") != std::string::npos);
}

TEST_CASE("pipeline 292") {
  const PipelineTrace t = pipeline_292();
  CHECK(t.verdict == PipelineVerdict::Verified);
  const Interval e = t.steps[2].value;
  const Interval f = t.steps[3].value;
  CHECK(e.lo() > 0.5008);
  CHECK(e.hi() < 0.5011);
  CHECK(f.lo() > 0.594);
  CHECK(f.hi() < 0.596);
  CHECK(pipeline_292(Interval::decimal("0.35")).verdict == PipelineVerdict::Refuted);
  CHECK(pipeline_292(Interval(1e-6)).verdict == PipelineVerdict::Verified);
  CHECK_THROWS_AS(pipeline_292(Interval(0.0)), DomainError);
}
