#include "margulis/margulis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "margulis/errors.hpp"
#include "margulis/growth.hpp"

namespace margulis {

using hyp3::Isometry;
using hyp3::PointH3;

CommuteResult commutes(const Isometry& x, const Isometry& y, double tol) {
  const Isometry c = x * y * x.inverse() * y.inverse();
  const double dev = c.projective_distance(Isometry::identity());
  return {dev <= tol, dev};
}

namespace {

double halton(std::uint64_t index, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

bool shortlex_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::vector<PointH3> sample_points(const SamplingSpec& spec) {
  if (!spec.points.empty()) return spec.points;
  if (spec.count == 0) throw InputError("need at least one sample point");
  if (!(spec.radius >= 0.0)) throw InputError("sampling radius must be nonnegative");
  std::vector<PointH3> out{PointH3::origin()};
  for (std::size_t i = 1; i < spec.count; ++i) {
    const std::uint64_t k = spec.seed + i;
    const double polar = std::acos(1.0 - 2.0 * halton(k, 2));
    const double azimuth = 2.0 * std::numbers::pi * halton(k, 3);
    const double r = spec.radius * std::cbrt(halton(k, 5));
    // Tilt the vertical geodesic ray of length r towards (polar, azimuth).
    const Isometry rot = Isometry::rotation_at_origin(std::numbers::pi / 2, azimuth + std::numbers::pi / 2, polar);
    out.push_back(hyp3::apply(rot, PointH3(0.0, 0.0, std::exp(r))));
  }
  return out;
}

MargulisReport margulis_test(const GroupFile& group, const MargulisOptions& opt) {
  if (!(opt.mu > 0.0)) throw InputError("mu must be positive");
  if (opt.depth < 1) throw InputError("depth must be at least 1");
  const std::vector<PointH3> points = sample_points(opt.sampling);
  const double tol = group.tolerances.commute_tol;

  MargulisReport rep;
  rep.group = group.name;
  rep.mu = opt.mu;
  rep.depth = opt.depth;
  rep.sample_points = points.size();
  rep.claims_discrete = group.claims_discrete;
  rep.claims_torsion_free = group.claims_torsion_free;
  rep.empirical_min = INFINITY;

  const growth::WordBall ball =
      growth::ball_sizes(group.generators, opt.depth, /*include_inverses=*/true, group.tolerances.dedup_eps);
  // Drop the identity and anything numerically equal to it.
  std::vector<const growth::BallElement*> elems;
  for (const auto& e : ball.elements) {
    if (e.g.projective_distance(Isometry::identity()) > tol) elems.push_back(&e);
  }
  rep.elements = elems.size();
  const std::size_t n = elems.size();

  auto charge = [&](std::uint64_t units) {
    rep.work += units;
    if (rep.work > opt.budget) {
      throw BudgetExceeded("work budget of " + std::to_string(opt.budget) + " exceeded (" +
                           std::to_string(n) + " elements, " + std::to_string(points.size()) + " points)");
    }
  };

  std::unordered_map<std::uint64_t, double> deviation_cache;
  auto deviation = [&](std::size_t i, std::size_t j) {
    const std::uint64_t key = static_cast<std::uint64_t>(std::min(i, j)) * n + std::max(i, j);
    auto it = deviation_cache.find(key);
    if (it != deviation_cache.end()) return it->second;
    charge(1);
    const double dev = commutes(elems[i]->g, elems[j]->g, tol).deviation;
    deviation_cache.emplace(key, dev);
    return dev;
  };

  std::vector<double> disp(n);
  std::vector<std::size_t> order(n);
  for (std::size_t p = 0; p < points.size(); ++p) {
    charge(n);
    for (std::size_t i = 0; i < n; ++i) disp[i] = hyp3::displacement(elems[i]->g, points[p]);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return disp[a] < disp[b]; });

    // Smallest max(d_x, d_y) over noncommuting pairs: first j in displacement
    // order with a noncommuting predecessor.
    bool found = false;
    for (std::size_t jj = 1; jj < n && !found; ++jj) {
      if (disp[order[jj]] >= rep.empirical_min) break;
      for (std::size_t ii = 0; ii < jj; ++ii) {
        if (deviation(order[ii], order[jj]) > tol) {
          rep.empirical_min = disp[order[jj]];
          rep.empirical_min_x = elems[order[ii]]->word;
          rep.empirical_min_y = elems[order[jj]]->word;
          found = true;
          break;
        }
      }
    }

    std::size_t below = 0;
    while (below < n && disp[order[below]] < opt.mu) ++below;
    for (std::size_t jj = 1; jj < below; ++jj) {
      charge(jj);
      for (std::size_t ii = 0; ii < jj; ++ii) {
        const std::size_t i = order[ii];
        const std::size_t j = order[jj];
        const double dev = deviation(i, j);
        if (dev <= tol) continue;
        ++rep.violation_count;
        if (rep.violations.size() >= opt.max_violations) {
          rep.truncated = true;
          continue;
        }
        const bool swap = shortlex_less(elems[j]->word, elems[i]->word);
        const std::size_t x = swap ? j : i;
        const std::size_t y = swap ? i : j;
        rep.violations.push_back({elems[x]->word, elems[y]->word, p, points[p], disp[x], disp[y], dev});
      }
    }
  }

  std::sort(rep.violations.begin(), rep.violations.end(), [](const Violation& a, const Violation& b) {
    if (a.word_x != b.word_x) return shortlex_less(a.word_x, b.word_x);
    if (a.word_y != b.word_y) return shortlex_less(a.word_y, b.word_y);
    return a.point_index < b.point_index;
  });

  rep.disclaimers = {
      "no discreteness check: generators are treated as formal matrices",
      "absence of violations is evidence only for words of length <= " + std::to_string(opt.depth) +
          " at the " + std::to_string(points.size()) + " sampled points",
  };
  if (!group.claims_discrete) rep.disclaimers.push_back("group file does not claim discreteness");
  if (!group.claims_torsion_free) rep.disclaimers.push_back("group file does not claim torsion-freeness");
  return rep;
}

Revalidation revalidate(const GroupFile& group, const Violation& v, double tol) {
  const Isometry x = growth::evaluate_word(group.generators, v.word_x);
  const Isometry y = growth::evaluate_word(group.generators, v.word_y);
  Revalidation out{};
  out.d_x = hyp3::displacement(x, v.point);
  out.d_y = hyp3::displacement(y, v.point);
  out.deviation = commutes(x, y, group.tolerances.commute_tol).deviation;
  out.max_error = std::max({std::abs(out.d_x - v.d_x), std::abs(out.d_y - v.d_y),
                            std::abs(out.deviation - v.deviation)});
  out.ok = out.max_error <= tol;
  return out;
}

namespace {

std::string word_text(const std::string& w) { return w.empty() ? "1" : w; }

}  // namespace

std::string MargulisReport::to_text() const {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "group            " << (group.empty() ? "(unnamed)" : group) << '\n'
      << "mu               " << mu << '\n'
      << "depth            " << depth << '\n'
      << "sample points    " << sample_points << '\n'
      << "elements         " << elements << '\n'
      << "work             " << work << '\n'
      << "empirical min    " << empirical_min;
  if (std::isfinite(empirical_min)) out << "  (" << empirical_min_x << ", " << empirical_min_y << ")";
  out << '\n' << "violations       " << violation_count << (truncated ? " (list truncated)" : "") << '\n';
  if (!violations.empty()) {
    out << std::left << std::setw(14) << "  x" << std::setw(14) << "y" << std::setw(8) << "point"
        << std::setw(14) << "d_P(x)" << std::setw(14) << "d_P(y)" << "deviation\n";
    for (const Violation& v : violations) {
      out << "  " << std::setw(12) << word_text(v.word_x) << std::setw(14) << word_text(v.word_y)
          << std::setw(8) << v.point_index << std::setw(14) << v.d_x << std::setw(14) << v.d_y
          << v.deviation << '\n';
    }
  }
  for (const std::string& d : disclaimers) out << "note: " << d << '\n';
  return out.str();
}

std::string MargulisReport::to_json() const {
  using nlohmann::json;
  json doc;
  doc["group"] = group;
  doc["mu"] = mu;
  doc["depth"] = depth;
  doc["sample_points"] = sample_points;
  doc["elements"] = elements;
  doc["work"] = work;
  doc["empirical_min"] = std::isfinite(empirical_min) ? json(empirical_min) : json(nullptr);
  doc["empirical_min_pair"] = json::array({empirical_min_x, empirical_min_y});
  doc["violation_count"] = violation_count;
  doc["truncated"] = truncated;
  doc["violations"] = json::array();
  for (const Violation& v : violations) {
    doc["violations"].push_back({{"word_x", v.word_x},
                                 {"word_y", v.word_y},
                                 {"point_index", v.point_index},
                                 {"point", json::array({v.point.z_re(), v.point.z_im(), v.point.t()})},
                                 {"d_x", v.d_x},
                                 {"d_y", v.d_y},
                                 {"commutator_deviation", v.deviation}});
  }
  doc["claims_discrete"] = claims_discrete;
  doc["claims_torsion_free"] = claims_torsion_free;
  doc["disclaimers"] = disclaimers;
  return doc.dump(2);
}

}  // namespace margulis
