#include "margulis/growth.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "margulis/errors.hpp"

namespace margulis::growth {

using hyp3::Isometry;

char generator_letter(std::size_t i, bool inverse) {
  if (i >= 26) throw InputError("at most 26 generators are supported");
  return static_cast<char>((inverse ? 'A' : 'a') + i);
}

Isometry evaluate_word(std::span<const Isometry> gens, std::string_view word) {
  Isometry out = Isometry::identity();
  for (char c : word) {
    const bool inverse = c >= 'A' && c <= 'Z';
    const std::size_t i = static_cast<std::size_t>(inverse ? c - 'A' : c - 'a');
    if (i >= gens.size()) throw InputError(std::string("unknown generator letter: ") + c);
    out = out * (inverse ? gens[i].inverse() : gens[i]);
  }
  return out;
}

namespace {

// Elements indexed by Re(a); a sign flip of a near-zero entry is covered by
// also querying around -Re(a).
class ElementTable {
 public:
  explicit ElementTable(double eps) : eps_(eps) {}

  double tolerance(const Isometry& g) const { return eps_ * std::max(1.0, g.max_abs()); }

  // Returns true when g is new; counts near misses in `warnings`.
  bool insert_if_new(const Isometry& g, std::size_t index, const std::vector<BallElement>& all,
                     std::size_t& warnings) {
    const double tol = tolerance(g);
    const double audit = 10.0 * tol;
    const double key = g.a().real();
    double nearest = INFINITY;
    for (double center : {key, -key}) {
      auto lo = by_key_.lower_bound(center - audit);
      auto hi = by_key_.upper_bound(center + audit);
      for (auto it = lo; it != hi; ++it) {
        nearest = std::min(nearest, all[it->second].g.projective_distance(g));
      }
      if (key == 0.0) break;
    }
    if (nearest <= tol) return false;
    if (nearest <= audit) ++warnings;
    by_key_.emplace(key, index);
    return true;
  }

 private:
  double eps_;
  std::multimap<double, std::size_t> by_key_;
};

}  // namespace

WordBall ball_sizes(std::span<const Isometry> gens, int depth, bool include_inverses,
                    double dedup_eps) {
  if (depth < 0) throw InputError("depth must be nonnegative");
  if (!(dedup_eps > 0.0)) throw InputError("dedup_eps must be positive");

  std::vector<std::pair<char, Isometry>> letters;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    letters.emplace_back(generator_letter(i), gens[i]);
    if (include_inverses) letters.emplace_back(generator_letter(i, true), gens[i].inverse());
  }

  WordBall ball;
  ball.include_inverses = include_inverses;
  ball.dedup_eps = dedup_eps;
  ElementTable table(dedup_eps);
  ball.elements.push_back({Isometry::identity(), ""});
  table.insert_if_new(ball.elements[0].g, 0, ball.elements, ball.collision_warnings);
  ball.counts.push_back(1);

  // Frontier processed in shortlex order and extended on the right keeps the
  // first-found word shortlex-minimal.
  std::size_t level_begin = 0;
  for (int k = 1; k <= depth; ++k) {
    const std::size_t level_end = ball.elements.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (const auto& [c, s] : letters) {
        Isometry g = ball.elements[i].g * s;
        if (table.insert_if_new(g, ball.elements.size(), ball.elements, ball.collision_warnings)) {
          ball.elements.push_back({g, ball.elements[i].word + c});
        }
      }
    }
    level_begin = level_end;
    ball.counts.push_back(ball.elements.size());
  }
  return ball;
}

OmegaEstimate omega_estimate(const WordBall& ball) {
  if (ball.depth() < 2) throw InputError("omega estimate needs depth >= 2");
  OmegaEstimate out;
  for (int k = 1; k <= ball.depth(); ++k) {
    const double bk = static_cast<double>(ball.counts[k]);
    out.roots.push_back(std::pow(bk, 1.0 / k));
    out.ratios.push_back(bk / static_cast<double>(ball.counts[k - 1]));
  }
  out.estimate = out.ratios.back();
  return out;
}

double displacement_lower_bound(double omega, int dim) {
  if (!(omega >= 1.0)) throw DomainError("omega must be >= 1");
  if (dim < 2) throw DomainError("dimension must be >= 2");
  return std::log(omega) / (dim - 1);
}

}  // namespace margulis::growth
