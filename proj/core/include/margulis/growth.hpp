#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "margulis/hyp3.hpp"

namespace margulis::growth {

inline constexpr double kDefaultDedupEps = 1e-9;

struct BallElement {
  hyp3::Isometry g;
  std::string word;  // shortlex-first shortest word; 'a' = generator 0, 'A' its inverse
};

/// Distinct elements of word length <= depth, in order of discovery.
struct WordBall {
  std::vector<BallElement> elements;  // elements[0] is the identity
  std::vector<std::size_t> counts;    // b_0 .. b_depth
  std::size_t collision_warnings = 0; // pairs closer than 10 * tol but not identified
  bool include_inverses = false;
  double dedup_eps = kDefaultDedupEps;

  int depth() const { return static_cast<int>(counts.size()) - 1; }
};

/// Two matrices name the same element when their projective entrywise
/// distance is at most dedup_eps * max(1, |entries|).
WordBall ball_sizes(std::span<const hyp3::Isometry> gens, int depth, bool include_inverses,
                    double dedup_eps = kDefaultDedupEps);

/// Generator letter for index i: 'a' + i; inverses are uppercase.
char generator_letter(std::size_t i, bool inverse = false);
/// Product of the letters of `word`, left to right.
hyp3::Isometry evaluate_word(std::span<const hyp3::Isometry> gens, std::string_view word);

struct OmegaEstimate {
  std::vector<double> roots;   // b_k^{1/k}, k = 1..m
  std::vector<double> ratios;  // b_k / b_{k-1}, k = 1..m
  double estimate = 0.0;       // b_m / b_{m-1}
};

/// Requires depth >= 2.
OmegaEstimate omega_estimate(const WordBall& ball);

/// log(omega) / (dim - 1).
double displacement_lower_bound(double omega, int dim);

}  // namespace margulis::growth
