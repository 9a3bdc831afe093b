#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "margulis/hyp3.hpp"

namespace margulis {

struct Tolerances {
  double det_tol = hyp3::kDefaultDetTol;
  double dedup_eps = 1e-9;
  double commute_tol = 1e-8;
};

/// A finitely generated matrix group as read from a JSON group file. The
/// claims are declarations only; nothing here checks them.
struct GroupFile {
  std::string name;
  std::vector<hyp3::Isometry> generators;
  bool claims_discrete = false;
  bool claims_torsion_free = false;
  Tolerances tolerances;

  /// Throws InputError on malformed documents or invalid matrices.
  static GroupFile parse(std::string_view json_text);
  static GroupFile load(const std::filesystem::path& path);
  std::string to_json() const;
};

struct CommuteResult {
  bool commute;
  double deviation;  // max entry norm of [x, y] -/+ I, best sign
};

CommuteResult commutes(const hyp3::Isometry& x, const hyp3::Isometry& y,
                       double tol = Tolerances{}.commute_tol);

/// Either explicit points, or `count` low-discrepancy points in the
/// hyperbolic ball of radius `radius` about (0,0,1). The first sampled point
/// is always (0,0,1) itself.
struct SamplingSpec {
  std::vector<hyp3::PointH3> points;
  std::size_t count = 100;
  double radius = 2.0;
  std::uint64_t seed = 0;
};

std::vector<hyp3::PointH3> sample_points(const SamplingSpec& spec);

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct MargulisOptions {
  double mu = 0.292;
  int depth = 4;
  SamplingSpec sampling;
  /// Cap on displacement evaluations plus examined (pair, point) combinations.
  std::uint64_t budget = kDefaultBudget;
  std::size_t max_violations = 1000;
};

struct Violation {
  std::string word_x;
  std::string word_y;
  std::size_t point_index = 0;
  hyp3::PointH3 point = hyp3::PointH3::origin();
  double d_x = 0.0;
  double d_y = 0.0;
  double deviation = 0.0;
};

struct MargulisReport {
  std::string group;
  double mu = 0.0;
  int depth = 0;
  std::size_t sample_points = 0;
  std::size_t elements = 0;       // nontrivial elements enumerated
  std::vector<Violation> violations;
  std::size_t violation_count = 0;
  bool truncated = false;         // more violations than max_violations
  double empirical_min = 0.0;     // +inf when no noncommuting pair exists
  std::string empirical_min_x;
  std::string empirical_min_y;
  std::uint64_t work = 0;
  bool claims_discrete = false;
  bool claims_torsion_free = false;
  std::vector<std::string> disclaimers;

  std::string to_text() const;
  std::string to_json() const;
};

/// Throws BudgetExceeded or InputError.
MargulisReport margulis_test(const GroupFile& group, const MargulisOptions& options);

struct Revalidation {
  bool ok;
  double d_x;
  double d_y;
  double deviation;
  double max_error;
};

/// Recomputes a violation from its words and point alone.
Revalidation revalidate(const GroupFile& group, const Violation& v, double tol = 1e-9);

}  // namespace margulis
