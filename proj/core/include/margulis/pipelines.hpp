#pragma once

#include <string>
#include <vector>

#include "margulis/interval.hpp"

namespace margulis {

enum class PipelineVerdict { Contradiction, NoContradiction, Verified, Refuted, Undecided };

std::string to_string(PipelineVerdict v);

struct TraceStep {
  std::string label;
  certnum::Interval value;
  std::string note;
};

struct PipelineTrace {
  std::string name;
  certnum::Interval parameter;
  std::vector<TraceStep> steps;
  PipelineVerdict verdict = PipelineVerdict::Undecided;

  std::string to_text() const;
  std::string to_json() const;
};

/// Short-commutator chain for a candidate bound nu > 0:
/// phi(nu)/2 + nu, D1 = exp(2 nu), D2 = exp(2 (phi(nu)/2 + nu)) and
/// g(D1) + g(D2). Contradiction when the sum is certified > 2.
/// Throws DomainError unless nu > 0.
PipelineTrace pipeline_286(const certnum::Interval& nu);

/// The two strict inequalities 2 / (1 + exp phi(mu)) > 1/2 and
/// 1/(1 + e^{2 mu}) + 1/(1 + e^{4 mu}) > 1/2, plus the displacement
/// bookkeeping d(x^2) <= 2 mu, d(y x^2 y^-1) <= 4 mu. Verified when both hold.
/// Throws DomainError unless mu > 0.
PipelineTrace pipeline_292(const certnum::Interval& mu = certnum::Interval::decimal("0.292"));

}  // namespace margulis
