#include "margulis/pipelines.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "margulis/certnum.hpp"
#include "margulis/errors.hpp"
#include "margulis/hyp3.hpp"

namespace margulis {

using certnum::Interval;

std::string to_string(PipelineVerdict v) {
  switch (v) {
    case PipelineVerdict::Contradiction: return "Contradiction";
    case PipelineVerdict::NoContradiction: return "NoContradiction";
    case PipelineVerdict::Verified: return "Verified";
    case PipelineVerdict::Refuted: return "Refuted";
    case PipelineVerdict::Undecided: return "Undecided";
  }
  return "?";
}

PipelineTrace pipeline_286(const Interval& nu) {
  if (!(nu.lo() > 0.0)) throw DomainError("pipeline needs nu > 0");
  PipelineTrace tr{"short commutator chain", nu, {}, PipelineVerdict::Undecided};
  const Interval two(2.0);
  const Interval phi = hyp3::phi(nu);
  const Interval conj = phi / two + nu;
  const Interval d1 = certnum::exp(two * nu);
  const Interval d2 = certnum::exp(two * conj);
  const Interval g1 = certnum::g_func(d1);
  const Interval g2 = certnum::g_func(d2);
  const Interval sum = g1 + g2;
  tr.steps = {
      {"phi(nu)", phi, "bound on min(d(xy) + d(yx), d(xy^-1) + d(y^-1 x))"},
      {"phi(nu)/2 + nu", conj, "bound on the displacement of the conjugate y x y^-1"},
      {"D1 = exp(2 nu)", d1, ""},
      {"D2 = exp(2 (phi(nu)/2 + nu))", d2, ""},
      {"g(D1)", g1, ""},
      {"g(D2)", g2, ""},
      {"g(D1) + g(D2)", sum, "contradiction when > 2"},
  };
  if (sum.certainly_gt(two)) tr.verdict = PipelineVerdict::Contradiction;
  else if (sum.certainly_le(two)) tr.verdict = PipelineVerdict::NoContradiction;
  return tr;
}

PipelineTrace pipeline_292(const Interval& mu) {
  if (!(mu.lo() > 0.0)) throw DomainError("pipeline needs mu > 0");
  PipelineTrace tr{"non-fibered commutator chain", mu, {}, PipelineVerdict::Undecided};
  const Interval one(1.0);
  const Interval two(2.0);
  const Interval half = Interval::ratio(1, 2);
  const Interval e_val = two / (one + certnum::exp(hyp3::phi(mu)));
  const Interval f_val = one / (one + certnum::exp(two * mu)) + one / (one + certnum::exp(Interval(4.0) * mu));
  tr.steps = {
      {"d(x^2) <= 2 mu", two * mu, "displacement of the square"},
      {"d(y x^2 y^-1) <= 4 mu", Interval(4.0) * mu, "conjugate of the square"},
      {"2 / (1 + exp phi(mu))", e_val, "must exceed 1/2"},
      {"1/(1 + e^{2 mu}) + 1/(1 + e^{4 mu})", f_val, "must exceed 1/2"},
  };
  const bool e_ok = e_val.certainly_gt(half);
  const bool f_ok = f_val.certainly_gt(half);
  if (e_ok && f_ok) tr.verdict = PipelineVerdict::Verified;
  else if (e_val.certainly_le(half) || f_val.certainly_le(half)) tr.verdict = PipelineVerdict::Refuted;
  return tr;
}

std::string PipelineTrace::to_text() const {
  std::ostringstream out;
  out << name << " at " << parameter.to_string(12) << '\n';
  std::size_t width = 0;
  for (const TraceStep& s : steps) width = std::max(width, s.label.size());
  for (const TraceStep& s : steps) {
    out << "  " << s.label << std::string(width - s.label.size() + 2, ' ') << s.value.to_string(12);
    if (!s.note.empty()) out << "  " << s.note;
    out << '\n';
  }
  out << "verdict: " << to_string(verdict) << '\n';
  return out.str();
}

std::string PipelineTrace::to_json() const {
  using nlohmann::json;
  json doc;
  doc["name"] = name;
  doc["parameter"] = {parameter.lo(), parameter.hi()};
  doc["steps"] = json::array();
  for (const TraceStep& s : steps) {
    doc["steps"].push_back({{"label", s.label}, {"lo", s.value.lo()}, {"hi", s.value.hi()}, {"note", s.note}});
  }
  doc["verdict"] = to_string(verdict);
  return doc.dump(2);
}

}  // namespace margulis
