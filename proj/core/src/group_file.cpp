#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "margulis/errors.hpp"
#include "margulis/margulis.hpp"

namespace margulis {

using hyp3::Complex;
using hyp3::Isometry;
using nlohmann::json;

namespace {

Complex complex_field(const json& gen, const char* key, std::size_t index) {
  const std::string where = "generator " + std::to_string(index) + " entry '" + key + "'";
  if (!gen.contains(key)) throw InputError(where + " is missing");
  const json& v = gen.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw InputError(where + " must be a [re, im] pair of numbers");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

double positive_field(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number() || !(v.get<double>() > 0.0)) {
    throw InputError(std::string("tolerance '") + key + "' must be a positive number");
  }
  return v.get<double>();
}

bool bool_field(const json& doc, const char* key) {
  if (!doc.contains(key)) return false;
  if (!doc.at(key).is_boolean()) throw InputError(std::string("'") + key + "' must be a boolean");
  return doc.at(key).get<bool>();
}

}  // namespace

GroupFile GroupFile::parse(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("group file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("group file must be a JSON object");

  GroupFile out;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw InputError("'name' must be a string");
    out.name = doc["name"].get<std::string>();
  }
  out.claims_discrete = bool_field(doc, "claims_discrete");
  out.claims_torsion_free = bool_field(doc, "claims_torsion_free");
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) throw InputError("'tolerances' must be an object");
    out.tolerances.det_tol = positive_field(t, "det_tol", out.tolerances.det_tol);
    out.tolerances.dedup_eps = positive_field(t, "dedup_eps", out.tolerances.dedup_eps);
    out.tolerances.commute_tol = positive_field(t, "commute_tol", out.tolerances.commute_tol);
  }

  if (!doc.contains("generators") || !doc["generators"].is_array()) {
    throw InputError("'generators' must be an array");
  }
  const json& gens = doc["generators"];
  if (gens.empty()) throw InputError("a group file needs at least one generator");
  if (gens.size() > 26) throw InputError("at most 26 generators are supported");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!gens[i].is_object()) throw InputError("generator " + std::to_string(i) + " must be an object");
    try {
      out.generators.emplace_back(complex_field(gens[i], "a", i), complex_field(gens[i], "b", i),
                                  complex_field(gens[i], "c", i), complex_field(gens[i], "d", i),
                                  out.tolerances.det_tol);
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      throw InputError("generator " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

GroupFile GroupFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open group file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

std::string GroupFile::to_json() const {
  json doc;
  doc["name"] = name;
  doc["generators"] = json::array();
  for (const Isometry& g : generators) {
    auto pair = [](Complex z) { return json::array({z.real(), z.imag()}); };
    doc["generators"].push_back({{"a", pair(g.a())}, {"b", pair(g.b())}, {"c", pair(g.c())}, {"d", pair(g.d())}});
  }
  doc["claims_discrete"] = claims_discrete;
  doc["claims_torsion_free"] = claims_torsion_free;
  doc["tolerances"] = {{"det_tol", tolerances.det_tol},
                       {"dedup_eps", tolerances.dedup_eps},
                       {"commute_tol", tolerances.commute_tol}};
  return doc.dump(2);
}

}  // namespace margulis
