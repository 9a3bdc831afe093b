// margulis: command-line front end for the core library.
//
// Exit codes: 0 when every verdict is favourable (verified / no violations),
// 1 for refuted checks or violations found, 2 for input or budget errors.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "margulis/certnum.hpp"
#include "margulis/coset_tree.hpp"
#include "margulis/errors.hpp"
#include "margulis/growth.hpp"
#include "margulis/gtree.hpp"
#include "margulis/hyp3.hpp"
#include "margulis/margulis.hpp"
#include "margulis/pipelines.hpp"

using namespace margulis;
using nlohmann::json;

namespace {

int cmd_verify_constants(bool as_json) {
  const auto report = certnum::verify_constants();
  std::cout << (as_json ? report.to_json() + "\n" : report.to_text());
  return report.all_verified() ? 0 : 1;
}

int cmd_phi(const std::string& t, bool as_json) {
  const certnum::Interval enc = hyp3::phi(certnum::Interval::decimal(t));
  const double value = hyp3::phi(std::stod(t));
  if (as_json) {
    std::cout << json{{"t", t}, {"phi", value}, {"lo", enc.lo()}, {"hi", enc.hi()}}.dump(2) << '\n';
  } else {
    std::cout << std::setprecision(15) << "phi(" << t << ") = " << value << "\n  enclosure " << enc.to_string(15)
              << '\n';
  }
  return 0;
}

int cmd_growth(const std::string& path, int depth, bool inverses, bool as_json) {
  const GroupFile g = GroupFile::load(path);
  const auto ball = growth::ball_sizes(g.generators, depth, inverses, g.tolerances.dedup_eps);
  growth::OmegaEstimate om;
  if (depth >= 2) om = growth::omega_estimate(ball);
  if (as_json) {
    json doc{{"group", g.name}, {"depth", depth}, {"include_inverses", inverses}, {"counts", ball.counts},
             {"collision_warnings", ball.collision_warnings}};
    if (depth >= 2) {
      doc["roots"] = om.roots;
      doc["ratios"] = om.ratios;
      doc["omega_estimate"] = om.estimate;
      doc["displacement_lower_bound"] = growth::displacement_lower_bound(std::max(1.0, om.estimate), 3);
    }
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  std::cout << "group " << (g.name.empty() ? "(unnamed)" : g.name) << ", "
            << (inverses ? "inverse-closed" : "positive") << " words\n";
  std::cout << std::setw(4) << "m" << std::setw(14) << "b_m" << std::setw(14) << "b_m^(1/m)" << std::setw(14)
            << "b_m/b_(m-1)" << '\n';
  for (int m = 0; m <= depth; ++m) {
    std::cout << std::setw(4) << m << std::setw(14) << ball.counts[m];
    if (m >= 1 && depth >= 2) {
      std::cout << std::fixed << std::setprecision(6) << std::setw(14) << om.roots[m - 1] << std::setw(14)
                << om.ratios[m - 1] << std::defaultfloat;
    }
    std::cout << '\n';
  }
  if (depth >= 2) {
    std::cout << "omega estimate " << om.estimate << ", log(omega)/2 = "
              << growth::displacement_lower_bound(std::max(1.0, om.estimate), 3) << '\n';
  }
  if (ball.collision_warnings) std::cout << "warning: " << ball.collision_warnings << " near-collisions\n";
  return 0;
}

int cmd_margulis(const std::string& path, const MargulisOptions& opt, bool as_json) {
  const GroupFile g = GroupFile::load(path);
  const MargulisReport r = margulis_test(g, opt);
  std::cout << (as_json ? r.to_json() + "\n" : r.to_text());
  return r.violation_count == 0 ? 0 : 1;
}

int cmd_tree_coset(int radius, int ox, int oy, const std::string& out) {
  const auto ct = gtree::build_coset_tree(radius, ox, oy);
  const auto& t = ct.action.tree();
  std::cout << "coset tree window of radius " << radius << ": " << t.num_vertices() << " vertices, "
            << t.edges().size() << " edges\n";
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw InputError("cannot write " + out);
    f << t.serialize();
    std::ofstream labels(out + ".labels");
    for (std::size_t v = 0; v < ct.labels.size(); ++v) labels << v << ' ' << ct.labels[v] << '\n';
  }
  return 0;
}

int cmd_tree_pingpong(int radius, int ox, int oy, const std::string& g0, const std::string& g1, int power,
                      int word_len) {
  const auto ct = gtree::build_coset_tree(radius, ox, oy);
  const auto r = gtree::ping_pong_witness(ct.action, g0, g1, power);
  std::cout << "Per(g0) " << r.per0.size() << " vertices, Per(g1) " << r.per1.size() << " vertices, arc length "
            << r.arc.size() << '\n'
            << "s0 = " << ct.labels[r.s0] << ", s1 = " << ct.labels[r.s1] << '\n'
            << "|Omega0| = " << r.omega0.size() << ", |Omega1| = " << r.omega1.size() << '\n';
  std::cout << std::setw(8) << "player" << std::setw(8) << "power" << std::setw(10) << "checked"
            << std::setw(10) << "outside" << std::setw(12) << "violations" << '\n';
  for (const auto& row : r.table) {
    std::cout << std::setw(8) << row.player << std::setw(8) << row.power << std::setw(10) << row.checked
              << std::setw(10) << row.outside_window << std::setw(12) << row.violations << '\n';
  }
  const auto words = gtree::alternating_words_nontrivial(ct.action, g0, g1, word_len);
  std::cout << "reduced words of length <= " << word_len << ": " << words.words_checked << " checked, "
            << words.trivial << " trivial, " << words.inconclusive << " inconclusive\n";
  const bool ok = r.certified() && words.ok();
  std::cout << (ok ? "certified" : "not certified") << '\n';
  return ok ? 0 : 1;
}

int cmd_tree_xy(int radius, int ox, int oy, int n, int word_len) {
  const auto ct = gtree::build_coset_tree(radius, ox, oy);
  const auto words = gtree::reduced_words("xy", word_len);
  const auto r = gtree::xy_decomposition(ct.action, "x", "y", ct.base_edge, n, words);
  std::cout << "e = " << ct.labels[r.v_x] << " -- " << ct.labels[r.v_y] << '\n'
            << "elements " << words.size() << ": X " << r.count_x << ", Y " << r.count_y << ", Stab "
            << r.count_stab << '\n'
            << "checks: partition " << r.checks_partition << ", inclusion " << r.checks_inclusion
            << ", disjointness " << r.checks_disjoint << '\n';
  for (const auto& v : r.violations) std::cout << "violation: " << v << '\n';
  return r.ok() ? 0 : 1;
}

int cmd_pipeline(const std::string& nu, const std::string& mu, bool as_json) {
  PipelineTrace t = nu.empty() ? (mu.empty() ? pipeline_292() : pipeline_292(certnum::Interval::decimal(mu)))
                               : pipeline_286(certnum::Interval::decimal(nu));
  std::cout << (as_json ? t.to_json() + "\n" : t.to_text());
  return t.verdict == PipelineVerdict::Contradiction || t.verdict == PipelineVerdict::Verified ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Displacement, tree-action and Margulis-number computations for Kleinian groups"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit a JSON document instead of text");

  auto* vc = app.add_subcommand("verify-constants", "Certify the scalar constants");

  std::string phi_t;
  auto* phi = app.add_subcommand("phi", "Evaluate phi(t)");
  phi->add_option("t", phi_t, "Argument (decimal)")->required();

  std::string group_path;
  int depth = 4;
  bool inverses = false;
  auto* gr = app.add_subcommand("growth", "Word-ball counts and growth estimates");
  gr->add_option("--group", group_path, "Group file (JSON)")->required()->check(CLI::ExistingFile);
  gr->add_option("--depth", depth, "Maximal word length")->check(CLI::Range(0, 64));
  gr->add_flag("--inverses", inverses, "Count words in the generators and their inverses");

  MargulisOptions mopt;
  auto* mt = app.add_subcommand("margulis-test", "Search for short noncommuting pairs");
  mt->add_option("--group", group_path, "Group file (JSON)")->required()->check(CLI::ExistingFile);
  mt->add_option("--mu", mopt.mu, "Candidate Margulis number");
  mt->add_option("--depth", mopt.depth, "Maximal word length");
  mt->add_option("--points", mopt.sampling.count, "Number of sample points");
  mt->add_option("--radius", mopt.sampling.radius, "Sampling radius about (0,0,1)");
  mt->add_option("--seed", mopt.sampling.seed, "Sampling seed");
  mt->add_option("--budget", mopt.budget, "Work budget");
  mt->add_option("--max-violations", mopt.max_violations, "Violations listed in full");

  auto* tree = app.add_subcommand("tree", "Actions on the coset tree of <x> * <y>");
  tree->require_subcommand(1);
  int radius = 6, order_x = 0, order_y = 0;
  auto add_window = [&](CLI::App* sub) {
    sub->add_option("--depth", radius, "Window radius (word length)");
    sub->add_option("--order-x", order_x, "Order of x (0 = infinite)");
    sub->add_option("--order-y", order_y, "Order of y (0 = infinite)");
  };
  std::string out_path;
  auto* coset = tree->add_subcommand("coset", "Build the window and optionally write it");
  add_window(coset);
  coset->add_option("--out", out_path, "Tree file to write");

  std::string g0 = "x", g1 = "y";
  int power = 3, word_len = 6;
  auto* pp = tree->add_subcommand("pingpong", "Ping-pong witness for two elements");
  add_window(pp);
  pp->add_option("--g0", g0, "First element (word in x, y, X, Y)");
  pp->add_option("--g1", g1, "Second element");
  pp->add_option("--power", power, "Largest |n| checked");
  pp->add_option("--words", word_len, "Longest reduced word checked for triviality");

  int n = 1;
  auto* xy = tree->add_subcommand("xydecomp", "Edge decomposition for x, y");
  add_window(xy);
  xy->add_option("-n", n, "Power bound");
  xy->add_option("--words", word_len, "Longest element word");

  std::string nu, mu;
  auto* pl = app.add_subcommand("pipeline", "Certified commutator chains");
  auto* nu_opt = pl->add_option("--nu", nu, "Run the short-commutator chain at nu");
  pl->add_option("--mu", mu, "Run the non-fibered chain at mu (default 0.292)")->excludes(nu_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*vc) return cmd_verify_constants(as_json);
    if (*phi) return cmd_phi(phi_t, as_json);
    if (*gr) return cmd_growth(group_path, depth, inverses, as_json);
    if (*mt) return cmd_margulis(group_path, mopt, as_json);
    if (*coset) return cmd_tree_coset(radius, order_x, order_y, out_path);
    if (*pp) return cmd_tree_pingpong(radius, order_x, order_y, g0, g1, power, word_len);
    if (*xy) return cmd_tree_xy(radius, order_x, order_y, n, word_len);
    if (*pl) return cmd_pipeline(nu, mu, as_json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
