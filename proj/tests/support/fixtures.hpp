#pragma once

// Shared generators for the test suites: random trees with nontrivial
// automorphisms, brute-force tree oracles, and hyperbolic fixtures.

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "margulis/gtree.hpp"
#include "margulis/hyp3.hpp"
#include "margulis/margulis.hpp"

namespace fixtures {

using margulis::gtree::Edge;
using margulis::gtree::Tree;
using margulis::gtree::TreeAut;
using margulis::gtree::Vertex;
using margulis::hyp3::Complex;
using margulis::hyp3::Isometry;
using margulis::hyp3::PointH3;

// ---------------------------------------------------------------- trees

inline std::shared_ptr<const Tree> make_tree(int n, std::vector<Edge> edges) {
  return std::make_shared<const Tree>(Tree::from_edges(n, std::move(edges)));
}

inline std::shared_ptr<const Tree> path_tree(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return make_tree(n, e);
}

// Center 0 with `leaves` leaves 1..leaves.
inline std::shared_ptr<const Tree> star_tree(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  return make_tree(leaves + 1, e);
}

inline std::vector<Edge> random_tree_edges(std::mt19937_64& rng, int n) {
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    e.push_back({pick(rng), v});
  }
  return e;
}

// A random rooted tree copied k times under a common center, plus a few
// random extra leaves hung off the center: guarantees nontrivial symmetry.
inline std::shared_ptr<const Tree> symmetric_tree(std::mt19937_64& rng, int max_vertices) {
  std::uniform_int_distribution<int> copies_d(2, 4);
  const int copies = copies_d(rng);
  const int branch = std::max(1, (max_vertices - 1) / copies - 1);
  std::uniform_int_distribution<int> size_d(1, branch);
  const int m = size_d(rng);
  const std::vector<Edge> shape = random_tree_edges(rng, m);
  std::vector<Edge> e;
  int next = 1;
  for (int c = 0; c < copies; ++c) {
    const int base = next;
    e.push_back({0, base});
    for (const Edge& s : shape) e.push_back({base + s.u, base + s.v});
    next += m;
  }
  return make_tree(next, e);
}

// AHU canonical string of the subtree at v (parent p).
inline std::string canon(const Tree& t, Vertex v, Vertex p) {
  std::vector<std::string> kids;
  for (Vertex w : t.neighbors(v)) {
    if (w != p) kids.push_back(canon(t, w, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  return out + ")";
}

// Vertex centers of the tree (one or two).
inline std::vector<Vertex> centers(const Tree& t) {
  const int n = t.num_vertices();
  std::vector<int> deg(n);
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = t.degree(v);
    if (deg[v] <= 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<Vertex> next;
    for (Vertex v : layer) {
      for (Vertex w : t.neighbors(v)) {
        if (--deg[w] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  return layer;
}

// Uniform-ish random automorphism: fix the center, then at every vertex
// permute children within isomorphism classes. Never swaps a central edge,
// so no inversions.
inline std::vector<Vertex> random_automorphism_image(const Tree& t, std::mt19937_64& rng) {
  std::vector<Vertex> image(t.num_vertices(), -1);
  const std::vector<Vertex> c = centers(t);
  struct Job {
    Vertex src, dst, src_parent, dst_parent;
  };
  std::vector<Job> jobs;
  if (c.size() == 1) {
    jobs.push_back({c[0], c[0], -1, -1});
  } else {
    jobs.push_back({c[0], c[0], c[1], c[1]});
    jobs.push_back({c[1], c[1], c[0], c[0]});
  }
  while (!jobs.empty()) {
    Job j = jobs.back();
    jobs.pop_back();
    image[j.src] = j.dst;
    std::map<std::string, std::vector<Vertex>> src_kids;
    std::map<std::string, std::vector<Vertex>> dst_kids;
    for (Vertex w : t.neighbors(j.src)) {
      if (w != j.src_parent) src_kids[canon(t, w, j.src)].push_back(w);
    }
    for (Vertex w : t.neighbors(j.dst)) {
      if (w != j.dst_parent) dst_kids[canon(t, w, j.dst)].push_back(w);
    }
    for (auto& [key, srcs] : src_kids) {
      std::vector<Vertex> dsts = dst_kids.at(key);
      std::shuffle(dsts.begin(), dsts.end(), rng);
      for (std::size_t i = 0; i < srcs.size(); ++i) jobs.push_back({srcs[i], dsts[i], j.src, j.dst});
    }
  }
  return image;
}

inline TreeAut random_automorphism(const std::shared_ptr<const Tree>& t, std::mt19937_64& rng) {
  return TreeAut(t, random_automorphism_image(*t, rng));
}

// All-pairs distances by BFS from each vertex.
inline std::vector<std::vector<int>> distance_table(const Tree& t) {
  const int n = t.num_vertices();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (Vertex s = 0; s < n; ++s) {
    std::deque<Vertex> q{s};
    d[s][s] = 0;
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop_front();
      for (Vertex w : t.neighbors(v)) {
        if (d[s][w] < 0) {
          d[s][w] = d[s][v] + 1;
          q.push_back(w);
        }
      }
    }
  }
  return d;
}

// Random connected vertex set grown from a seed, avoiding `forbidden`.
inline std::vector<Vertex> random_connected_set(const Tree& t, std::mt19937_64& rng, int target,
                                                const std::vector<char>& forbidden) {
  std::vector<Vertex> candidates;
  for (Vertex v = 0; v < t.num_vertices(); ++v) {
    if (!forbidden[v]) candidates.push_back(v);
  }
  if (candidates.empty()) return {};
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  std::vector<Vertex> set{candidates[pick(rng)]};
  std::vector<char> in(t.num_vertices(), 0);
  in[set[0]] = 1;
  for (int step = 0; step < 4 * target && static_cast<int>(set.size()) < target; ++step) {
    std::uniform_int_distribution<std::size_t> from(0, set.size() - 1);
    Vertex v = set[from(rng)];
    auto nb = t.neighbors(v);
    std::uniform_int_distribution<std::size_t> k(0, nb.size() - 1);
    Vertex w = nb[k(rng)];
    if (in[w] || forbidden[w]) continue;
    in[w] = 1;
    set.push_back(w);
  }
  return set;
}

// ---------------------------------------------------------------- hyperbolic

inline PointH3 random_point(std::mt19937_64& rng, double spread = 2.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  return PointH3(u(rng), u(rng), std::exp(u(rng)));
}

inline Isometry random_isometry(std::mt19937_64& rng, double spread = 1.5) {
  std::uniform_real_distribution<double> u(-spread, spread);
  for (;;) {
    Complex a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
    if (std::abs(a) < 0.2) continue;
    Complex d = (1.0 + b * c) / a;
    return Isometry(a, b, c, d, 1e-9);
  }
}

// Loxodromic with a random axis near (0,0,1), translation in (0, max_len)
// and a random twist.
inline Isometry random_loxodromic_near_origin(std::mt19937_64& rng, double max_len) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Isometry core = Isometry::translation(max_len * (0.05 + 0.95 * u(rng)), M_PI * (2 * u(rng) - 1));
  const Isometry shift(1.0, Complex(0.6 * (2 * u(rng) - 1), 0.6 * (2 * u(rng) - 1)), 0.0, 1.0);
  const Isometry rot = Isometry::rotation_at_origin(M_PI * u(rng), 2 * M_PI * u(rng), 2 * M_PI * u(rng));
  const Isometry h = rot * shift;
  return h * core * h.inverse();
}

// Rejection sampler for d_P(g) <= nu < d_P(g^2) at P = (0,0,1).
inline Isometry sample_short_element(std::mt19937_64& rng, double nu) {
  const PointH3 o = PointH3::origin();
  for (;;) {
    const Isometry g = random_loxodromic_near_origin(rng, 1.2 * nu);
    if (margulis::hyp3::displacement(g, o) <= nu && nu < margulis::hyp3::displacement(g * g, o)) return g;
  }
}

// Schottky pair: diag(4, 1/4) and its conjugate by [[1,1],[1,2]].
inline std::vector<Isometry> schottky_pair() {
  const Isometry x = Isometry::diagonal(4.0);
  const Isometry h(1.0, 1.0, 1.0, 2.0);
  return {x, h * x * h.inverse()};
}

inline margulis::GroupFile schottky_group() {
  margulis::GroupFile g;
  g.name = "schottky";
  g.generators = schottky_pair();
  g.claims_discrete = true;
  g.claims_torsion_free = true;
  return g;
}

// Two loxodromics of translation length 0.02 and twist 2.5 along distinct
// axes through (0,0,1): tiny displacement there, far from commuting.
inline margulis::GroupFile twisted_pair() {
  margulis::GroupFile g;
  g.name = "twisted-near-identity";
  const Isometry x = Isometry::translation(0.02, 2.5);
  const Isometry r = Isometry::rotation_at_origin(M_PI / 2, 0.0, M_PI / 2);
  g.generators = {x, r * x * r.inverse()};
  return g;
}

}  // namespace fixtures
