#include "margulis/coset_tree.hpp"

#include <cstdlib>
#include <unordered_map>

#include "margulis/errors.hpp"

namespace margulis::gtree {

namespace {

// Normal form in <x> * <y>: alternating syllables (factor, exponent).
struct Syllable {
  int factor;  // 0 = x, 1 = y
  int exp;
};
using NormalForm = std::vector<Syllable>;

class FreeProduct {
 public:
  FreeProduct(int order_x, int order_y) : order_{order_x, order_y} {}

  // Exponent representative in (-m/2, m/2] for finite order m.
  int reduce(int factor, int e) const {
    int m = order_[factor];
    if (m == 0) return e;
    e %= m;
    if (e < 0) e += m;
    if (2 * e > m) e -= m;
    return e;
  }

  NormalForm left_multiply(int factor, int e, const NormalForm& g) const {
    NormalForm out;
    out.reserve(g.size() + 1);
    if (!g.empty() && g.front().factor == factor) {
      int ne = reduce(factor, g.front().exp + e);
      if (ne != 0) out.push_back({factor, ne});
      out.insert(out.end(), g.begin() + 1, g.end());
    } else {
      int ne = reduce(factor, e);
      if (ne != 0) out.push_back({factor, ne});
      out.insert(out.end(), g.begin(), g.end());
    }
    return out;
  }

  // All elements of word length <= radius, by increasing length.
  std::vector<NormalForm> ball(int radius) const {
    std::vector<NormalForm> out{NormalForm{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
      const NormalForm g = out[i];
      int len = length(g);
      if (len == radius) continue;
      // Extend by a new trailing syllable, or grow the last one away from 0.
      for (int f = 0; f < 2; ++f) {
        if (!g.empty() && g.back().factor == f) continue;
        for (int s : {1, -1}) {
          if (reduce(f, s) != s) continue;
          NormalForm h = g;
          h.push_back({f, s});
          out.push_back(std::move(h));
        }
      }
      if (!g.empty()) {
        const Syllable& last = g.back();
        int grown = last.exp + (last.exp > 0 ? 1 : -1);
        if (reduce(last.factor, grown) == grown) {
          NormalForm h = g;
          h.back().exp = grown;
          out.push_back(std::move(h));
        }
      }
    }
    return out;
  }

  static int length(const NormalForm& g) {
    int len = 0;
    for (const Syllable& s : g) len += std::abs(s.exp);
    return len;
  }

 private:
  int order_[2];
};

std::string spell(const NormalForm& g) {
  std::string out;
  for (const Syllable& s : g) {
    char c = s.factor == 0 ? (s.exp > 0 ? 'x' : 'X') : (s.exp > 0 ? 'y' : 'Y');
    out.append(static_cast<std::size_t>(std::abs(s.exp)), c);
  }
  return out;
}

// Canonical representative of g<factor>: drop a trailing syllable of that factor.
NormalForm coset_rep(NormalForm g, int factor) {
  if (!g.empty() && g.back().factor == factor) g.pop_back();
  return g;
}

std::string vertex_key(const NormalForm& rep, int factor) {
  return spell(rep) + (factor == 0 ? "<x>" : "<y>");
}

}  // namespace

CosetTree build_coset_tree(int radius, int order_x, int order_y) {
  if (radius < 1) throw InputError("coset tree radius must be at least 1");
  for (int m : {order_x, order_y}) {
    if (m < 0 || m == 1) throw InputError("factor order must be 0 (infinite) or at least 2");
  }
  const FreeProduct group(order_x, order_y);
  const std::vector<NormalForm> elements = group.ball(radius);

  std::unordered_map<std::string, Vertex> index;
  std::vector<std::string> labels;
  std::vector<std::pair<NormalForm, int>> vertex_rep;
  auto vertex_of = [&](const NormalForm& g, int factor) {
    NormalForm rep = coset_rep(g, factor);
    std::string key = vertex_key(rep, factor);
    auto [it, fresh] = index.emplace(key, static_cast<Vertex>(labels.size()));
    if (fresh) {
      labels.push_back(key);
      vertex_rep.emplace_back(std::move(rep), factor);
    }
    return it->second;
  };

  std::vector<Edge> edges;
  edges.reserve(elements.size());
  for (const NormalForm& g : elements) edges.push_back(Edge{vertex_of(g, 0), vertex_of(g, 1)});
  const int n = static_cast<int>(labels.size());
  auto tree = std::make_shared<const Tree>(Tree::from_edges(n, edges));

  std::map<char, TreeAut> gens;
  for (int f = 0; f < 2; ++f) {
    std::vector<Vertex> image(n, kOutside);
    for (Vertex v = 0; v < n; ++v) {
      const auto& [rep, factor] = vertex_rep[v];
      NormalForm moved = group.left_multiply(f, 1, rep);
      auto it = index.find(vertex_key(coset_rep(moved, factor), factor));
      if (it != index.end()) image[v] = it->second;
    }
    gens.emplace(f == 0 ? 'x' : 'y', TreeAut(tree, std::move(image)));
  }

  CosetTree out{ActionSpec(tree, std::move(gens)), edges.front(), edges.front().u,
                edges.front().v, std::move(labels), radius};
  return out;
}

}  // namespace margulis::gtree
