#include "margulis/gtree.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

#include "margulis/errors.hpp"

namespace margulis::gtree {

// ---------------------------------------------------------------- Tree

Tree Tree::from_edges(int num_vertices, std::vector<Edge> edges) {
  if (num_vertices <= 0) throw InvalidTree("tree needs at least one vertex");
  if (static_cast<long>(edges.size()) != num_vertices - 1) {
    throw InvalidTree("tree on " + std::to_string(num_vertices) + " vertices needs " +
                      std::to_string(num_vertices - 1) + " edges, got " +
                      std::to_string(edges.size()));
  }
  std::set<Edge> seen;
  for (Edge& e : edges) {
    if (e.u < 0 || e.u >= num_vertices || e.v < 0 || e.v >= num_vertices) {
      throw InvalidTree("edge endpoint out of range");
    }
    if (e.u == e.v) throw InvalidTree("self-loop at " + std::to_string(e.u));
    e = e.canonical();
    if (!seen.insert(e).second) {
      throw InvalidTree("parallel edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
  }

  Tree t;
  t.n_ = num_vertices;
  t.edges_ = std::move(edges);
  t.offsets_.assign(num_vertices + 1, 0);
  for (const Edge& e : t.edges_) {
    ++t.offsets_[e.u + 1];
    ++t.offsets_[e.v + 1];
  }
  std::partial_sum(t.offsets_.begin(), t.offsets_.end(), t.offsets_.begin());
  t.adjacency_.resize(2 * t.edges_.size());
  std::vector<int> fill(t.offsets_.begin(), t.offsets_.end() - 1);
  for (const Edge& e : t.edges_) {
    t.adjacency_[fill[e.u]++] = e.v;
    t.adjacency_[fill[e.v]++] = e.u;
  }
  for (int v = 0; v < num_vertices; ++v) {
    std::sort(t.adjacency_.begin() + t.offsets_[v], t.adjacency_.begin() + t.offsets_[v + 1]);
  }

  // BFS from 0 for parent/depth; |E| = |V| - 1 plus connected means a tree.
  t.parent_.assign(num_vertices, kOutside);
  t.depth_.assign(num_vertices, -1);
  std::deque<Vertex> queue{0};
  t.depth_[0] = 0;
  int reached = 1;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : t.neighbors(v)) {
      if (t.depth_[w] >= 0) continue;
      t.depth_[w] = t.depth_[v] + 1;
      t.parent_[w] = v;
      ++reached;
      queue.push_back(w);
    }
  }
  if (reached != num_vertices) throw InvalidTree("graph is not connected");
  return t;
}

Tree Tree::parse(std::istream& in) {
  std::string line;
  int n = -1;
  std::vector<Edge> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    if (n < 0) {
      if (first != "tree" || !(ls >> n) || n <= 0) {
        throw InvalidTree("line " + std::to_string(lineno) + ": expected header 'tree <n>'");
      }
      continue;
    }
    Edge e;
    try {
      std::size_t pos = 0;
      e.u = std::stoi(first, &pos);
      if (pos != first.size()) throw std::invalid_argument(first);
    } catch (const std::exception&) {
      throw InvalidTree("line " + std::to_string(lineno) + ": bad vertex '" + first + "'");
    }
    if (!(ls >> e.v)) throw InvalidTree("line " + std::to_string(lineno) + ": expected 'u v'");
    edges.push_back(e);
  }
  if (n < 0) throw InvalidTree("missing 'tree <n>' header");
  return from_edges(n, std::move(edges));
}

std::string Tree::serialize() const {
  std::ostringstream out;
  out << "tree " << n_ << '\n';
  for (const Edge& e : edges_) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

std::span<const Vertex> Tree::neighbors(Vertex v) const {
  return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
}

bool Tree::adjacent(Vertex a, Vertex b) const {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

int Tree::distance(Vertex a, Vertex b) const {
  int d = 0;
  while (depth_[a] > depth_[b]) { a = parent_[a]; ++d; }
  while (depth_[b] > depth_[a]) { b = parent_[b]; ++d; }
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
    d += 2;
  }
  return d;
}

std::vector<Vertex> Tree::path(Vertex a, Vertex b) const {
  std::vector<Vertex> front;
  std::vector<Vertex> back;
  while (depth_[a] > depth_[b]) { front.push_back(a); a = parent_[a]; }
  while (depth_[b] > depth_[a]) { back.push_back(b); b = parent_[b]; }
  while (a != b) {
    front.push_back(a);
    back.push_back(b);
    a = parent_[a];
    b = parent_[b];
  }
  front.push_back(a);
  front.insert(front.end(), back.rbegin(), back.rend());
  return front;
}

std::vector<char> Tree::component_without(const Edge& e, Vertex keep) const {
  if (!adjacent(e.u, e.v)) throw InvalidTree("not an edge");
  if (keep != e.u && keep != e.v) throw InvalidTree("kept vertex is not an endpoint of the edge");
  Vertex other = keep == e.u ? e.v : e.u;
  std::vector<char> mask(n_, 0);
  std::vector<Vertex> stack{keep};
  mask[keep] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : neighbors(v)) {
      if (mask[w] || (v == keep && w == other)) continue;
      mask[w] = 1;
      stack.push_back(w);
    }
  }
  return mask;
}

// ---------------------------------------------------------------- TreeAut

TreeAut::TreeAut(std::shared_ptr<const Tree> tree, std::vector<Vertex> image)
    : tree_(std::move(tree)), image_(std::move(image)) {
  if (!tree_) throw InvalidTree("automorphism without a tree");
  const int n = tree_->num_vertices();
  if (static_cast<int>(image_.size()) != n) throw InvalidTree("image table has wrong size");
  std::vector<char> hit(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    Vertex w = image_[v];
    if (w == kOutside) continue;
    if (w < 0 || w >= n) throw InvalidTree("image out of range at " + std::to_string(v));
    if (hit[w]) throw InvalidTree("map is not injective at " + std::to_string(w));
    hit[w] = 1;
  }
  for (const Edge& e : tree_->edges()) {
    Vertex a = image_[e.u];
    Vertex b = image_[e.v];
    if (a == kOutside || b == kOutside) continue;
    if (!tree_->adjacent(a, b)) {
      throw InvalidTree("edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                        " not mapped to an edge");
    }
    if (a == e.v && b == e.u) {
      throw InvalidTree("inversion of edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
  }
}

TreeAut::TreeAut(Unchecked, std::shared_ptr<const Tree> tree, std::vector<Vertex> image)
    : tree_(std::move(tree)), image_(std::move(image)) {}

TreeAut TreeAut::identity(std::shared_ptr<const Tree> tree) {
  std::vector<Vertex> image(tree->num_vertices());
  std::iota(image.begin(), image.end(), 0);
  return TreeAut(Unchecked{}, std::move(tree), std::move(image));
}

std::optional<Vertex> TreeAut::operator()(Vertex v) const {
  if (v < 0 || v >= static_cast<int>(image_.size()) || image_[v] == kOutside) return std::nullopt;
  return image_[v];
}

bool TreeAut::is_total() const {
  return std::none_of(image_.begin(), image_.end(), [](Vertex w) { return w == kOutside; });
}

TreeAut TreeAut::inverse() const {
  std::vector<Vertex> inv(image_.size(), kOutside);
  for (std::size_t v = 0; v < image_.size(); ++v) {
    if (image_[v] != kOutside) inv[image_[v]] = static_cast<Vertex>(v);
  }
  return TreeAut(Unchecked{}, tree_, std::move(inv));
}

TreeAut TreeAut::after(const TreeAut& first) const {
  if (tree_ != first.tree_ && tree_->num_vertices() != first.tree_->num_vertices()) {
    throw InvalidTree("composing automorphisms of different trees");
  }
  std::vector<Vertex> out(image_.size(), kOutside);
  for (std::size_t v = 0; v < image_.size(); ++v) {
    Vertex w = first.image_[v];
    if (w != kOutside) out[v] = image_[w];
  }
  return TreeAut(Unchecked{}, tree_, std::move(out));
}

TreeAut TreeAut::pow(int k) const {
  TreeAut base = k < 0 ? inverse() : *this;
  int e = k < 0 ? -k : k;
  TreeAut result = identity(tree_);
  while (e > 0) {
    if (e & 1) result = base.after(result);
    base = base.after(base);
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------- Subtrees

bool Subtree::contains(Vertex v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

Subtree make_subtree(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return Subtree{std::move(vertices)};
}

bool is_connected(const Tree& tree, const Subtree& s) {
  if (s.empty()) return true;
  std::vector<char> in(tree.num_vertices(), 0);
  for (Vertex v : s.vertices) in[v] = 1;
  std::vector<Vertex> stack{s.vertices.front()};
  in[s.vertices.front()] = 2;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : tree.neighbors(v)) {
      if (in[w] != 1) continue;
      in[w] = 2;
      ++reached;
      stack.push_back(w);
    }
  }
  return reached == s.size();
}

bool intersects(const Subtree& a, const Subtree& b) {
  auto i = a.vertices.begin();
  auto j = b.vertices.begin();
  while (i != a.vertices.end() && j != b.vertices.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

Subtree fix_subtree(const TreeAut& g) {
  std::vector<Vertex> out;
  const auto& img = g.images();
  for (Vertex v = 0; v < static_cast<Vertex>(img.size()); ++v) {
    if (img[v] == v) out.push_back(v);
  }
  return Subtree{std::move(out)};
}

Subtree per_subtree(const TreeAut& g) {
  // An injective partial map splits into cycles and chains. Chains start at
  // vertices with no preimage; whatever they do not reach lies on a cycle.
  const auto& img = g.images();
  const int n = static_cast<int>(img.size());
  std::vector<char> has_preimage(n, 0);
  for (Vertex w : img) {
    if (w != kOutside) has_preimage[w] = 1;
  }
  std::vector<char> on_chain(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (has_preimage[v]) continue;
    for (Vertex w = v; w != kOutside && !on_chain[w]; w = img[w]) on_chain[w] = 1;
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (!on_chain[v]) out.push_back(v);
  }
  return Subtree{std::move(out)};
}

AutClass classify_aut(const TreeAut& g) {
  const Tree& t = g.tree();
  const int n = t.num_vertices();
  const auto& img = g.images();
  int m = -1;
  std::vector<int> disp(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    if (img[v] == kOutside) continue;
    disp[v] = t.distance(v, img[v]);
    if (m < 0 || disp[v] < m) m = disp[v];
  }
  if (m < 0) throw TruncationAmbiguous("no vertex has its image inside the window");
  if (m == 0) return AutClass{AutKind::Elliptic, fix_subtree(g), {}, 0};

  // Axis vertices whose forward or backward image stays in the window.
  const TreeAut inv = g.inverse();
  std::vector<Vertex> axis;
  for (Vertex v = 0; v < n; ++v) {
    Vertex back = inv.image_or_outside(v);
    if (disp[v] == m || (back != kOutside && disp[back] == m && t.distance(v, back) == m)) {
      axis.push_back(v);
    }
  }
  Subtree s = make_subtree(std::move(axis));
  if (!is_connected(t, s)) {
    throw TruncationAmbiguous("minimal-displacement set is disconnected; axis may leave the window");
  }
  for (Vertex v : s.vertices) {
    int deg = 0;
    for (Vertex w : t.neighbors(v)) deg += s.contains(w) ? 1 : 0;
    if (deg > 2) throw TruncationAmbiguous("minimal-displacement set is not a line");
    Vertex w = img[v];
    if (w != kOutside && !s.contains(w)) {
      throw TruncationAmbiguous("minimal-displacement set is not invariant");
    }
  }
  return AutClass{AutKind::Hyperbolic, {}, std::move(s), m};
}

std::vector<Edge> bridge(const Tree& tree, const Subtree& t1, const Subtree& t2) {
  if (t1.empty() || t2.empty()) throw NotDisjoint("bridge needs nonempty subtrees");
  if (intersects(t1, t2)) throw NotDisjoint("subtrees share a vertex");
  const int n = tree.num_vertices();
  std::vector<Vertex> from(n, kOutside);
  std::vector<char> seen(n, 0);
  std::deque<Vertex> queue;
  for (Vertex v : t1.vertices) {
    seen[v] = 1;
    queue.push_back(v);
  }
  Vertex hit = kOutside;
  while (!queue.empty() && hit == kOutside) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : tree.neighbors(v)) {
      if (seen[w]) continue;
      seen[w] = 1;
      from[w] = v;
      if (t2.contains(w)) { hit = w; break; }
      queue.push_back(w);
    }
  }
  if (hit == kOutside) throw NotDisjoint("no path between subtrees");
  std::vector<Edge> path;
  for (Vertex w = hit; from[w] != kOutside; w = from[w]) path.push_back(Edge{from[w], w});
  std::reverse(path.begin(), path.end());
  return path;
}

// ---------------------------------------------------------------- words

std::string inverse_word(std::string_view word) {
  std::string out(word.rbegin(), word.rend());
  for (char& c : out) {
    c = std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                     : static_cast<char>(std::tolower(c));
  }
  return out;
}

std::string power_word(std::string_view word, int k) {
  std::string unit = k < 0 ? inverse_word(word) : std::string(word);
  std::string out;
  for (int i = 0; i < std::abs(k); ++i) out += unit;
  return out;
}

std::vector<std::string> reduced_words(std::string_view symbols, int max_len) {
  std::string letters;
  for (char c : symbols) {
    letters += c;
    letters += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  auto inverse_of = [](char c) {
    return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                       : static_cast<char>(std::tolower(c));
  };
  std::vector<std::string> out{""};
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (char c : letters) {
        if (!out[i].empty() && out[i].back() == inverse_of(c)) continue;
        out.push_back(out[i] + c);
      }
    }
    level_begin = level_end;
  }
  return out;
}

// ---------------------------------------------------------------- ActionSpec

ActionSpec::ActionSpec(std::shared_ptr<const Tree> tree, std::map<char, TreeAut> generators)
    : tree_(std::move(tree)), gens_(std::move(generators)) {
  for (const auto& [c, g] : gens_) {
    if (!std::islower(static_cast<unsigned char>(c))) {
      throw InvalidTree(std::string("generator symbol must be a lowercase letter: ") + c);
    }
    if (g.tree().num_vertices() != tree_->num_vertices()) {
      throw InvalidTree(std::string("generator ") + c + " acts on a different tree");
    }
    inverses_.emplace(c, g.inverse());
  }
}

const TreeAut& ActionSpec::letter(char c) const {
  const bool lower = std::islower(static_cast<unsigned char>(c));
  char key = lower ? c : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto& table = lower ? gens_ : inverses_;
  auto it = table.find(key);
  if (it == table.end()) throw InputError(std::string("unknown generator symbol: ") + c);
  return it->second;
}

std::optional<Vertex> ActionSpec::act(std::string_view word, Vertex v) const {
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    Vertex w = letter(*it).image_or_outside(v);
    if (w == kOutside) return std::nullopt;
    v = w;
  }
  return v;
}

std::optional<Edge> ActionSpec::act(std::string_view word, const Edge& e) const {
  auto a = act(word, e.u);
  auto b = act(word, e.v);
  if (!a || !b) return std::nullopt;
  return Edge{*a, *b};
}

TreeAut ActionSpec::eval(std::string_view word) const {
  TreeAut out = TreeAut::identity(tree_);
  for (char c : word) out = out.after(letter(c));
  return out;
}

// ---------------------------------------------------------------- XY decomposition

std::string to_string(XYTag tag) {
  switch (tag) {
    case XYTag::X: return "X";
    case XYTag::Y: return "Y";
    case XYTag::Stab: return "Stab";
  }
  return "?";
}

namespace {

Subtree elliptic_fix(const ActionSpec& act, std::string_view word, const char* role) {
  AutClass c = classify_aut(act.eval(word));
  if (c.kind != AutKind::Elliptic) {
    throw PreconditionFailed(std::string(role) + " = '" + std::string(word) + "' is not elliptic");
  }
  return std::move(c.fix);
}

std::string word_label(std::string_view w) { return w.empty() ? std::string("1") : std::string(w); }

}  // namespace

XYReport xy_decomposition(const ActionSpec& act, std::string_view x_word, std::string_view y_word,
                          const Edge& e, int n, std::span<const std::string> elements) {
  if (n <= 0) throw PreconditionFailed("n must be positive");
  const Tree& t = act.tree();
  if (!t.contains(e.u) || !t.contains(e.v) || !t.adjacent(e.u, e.v)) {
    throw PreconditionFailed("e is not an edge of the tree");
  }
  XYReport rep;
  rep.e = e;
  rep.fix_x = elliptic_fix(act, x_word, "x");
  rep.fix_y = elliptic_fix(act, y_word, "y");
  if (intersects(rep.fix_x, rep.fix_y)) throw PreconditionFailed("Fix(x) and Fix(y) intersect");

  const std::vector<Edge> arc = bridge(t, rep.fix_x, rep.fix_y);
  auto pos = std::find_if(arc.begin(), arc.end(), [&](const Edge& a) { return a.same_as(e); });
  if (pos == arc.end()) throw PreconditionFailed("e does not lie between Fix(x) and Fix(y)");
  rep.v_x = pos->u;  // arc is oriented from Fix(x)
  rep.v_y = pos->v;

  for (int k = 1; k <= 2 * n; ++k) {
    for (auto [w, name] : {std::pair{x_word, "x"}, std::pair{y_word, "y"}}) {
      auto img = act.act(power_word(w, k), e);
      if (!img) throw TruncationAmbiguous(std::string(name) + "^" + std::to_string(k) + " moves e out of the window");
      if (img->same_as(e)) {
        throw PreconditionFailed(std::string(name) + "^" + std::to_string(k) + " fixes e");
      }
    }
  }

  const std::vector<char> in_tx = t.component_without(e, rep.v_x);
  auto tag_of = [&](const std::string& word) {
    auto img = act.act(word, e);
    if (!img) throw TruncationAmbiguous("'" + word_label(word) + "' moves e out of the window");
    if (img->same_as(e)) return std::pair{XYTag::Stab, *img};
    const bool a = in_tx[img->u];
    const bool b = in_tx[img->v];
    if (a != b) throw std::logic_error("edge image straddles e");
    return std::pair{a ? XYTag::X : XYTag::Y, *img};
  };

  // Bullet 1: every element gets exactly one tag.
  for (const std::string& g : elements) {
    XYTag tag = tag_of(g).first;
    ++rep.checks_partition;
    rep.tags.emplace_back(g, tag);
    if (tag == XYTag::X) ++rep.count_x;
    else if (tag == XYTag::Y) ++rep.count_y;
    else ++rep.count_stab;
  }

  // Bullets 2 and 3, for (x, Y -> X) and (y, X -> Y).
  struct Side {
    std::string_view gen;
    XYTag from;
    XYTag to;
    const char* name;
  };
  for (const Side& side : {Side{x_word, XYTag::Y, XYTag::X, "x"}, Side{y_word, XYTag::X, XYTag::Y, "y"}}) {
    std::map<Edge, std::pair<int, std::string>> owner;
    for (const auto& [g, tag] : rep.tags) {
      if (tag != side.from) continue;
      for (int i = -n; i <= n; ++i) {
        const std::string word = power_word(side.gen, i) + g;
        auto [img_tag, img] = tag_of(word);
        if (i != 0) {
          ++rep.checks_inclusion;
          if (img_tag != side.to) {
            rep.violations.push_back(std::string(side.name) + "^" + std::to_string(i) + " * " +
                                     word_label(g) + " tagged " + to_string(img_tag) +
                                     ", expected " + to_string(side.to));
          }
        }
        ++rep.checks_disjoint;
        auto [it, fresh] = owner.emplace(img.canonical(), std::pair{i, g});
        if (!fresh && it->second.first != i) {
          rep.violations.push_back(std::string(side.name) + "^" + std::to_string(i) + " * " +
                                   word_label(g) + " and " + side.name + "^" +
                                   std::to_string(it->second.first) + " * " +
                                   word_label(it->second.second) + " send e to the same edge");
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------- ping-pong

bool PingPongReport::certified() const {
  if (table.empty()) return false;
  for (const PingPongRow& row : table) {
    if (row.violations != 0 || row.checked == 0) return false;
  }
  return true;
}

PingPongReport ping_pong_witness(const ActionSpec& act, std::string_view g0_word,
                                 std::string_view g1_word, int max_power) {
  if (max_power <= 0) throw PreconditionFailed("power bound must be positive");
  const Tree& t = act.tree();
  const TreeAut g[2] = {act.eval(g0_word), act.eval(g1_word)};
  for (int i = 0; i < 2; ++i) {
    if (classify_aut(g[i]).kind != AutKind::Elliptic) {
      throw PreconditionFailed("g" + std::to_string(i) + " is not elliptic");
    }
  }
  PingPongReport rep;
  rep.per0 = per_subtree(g[0]);
  rep.per1 = per_subtree(g[1]);
  if (intersects(rep.per0, rep.per1)) throw PreconditionFailed("Per(g0) and Per(g1) intersect");

  rep.arc = bridge(t, rep.per0, rep.per1);
  rep.s0 = rep.arc.front().u;
  rep.s1 = rep.arc.back().v;
  rep.e0 = rep.arc.front();
  rep.e1 = rep.arc.back();
  // Omega_{1-i} is the component of T - e_i containing s_i.
  auto to_subtree = [](const std::vector<char>& mask) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < static_cast<Vertex>(mask.size()); ++v) {
      if (mask[v]) out.push_back(v);
    }
    return Subtree{std::move(out)};
  };
  const std::vector<char> omega1 = t.component_without(rep.e0, rep.s0);
  const std::vector<char> omega0 = t.component_without(rep.e1, rep.s1);
  rep.omega0 = to_subtree(omega0);
  rep.omega1 = to_subtree(omega1);
  const std::vector<char>* omega[2] = {&omega0, &omega1};

  for (int i = 0; i < 2; ++i) {
    for (int p = -max_power; p <= max_power; ++p) {
      if (p == 0) continue;
      const TreeAut h = g[i].pow(p);
      PingPongRow row{i, p, 0, 0, 0};
      for (Vertex v = 0; v < t.num_vertices(); ++v) {
        if (!(*omega[i])[v]) continue;
        Vertex w = h.image_or_outside(v);
        if (w == kOutside) {
          ++row.outside_window;
          continue;
        }
        ++row.checked;
        if (!(*omega[1 - i])[w]) ++row.violations;
      }
      rep.table.push_back(row);
    }
  }
  return rep;
}

WordCheck alternating_words_nontrivial(const ActionSpec& act, std::string_view g0_word,
                                       std::string_view g1_word, int max_len) {
  const std::string inv0 = inverse_word(g0_word);
  const std::string inv1 = inverse_word(g1_word);
  WordCheck out;
  for (const std::string& w : reduced_words("ab", max_len)) {
    if (w.empty()) continue;
    std::string word;
    for (char c : w) {
      switch (c) {
        case 'a': word += g0_word; break;
        case 'A': word += inv0; break;
        case 'b': word += g1_word; break;
        default: word += inv1; break;
      }
    }
    ++out.words_checked;
    const TreeAut h = act.eval(word);
    bool moved = false;
    bool defined = false;
    for (Vertex v = 0; v < act.tree().num_vertices() && !moved; ++v) {
      Vertex img = h.image_or_outside(v);
      if (img == kOutside) continue;
      defined = true;
      moved = img != v;
    }
    if (moved) continue;
    if (defined) {
      ++out.trivial;
      out.failures.push_back(w + " acts trivially");
    } else {
      ++out.inconclusive;
      out.failures.push_back(w + " leaves the window everywhere");
    }
  }
  return out;
}

bool axes_distinct(const ActionSpec& act, std::string_view g0_word, std::string_view g1_word) {
  AutClass a = classify_aut(act.eval(g0_word));
  AutClass b = classify_aut(act.eval(g1_word));
  if (a.kind != AutKind::Hyperbolic || b.kind != AutKind::Hyperbolic) {
    throw PreconditionFailed("axes_distinct needs two hyperbolic elements");
  }
  auto subset = [](const Subtree& p, const Subtree& q) {
    return std::includes(q.vertices.begin(), q.vertices.end(), p.vertices.begin(), p.vertices.end());
  };
  return !subset(a.axis, b.axis) && !subset(b.axis, a.axis);
}

// ---------------------------------------------------------------- finite orbits

OrbitVerdict finite_orbit_fixed_vertex(const ActionSpec& act, Vertex s, int bound) {
  const Tree& t = act.tree();
  if (!t.contains(s)) throw InputError("vertex out of range");
  OrbitVerdict out{OrbitOutcome::Inconclusive, kOutside, {s}, {}, {}};
  std::vector<char> seen(t.num_vertices(), 0);
  seen[s] = 1;
  std::vector<Vertex> frontier{s};
  bool stabilized = false;
  for (int level = 0; level < bound && !stabilized; ++level) {
    std::vector<Vertex> next;
    for (Vertex v : frontier) {
      for (const auto& [c, g] : act.generators()) {
        for (const std::string& w : {std::string(1, c), inverse_word(std::string(1, c))}) {
          auto img = act.act(w, v);
          if (!img) {
            out.reason = "orbit leaves the window";
            return out;
          }
          if (!seen[*img]) {
            seen[*img] = 1;
            next.push_back(*img);
            out.orbit.push_back(*img);
          }
        }
      }
    }
    stabilized = next.empty();
    frontier = std::move(next);
  }
  if (!stabilized) {
    out.reason = "orbit still growing after " + std::to_string(bound) + " steps";
    return out;
  }

  std::vector<Vertex> span;
  for (Vertex v : out.orbit) {
    auto p = t.path(s, v);
    span.insert(span.end(), p.begin(), p.end());
  }
  out.span = make_subtree(std::move(span));
  for (Vertex v : out.span.vertices) {
    bool fixed = true;
    for (const auto& [c, g] : act.generators()) fixed = fixed && g.image_or_outside(v) == v;
    if (fixed) {
      out.outcome = OrbitOutcome::FixedVertex;
      out.fixed = v;
      return out;
    }
  }
  out.outcome = OrbitOutcome::NoFixedVertex;
  out.reason = "no vertex of the spanning subtree is fixed by every generator";
  return out;
}

}  // namespace margulis::gtree
