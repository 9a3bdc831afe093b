#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace margulis::gtree {

using Vertex = int;
inline constexpr Vertex kOutside = -1;

/// Undirected edge; `canonical()` orders the endpoints.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Edge canonical() const { return u <= v ? *this : Edge{v, u}; }
  bool same_as(const Edge& o) const { return canonical() == o.canonical(); }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite simplicial tree on vertices 0..n-1.
class Tree {
 public:
  /// Validates connectivity, |E| = |V| - 1, and absence of loops and
  /// parallel edges. Throws InvalidTree.
  static Tree from_edges(int num_vertices, std::vector<Edge> edges);
  /// Text format: a "tree <n>" header, then one "u v" pair per line.
  static Tree parse(std::istream& in);
  std::string serialize() const;

  int num_vertices() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const;
  int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(Vertex a, Vertex b) const;
  bool contains(Vertex v) const { return v >= 0 && v < n_; }

  int distance(Vertex a, Vertex b) const;
  /// Vertices of the arc from a to b, both included.
  std::vector<Vertex> path(Vertex a, Vertex b) const;
  /// Membership mask of the component of T - e containing `keep`
  /// (`keep` must be an endpoint of e).
  std::vector<char> component_without(const Edge& e, Vertex keep) const;

 private:
  Tree() = default;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_;
  std::vector<Vertex> adjacency_;
  std::vector<Vertex> parent_;
  std::vector<int> depth_;
};

/// Automorphism of a tree, possibly restricted to a finite window: a vertex
/// whose image leaves the window maps to kOutside. Defined images preserve
/// adjacency, are injective, and never invert an edge.
class TreeAut {
 public:
  /// Throws InvalidTree if the map is not an inversion-free partial
  /// automorphism.
  TreeAut(std::shared_ptr<const Tree> tree, std::vector<Vertex> image);
  static TreeAut identity(std::shared_ptr<const Tree> tree);

  std::optional<Vertex> operator()(Vertex v) const;
  Vertex image_or_outside(Vertex v) const { return image_[v]; }
  const std::vector<Vertex>& images() const { return image_; }
  bool is_total() const;

  const Tree& tree() const { return *tree_; }
  const std::shared_ptr<const Tree>& tree_ptr() const { return tree_; }

  TreeAut inverse() const;
  /// (*this) after `first`: v -> this(first(v)).
  TreeAut after(const TreeAut& first) const;
  TreeAut pow(int k) const;

 private:
  struct Unchecked {};
  TreeAut(Unchecked, std::shared_ptr<const Tree> tree, std::vector<Vertex> image);

  std::shared_ptr<const Tree> tree_;
  std::vector<Vertex> image_;
};

/// Vertex subset (sorted); Fix and Per sets are subtrees or empty.
struct Subtree {
  std::vector<Vertex> vertices;

  bool empty() const { return vertices.empty(); }
  std::size_t size() const { return vertices.size(); }
  bool contains(Vertex v) const;
  friend bool operator==(const Subtree&, const Subtree&) = default;
};

Subtree make_subtree(std::vector<Vertex> vertices);
bool is_connected(const Tree& tree, const Subtree& s);
bool intersects(const Subtree& a, const Subtree& b);

enum class AutKind { Elliptic, Hyperbolic };

struct AutClass {
  AutKind kind;
  Subtree fix;          // Elliptic: the fixed vertices
  Subtree axis;         // Hyperbolic: axis vertices inside the window
  int translation = 0;  // Hyperbolic: translation length
};

/// Minimum displacement m = min d(v, g v). m = 0 gives Elliptic; otherwise
/// Hyperbolic with the axis restricted to the window. Throws
/// TruncationAmbiguous when the minimizing set is not a g-invariant path
/// (the true axis may lie outside the window).
AutClass classify_aut(const TreeAut& g);

Subtree fix_subtree(const TreeAut& g);
/// Union of Fix(g^k), k >= 1: the vertices on closed orbits of g. For a
/// window this is the set of vertices whose orbit closes up inside it.
Subtree per_subtree(const TreeAut& g);

/// Shortest edge path from t1 to t2, oriented from t1; its interior avoids
/// both. Throws NotDisjoint.
std::vector<Edge> bridge(const Tree& tree, const Subtree& t1, const Subtree& t2);

/// Words over generator symbols: lowercase letters are generators, the
/// matching uppercase letters their inverses. "xy" acts as v -> x(y(v)).
std::string inverse_word(std::string_view word);
std::string power_word(std::string_view word, int k);
/// Freely reduced words of length <= max_len over the given lowercase
/// symbols, in shortlex order, starting with the empty word.
std::vector<std::string> reduced_words(std::string_view symbols, int max_len);

class ActionSpec {
 public:
  ActionSpec(std::shared_ptr<const Tree> tree, std::map<char, TreeAut> generators);

  const Tree& tree() const { return *tree_; }
  const std::shared_ptr<const Tree>& tree_ptr() const { return tree_; }
  const std::map<char, TreeAut>& generators() const { return gens_; }

  std::optional<Vertex> act(std::string_view word, Vertex v) const;
  std::optional<Edge> act(std::string_view word, const Edge& e) const;
  /// The partial automorphism represented by `word`.
  TreeAut eval(std::string_view word) const;

 private:
  const TreeAut& letter(char c) const;

  std::shared_ptr<const Tree> tree_;
  std::map<char, TreeAut> gens_;
  std::map<char, TreeAut> inverses_;
};

enum class XYTag { X, Y, Stab };
std::string to_string(XYTag tag);

struct XYReport {
  Subtree fix_x;
  Subtree fix_y;
  Edge e;
  Vertex v_x = kOutside;  // endpoint of e on the Fix(x) side
  Vertex v_y = kOutside;
  std::vector<std::pair<std::string, XYTag>> tags;
  std::size_t count_x = 0;
  std::size_t count_y = 0;
  std::size_t count_stab = 0;
  std::size_t checks_partition = 0;
  std::size_t checks_inclusion = 0;
  std::size_t checks_disjoint = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Tags each element by where it sends e and checks the partition, the
/// inclusions x^{+-k} Y in X, y^{+-k} X in Y (0 < k <= n), and the
/// disjointness of x^i Y (resp. y^i X) for distinct |i|, |j| <= n.
/// Throws PreconditionFailed or TruncationAmbiguous.
XYReport xy_decomposition(const ActionSpec& act, std::string_view x_word, std::string_view y_word,
                          const Edge& e, int n, std::span<const std::string> elements);

struct PingPongRow {
  int player = 0;  // 0 or 1
  int power = 0;
  std::size_t checked = 0;
  std::size_t outside_window = 0;
  std::size_t violations = 0;
};

struct PingPongReport {
  Subtree per0;
  Subtree per1;
  std::vector<Edge> arc;  // from Per(g0) to Per(g1)
  Vertex s0 = kOutside;
  Vertex s1 = kOutside;
  Edge e0;
  Edge e1;
  Subtree omega0;
  Subtree omega1;
  std::vector<PingPongRow> table;
  bool certified() const;
};

/// Builds the ping-pong sets from the periodic subtrees of g0, g1 and checks
/// g_i^n . Omega_i in Omega_{1-i} for 0 < |n| <= max_power inside the window.
/// Throws PreconditionFailed.
PingPongReport ping_pong_witness(const ActionSpec& act, std::string_view g0_word,
                                 std::string_view g1_word, int max_power);

struct WordCheck {
  std::size_t words_checked = 0;
  std::size_t trivial = 0;
  std::size_t inconclusive = 0;
  std::vector<std::string> failures;
  bool ok() const { return trivial == 0 && inconclusive == 0; }
};

/// Every nonempty freely reduced word of length <= max_len in g0, g1 must move
/// some window vertex.
WordCheck alternating_words_nontrivial(const ActionSpec& act, std::string_view g0_word,
                                       std::string_view g1_word, int max_len);

/// True when the window axes of two hyperbolic elements differ as lines
/// (neither restricted axis is contained in the other). Throws
/// PreconditionFailed unless both are hyperbolic.
bool axes_distinct(const ActionSpec& act, std::string_view g0_word, std::string_view g1_word);

enum class OrbitOutcome { FixedVertex, NoFixedVertex, Inconclusive };

struct OrbitVerdict {
  OrbitOutcome outcome;
  Vertex fixed = kOutside;
  std::vector<Vertex> orbit;
  Subtree span;
  std::string reason;
};

/// Orbit of s under words of length <= bound; if it stabilizes, looks for a
/// vertex of the spanning subtree fixed by every generator.
OrbitVerdict finite_orbit_fixed_vertex(const ActionSpec& act, Vertex s, int bound);

/// Quoted diameter bound for the dual tree of a genus-g surface; not computed.
constexpr int dual_tree_diameter_bound(int genus) { return 14 * genus - 12; }

}  // namespace margulis::gtree
