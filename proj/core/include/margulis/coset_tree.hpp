#pragma once

#include <string>
#include <vector>

#include "margulis/gtree.hpp"

namespace margulis::gtree {

/// Finite window of the Bass-Serre tree of <x> * <y>: vertices are the
/// cosets g<x> and g<y>, edges are the elements g (joining g<x> to g<y>),
/// for all g of word length <= radius. Generators 'x' and 'y' act by left
/// multiplication as partial automorphisms of the window.
struct CosetTree {
  ActionSpec action;
  Edge base_edge;          // the edge 1, joining <x> and <y>
  Vertex x_vertex = 0;     // the coset <x>, fixed by x
  Vertex y_vertex = 0;     // the coset <y>, fixed by y
  std::vector<std::string> labels;  // e.g. "xY<x>" for the coset x y^-1 <x>
  int radius = 0;
};

/// order_x / order_y = 0 means infinite cyclic; otherwise the factor is
/// cyclic of that order (>= 2).
CosetTree build_coset_tree(int radius, int order_x = 0, int order_y = 0);

}  // namespace margulis::gtree
