#pragma once

#include <stdexcept>
#include <vector>

namespace treeval {

// Complete d-ary tree with h levels, nodes numbered heap style:
// root = 1, children of i are d*(i-1)+2 .. d*i+1.
struct TreeShape {
  int degree = 2;
  int height = 2;

  TreeShape() = default;
  TreeShape(int d, int h) : degree(d), height(h) {
    if (d < 2 || h < 2) throw std::invalid_argument("TreeShape: need d >= 2 and h >= 2");
  }

  long long internal_count() const { return (pow_ll(degree, height - 1) - 1) / (degree - 1); }
  long long leaf_count() const { return pow_ll(degree, height - 1); }
  long long node_count() const { return (pow_ll(degree, height) - 1) / (degree - 1); }

  bool is_leaf(long long node) const { return node > internal_count(); }
  long long child(long long node, int j) const {  // j in [0, d)
    return static_cast<long long>(degree) * (node - 1) + 2 + j;
  }
  long long parent(long long node) const { return (node - 2) / degree + 1; }

  // Level of a node, root = 1, leaves = height.
  int level(long long node) const {
    int lvl = 1;
    long long first = 1;  // first node id on the current level
    long long count = 1;
    while (node >= first + count) {
      first += count;
      count *= degree;
      ++lvl;
    }
    return lvl;
  }
  // Number of levels in the subtree rooted at node.
  int subtree_height(long long node) const { return height - level(node) + 1; }

  static long long pow_ll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
  }

  bool operator==(const TreeShape& o) const { return degree == o.degree && height == o.height; }
};

}  // namespace treeval
