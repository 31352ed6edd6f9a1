#pragma once

#include <string>

#include "treeval/pebbling.hpp"

namespace treeval {

// Checks acyclicity and that every node reaches a sink; throws otherwise.
void check_dag(const PebbleGraph& g);

// The c-fold split of T^h_d: each tree node v becomes copies v[1..c] wired
// complete-bipartite along tree edges, plus a fresh root above the c copies
// of the tree root. Node names are "v.i", the added root is "root".
PebbleGraph build_G(int d, int h, int c);

// Same, but each copy of an internal tree node keeps only a contiguous
// window of its children in the inorder-based order: v[i] drops its i-1
// smallest and c-i largest children, leaving c(d-1)+1 of them.
PebbleGraph build_Gprime(int d, int h, int c);

// Edge-list text format: one "child parent" pair per line, `node <name>`
// lines for isolated nodes; sinks are the nodes that never appear as a
// child. Round-trips through parse/print.
std::string dag_to_text(const PebbleGraph& g);
PebbleGraph dag_from_text(const std::string& text);

}  // namespace treeval
