#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treeval/rational.hpp"
#include "treeval/tree.hpp"

namespace treeval {

// Target of a pebbling: nodes 0..n-1, children lists (the nodes that must
// carry pebble value 1 before a node can be finished), and the sinks that
// must hold a whole black pebble at some point. Trees map node id i to
// index i-1; DAG nodes keep their imported names.
struct PebbleGraph {
  std::vector<std::vector<int>> children;
  std::vector<int> sinks;
  std::vector<std::string> names;

  int size() const { return static_cast<int>(children.size()); }
  int index_of(const std::string& name) const;
};

PebbleGraph graph_from_tree(const TreeShape& shape);

enum class GameVariant { Black, BlackWhite, Fractional, FractionalWhiteSlide };

std::string variant_name(GameVariant v);
GameVariant variant_from_name(const std::string& s);

enum class MoveKind { DecreaseBlack, IncreaseWhite, Finish, WhiteSlide };

// Finish bundles rule (iii): requires every child at pebble value 1; sets
// w(node) to 0, raises b(node) to new_black, and simultaneously lowers the
// children's black values. WhiteSlide is rule (iv): the white weight on
// node moves down to one child, topping that child up to pebble value 1.
struct PebbleMove {
  MoveKind kind = MoveKind::DecreaseBlack;
  int node = 0;
  Rational amount;     // DecreaseBlack / IncreaseWhite
  Rational new_black;  // Finish
  std::vector<std::pair<int, Rational>> child_decreases;  // Finish
  int slide_child = -1;  // WhiteSlide

  static PebbleMove dec_black(int node, Rational amount);
  static PebbleMove inc_white(int node, Rational amount);
  static PebbleMove finish(int node, Rational new_black,
                           std::vector<std::pair<int, Rational>> decs = {});
  static PebbleMove white_slide(int node, int child);
};

struct PebbleConfig {
  std::vector<Rational> black, white;

  explicit PebbleConfig(int n = 0) : black(n), white(n) {}
  Rational value(int node) const { return black[node] + white[node]; }
  Rational total() const;
  bool empty() const;
};

struct PebbleError : std::runtime_error {
  explicit PebbleError(const std::string& what) : std::runtime_error(what) {}
};

struct IllegalMove : PebbleError {
  int index;          // move position in the sequence, -1 for single moves
  std::string rule;   // which rule was violated
  IllegalMove(int index, const std::string& rule, const std::string& what)
      : PebbleError(what), index(index), rule(rule) {}
};

struct RootNeverBlack : PebbleError {
  RootNeverBlack() : PebbleError("no sink ever holds a whole black pebble") {}
};

struct NonEmptyEnd : PebbleError {
  NonEmptyEnd() : PebbleError("sequence does not end with the empty configuration") {}
};

// A validated-or-not move list against a fixed target.
struct PebbleSequence {
  TreeShape shape;  // meaningful for tree targets only
  PebbleGraph graph;
  std::vector<PebbleMove> moves;
  Rational claimed_cost;  // what the construction promises; 0 if unknown
};

// Applies one move, throwing IllegalMove if it is not legal for the variant.
PebbleConfig apply_move(const PebbleGraph& g, const PebbleConfig& config,
                        const PebbleMove& move, GameVariant variant, int index = -1);

// Checks the whole sequence (boundary conditions included) and returns the
// exact cost: the maximum total weight over all configurations.
Rational validate_sequence(const PebbleGraph& g, const std::vector<PebbleMove>& moves,
                           GameVariant variant);
inline Rational validate_sequence(const PebbleSequence& seq, GameVariant variant) {
  return validate_sequence(seq.graph, seq.moves, variant);
}

// One move per line, e.g. "finish 2 b=1/2 w=0 dec 4=1 5=1".
std::string moves_to_text(const PebbleGraph& g, const std::vector<PebbleMove>& moves);
std::vector<PebbleMove> moves_from_text(const PebbleGraph& g, const std::string& text);

}  // namespace treeval
