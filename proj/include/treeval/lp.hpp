#pragma once

#include <optional>

#include "treeval/pebbling.hpp"

namespace treeval {

// The combinatorial shape of a pebbling: step kinds and nodes, no amounts.
// Amounts become the decision variables of an exact linear program.
struct SkeletonStep {
  MoveKind kind;
  int node;
  int slide_child = -1;  // WhiteSlide only
};

struct MoveSkeleton {
  std::vector<SkeletonStep> steps;
};

MoveSkeleton skeleton_of(const std::vector<PebbleMove>& moves);

// Minimize the maximum total weight over all sequences realizing the
// skeleton: variables b(v,t), w(v,t) with nonnegativity, b+w <= 1, zero
// boundary conditions, the per-step change rules, and sum <= p at every
// step. Solved with exact rational pivoting. Returns nullopt when the
// skeleton admits no valid sequence (for example, no finish ever places a
// whole black pebble on a sink).
std::optional<Rational> lp_min_over_skeleton(const PebbleGraph& g, const MoveSkeleton& skeleton);

// Exact two-phase simplex for: minimize c.x subject to A.x <= b, x >= 0.
// Returns nullopt when infeasible; throws on unbounded problems.
std::optional<Rational> simplex_minimize(const std::vector<std::vector<Rational>>& a,
                                         const std::vector<Rational>& b,
                                         const std::vector<Rational>& c,
                                         std::vector<Rational>* solution_out = nullptr);

}  // namespace treeval
