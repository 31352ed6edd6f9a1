#pragma once

#include "treeval/pebbling.hpp"

namespace treeval {

// Recursive black pebbling of T^h_d, cost exactly (d-1)h - d + 2.
PebbleSequence strategy_black(int d, int h);

// Whole black-white pebbling (no white sliding), cost exactly
// ceil((d-1)h/2) + 1. Odd degrees use a one-level recursion with a
// critical-time split; even degrees descend two levels at a time.
PebbleSequence strategy_bw(int d, int h);

// Fractional pebbling, cost exactly (d-1)h/2 + 1, built from the mutually
// recursive procedures that leave a black pebble on the root over a layer
// of white half pebbles and then clean them up.
PebbleSequence strategy_fractional(int d, int h);

// The fixed 8/3 pebbling of the height-4 binary tree that uses white
// sliding moves.
PebbleSequence strategy_whiteslide_h4();

// Threshold simulation: black pebble where b >= 1/2, white where w > 1/2.
// Input must validate as Fractional; output validates as BlackWhite with
// cost at most twice the input's.
PebbleSequence fractional_to_bw(const PebbleSequence& fractional);

Rational black_cost_formula(int d, int h);       // (d-1)h - d + 2
Rational bw_cost_formula(int d, int h);          // ceil((d-1)h/2) + 1
Rational fractional_cost_formula(int d, int h);  // (d-1)h/2 + 1

}  // namespace treeval
