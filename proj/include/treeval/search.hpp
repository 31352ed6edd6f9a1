#pragma once

#include <cstdint>
#include <optional>

#include "treeval/pebbling.hpp"

namespace treeval {

struct BudgetCapExceeded : PebbleError {
  explicit BudgetCapExceeded(const std::string& what) : PebbleError(what) {}
};

struct StateSpaceTooLarge : PebbleError {
  explicit StateSpaceTooLarge(const std::string& what) : PebbleError(what) {}
};

struct SearchResult {
  Rational cost;
  std::vector<PebbleMove> witness;
  uint64_t states_explored = 0;
};

struct SearchOptions {
  uint64_t max_states = 40000000;        // per feasibility probe
  Rational budget_cap = Rational(64);    // largest budget the search may try
  std::optional<Rational> upper_bound_hint;  // a budget known to be feasible
};

// Exact minimum of the (discretized) game: feasibility of a budget is decided
// by forward reachability from the empty configuration to one where every
// sink has held a whole black pebble and everything is empty again, over
// configurations of total weight <= budget; a binary search on the budget
// (in multiples of 1/granularity) pins the minimum. Tree targets are
// canonicalized under sibling-subtree swaps.
SearchResult min_pebbles(const TreeShape& tree, GameVariant variant, int granularity,
                         const SearchOptions& opts = {});
SearchResult min_pebbles(const PebbleGraph& dag, GameVariant variant, int granularity,
                         const SearchOptions& opts = {});

}  // namespace treeval
