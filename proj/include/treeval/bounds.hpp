#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "treeval/rational.hpp"

namespace treeval {

enum class MachineModel { DetKway, DetBinary, NondetKway, NondetBinary };
enum class BoundProblem { FT, BT };

struct BoundModel {
  MachineModel machine = MachineModel::DetKway;
  BoundProblem problem = BoundProblem::FT;
  int output_range(int k) const { return problem == BoundProblem::FT ? k : 2; }
};

// Upper bound on the number of distinct programs with s non-final states
// over v variables: v^s (s+|R|)^(sk) deterministically, with the extra
// (2^s)^(sk) subset factor nondeterministically.
BigInt count_programs(const BoundModel& model, long long s, long long v, int k);

// Smallest s with count_programs(s) >= required, by doubling plus binary
// search on the exact counting expression.
long long min_states_for_restrictions(const BoundModel& model, long long v, int k,
                                      const BigInt& required);

// One lower-bound table entry: kept exact when the expression is rational
// (integer exponents, no logs, or an even perfect power), with a long
// double approximation alongside.
struct BoundEntry {
  double approx = 0;
  std::optional<Rational> exact;
  std::string formula;
  std::string value_string() const;
};

struct BoundTable {
  int d = 2, h = 3, k = 2;
  // Rows in fixed order: det k-way, det binary, nondet k-way, nondet binary;
  // columns FT, BT.
  BoundEntry entries[4][2];
  bool vacuous = false;        // h = 2 makes every numerator coefficient 0
  bool tight_at_h3[4][2] = {};  // boxed entries: optimal in k when h = 3
  BigInt litter_count;          // k^d (d^(h-2)-1)/(d-1)
  std::string to_markdown() const;
  std::string to_csv() const;
};

BoundTable neciporuk_table(int d, int h, int k);

struct ConsistencyViolation : std::runtime_error {
  explicit ConsistencyViolation(const std::string& what) : std::runtime_error(what) {}
};

struct ConsistencyReport {
  long long det_states = 0;
  double det_bound = 0;
  long long nondet_states = 0;
  double nondet_bound = 0;
  bool pass = false;
};

// Compiled upper bounds must dominate the table's lower bounds: the
// deterministic FT program against the det k-way FT entry, and the
// nondeterministic BT program against the nondet k-way BT entry.
ConsistencyReport consistency_check(int d, int h, int k);

}  // namespace treeval
