#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treeval/instance.hpp"

namespace treeval {

// An input variable of the evaluation problem: either a leaf value or one
// entry of an internal node's function table.
struct VarId {
  enum class Kind { Leaf, Func };
  Kind kind = Kind::Leaf;
  long long node = 0;
  std::vector<int> args;  // Func only: the queried child tuple, size d

  bool operator==(const VarId& o) const {
    return kind == o.kind && node == o.node && args == o.args;
  }
  std::string to_string() const;
};

int var_value(const TepInstance& inst, const VarId& var);

struct BpEdge {
  int label;   // answer in [k]
  int target;  // unified id: nonfinal states first, then finals
};

struct BpState {
  VarId var;
  std::vector<BpEdge> edges;
  std::string note;  // free-form annotation (e.g. remembered pebble values)
};

// k-way branching program, deterministic or nondeterministic, cycles
// allowed. Final states are labeled with elements of the output range R
// (values in [k] for the function problem, 0/1 for the Boolean problem).
struct BranchingProgram {
  TreeShape shape;
  int k = 2;
  bool deterministic = false;
  int start = 0;
  std::vector<BpState> states;
  std::vector<int> finals;  // labels, in label order

  long long size() const {  // number of states, finals included
    return static_cast<long long>(states.size()) + static_cast<long long>(finals.size());
  }
  bool is_final(int id) const { return id >= static_cast<int>(states.size()); }
  int final_label(int id) const { return finals[id - states.size()]; }
  int final_id(int label) const;

  void check_well_formed() const;  // throws std::invalid_argument
};

struct RunOutcome {
  enum class Kind { Output, Abort, Diverge };
  Kind kind = Kind::Abort;
  int output = 0;

  bool is_output(int r) const { return kind == Kind::Output && output == r; }
};

RunOutcome run_deterministic(const BranchingProgram& bp, const TepInstance& inst);

// Final labels reachable from the start state along activated edges.
std::set<int> reachable_finals(const BranchingProgram& bp, const TepInstance& inst);

// g(input) for the problem the program is supposed to compute.
int expected_output(const TepInstance& inst, ProblemKind kind);

struct CheckMode {
  bool exhaustive = true;
  long long samples = 0;
  uint64_t seed = 0;
  BigInt cap = BigInt(100000000);  // exhaustive only

  static CheckMode Exhaustive() { return {}; }
  static CheckMode Sampled(long long n, uint64_t seed) { return {false, n, seed, BigInt(0)}; }
};

struct CheckReport {
  bool pass = true;
  long long inputs_checked = 0;
  std::optional<TepInstance> counterexample;
  std::string detail;
};

struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Correctness: on every input the set of reachable final labels is exactly
// {g(input)}; for deterministic programs the unique run must output it.
CheckReport check_correct(const BranchingProgram& bp, ProblemKind kind, const CheckMode& mode);

// Thrifty: every function-table query made on a computation that matters
// (the unique run for deterministic programs; any state both reachable and
// co-reachable to a final in the activated subgraph for nondeterministic
// ones) asks for the node's children's true values.
CheckReport check_thrifty(const BranchingProgram& bp, const CheckMode& mode);

struct BpMetrics {
  long long state_count = 0;                       // finals included
  std::vector<std::pair<long long, long long>> states_per_node;  // (node, query states)
};

BpMetrics metrics(const BranchingProgram& bp);

struct DegenerateSeries : std::runtime_error {
  explicit DegenerateSeries(const std::string& what) : std::runtime_error(what) {}
};

// Least-squares slope of log(states) against log(k).
double growth_exponent(const std::vector<std::pair<int, long long>>& series);

// Function-problem program to Boolean-problem program by merging finals.
BranchingProgram merge_finals_boolean(const BranchingProgram& function_bp);

std::string export_dot(const BranchingProgram& bp);
BranchingProgram bp_from_dot(const std::string& text);

std::string bp_to_json(const BranchingProgram& bp);
BranchingProgram bp_from_json(const std::string& text);

// Structural isomorphism by parallel traversal in stored edge order.
bool isomorphic(const BranchingProgram& a, const BranchingProgram& b);

}  // namespace treeval
