#pragma once

#include "treeval/bp.hpp"
#include "treeval/pebbling.hpp"

namespace treeval {

struct CompilationReport {
  Rational source_cost;                     // validated cost of the pebbling
  int k = 2;
  long long states = 0;                     // finals included
  std::vector<long long> states_per_step;   // query states per pebbling step
  long long max_bits_per_config = 0;        // fractional compiler bit bound
  std::vector<long long> phase_states;      // four-phase compiler only
  std::string to_json() const;
};

struct CompiledProgram {
  BranchingProgram bp;
  CompilationReport report;
};

struct InvalidSequence : PebbleError {
  explicit InvalidSequence(const std::string& what) : PebbleError(what) {}
};

struct InvalidBlockSize : std::runtime_error {
  explicit InvalidBlockSize(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic thrifty program from a black pebbling: one state per
// reachable (step, values of pebbled nodes) pair, querying the node each
// finish move pebbles; pebbles taken off the tree forget their value.
CompiledProgram compile_black_det(const PebbleSequence& seq, int k, ProblemKind kind);

// Nondeterministic thrifty program deciding the Boolean problem from a
// fractional pebbling: a state remembers ceil(b*log2 k) verified and
// ceil(w*log2 k) conjectured bits of each pebbled node's value; white
// placements guess bits, finishes verify them and wrong guesses abort.
CompiledProgram compile_fractional_nondet(const PebbleSequence& seq, int k);

// The four-phase deterministic Boolean program that beats thrifty by a log
// factor: compute v_2 and keep only its block of size m, compute the other
// root children, probe the root table on every candidate in the block, then
// recompute v_2 and accept if its probe succeeded.
CompiledProgram compile_boolean_logsave(int d, int h, int k, int block_size = 0);

// ceil(log2 k^(d-1) - log2 log2 k^(d-1)), clamped to [1, k].
int logsave_default_block(int d, int k);

// One-call conveniences wiring the generated strategies to the compilers.
CompiledProgram compile_black_det_default(int d, int h, int k, ProblemKind kind);
CompiledProgram compile_fractional_nondet_default(int d, int h, int k);

}  // namespace treeval
