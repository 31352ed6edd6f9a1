#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "treeval/rational.hpp"
#include "treeval/tree.hpp"

namespace treeval {

enum class ProblemKind { Function, Boolean };

// A labeled tree: one total function table per internal node, one value in
// [k] = {1..k} per leaf. Table rows are row-major over child tuples in
// lexicographic order (first child most significant), 1-based values.
struct TepInstance {
  TreeShape shape;
  int k = 2;
  // func_tables[i] is the table of internal node i+1, size k^d.
  std::vector<std::vector<int>> func_tables;
  // leaf_values[j] is the value of leaf internal_count+1+j.
  std::vector<int> leaf_values;

  long long table_index(const std::vector<int>& child_values) const;
  int func_value(long long node, const std::vector<int>& child_values) const;
  int leaf_value(long long node) const;

  void check_well_formed() const;  // throws std::invalid_argument
};

// Number of k-ary variables: internal_count * k^d + leaf_count.
long long variable_count(const TreeShape& shape, int k);

// k^m as an exact integer.
BigInt count_instances(const TreeShape& shape, int k);

// Explicit-stack post-order evaluation of the root value.
int evaluate_function(const TepInstance& inst);
bool evaluate_boolean(const TepInstance& inst);

// Values of all nodes, indexed by node id (index 0 unused).
std::vector<int> node_values(const TepInstance& inst);

// Deterministic uniform instance from a 64-bit seed.
TepInstance random_instance(const TreeShape& shape, int k, uint64_t seed);

// Streams all k^m instances in a fixed order: the variable vector is all
// tables in node order (row-major) followed by all leaves, and enumeration
// increments the last variable fastest, starting from the all-ones instance.
class InstanceEnumerator {
 public:
  // Throws if k^m exceeds the cap.
  InstanceEnumerator(const TreeShape& shape, int k, BigInt cap = BigInt(1000000000));
  // Returns false when the stream is exhausted.
  bool next(TepInstance& out);
  const BigInt& total() const { return total_; }

 private:
  TreeShape shape_;
  int k_;
  BigInt total_;
  bool first_ = true;
  bool done_ = false;
  TepInstance current_;
  std::vector<int*> flat_;  // all variables in enumeration order
};

// Single-function reduction: same tree, alphabet [N*k] with the pair
// <i,x> encoded as (i-1)*k + x, one shared node function stored once.
struct HatInstance {
  TreeShape shape;
  int base_k = 2;
  long long alphabet_size() const { return shape.node_count() * base_k; }
  std::vector<int> shared_table;  // size (N*k)^d, row-major as TepInstance
  std::vector<int> leaf_values;

  long long encode_pair(long long node, int value) const { return (node - 1) * base_k + value; }
  int shared_value(const std::vector<long long>& child_values) const;
};

HatInstance to_single_function(const TepInstance& inst);

// Values of all hat-instance nodes (in [N*k]), indexed by node id.
std::vector<long long> hat_node_values(const HatInstance& hat);
bool hat_boolean(const HatInstance& hat);

// JSON round-trip of the documented instance format.
std::string instance_to_json(const TepInstance& inst);
TepInstance instance_from_json(const std::string& text);

}  // namespace treeval
