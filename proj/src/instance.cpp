#include "treeval/instance.hpp"

#include <stdexcept>

#include "json.hpp"

namespace treeval {

long long TepInstance::table_index(const std::vector<int>& child_values) const {
  long long idx = 0;
  for (int v : child_values) {
    if (v < 1 || v > k) throw std::invalid_argument("table_index: value out of [k]");
    idx = idx * k + (v - 1);
  }
  return idx;
}

int TepInstance::func_value(long long node, const std::vector<int>& child_values) const {
  return func_tables[node - 1][table_index(child_values)];
}

int TepInstance::leaf_value(long long node) const {
  return leaf_values[node - shape.internal_count() - 1];
}

void TepInstance::check_well_formed() const {
  if (k < 2) throw std::invalid_argument("instance: k >= 2 required");
  long long internals = shape.internal_count();
  long long table_size = TreeShape::pow_ll(k, shape.degree);
  if (static_cast<long long>(func_tables.size()) != internals)
    throw std::invalid_argument("instance: wrong table count");
  for (const auto& t : func_tables) {
    if (static_cast<long long>(t.size()) != table_size)
      throw std::invalid_argument("instance: wrong table size");
    for (int v : t)
      if (v < 1 || v > k) throw std::invalid_argument("instance: table entry out of [k]");
  }
  if (static_cast<long long>(leaf_values.size()) != shape.leaf_count())
    throw std::invalid_argument("instance: wrong leaf count");
  for (int v : leaf_values)
    if (v < 1 || v > k) throw std::invalid_argument("instance: leaf value out of [k]");
}

long long variable_count(const TreeShape& shape, int k) {
  return shape.internal_count() * TreeShape::pow_ll(k, shape.degree) + shape.leaf_count();
}

BigInt count_instances(const TreeShape& shape, int k) {
  return BigInt::pow(BigInt(k), static_cast<unsigned long long>(variable_count(shape, k)));
}

std::vector<int> node_values(const TepInstance& inst) {
  const TreeShape& s = inst.shape;
  std::vector<int> values(s.node_count() + 1, 0);
  // Post-order via explicit stack; depth bounded by the tree height.
  struct Frame {
    long long node;
    int next_child;
  };
  std::vector<Frame> stack;
  stack.push_back({1, 0});
  std::vector<int> child_buf(s.degree);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (s.is_leaf(f.node)) {
      values[f.node] = inst.leaf_value(f.node);
      stack.pop_back();
      continue;
    }
    if (f.next_child < s.degree) {
      long long c = s.child(f.node, f.next_child++);
      stack.push_back({c, 0});
      continue;
    }
    for (int j = 0; j < s.degree; ++j) child_buf[j] = values[s.child(f.node, j)];
    values[f.node] = inst.func_value(f.node, child_buf);
    stack.pop_back();
  }
  return values;
}

int evaluate_function(const TepInstance& inst) { return node_values(inst)[1]; }

bool evaluate_boolean(const TepInstance& inst) { return evaluate_function(inst) == 1; }

namespace {

// splitmix64: small, portable, deterministic across platforms.
struct SplitMix64 {
  uint64_t state;
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [1, k] by rejection.
  int uniform(int k) {
    uint64_t bound = ~0ull - ~0ull % static_cast<uint64_t>(k);
    uint64_t v;
    do {
      v = next();
    } while (v >= bound);
    return static_cast<int>(v % static_cast<uint64_t>(k)) + 1;
  }
};

}  // namespace

TepInstance random_instance(const TreeShape& shape, int k, uint64_t seed) {
  SplitMix64 rng{seed};
  TepInstance inst;
  inst.shape = shape;
  inst.k = k;
  long long table_size = TreeShape::pow_ll(k, shape.degree);
  inst.func_tables.assign(shape.internal_count(), std::vector<int>(table_size));
  for (auto& t : inst.func_tables)
    for (auto& v : t) v = rng.uniform(k);
  inst.leaf_values.resize(shape.leaf_count());
  for (auto& v : inst.leaf_values) v = rng.uniform(k);
  return inst;
}

InstanceEnumerator::InstanceEnumerator(const TreeShape& shape, int k, BigInt cap)
    : shape_(shape), k_(k), total_(count_instances(shape, k)) {
  if (total_ > cap) throw std::overflow_error("enumerate_instances: k^m exceeds cap");
  current_.shape = shape;
  current_.k = k;
  long long table_size = TreeShape::pow_ll(k, shape.degree);
  current_.func_tables.assign(shape.internal_count(), std::vector<int>(table_size, 1));
  current_.leaf_values.assign(shape.leaf_count(), 1);
  for (auto& t : current_.func_tables)
    for (auto& v : t) flat_.push_back(&v);
  for (auto& v : current_.leaf_values) flat_.push_back(&v);
}

bool InstanceEnumerator::next(TepInstance& out) {
  if (done_) return false;
  if (first_) {
    first_ = false;
    out = current_;
    return true;
  }
  // Odometer increment, last variable fastest.
  size_t i = flat_.size();
  while (i-- > 0) {
    if (*flat_[i] < k_) {
      ++*flat_[i];
      out = current_;
      return true;
    }
    *flat_[i] = 1;
  }
  done_ = true;
  return false;
}

int HatInstance::shared_value(const std::vector<long long>& child_values) const {
  long long idx = 0;
  long long nk = alphabet_size();
  for (long long v : child_values) idx = idx * nk + (v - 1);
  return shared_table[idx];
}

HatInstance to_single_function(const TepInstance& inst) {
  const TreeShape& s = inst.shape;
  HatInstance hat;
  hat.shape = s;
  hat.base_k = inst.k;
  long long nk = hat.alphabet_size();
  int d = s.degree;
  long long table_size = 1;
  for (int j = 0; j < d; ++j) table_size *= nk;
  // Non-child argument tuples map to <1,1>.
  hat.shared_table.assign(table_size, static_cast<int>(hat.encode_pair(1, 1)));
  std::vector<int> child_x(d);
  for (long long j = 1; j <= s.internal_count(); ++j) {
    // Enumerate all [k]^d tuples for the children of j.
    long long kd = TreeShape::pow_ll(inst.k, d);
    for (long long t = 0; t < kd; ++t) {
      long long rest = t;
      for (int a = d - 1; a >= 0; --a) {
        child_x[a] = static_cast<int>(rest % inst.k) + 1;
        rest /= inst.k;
      }
      long long idx = 0;
      for (int a = 0; a < d; ++a) idx = idx * nk + (hat.encode_pair(s.child(j, a), child_x[a]) - 1);
      hat.shared_table[idx] = static_cast<int>(hat.encode_pair(j, inst.func_value(j, child_x)));
    }
  }
  hat.leaf_values.resize(s.leaf_count());
  for (long long leaf = s.internal_count() + 1; leaf <= s.node_count(); ++leaf)
    hat.leaf_values[leaf - s.internal_count() - 1] =
        static_cast<int>(hat.encode_pair(leaf, inst.leaf_value(leaf)));
  return hat;
}

std::vector<long long> hat_node_values(const HatInstance& hat) {
  const TreeShape& s = hat.shape;
  std::vector<long long> values(s.node_count() + 1, 0);
  struct Frame {
    long long node;
    int next_child;
  };
  std::vector<Frame> stack;
  stack.push_back({1, 0});
  std::vector<long long> child_buf(s.degree);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (s.is_leaf(f.node)) {
      values[f.node] = hat.leaf_values[f.node - s.internal_count() - 1];
      stack.pop_back();
      continue;
    }
    if (f.next_child < s.degree) {
      stack.push_back({s.child(f.node, f.next_child++), 0});
      continue;
    }
    for (int j = 0; j < s.degree; ++j) child_buf[j] = values[s.child(f.node, j)];
    values[f.node] = hat.shared_value(child_buf);
    stack.pop_back();
  }
  return values;
}

bool hat_boolean(const HatInstance& hat) {
  return hat_node_values(hat)[1] == hat.encode_pair(1, 1);
}

std::string instance_to_json(const TepInstance& inst) {
  nlohmann::json j;
  j["d"] = inst.shape.degree;
  j["h"] = inst.shape.height;
  j["k"] = inst.k;
  j["leaves"] = inst.leaf_values;
  nlohmann::json tables = nlohmann::json::object();
  for (size_t i = 0; i < inst.func_tables.size(); ++i)
    tables[std::to_string(i + 1)] = inst.func_tables[i];
  j["tables"] = tables;
  return j.dump(2);
}

TepInstance instance_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  TepInstance inst;
  inst.shape = TreeShape(j.at("d").get<int>(), j.at("h").get<int>());
  inst.k = j.at("k").get<int>();
  inst.leaf_values = j.at("leaves").get<std::vector<int>>();
  inst.func_tables.resize(inst.shape.internal_count());
  for (auto& [key, val] : j.at("tables").items()) {
    long long node = std::stoll(key);
    if (node < 1 || node > inst.shape.internal_count())
      throw std::invalid_argument("instance json: table for non-internal node " + key);
    inst.func_tables[node - 1] = val.get<std::vector<int>>();
  }
  inst.check_well_formed();
  return inst;
}

}  // namespace treeval
