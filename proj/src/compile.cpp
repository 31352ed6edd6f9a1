#include "treeval/compile.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "treeval/strategies.hpp"

namespace treeval {

std::string CompilationReport::to_json() const {
  nlohmann::json j;
  j["source_cost"] = source_cost.to_string();
  j["k"] = k;
  j["states"] = states;
  if (!states_per_step.empty()) j["states_per_step"] = states_per_step;
  if (max_bits_per_config) j["max_bits_per_config"] = max_bits_per_config;
  if (!phase_states.empty()) j["phase_states"] = phase_states;
  return j.dump(2);
}

namespace {

long long tree_id(int graph_index) { return graph_index + 1; }

std::string note_of(const std::map<int, int>& values) {
  std::string note;
  for (auto [node, value] : values) {
    if (!note.empty()) note += ",";
    note += std::to_string(tree_id(node)) + "=" + std::to_string(value);
  }
  return note;
}

}  // namespace

CompiledProgram compile_black_det(const PebbleSequence& seq, int k, ProblemKind kind) {
  Rational cost;
  try {
    cost = validate_sequence(seq.graph, seq.moves, GameVariant::Black);
  } catch (const PebbleError& e) {
    throw InvalidSequence(std::string("compile_black_det: ") + e.what());
  }
  const TreeShape& shape = seq.shape;
  if (shape.node_count() != seq.graph.size())
    throw InvalidSequence("compile_black_det: sequence target is not the declared tree");

  BranchingProgram bp;
  bp.shape = shape;
  bp.k = k;
  bp.deterministic = true;
  if (kind == ProblemKind::Function)
    for (int r = 1; r <= k; ++r) bp.finals.push_back(r);
  else
    bp.finals = {0, 1};

  // Run bookkeeping moves until the next query (a finish that places a
  // pebble); pebbles leaving the tree forget their value.
  auto advance = [&](size_t idx, std::map<int, int>& values) -> size_t {
    while (idx < seq.moves.size()) {
      const PebbleMove& m = seq.moves[idx];
      if (m.kind == MoveKind::Finish && m.new_black == Rational(1)) return idx;
      if (m.kind == MoveKind::DecreaseBlack) {
        values.erase(m.node);
      } else if (m.kind == MoveKind::Finish) {
        for (const auto& [child, amt] : m.child_decreases) {
          (void)amt;
          values.erase(child);
        }
      }
      ++idx;
    }
    return seq.moves.size();
  };

  struct Pending {
    size_t idx;
    std::map<int, int> values;
  };
  std::unordered_map<std::string, int> ids;
  std::deque<Pending> queue;
  std::vector<long long> per_step(seq.moves.size(), 0);
  auto key_of = [](size_t idx, const std::map<int, int>& values) {
    std::string key = std::to_string(idx) + "|";
    for (auto [node, value] : values) key += std::to_string(node) + "=" + std::to_string(value) + ",";
    return key;
  };
  auto intern = [&](size_t idx, std::map<int, int> values) {
    std::string key = key_of(idx, values);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(bp.states.size());
    ids.emplace(std::move(key), id);
    bp.states.emplace_back();
    queue.push_back({idx, std::move(values)});
    return id;
  };

  std::map<int, int> start_values;
  size_t start_idx = advance(0, start_values);
  if (start_idx >= seq.moves.size())
    throw InvalidSequence("compile_black_det: no pebble placement found");
  bp.start = intern(start_idx, std::move(start_values));

  while (!queue.empty()) {
    Pending cur = std::move(queue.front());
    queue.pop_front();
    const PebbleMove& m = seq.moves[cur.idx];
    int id = ids.at(key_of(cur.idx, cur.values));
    ++per_step[cur.idx];
    bp.states[id].note = note_of(cur.values);
    long long node = tree_id(m.node);
    if (shape.is_leaf(node)) {
      bp.states[id].var = {VarId::Kind::Leaf, node, {}};
    } else {
      std::vector<int> args;
      for (int ch : seq.graph.children[m.node]) args.push_back(cur.values.at(ch));
      bp.states[id].var = {VarId::Kind::Func, node, std::move(args)};
    }
    for (int answer = 1; answer <= k; ++answer) {
      if (m.node == 0) {  // the root's value decides the output
        int label = kind == ProblemKind::Function ? answer : (answer == 1 ? 1 : 0);
        bp.states[id].edges.push_back({answer, bp.final_id(label)});
        continue;
      }
      std::map<int, int> next = cur.values;
      next[m.node] = answer;
      for (const auto& [child, amt] : m.child_decreases) {
        (void)amt;
        next.erase(child);
      }
      size_t next_idx = advance(cur.idx + 1, next);
      if (next_idx >= seq.moves.size())
        throw InvalidSequence("compile_black_det: sequence ends before the root is pebbled");
      int target = intern(next_idx, std::move(next));
      bp.states[id].edges.push_back({answer, target});
    }
  }

  bp.check_well_formed();
  CompiledProgram out;
  out.bp = std::move(bp);
  out.report.source_cost = cost;
  out.report.k = k;
  out.report.states = out.bp.size();
  out.report.states_per_step.assign(per_step.begin(), per_step.end());
  return out;
}

namespace {

// Slot codes for the fractional compiler: 0 unknown, 1/2 verified bit 0/1,
// 3/4 conjectured bit 0/1.
struct BitStorage {
  std::vector<uint8_t> slots;  // node-major, L slots per node
  uint8_t flag = 0;            // 0 unknown, 1 root value is 1, 2 it is not

  std::string key(size_t idx) const {
    std::string s = std::to_string(idx) + "|";
    s.append(reinterpret_cast<const char*>(slots.data()), slots.size());
    s.push_back(static_cast<char>('0' + flag));
    return s;
  }
  bool all_unknown() const {
    for (uint8_t s : slots)
      if (s) return false;
    return true;
  }
};

int ceil_log2(int k) {
  int bits = 0;
  while ((1 << bits) < k) ++bits;
  return bits == 0 ? 1 : bits;  // k = 2 still stores one bit
}

// ceil(r * bits) for a rational weight.
int ceil_bits(const Rational& r, int bits) {
  BigInt num = r.num() * BigInt(bits);
  BigInt q = num / r.den();
  if (q * r.den() != num) q = q + BigInt(1);
  return static_cast<int>(q.to_ll());
}

}  // namespace

CompiledProgram compile_fractional_nondet(const PebbleSequence& seq, int k) {
  Rational cost;
  try {
    cost = validate_sequence(seq.graph, seq.moves, GameVariant::Fractional);
  } catch (const PebbleError& e) {
    throw InvalidSequence(std::string("compile_fractional_nondet: ") + e.what());
  }
  const TreeShape& shape = seq.shape;
  if (shape.node_count() != seq.graph.size())
    throw InvalidSequence("compile_fractional_nondet: sequence target is not the declared tree");
  const int n = seq.graph.size();
  const int L = ceil_log2(k);

  // Exact configurations before/after every move, for the bit accounting.
  std::vector<PebbleConfig> configs;
  configs.emplace_back(n);
  for (size_t i = 0; i < seq.moves.size(); ++i)
    configs.push_back(apply_move(seq.graph, configs.back(), seq.moves[i],
                                 GameVariant::Fractional, static_cast<int>(i)));
  long long max_bits = 0;
  for (const auto& config : configs) {
    long long bits = 0;
    for (int v = 0; v < n; ++v)
      bits += ceil_bits(config.black[v], L) + ceil_bits(config.white[v], L);
    max_bits = std::max(max_bits, bits);
  }

  auto slot = [&](BitStorage& st, int node, int j) -> uint8_t& { return st.slots[node * L + j]; };
  auto bit_of = [&](int answer, int j) { return ((answer - 1) >> j) & 1; };
  // A node's known bits must still be completable to a value in [k].
  auto value_possible = [&](const BitStorage& st, int node) {
    int low = 0;
    for (int j = 0; j < L; ++j) {
      uint8_t s = st.slots[node * L + j];
      if (s == 2 || s == 4) low |= 1 << j;
    }
    return low <= k - 1;
  };

  // Applies bookkeeping moves from idx on, branching on white guesses.
  // Returns the index of the next finish (or moves.size()).
  auto advance = [&](size_t idx, BitStorage base, std::vector<BitStorage>& out) -> size_t {
    out.clear();
    out.push_back(std::move(base));
    while (idx < seq.moves.size()) {
      const PebbleMove& m = seq.moves[idx];
      if (m.kind == MoveKind::Finish) return idx;
      if (m.kind == MoveKind::WhiteSlide)
        throw InvalidSequence("compile_fractional_nondet: white sliding not supported");
      if (m.kind == MoveKind::DecreaseBlack) {
        int beta = ceil_bits(configs[idx + 1].black[m.node], L);
        for (auto& st : out)
          for (int j = beta; j < L; ++j) {
            uint8_t& s = slot(st, m.node, j);
            if (s == 1 || s == 2) s = 0;
          }
      } else {  // IncreaseWhite
        int omega = ceil_bits(configs[idx + 1].white[m.node], L);
        std::vector<BitStorage> expanded;
        for (auto& st : out) {
          int have = 0;
          for (int j = 0; j < L; ++j)
            if (slot(st, m.node, j) >= 3) ++have;
          std::vector<int> fresh;
          for (int j = 0; j < L && have + static_cast<int>(fresh.size()) < omega; ++j)
            if (slot(st, m.node, j) == 0) fresh.push_back(j);
          int patterns = 1 << fresh.size();
          for (int pat = 0; pat < patterns; ++pat) {
            BitStorage alt = st;
            for (size_t t = 0; t < fresh.size(); ++t)
              slot(alt, m.node, fresh[t]) = static_cast<uint8_t>(((pat >> t) & 1) ? 4 : 3);
            if (value_possible(alt, m.node)) expanded.push_back(std::move(alt));
          }
        }
        out = std::move(expanded);
      }
      ++idx;
    }
    return idx;
  };

  BranchingProgram bp;
  bp.shape = shape;
  bp.k = k;
  bp.deterministic = false;
  bp.finals = {0, 1};

  std::unordered_map<std::string, int> ids;
  struct Pending {
    size_t idx;
    BitStorage storage;
  };
  std::deque<Pending> queue;
  std::vector<long long> per_step(seq.moves.size() + 1, 0);
  auto intern = [&](size_t idx, BitStorage storage) {
    std::string key = storage.key(idx);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(bp.states.size());
    ids.emplace(std::move(key), id);
    bp.states.emplace_back();
    queue.push_back({idx, std::move(storage)});
    return id;
  };

  BitStorage empty_storage;
  empty_storage.slots.assign(static_cast<size_t>(n) * L, 0);
  std::vector<BitStorage> start_alts;
  size_t start_idx = advance(0, empty_storage, start_alts);
  if (start_idx >= seq.moves.size())
    throw InvalidSequence("compile_fractional_nondet: no finish move found");
  if (start_alts.size() == 1) {
    bp.start = intern(start_idx, start_alts[0]);
  } else {
    // Guesses before the first query: spend one state on a leaf query whose
    // answer is ignored.
    int id = static_cast<int>(bp.states.size());
    bp.states.emplace_back();
    bp.states[id].var = {VarId::Kind::Leaf, shape.internal_count() + 1, {}};
    for (auto& alt : start_alts) {
      int target = intern(start_idx, alt);
      for (int answer = 1; answer <= k; ++answer) bp.states[id].edges.push_back({answer, target});
    }
    bp.start = id;
  }

  while (!queue.empty()) {
    Pending cur = std::move(queue.front());
    queue.pop_front();
    int id = ids.at(cur.storage.key(cur.idx));
    ++per_step[cur.idx];
    const PebbleMove& m = seq.moves[cur.idx];
    long long node = tree_id(m.node);
    VarId var;
    if (shape.is_leaf(node)) {
      var = {VarId::Kind::Leaf, node, {}};
    } else {
      std::vector<int> args;
      for (int ch : seq.graph.children[m.node]) {
        int value_bits = 0;
        for (int j = 0; j < L; ++j) {
          uint8_t s = cur.storage.slots[ch * L + j];
          if (s == 0)
            throw InvalidSequence("compile_fractional_nondet: child value not fully stored");
          if (s == 2 || s == 4) value_bits |= 1 << j;
        }
        args.push_back(value_bits + 1);
      }
      var = {VarId::Kind::Func, node, std::move(args)};
    }
    bp.states[id].var = var;
    int beta_after = ceil_bits(configs[cur.idx + 1].black[m.node], L);
    for (int answer = 1; answer <= k; ++answer) {
      bool consistent = true;
      for (int j = 0; j < L && consistent; ++j) {
        uint8_t s = cur.storage.slots[m.node * L + j];
        if (s == 0) continue;
        int stored_bit = (s == 2 || s == 4) ? 1 : 0;
        if (stored_bit != bit_of(answer, j)) consistent = false;
      }
      if (!consistent) continue;  // wrong guess: the computation aborts
      BitStorage next = cur.storage;
      for (int j = 0; j < L; ++j)
        slot(next, m.node, j) = j < beta_after ? (bit_of(answer, j) ? 2 : 1) : 0;
      for (const auto& [child, amt] : m.child_decreases) {
        (void)amt;
        int beta_child = ceil_bits(configs[cur.idx + 1].black[child], L);
        for (int j = beta_child; j < L; ++j) {
          uint8_t& s = slot(next, child, j);
          if (s == 1 || s == 2) s = 0;
        }
      }
      if (m.node == 0 && m.new_black == Rational(1)) next.flag = answer == 1 ? 1 : 2;
      std::vector<BitStorage> alts;
      size_t next_idx = advance(cur.idx + 1, std::move(next), alts);
      for (auto& alt : alts) {
        if (next_idx >= seq.moves.size()) {
          if (!alt.all_unknown())
            throw InvalidSequence("compile_fractional_nondet: bits outlive the pebbling");
          if (alt.flag == 0)
            throw InvalidSequence("compile_fractional_nondet: root value never pinned");
          bp.states[id].edges.push_back({answer, bp.final_id(alt.flag == 1 ? 1 : 0)});
        } else {
          int target = intern(next_idx, std::move(alt));
          bp.states[id].edges.push_back({answer, target});
        }
      }
    }
  }

  bp.check_well_formed();
  CompiledProgram out;
  out.bp = std::move(bp);
  out.report.source_cost = cost;
  out.report.k = k;
  out.report.states = out.bp.size();
  out.report.states_per_step.assign(per_step.begin(), per_step.end());
  out.report.max_bits_per_config = max_bits;
  return out;
}

int logsave_default_block(int d, int k) {
  double q = (d - 1) * std::log2(static_cast<double>(k));
  double raw = q - std::log2(q);
  int m = static_cast<int>(std::ceil(raw - 1e-9));
  return std::max(1, std::min(k, m));
}

namespace {

// Black pebbling move list for the subtree rooted at a global tree node.
struct SubtreeStep {
  long long node;                 // global tree id being pebbled
  std::vector<long long> erase;   // global ids whose values are dropped
};

void gen_subtree_walk(const TreeShape& shape, long long root, int hh,
                      std::vector<SubtreeStep>& out) {
  if (hh == 1) {
    out.push_back({root, {}});
    return;
  }
  std::vector<long long> kids;
  for (int j = 0; j < shape.degree; ++j) kids.push_back(shape.child(root, j));
  for (int j = 0; j < shape.degree; ++j) gen_subtree_walk(shape, kids[j], hh - 1, out);
  out.push_back({root, kids});
  return;
}

}  // namespace

CompiledProgram compile_boolean_logsave(int d, int h, int k, int block_size) {
  TreeShape shape(d, h);
  int m = block_size == 0 ? logsave_default_block(d, k) : block_size;
  if (m < 1 || m > k) throw InvalidBlockSize("block size must lie in [1, k]");

  // Per root child: the query order of its black pebbling walk.
  std::vector<std::vector<SubtreeStep>> walks(d);
  for (int j = 0; j < d; ++j)
    gen_subtree_walk(shape, shape.child(1, j), h - 1, walks[j]);

  BranchingProgram bp;
  bp.shape = shape;
  bp.k = k;
  bp.deterministic = true;
  bp.finals = {0, 1};

  // State identity: phase, which subtree, walk position, remembered pebble
  // values, plus the carried block / sibling values / candidate scan / set.
  struct LsState {
    int phase = 1;
    int subtree = 0;  // phase 2: index of the walked child (1..d-1)
    size_t idx = 0;
    std::map<long long, int> values;
    int block = -1;
    std::vector<int> siblings;  // v_3 .. v_{d+1} so far
    int scan = 0;
    uint32_t hits = 0;  // phase-3 candidates with f_1 = 1

    std::string key() const {
      std::string s = std::to_string(phase) + "." + std::to_string(subtree) + "." +
                      std::to_string(idx) + "|";
      for (auto [node, value] : values) s += std::to_string(node) + "=" + std::to_string(value) + ",";
      s += "|b" + std::to_string(block) + "|v";
      for (int v : siblings) s += std::to_string(v) + ",";
      s += "|s" + std::to_string(scan) + "|h" + std::to_string(hits);
      return s;
    }
  };

  std::unordered_map<std::string, int> ids;
  std::deque<LsState> queue;
  std::vector<long long> phase_states(4, 0);
  auto intern = [&](LsState st) {
    std::string key = st.key();
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(bp.states.size());
    ids.emplace(std::move(key), id);
    bp.states.emplace_back();
    queue.push_back(std::move(st));
    return id;
  };

  LsState start;
  bp.start = intern(start);

  while (!queue.empty()) {
    LsState cur = std::move(queue.front());
    queue.pop_front();
    int id = ids.at(cur.key());
    ++phase_states[cur.phase - 1];
    // Determine the query of this state.
    VarId var;
    const std::vector<SubtreeStep>* walk = nullptr;
    if (cur.phase == 1 || cur.phase == 4)
      walk = &walks[0];
    else if (cur.phase == 2)
      walk = &walks[cur.subtree];
    if (walk) {
      const SubtreeStep& step = (*walk)[cur.idx];
      if (shape.is_leaf(step.node)) {
        var = {VarId::Kind::Leaf, step.node, {}};
      } else {
        std::vector<int> args;
        for (int j = 0; j < d; ++j) args.push_back(cur.values.at(shape.child(step.node, j)));
        var = {VarId::Kind::Func, step.node, std::move(args)};
      }
    } else {  // phase 3: probe the root table at the scanned candidate
      std::vector<int> args;
      args.push_back(cur.block * m + cur.scan + 1);
      for (int v : cur.siblings) args.push_back(v);
      var = {VarId::Kind::Func, 1, std::move(args)};
    }
    bp.states[id].var = var;

    for (int answer = 1; answer <= k; ++answer) {
      LsState next = cur;
      int target = -1;
      if (walk) {
        const SubtreeStep& step = (*walk)[cur.idx];
        next.values[step.node] = answer;
        for (long long e : step.erase) next.values.erase(e);
        bool subtree_done = cur.idx + 1 >= walk->size();
        if (!subtree_done) {
          ++next.idx;
        } else {
          int value = answer;  // the walked subtree's root value
          next.values.clear();
          next.idx = 0;
          if (cur.phase == 1) {
            next.block = (value - 1) / m;
            next.phase = 2;
            next.subtree = 1;
          } else if (cur.phase == 2) {
            next.siblings.push_back(value);
            if (cur.subtree + 1 < d) {
              ++next.subtree;
            } else {
              next.phase = 3;
              next.subtree = 0;
            }
          } else {  // phase 4: accept iff v_2's candidate probed to 1
            int position = (value - 1) % m;
            bool accept = (next.hits >> position) & 1;
            target = bp.final_id(accept ? 1 : 0);
          }
        }
      } else {  // phase 3
        if (answer == 1) next.hits |= 1u << cur.scan;
        int bsize = std::min(m, k - cur.block * m);
        if (cur.scan + 1 < bsize) {
          ++next.scan;
        } else {
          next.phase = 4;
          next.scan = 0;
          next.block = -1;      // not needed for the decision
          next.siblings.clear();
        }
      }
      if (target < 0) target = intern(std::move(next));
      bp.states[id].edges.push_back({answer, target});
    }
  }

  bp.check_well_formed();
  CompiledProgram out;
  out.bp = std::move(bp);
  out.report.source_cost = Rational(0);
  out.report.k = k;
  out.report.states = out.bp.size();
  out.report.phase_states = phase_states;
  return out;
}

CompiledProgram compile_black_det_default(int d, int h, int k, ProblemKind kind) {
  return compile_black_det(strategy_black(d, h), k, kind);
}

CompiledProgram compile_fractional_nondet_default(int d, int h, int k) {
  return compile_fractional_nondet(strategy_fractional(d, h), k);
}

}  // namespace treeval
