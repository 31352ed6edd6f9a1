#include "treeval/search.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace treeval {

namespace {

// Move in granularity units, compact enough to store per visited state.
struct UnitMove {
  uint8_t kind;  // 0 decb, 1 incw, 2 finish, 3 wslide
  uint8_t node;
  uint8_t arg;                               // finish: new black units; wslide: child
  std::vector<std::pair<uint8_t, uint8_t>> decs;  // finish child decreases
};

struct UnitConfig {
  std::vector<uint8_t> b, w;
  uint32_t flags = 0;  // one bit per sink that has held a whole black pebble
};

class Searcher {
 public:
  Searcher(const PebbleGraph& g, GameVariant variant, int c, const SearchOptions& opts,
           const TreeShape* tree)
      : g_(g), variant_(variant), c_(c), opts_(opts) {
    if (c < 1 || c > 15) throw std::invalid_argument("min_pebbles: granularity must be in [1,15]");
    if ((variant == GameVariant::Black || variant == GameVariant::BlackWhite) && c != 1)
      throw std::invalid_argument("min_pebbles: whole games use granularity 1");
    if (g.sinks.empty() || g.sinks.size() > 32)
      throw std::invalid_argument("min_pebbles: need between 1 and 32 sinks");
    if (tree) shape_ = *tree;
    all_flags_ = g_.sinks.size() == 32 ? ~0u : (1u << g_.sinks.size()) - 1;
  }

  SearchResult run() {
    int lo = 0;  // largest known-infeasible budget, in units
    int hi = -1;
    long long cap_units_ll = unit_floor(opts_.budget_cap);
    if (cap_units_ll < 1) throw BudgetCapExceeded("budget cap below one unit");
    int cap_units = static_cast<int>(std::min<long long>(cap_units_ll, 255 * g_.size()));
    if (opts_.upper_bound_hint) {
      long long hint = unit_ceil(*opts_.upper_bound_hint);
      if (hint <= cap_units) hi = static_cast<int>(hint);
    }
    while (hi < 0) {
      int probe_budget = lo == 0 ? 1 : lo * 2;
      if (probe_budget > cap_units)
        throw BudgetCapExceeded("no feasible budget up to the cap of " +
                                opts_.budget_cap.to_string());
      if (probe(probe_budget, nullptr))
        hi = probe_budget;
      else
        lo = probe_budget;
    }
    while (hi - lo > 1) {
      int mid = lo + (hi - lo) / 2;
      if (probe(mid, nullptr))
        hi = mid;
      else
        lo = mid;
    }
    SearchResult result;
    if (!probe(hi, &result.witness)) {
      // The hint was not actually feasible; resume doubling above it.
      lo = hi;
      hi = -1;
      while (hi < 0) {
        int probe_budget = lo * 2;
        if (probe_budget > cap_units)
          throw BudgetCapExceeded("no feasible budget up to the cap of " +
                                  opts_.budget_cap.to_string());
        if (probe(probe_budget, nullptr))
          hi = probe_budget;
        else
          lo = probe_budget;
      }
      while (hi - lo > 1) {
        int mid = lo + (hi - lo) / 2;
        if (probe(mid, nullptr))
          hi = mid;
        else
          lo = mid;
      }
      probe(hi, &result.witness);
    }
    result.cost = Rational(hi, c_);
    result.states_explored = explored_total_;
    return result;
  }

 private:
  const PebbleGraph& g_;
  GameVariant variant_;
  int c_;
  SearchOptions opts_;
  std::optional<TreeShape> shape_;
  uint32_t all_flags_ = 0;
  uint64_t explored_total_ = 0;

  long long unit_floor(const Rational& r) const {
    return ((r.num() * BigInt(c_)) / r.den()).to_ll();
  }
  long long unit_ceil(const Rational& r) const {
    BigInt num = r.num() * BigInt(c_);
    BigInt q = num / r.den();
    if (q * r.den() != num) q = q + BigInt(1);
    return q.to_ll();
  }

  bool black_only() const { return variant_ == GameVariant::Black; }

  // For the black game the return to the empty configuration is free, so a
  // state is accepting as soon as every sink flag is set.
  bool accepting(const UnitConfig& s) const {
    if (s.flags != all_flags_) return false;
    if (black_only()) return true;
    for (int v = 0; v < g_.size(); ++v)
      if (s.b[v] || s.w[v]) return false;
    return true;
  }

  void set_flags(UnitConfig& s) const {
    for (size_t i = 0; i < g_.sinks.size(); ++i)
      if (s.b[g_.sinks[i]] == c_) s.flags |= 1u << i;
  }

  std::string key_of(const UnitConfig& s) const {
    std::string key;
    if (shape_) {
      key = canonical_subtree(s, 1);
    } else {
      key.reserve(g_.size());
      for (int v = 0; v < g_.size(); ++v)
        key.push_back(static_cast<char>((s.b[v] << 4) | s.w[v]));
    }
    for (int shift = 0; shift < 32; shift += 8)
      key.push_back(static_cast<char>((s.flags >> shift) & 0xff));
    return key;
  }

  // Canonical encoding of the subtree at a tree node: own weights followed
  // by the children's encodings in sorted order. Equal under exactly the
  // sibling-subtree swaps, which are cost- and legality-preserving.
  std::string canonical_subtree(const UnitConfig& s, long long node) const {
    int idx = static_cast<int>(node - 1);
    std::string enc(1, static_cast<char>((s.b[idx] << 4) | s.w[idx]));
    if (shape_->is_leaf(node)) return enc;
    std::vector<std::string> kids;
    kids.reserve(shape_->degree);
    for (int j = 0; j < shape_->degree; ++j)
      kids.push_back(canonical_subtree(s, shape_->child(node, j)));
    std::sort(kids.begin(), kids.end());
    for (auto& k : kids) enc += k;
    return enc;
  }

  int total_units(const UnitConfig& s) const {
    int t = 0;
    for (int v = 0; v < g_.size(); ++v) t += s.b[v] + s.w[v];
    return t;
  }

  template <typename Fn>
  void for_each_successor(const UnitConfig& s, int budget, Fn&& fn) const {
    int total = total_units(s);
    // Rule (i): decrease a black value by one unit.
    for (int v = 0; v < g_.size(); ++v) {
      if (!s.b[v]) continue;
      UnitMove m{0, static_cast<uint8_t>(v), 0, {}};
      UnitConfig next = s;
      --next.b[v];
      fn(next, m);
    }
    // Rule (ii): increase a white value by one unit.
    if (!black_only() && total + 1 <= budget) {
      for (int v = 0; v < g_.size(); ++v) {
        if (s.b[v] + s.w[v] >= c_) continue;
        UnitMove m{1, static_cast<uint8_t>(v), 0, {}};
        UnitConfig next = s;
        ++next.w[v];
        fn(next, m);
      }
    }
    // Rule (iii): finish a node whose children all have value 1, raising its
    // black value and simultaneously lowering the children's black values.
    for (int v = 0; v < g_.size(); ++v) {
      bool ready = true;
      for (int ch : g_.children[v])
        if (s.b[ch] + s.w[ch] != c_) {
          ready = false;
          break;
        }
      if (!ready) continue;
      const auto& kids = g_.children[v];
      std::vector<std::pair<uint8_t, uint8_t>> decs;
      enumerate_finishes(s, budget, v, kids, 0, decs, fn);
    }
    // Rule (iv): slide the white weight on a node down to one child.
    if (variant_ == GameVariant::FractionalWhiteSlide) {
      for (int v = 0; v < g_.size(); ++v) {
        if (!s.w[v] || g_.children[v].empty()) continue;
        for (int j : g_.children[v]) {
          if (s.b[j] + s.w[j] + s.w[v] != c_) continue;
          bool others_full = true;
          for (int o : g_.children[v])
            if (o != j && s.b[o] + s.w[o] != c_) {
              others_full = false;
              break;
            }
          if (!others_full) continue;
          UnitMove m{3, static_cast<uint8_t>(v), static_cast<uint8_t>(j), {}};
          UnitConfig next = s;
          next.w[j] += next.w[v];
          next.w[v] = 0;
          fn(next, m);
        }
      }
    }
  }

  // All combinations of a new black value for v and per-child black
  // decreases; results over the budget are discarded. Zero-effect finishes
  // are skipped.
  template <typename Fn>
  void enumerate_finishes(const UnitConfig& s, int budget, int v, const std::vector<int>& kids,
                          size_t kid_pos, std::vector<std::pair<uint8_t, uint8_t>>& decs,
                          Fn&& fn) const {
    if (kid_pos < kids.size()) {
      int ch = kids[kid_pos];
      for (int amt = 0; amt <= s.b[ch]; ++amt) {
        if (amt) decs.emplace_back(static_cast<uint8_t>(ch), static_cast<uint8_t>(amt));
        enumerate_finishes(s, budget, v, kids, kid_pos + 1, decs, fn);
        if (amt) decs.pop_back();
      }
      return;
    }
    for (int nb = s.b[v]; nb <= c_; ++nb) {
      if (nb == s.b[v] && s.w[v] == 0 && decs.empty()) continue;
      UnitConfig next = s;
      next.b[v] = static_cast<uint8_t>(nb);
      next.w[v] = 0;
      int delta = nb - s.b[v] - s.w[v];
      for (auto [ch, amt] : decs) {
        next.b[ch] -= amt;
        delta -= amt;
      }
      if (total_units(s) + delta > budget) continue;
      UnitMove m{2, static_cast<uint8_t>(v), static_cast<uint8_t>(nb), decs};
      fn(next, m);
    }
  }

  PebbleMove to_move(const UnitMove& m) const {
    switch (m.kind) {
      case 0:
        return PebbleMove::dec_black(m.node, Rational(1, c_));
      case 1:
        return PebbleMove::inc_white(m.node, Rational(1, c_));
      case 2: {
        std::vector<std::pair<int, Rational>> decs;
        for (auto [ch, amt] : m.decs) decs.emplace_back(ch, Rational(amt, c_));
        return PebbleMove::finish(m.node, Rational(m.arg, c_), std::move(decs));
      }
      default:
        return PebbleMove::white_slide(m.node, m.arg);
    }
  }

  bool probe(int budget, std::vector<PebbleMove>* witness_out) {
    UnitConfig start;
    start.b.assign(g_.size(), 0);
    start.w.assign(g_.size(), 0);
    struct Entry {
      uint64_t parent;
      UnitMove move;
    };
    std::unordered_map<std::string, uint64_t> visited;
    std::vector<Entry> entries;  // only filled when a witness is wanted
    std::deque<UnitConfig> queue;
    std::deque<uint64_t> queue_ids;
    visited.emplace(key_of(start), 0);
    if (witness_out) entries.push_back({0, {}});
    queue.push_back(start);
    queue_ids.push_back(0);
    uint64_t accept_id = 0;
    bool found = accepting(start);
    while (!queue.empty() && !found) {
      UnitConfig cur = std::move(queue.front());
      uint64_t cur_id = queue_ids.front();
      queue.pop_front();
      queue_ids.pop_front();
      for_each_successor(cur, budget, [&](UnitConfig& next, const UnitMove& m) {
        if (found) return;
        set_flags(next);
        std::string key = key_of(next);
        auto [it, inserted] = visited.emplace(std::move(key), visited.size());
        if (!inserted) return;
        if (visited.size() > opts_.max_states)
          throw StateSpaceTooLarge("probe at budget " + Rational(budget, c_).to_string() +
                                   " exceeded " + std::to_string(opts_.max_states) + " states");
        uint64_t id = it->second;
        if (witness_out) entries.push_back({cur_id, m});
        if (accepting(next)) {
          found = true;
          accept_id = id;
          return;
        }
        queue.push_back(next);
        queue_ids.push_back(id);
      });
    }
    explored_total_ += visited.size();
    if (!found || !witness_out) return found;
    // Rebuild the move chain; each stored move applies to the concrete
    // representative reached by replaying the chain so far.
    std::vector<uint64_t> chain;
    for (uint64_t id = accept_id; id != 0; id = entries[id].parent) chain.push_back(id);
    std::reverse(chain.begin(), chain.end());
    witness_out->clear();
    for (uint64_t id : chain) witness_out->push_back(to_move(entries[id].move));
    if (black_only()) {
      // Cleanup is free: strip every remaining black pebble.
      UnitConfig end = start;
      for (uint64_t id : chain) {
        UnitMove& m = entries[id].move;
        if (m.kind == 0) {
          --end.b[m.node];
        } else if (m.kind == 2) {
          end.b[m.node] = m.arg;
          for (auto [ch, amt] : m.decs) end.b[ch] -= amt;
        }
      }
      for (int v = 0; v < g_.size(); ++v)
        for (int u = 0; u < end.b[v]; ++u)
          witness_out->push_back(PebbleMove::dec_black(v, Rational(1, c_)));
    }
    return true;
  }
};

}  // namespace

SearchResult min_pebbles(const TreeShape& tree, GameVariant variant, int granularity,
                         const SearchOptions& opts) {
  PebbleGraph g = graph_from_tree(tree);
  Searcher searcher(g, variant, granularity, opts, &tree);
  return searcher.run();
}

SearchResult min_pebbles(const PebbleGraph& dag, GameVariant variant, int granularity,
                         const SearchOptions& opts) {
  Searcher searcher(dag, variant, granularity, opts, nullptr);
  return searcher.run();
}

}  // namespace treeval
