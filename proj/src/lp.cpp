#include "treeval/lp.hpp"

#include <algorithm>
#include <map>

namespace treeval {

namespace {

const Rational kZero(0);
const Rational kOne(1);

// Exact two-phase simplex with Bland's rule on a dense tableau.
class Simplex {
 public:
  // a: m x n, minimize c.x subject to a.x <= b, x >= 0.
  Simplex(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
          const std::vector<Rational>& c)
      : m_(static_cast<int>(a.size())), n_(static_cast<int>(c.size())), costs_(c) {
    // Columns: n structural, m slacks, artificials as needed; last is rhs.
    int cols = n_ + m_;
    rows_.assign(m_, std::vector<Rational>(cols + 1));
    basis_.assign(m_, -1);
    std::vector<int> needs_artificial;
    for (int i = 0; i < m_; ++i) {
      bool flip = b[i] < kZero;
      for (int j = 0; j < n_; ++j) rows_[i][j] = flip ? -a[i][j] : a[i][j];
      rows_[i][n_ + i] = flip ? Rational(-1) : kOne;
      rows_[i][cols] = flip ? -b[i] : b[i];
      if (flip)
        needs_artificial.push_back(i);
      else
        basis_[i] = n_ + i;
    }
    total_cols_ = cols + static_cast<int>(needs_artificial.size());
    for (auto& row : rows_) row.insert(row.end() - 1, needs_artificial.size(), kZero);
    first_artificial_ = cols;
    for (size_t k = 0; k < needs_artificial.size(); ++k) {
      int i = needs_artificial[k];
      rows_[i][cols + static_cast<int>(k)] = kOne;
      basis_[i] = cols + static_cast<int>(k);
    }
  }

  // Returns false when infeasible; fills the optimum and optionally x.
  bool solve(Rational& optimum, std::vector<Rational>* solution_out) {
    if (first_artificial_ < total_cols_) {
      // Phase I: minimize the sum of artificials.
      obj_.assign(total_cols_ + 1, kZero);
      for (int j = first_artificial_; j < total_cols_; ++j) obj_[j] = kOne;
      for (int i = 0; i < m_; ++i)
        if (basis_[i] >= first_artificial_) subtract_row(i);
      run(total_cols_);
      if (!(-obj_.back()).is_zero()) return false;
      // Drive any basic artificial out of the basis; all-zero rows stay put
      // harmlessly at value zero.
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] < first_artificial_) continue;
        for (int j = 0; j < first_artificial_; ++j)
          if (!rows_[i][j].is_zero()) {
            pivot(i, j);
            break;
          }
      }
    }
    // Phase II over structural and slack columns only.
    obj_.assign(total_cols_ + 1, kZero);
    for (int j = 0; j < n_; ++j) obj_[j] = costs_[j];
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_ && !obj_[basis_[i]].is_zero()) subtract_scaled(i);
    run(first_artificial_);
    optimum = -obj_.back();
    if (solution_out) {
      solution_out->assign(n_, kZero);
      for (int i = 0; i < m_; ++i)
        if (basis_[i] < n_) (*solution_out)[basis_[i]] = rows_[i].back();
    }
    return true;
  }

 private:
  int m_, n_, total_cols_ = 0, first_artificial_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> obj_;
  std::vector<int> basis_;
  std::vector<Rational> costs_;

  void subtract_row(int i) {  // obj -= row(i)
    for (int j = 0; j <= total_cols_; ++j)
      if (!rows_[i][j].is_zero()) obj_[j] -= rows_[i][j];
  }

  void subtract_scaled(int i) {  // obj -= cost(basis[i]) * row(i)
    Rational factor = obj_[basis_[i]];
    for (int j = 0; j <= total_cols_; ++j)
      if (!rows_[i][j].is_zero()) obj_[j] -= factor * rows_[i][j];
  }

  void pivot(int row, int col) {
    Rational inv = rows_[row][col];
    for (int j = 0; j <= total_cols_; ++j)
      if (!rows_[row][j].is_zero()) rows_[row][j] = rows_[row][j] / inv;
    for (int i = 0; i < m_; ++i) {
      if (i == row || rows_[i][col].is_zero()) continue;
      Rational factor = rows_[i][col];
      for (int j = 0; j <= total_cols_; ++j)
        if (!rows_[row][j].is_zero()) rows_[i][j] -= factor * rows_[row][j];
    }
    if (!obj_.empty() && !obj_[col].is_zero()) {
      Rational factor = obj_[col];
      for (int j = 0; j <= total_cols_; ++j)
        if (!rows_[row][j].is_zero()) obj_[j] -= factor * rows_[row][j];
    }
    basis_[row] = col;
  }

  void run(int allowed_cols) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j)
        if (obj_[j] < kZero) {
          enter = j;
          break;
        }
      if (enter < 0) return;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        if (rows_[i][enter] <= kZero) continue;
        Rational ratio = rows_[i].back() / rows_[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) throw std::runtime_error("simplex: unbounded problem");
      pivot(leave, enter);
    }
  }
};

// Piecewise-constant segment bookkeeping for one node weight.
struct Timeline {
  std::vector<int> starts;  // config index each segment begins at
  std::vector<int> vars;    // variable id, or -1 for a constant zero
  int at(int config) const {
    int seg = 0;
    for (size_t s = 1; s < starts.size(); ++s)
      if (starts[s] <= config) seg = static_cast<int>(s);
    return vars[seg];
  }
};

}  // namespace

MoveSkeleton skeleton_of(const std::vector<PebbleMove>& moves) {
  MoveSkeleton sk;
  for (const auto& m : moves) sk.steps.push_back({m.kind, m.node, m.slide_child});
  return sk;
}

std::optional<Rational> simplex_minimize(const std::vector<std::vector<Rational>>& a,
                                         const std::vector<Rational>& b,
                                         const std::vector<Rational>& c,
                                         std::vector<Rational>* solution_out) {
  Simplex solver(a, b, c);
  Rational optimum;
  if (!solver.solve(optimum, solution_out)) return std::nullopt;
  return optimum;
}

std::optional<Rational> lp_min_over_skeleton(const PebbleGraph& g, const MoveSkeleton& skeleton) {
  int n = g.size();
  int steps = static_cast<int>(skeleton.steps.size());
  for (const auto& st : skeleton.steps)
    if (st.node < 0 || st.node >= n) throw std::invalid_argument("skeleton: node out of range");

  // Variable 0 is the budget p; weight segments are appended as created.
  int next_var = 1;
  std::vector<Timeline> btl(n), wtl(n);
  for (int v = 0; v < n; ++v) {
    btl[v] = {{0}, {-1}};
    wtl[v] = {{0}, {-1}};
  }
  auto new_segment = [&](Timeline& tl, int config, bool constant_zero) {
    tl.starts.push_back(config);
    tl.vars.push_back(constant_zero ? -1 : next_var++);
  };
  for (int t = 1; t <= steps; ++t) {
    const SkeletonStep& st = skeleton.steps[t - 1];
    switch (st.kind) {
      case MoveKind::DecreaseBlack:
        new_segment(btl[st.node], t, false);
        break;
      case MoveKind::IncreaseWhite:
        new_segment(wtl[st.node], t, false);
        break;
      case MoveKind::Finish:
        new_segment(btl[st.node], t, false);
        new_segment(wtl[st.node], t, true);
        for (int ch : g.children[st.node]) new_segment(btl[ch], t, false);
        break;
      case MoveKind::WhiteSlide:
        if (st.slide_child < 0) throw std::invalid_argument("skeleton: white slide needs a child");
        new_segment(wtl[st.node], t, true);
        new_segment(wtl[st.slide_child], t, false);
        break;
    }
  }
  int nvars = next_var;

  std::vector<std::vector<Rational>> a;
  std::vector<Rational> rhs;
  auto add_le = [&](const std::vector<std::pair<int, Rational>>& coeffs, const Rational& bound) {
    std::vector<Rational> row(nvars, kZero);
    for (auto& [var, coef] : coeffs)
      if (var >= 0) row[var] += coef;
    a.push_back(std::move(row));
    rhs.push_back(bound);
  };
  auto add_eq = [&](const std::vector<std::pair<int, Rational>>& coeffs, const Rational& bound) {
    add_le(coeffs, bound);
    std::vector<std::pair<int, Rational>> neg;
    for (auto& [var, coef] : coeffs) neg.emplace_back(var, -coef);
    add_le(neg, -bound);
  };

  for (int t = 1; t <= steps; ++t) {
    const SkeletonStep& st = skeleton.steps[t - 1];
    switch (st.kind) {
      case MoveKind::DecreaseBlack:
        add_le({{btl[st.node].at(t), kOne}, {btl[st.node].at(t - 1), -kOne}}, kZero);
        break;
      case MoveKind::IncreaseWhite:
        add_le({{wtl[st.node].at(t - 1), kOne}, {wtl[st.node].at(t), -kOne}}, kZero);
        break;
      case MoveKind::Finish: {
        for (int ch : g.children[st.node])
          add_eq({{btl[ch].at(t - 1), kOne}, {wtl[ch].at(t - 1), kOne}}, kOne);
        add_le({{btl[st.node].at(t - 1), kOne}, {btl[st.node].at(t), -kOne}}, kZero);
        for (int ch : g.children[st.node])
          add_le({{btl[ch].at(t), kOne}, {btl[ch].at(t - 1), -kOne}}, kZero);
        break;
      }
      case MoveKind::WhiteSlide: {
        for (int ch : g.children[st.node])
          if (ch != st.slide_child)
            add_eq({{btl[ch].at(t - 1), kOne}, {wtl[ch].at(t - 1), kOne}}, kOne);
        // The slid weight tops the child up to pebble value exactly 1.
        add_eq({{wtl[st.node].at(t - 1), kOne},
                {btl[st.slide_child].at(t - 1), kOne},
                {wtl[st.slide_child].at(t - 1), kOne}},
               kOne);
        add_eq({{wtl[st.slide_child].at(t), kOne},
                {wtl[st.slide_child].at(t - 1), -kOne},
                {wtl[st.node].at(t - 1), -kOne}},
               kZero);
        break;
      }
    }
  }
  // Final configuration is empty.
  for (int v = 0; v < n; ++v) {
    if (btl[v].at(steps) >= 0) add_eq({{btl[v].at(steps), kOne}}, kZero);
    if (wtl[v].at(steps) >= 0) add_eq({{wtl[v].at(steps), kOne}}, kZero);
  }
  // b + w <= 1 wherever either segment changes.
  for (int v = 0; v < n; ++v) {
    std::vector<int> marks = btl[v].starts;
    marks.insert(marks.end(), wtl[v].starts.begin(), wtl[v].starts.end());
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    for (int config : marks) {
      int bv = btl[v].at(config), wv = wtl[v].at(config);
      if (bv < 0 && wv < 0) continue;
      add_le({{bv, kOne}, {wv, kOne}}, kOne);
    }
  }
  // Total weight at every configuration stays within the budget p.
  for (int config = 0; config <= steps; ++config) {
    std::vector<std::pair<int, Rational>> coeffs;
    for (int v = 0; v < n; ++v) {
      coeffs.emplace_back(btl[v].at(config), kOne);
      coeffs.emplace_back(wtl[v].at(config), kOne);
    }
    coeffs.emplace_back(0, Rational(-1));
    add_le(coeffs, kZero);
  }

  // Every sink must hold a whole black pebble right after one of its
  // finishes; take the best choice of finish per sink.
  std::vector<std::vector<int>> sink_finishes(g.sinks.size());
  for (size_t s = 0; s < g.sinks.size(); ++s) {
    for (int t = 1; t <= steps; ++t)
      if (skeleton.steps[t - 1].kind == MoveKind::Finish &&
          skeleton.steps[t - 1].node == g.sinks[s])
        sink_finishes[s].push_back(t);
    if (sink_finishes[s].empty()) return std::nullopt;
  }
  long long combos = 1;
  for (auto& cand : sink_finishes) {
    combos *= static_cast<long long>(cand.size());
    if (combos > 256) throw std::invalid_argument("skeleton: too many sink finish combinations");
  }
  std::optional<Rational> best;
  std::vector<Rational> c(nvars, kZero);
  c[0] = kOne;
  for (long long combo = 0; combo < combos; ++combo) {
    auto a2 = a;
    auto rhs2 = rhs;
    long long rest = combo;
    for (size_t s = 0; s < g.sinks.size(); ++s) {
      int t = sink_finishes[s][rest % sink_finishes[s].size()];
      rest /= static_cast<long long>(sink_finishes[s].size());
      std::vector<Rational> row(nvars, kZero);
      row[btl[g.sinks[s]].at(t)] = kOne;
      a2.push_back(row);
      rhs2.push_back(kOne);
      for (auto& coef : row) coef = -coef;
      a2.push_back(std::move(row));
      rhs2.push_back(-kOne);
    }
    auto result = simplex_minimize(a2, rhs2, c, nullptr);
    if (result && (!best || *result < *best)) best = result;
  }
  return best;
}

}  // namespace treeval
