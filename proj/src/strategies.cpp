#include "treeval/strategies.hpp"

namespace treeval {

namespace {

// Emits moves in tree-id space (root = 1), converting to graph indices.
struct Emitter {
  TreeShape shape;
  std::vector<PebbleMove> moves;

  int idx(long long node) const { return static_cast<int>(node - 1); }
  void decb(long long node, Rational amt) { moves.push_back(PebbleMove::dec_black(idx(node), amt)); }
  void incw(long long node, Rational amt) { moves.push_back(PebbleMove::inc_white(idx(node), amt)); }
  void finish(long long node, Rational new_black, std::vector<std::pair<long long, Rational>> decs = {}) {
    std::vector<std::pair<int, Rational>> d;
    for (auto& [c, a] : decs) d.emplace_back(idx(c), a);
    moves.push_back(PebbleMove::finish(idx(node), new_black, std::move(d)));
  }
  void wslide(long long node, long long child) {
    moves.push_back(PebbleMove::white_slide(idx(node), idx(child)));
  }
  long long child(long long node, int j) const { return shape.child(node, j); }
  int d() const { return shape.degree; }
};

// ---- Black pebbling (sliding from the last child) ----

void black_leave(Emitter& e, long long node, int hh) {
  if (hh == 1) {
    e.finish(node, 1);
    return;
  }
  for (int j = 0; j < e.d(); ++j) black_leave(e, e.child(node, j), hh - 1);
  e.finish(node, 1, {{e.child(node, e.d() - 1), Rational(1)}});
  for (int j = 0; j < e.d() - 1; ++j) e.decb(e.child(node, j), 1);
}

// ---- Whole black-white pebbling ----
//
// full(r)       = pre(r); decb(r); post_tail(r)
// leave_black(r)= pre(r); post_tail(r)
// remove_white  = pre(r) with the last finish taking b to 0; post_tail(r)
//
// pre ends at the critical configuration (root black plus a small remnant),
// post_tail cleans the remnant without touching the root.

struct BwGen {
  Emitter e;

  void pre(long long r, int hh, bool remove_white_mode) {
    Rational b = remove_white_mode ? Rational(0) : Rational(1);
    int d = e.d();
    if (hh == 2) {
      for (int j = 0; j < d; ++j) e.finish(e.child(r, j), 1);
      e.finish(r, b, {{e.child(r, d - 1), Rational(1)}});
      for (int j = 0; j < d - 1; ++j) e.decb(e.child(r, j), 1);
      return;
    }
    if (d % 2 == 1) {
      int m = (d + 1) / 2;  // middle child, 1-based
      for (int j = 1; j < m; ++j) leave_black(e.child(r, j - 1), hh - 1);
      pre(e.child(r, m - 1), hh - 1, false);
      for (int j = m + 1; j <= d; ++j) e.incw(e.child(r, j - 1), 1);
      std::vector<std::pair<long long, Rational>> decs;
      for (int j = 1; j <= m; ++j) decs.emplace_back(e.child(r, j - 1), Rational(1));
      e.finish(r, b, std::move(decs));
      return;
    }
    if (hh == 3) {
      for (int j = 1; j <= d / 2 + 1; ++j) leave_black(e.child(r, j - 1), 2);
      for (int j = d / 2 + 2; j <= d; ++j) e.incw(e.child(r, j - 1), 1);
      std::vector<std::pair<long long, Rational>> decs;
      for (int j = 1; j <= d / 2 + 1; ++j) decs.emplace_back(e.child(r, j - 1), Rational(1));
      e.finish(r, b, std::move(decs));
      return;
    }
    // Even degree, hh >= 4: black-pebble the first d/2 children with the
    // two-level procedure, treat child d/2+1 specially, white-pebble the rest.
    for (int i = 1; i <= d / 2; ++i) two_level(e.child(r, i - 1), hh - 1, false);
    long long s = e.child(r, d / 2);  // child d/2+1
    for (int j = 1; j <= d / 2 - 1; ++j) leave_black(e.child(s, j - 1), hh - 2);
    pre(e.child(s, d / 2 - 1), hh - 2, false);
    for (int j = d / 2 + 1; j <= d; ++j) e.incw(e.child(s, j - 1), 1);
    std::vector<std::pair<long long, Rational>> sdecs;
    for (int j = 1; j <= d / 2; ++j) sdecs.emplace_back(e.child(s, j - 1), Rational(1));
    e.finish(s, 1, std::move(sdecs));
    for (int j = d / 2 + 2; j <= d; ++j) e.incw(e.child(r, j - 1), 1);
    std::vector<std::pair<long long, Rational>> decs;
    for (int j = 1; j <= d / 2 + 1; ++j) decs.emplace_back(e.child(r, j - 1), Rational(1));
    e.finish(r, b, std::move(decs));
  }

  void post_tail(long long r, int hh) {
    int d = e.d();
    if (hh == 2) return;
    if (d % 2 == 1) {
      int m = (d + 1) / 2;
      post_tail(e.child(r, m - 1), hh - 1);
      for (int j = m + 1; j <= d; ++j) remove_white(e.child(r, j - 1), hh - 1);
      return;
    }
    if (hh == 3) {
      for (int j = d / 2 + 2; j <= d; ++j) remove_white(e.child(r, j - 1), 2);
      return;
    }
    long long s = e.child(r, d / 2);
    post_tail(e.child(s, d / 2 - 1), hh - 2);
    for (int j = d / 2 + 1; j <= d; ++j) remove_white(e.child(s, j - 1), hh - 2);
    for (int j = d / 2 + 2; j <= d; ++j) two_level(e.child(r, j - 1), hh - 1, true);
  }

  // Even degree: put a black pebble on (or take the white pebble off) a node
  // whose subtree height is hh >= 3, recursing on the grandchildren so the
  // budget stays one pebble below a same-height leave_black.
  void two_level(long long c, int hh, bool remove_white_mode) {
    int d = e.d();
    for (int j = 1; j <= d / 2; ++j) leave_black(e.child(c, j - 1), hh - 1);
    pre(e.child(c, d / 2), hh - 1, false);
    for (int j = d / 2 + 2; j <= d; ++j) e.incw(e.child(c, j - 1), 1);
    std::vector<std::pair<long long, Rational>> decs;
    for (int j = 1; j <= d / 2 + 1; ++j) decs.emplace_back(e.child(c, j - 1), Rational(1));
    e.finish(c, remove_white_mode ? Rational(0) : Rational(1), std::move(decs));
    post_tail(e.child(c, d / 2), hh - 1);
    for (int j = d / 2 + 2; j <= d; ++j) remove_white(e.child(c, j - 1), hh - 1);
  }

  void full(long long r, int hh) {
    pre(r, hh, false);
    e.decb(r, 1);
    post_tail(r, hh);
  }

  void leave_black(long long r, int hh) {
    pre(r, hh, false);
    post_tail(r, hh);
  }

  void remove_white(long long r, int hh) {
    pre(r, hh, true);
    post_tail(r, hh);
  }
};

// ---- Fractional pebbling ----

struct FractGen {
  Emitter e;
  const Rational half = Rational(1, 2);

  // Ends with a black pebble on r over (d-1)(hh-2) white half pebbles.
  void B(long long r, int hh, bool remove_white_mode) {
    Rational b = remove_white_mode ? Rational(0) : Rational(1);
    int d = e.d();
    if (hh == 2) {
      for (int j = 0; j < d; ++j) e.finish(e.child(r, j), 1);
      std::vector<std::pair<long long, Rational>> decs;
      for (int j = 0; j < d; ++j) decs.emplace_back(e.child(r, j), Rational(1));
      e.finish(r, b, std::move(decs));
      return;
    }
    for (int j = 0; j < d - 1; ++j) Aprime(e.child(r, j), hh - 1);
    B(e.child(r, d - 1), hh - 1, false);
    for (int j = 0; j < d - 1; ++j) e.incw(e.child(r, j), half);
    e.finish(r, b, {{e.child(r, d - 1), Rational(1)}});
    for (int j = 0; j < d - 1; ++j) e.decb(e.child(r, j), half);
  }

  void C(long long r, int hh) {
    if (hh == 2) return;
    C(e.child(r, e.d() - 1), hh - 1);
    for (int j = 0; j < e.d() - 1; ++j) remove_half_white(e.child(r, j), hh - 1);
  }

  void A(long long r, int hh) {
    B(r, hh, false);
    e.decb(r, 1);
    C(r, hh);
  }

  void Aprime(long long r, int hh) {
    B(r, hh, false);
    e.decb(r, half);
    C(r, hh);
  }

  void remove_half_white(long long r, int hh) {
    B(r, hh, true);
    C(r, hh);
  }
};

}  // namespace

Rational black_cost_formula(int d, int h) { return Rational((d - 1) * h - d + 2); }

Rational bw_cost_formula(int d, int h) { return Rational(((d - 1) * h + 1) / 2 + 1); }

Rational fractional_cost_formula(int d, int h) { return Rational((d - 1) * h, 2) + Rational(1); }

PebbleSequence strategy_black(int d, int h) {
  Emitter e{TreeShape(d, h), {}};
  black_leave(e, 1, h);
  e.decb(1, 1);
  PebbleSequence seq;
  seq.shape = e.shape;
  seq.graph = graph_from_tree(e.shape);
  seq.moves = std::move(e.moves);
  seq.claimed_cost = black_cost_formula(d, h);
  return seq;
}

PebbleSequence strategy_bw(int d, int h) {
  BwGen gen{Emitter{TreeShape(d, h), {}}};
  gen.full(1, h);
  PebbleSequence seq;
  seq.shape = gen.e.shape;
  seq.graph = graph_from_tree(gen.e.shape);
  seq.moves = std::move(gen.e.moves);
  seq.claimed_cost = bw_cost_formula(d, h);
  return seq;
}

PebbleSequence strategy_fractional(int d, int h) {
  FractGen gen{Emitter{TreeShape(d, h), {}}};
  gen.A(1, h);
  PebbleSequence seq;
  seq.shape = gen.e.shape;
  seq.graph = graph_from_tree(gen.e.shape);
  seq.moves = std::move(gen.e.moves);
  seq.claimed_cost = fractional_cost_formula(d, h);
  return seq;
}

PebbleSequence strategy_whiteslide_h4() {
  Emitter e{TreeShape(2, 4), {}};
  const Rational third(1, 3), two_thirds(2, 3);
  // Pebble the subtree at node 2 with 2 pebbles, leaving b(2) = 1/3.
  e.finish(8, 1);
  e.finish(9, 1);
  e.finish(4, 1, {{8, Rational(1)}, {9, Rational(1)}});
  e.incw(5, 1);
  e.finish(2, 1, {{4, Rational(1)}});
  e.decb(2, two_thirds);
  e.finish(10, 1);
  e.wslide(5, 11);
  e.decb(10, 1);
  e.finish(11, 0);
  // Work up the right side of the tree.
  e.finish(12, 1);
  e.finish(13, 1);
  e.finish(6, third, {{12, third}});
  e.decb(12, two_thirds);
  e.decb(13, 1);
  e.finish(14, 1);
  e.finish(15, 1);  // first configuration with 8/3 pebbles
  e.finish(7, 1, {{14, Rational(1)}});
  e.decb(15, 1);
  e.incw(6, two_thirds);
  e.finish(3, 1, {{7, Rational(1)}});
  e.decb(6, third);
  e.incw(2, two_thirds);  // 8/3 again
  e.finish(1, 1, {{3, Rational(1)}});
  e.decb(1, 1);
  e.decb(2, third);
  // Walk the 2/3 white on node 6 down to leaf 13 and discharge it.
  e.finish(12, 1);
  e.finish(13, third);  // another 8/3 bottleneck
  e.wslide(6, 13);
  e.decb(13, third);
  e.finish(13, 0);
  e.decb(12, 1);
  // Remove the 2/3 white from node 2 with the same 2-pebble subtree sequence.
  e.finish(8, 1);
  e.finish(9, 1);
  e.finish(4, 1, {{8, Rational(1)}, {9, Rational(1)}});
  e.incw(5, 1);
  e.finish(2, 0, {{4, Rational(1)}});
  e.finish(10, 1);
  e.wslide(5, 11);
  e.decb(10, 1);
  e.finish(11, 0);
  PebbleSequence seq;
  seq.shape = e.shape;
  seq.graph = graph_from_tree(e.shape);
  seq.moves = std::move(e.moves);
  seq.claimed_cost = Rational(8, 3);
  return seq;
}

PebbleSequence fractional_to_bw(const PebbleSequence& fractional) {
  const PebbleGraph& g = fractional.graph;
  validate_sequence(g, fractional.moves, GameVariant::Fractional);
  const Rational half(1, 2), one(1);
  PebbleConfig cur(g.size());   // exact fractional configuration
  PebbleConfig sim(g.size());   // whole simulation
  std::vector<PebbleMove> out;
  auto emit = [&](PebbleMove m) {
    sim = apply_move(g, sim, m, GameVariant::BlackWhite);
    out.push_back(std::move(m));
  };
  for (const auto& m : fractional.moves) {
    PebbleConfig next = apply_move(g, cur, m, GameVariant::Fractional);
    switch (m.kind) {
      case MoveKind::DecreaseBlack:
        if (sim.black[m.node] == one && next.black[m.node] < half)
          emit(PebbleMove::dec_black(m.node, 1));
        break;
      case MoveKind::IncreaseWhite:
        if (sim.white[m.node].is_zero() && next.white[m.node] > half)
          emit(PebbleMove::inc_white(m.node, 1));
        break;
      case MoveKind::Finish: {
        bool place_black = sim.black[m.node].is_zero() && next.black[m.node] >= half;
        bool drop_white = sim.white[m.node] == one;  // w falls to 0 <= 1/2
        std::vector<std::pair<int, Rational>> decs;
        for (const auto& [child, amt] : m.child_decreases) {
          (void)amt;
          if (sim.black[child] == one && next.black[child] < half)
            decs.emplace_back(child, Rational(1));
        }
        if (place_black || drop_white) {
          emit(PebbleMove::finish(m.node, place_black ? one : Rational(0), std::move(decs)));
        } else {
          for (auto& [child, amt] : decs) {
            (void)amt;
            emit(PebbleMove::dec_black(child, 1));
          }
        }
        break;
      }
      case MoveKind::WhiteSlide:
        throw IllegalMove(-1, "rule iv", "input to fractional_to_bw must be a plain fractional sequence");
    }
    cur = std::move(next);
  }
  PebbleSequence result;
  result.shape = fractional.shape;
  result.graph = g;
  result.moves = std::move(out);
  result.claimed_cost = Rational(0);
  return result;
}

}  // namespace treeval
