#include <cstdint>

#include "doctest.h"
#include "treeval/pebbling.hpp"
#include "treeval/strategies.hpp"

using namespace treeval;

TEST_CASE("black strategy costs match the formula on the grid") {
  for (int d : {2, 3, 4}) {
    for (int h = 2; h <= 6; ++h) {
      PebbleSequence seq = strategy_black(d, h);
      CHECK(validate_sequence(seq, GameVariant::Black) == black_cost_formula(d, h));
    }
  }
  CHECK(black_cost_formula(2, 4) == Rational(4));
  CHECK(black_cost_formula(3, 3) == Rational(5));
  CHECK(black_cost_formula(2, 2) == Rational(2));
}

TEST_CASE("black-white strategy costs match the formula on the grid") {
  for (int d : {2, 3, 4}) {
    for (int h = 2; h <= 6; ++h) {
      PebbleSequence seq = strategy_bw(d, h);
      CHECK(validate_sequence(seq, GameVariant::BlackWhite) == bw_cost_formula(d, h));
      for (const auto& m : seq.moves) CHECK(m.kind != MoveKind::WhiteSlide);
    }
  }
  CHECK(bw_cost_formula(2, 4) == Rational(3));
  CHECK(bw_cost_formula(3, 3) == Rational(4));
  CHECK(bw_cost_formula(2, 2) == Rational(2));
}

TEST_CASE("fractional strategy costs match the formula on the grid") {
  for (int d : {2, 3, 4}) {
    for (int h = 2; h <= 6; ++h) {
      PebbleSequence seq = strategy_fractional(d, h);
      CHECK(validate_sequence(seq, GameVariant::Fractional) == fractional_cost_formula(d, h));
    }
  }
  CHECK(fractional_cost_formula(2, 3) == Rational(5, 2));
  CHECK(fractional_cost_formula(2, 4) == Rational(3));
  CHECK(fractional_cost_formula(3, 3) == Rational(4));
}

TEST_CASE("white-sliding sequence validates at exactly 8/3") {
  PebbleSequence seq = strategy_whiteslide_h4();
  Rational cost = validate_sequence(seq, GameVariant::FractionalWhiteSlide);
  CHECK(cost == Rational(8, 3));

  // Some configuration reaches exactly 8/3.
  PebbleConfig c(seq.graph.size());
  bool hit = false;
  for (size_t i = 0; i < seq.moves.size(); ++i) {
    c = apply_move(seq.graph, c, seq.moves[i], GameVariant::FractionalWhiteSlide,
                   static_cast<int>(i));
    if (c.total() == Rational(8, 3)) hit = true;
  }
  CHECK(hit);
}

TEST_CASE("white-sliding sequence is illegal in the plain fractional game") {
  PebbleSequence seq = strategy_whiteslide_h4();
  try {
    validate_sequence(seq, GameVariant::Fractional);
    FAIL("expected IllegalMove");
  } catch (const IllegalMove& e) {
    CHECK(e.rule == "rule iv");
    CHECK(seq.moves[e.index].kind == MoveKind::WhiteSlide);
    for (int i = 0; i < e.index; ++i) CHECK(seq.moves[i].kind != MoveKind::WhiteSlide);
  }
}

TEST_CASE("factor-two conversion on the paper's fractional strategies") {
  for (int h : {2, 3, 4}) {
    PebbleSequence frac = strategy_fractional(2, h);
    Rational in_cost = validate_sequence(frac, GameVariant::Fractional);
    PebbleSequence bw = fractional_to_bw(frac);
    Rational out_cost = validate_sequence(bw, GameVariant::BlackWhite);
    CHECK(out_cost <= Rational(2) * in_cost);
  }
}

TEST_CASE("conversion is the identity on whole-pebble sequences") {
  PebbleSequence black = strategy_black(2, 3);
  PebbleSequence converted = fractional_to_bw(black);
  REQUIRE(converted.moves.size() == black.moves.size());
  PebbleConfig ca(black.graph.size()), cb(black.graph.size());
  for (size_t i = 0; i < black.moves.size(); ++i) {
    ca = apply_move(black.graph, ca, black.moves[i], GameVariant::Fractional);
    cb = apply_move(black.graph, cb, converted.moves[i], GameVariant::BlackWhite);
    for (int v = 0; v < black.graph.size(); ++v) {
      CHECK(ca.black[v] == cb.black[v]);
      CHECK(ca.white[v] == cb.white[v]);
    }
  }
}

namespace {

// Random amount-splitting perturbation: still a valid fractional sequence
// with identical extremal configurations.
PebbleSequence perturb(const PebbleSequence& seq, uint64_t seed) {
  uint64_t state = seed * 2654435761u + 1;
  auto coin = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return (state >> 62) == 3;
  };
  PebbleSequence out;
  out.graph = seq.graph;
  out.claimed_cost = seq.claimed_cost;
  for (const auto& m : seq.moves) {
    if ((m.kind == MoveKind::DecreaseBlack || m.kind == MoveKind::IncreaseWhite) && coin()) {
      Rational halfamt = m.amount * Rational(1, 2);
      if (m.kind == MoveKind::DecreaseBlack) {
        out.moves.push_back(PebbleMove::dec_black(m.node, halfamt));
        out.moves.push_back(PebbleMove::dec_black(m.node, m.amount - halfamt));
      } else {
        out.moves.push_back(PebbleMove::inc_white(m.node, halfamt));
        out.moves.push_back(PebbleMove::inc_white(m.node, m.amount - halfamt));
      }
    } else {
      out.moves.push_back(m);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("conversion stays within factor two on perturbed valid sequences") {
  int done = 0;
  for (uint64_t seed = 0; done < 100; ++seed) {
    PebbleSequence base = (seed % 3 == 0)   ? strategy_fractional(2, 3)
                          : (seed % 3 == 1) ? strategy_fractional(2, 4)
                                            : strategy_fractional(3, 3);
    PebbleSequence mutated = perturb(base, seed);
    Rational in_cost = validate_sequence(mutated, GameVariant::Fractional);
    PebbleSequence bw = fractional_to_bw(mutated);
    CHECK(validate_sequence(bw, GameVariant::BlackWhite) <= Rational(2) * in_cost);
    ++done;
  }
}
