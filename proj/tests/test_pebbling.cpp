#include "doctest.h"
#include "treeval/pebbling.hpp"
#include "treeval/strategies.hpp"

using namespace treeval;

namespace {

// The 2.5-pebble fractional sequence for the height-3 binary tree,
// hard-coded as a fixture. Node 2 passes through black 1/2 plus white 1/2
// while node 3 holds a whole black pebble.
std::vector<PebbleMove> half_pebble_fixture() {
  const Rational half(1, 2);
  auto n = [](long long id) { return static_cast<int>(id - 1); };
  std::vector<PebbleMove> m;
  m.push_back(PebbleMove::finish(n(4), 1));
  m.push_back(PebbleMove::finish(n(5), 1));
  m.push_back(PebbleMove::finish(n(2), 1, {{n(4), Rational(1)}, {n(5), Rational(1)}}));
  m.push_back(PebbleMove::dec_black(n(2), half));
  m.push_back(PebbleMove::finish(n(6), 1));
  m.push_back(PebbleMove::finish(n(7), 1));
  m.push_back(PebbleMove::finish(n(3), 1, {{n(6), Rational(1)}, {n(7), Rational(1)}}));
  m.push_back(PebbleMove::inc_white(n(2), half));
  m.push_back(PebbleMove::finish(n(1), 1, {{n(3), Rational(1)}}));
  m.push_back(PebbleMove::dec_black(n(2), half));
  m.push_back(PebbleMove::dec_black(n(1), 1));
  m.push_back(PebbleMove::finish(n(4), 1));
  m.push_back(PebbleMove::finish(n(5), 1));
  m.push_back(PebbleMove::finish(n(2), 0, {{n(4), Rational(1)}, {n(5), Rational(1)}}));
  return m;
}

}  // namespace

TEST_CASE("rule ii is unconditional") {
  PebbleGraph g = graph_from_tree(TreeShape(2, 2));
  PebbleConfig empty(g.size());
  PebbleConfig after = apply_move(g, empty, PebbleMove::inc_white(0, Rational(1)),
                                  GameVariant::BlackWhite);
  CHECK(after.white[0] == Rational(1));
}

TEST_CASE("finish with unpebbled children is illegal") {
  PebbleGraph g = graph_from_tree(TreeShape(2, 2));
  PebbleConfig empty(g.size());
  try {
    apply_move(g, empty, PebbleMove::finish(0, Rational(1)), GameVariant::Black);
    FAIL("expected IllegalMove");
  } catch (const IllegalMove& e) {
    CHECK(e.rule == "rule iii");
  }
}

TEST_CASE("half-black finish from the figure configuration") {
  // Both leaves of node 2 at value 1, then finish 2 with b=1/2, emptying them.
  PebbleGraph g = graph_from_tree(TreeShape(2, 3));
  PebbleConfig c(g.size());
  c.black[3] = Rational(1);
  c.black[4] = Rational(1);
  PebbleConfig after = apply_move(
      g, c, PebbleMove::finish(1, Rational(1, 2), {{3, Rational(1)}, {4, Rational(1)}}),
      GameVariant::Fractional);
  CHECK(after.black[1] == Rational(1, 2));
  CHECK(after.black[3].is_zero());
  CHECK(after.black[4].is_zero());
}

TEST_CASE("figure fixture validates at exactly 5/2") {
  PebbleGraph g = graph_from_tree(TreeShape(2, 3));
  CHECK(validate_sequence(g, half_pebble_fixture(), GameVariant::Fractional) == Rational(5, 2));
}

TEST_CASE("black strategy for the 3-node tree costs 2") {
  PebbleSequence seq = strategy_black(2, 2);
  CHECK(validate_sequence(seq, GameVariant::Black) == Rational(2));
  int finishes_on_root = 0;
  for (const auto& m : seq.moves)
    if (m.kind == MoveKind::Finish && m.node == 0) ++finishes_on_root;
  CHECK(finishes_on_root == 1);
}

TEST_CASE("leftover pebble is rejected") {
  PebbleGraph g = graph_from_tree(TreeShape(2, 2));
  std::vector<PebbleMove> moves;
  moves.push_back(PebbleMove::finish(1, Rational(1)));
  moves.push_back(PebbleMove::finish(2, Rational(1)));
  moves.push_back(PebbleMove::finish(0, Rational(1), {{1, Rational(1)}, {2, Rational(1)}}));
  moves.push_back(PebbleMove::dec_black(0, Rational(1)));
  CHECK_THROWS_AS(validate_sequence(g, std::vector<PebbleMove>(moves.begin(), moves.end() - 1),
                                    GameVariant::Black),
                  NonEmptyEnd);
  CHECK(validate_sequence(g, moves, GameVariant::Black) == Rational(2));
}

TEST_CASE("root never black is rejected") {
  PebbleGraph g = graph_from_tree(TreeShape(2, 2));
  std::vector<PebbleMove> moves;
  moves.push_back(PebbleMove::finish(1, Rational(1)));
  moves.push_back(PebbleMove::dec_black(1, Rational(1)));
  CHECK_THROWS_AS(validate_sequence(g, moves, GameVariant::Black), RootNeverBlack);
}

TEST_CASE("whole game rejects fractional weights") {
  PebbleGraph g = graph_from_tree(TreeShape(2, 2));
  PebbleConfig empty(g.size());
  CHECK_THROWS_AS(apply_move(g, empty, PebbleMove::inc_white(0, Rational(1, 2)),
                             GameVariant::BlackWhite),
                  IllegalMove);
  CHECK_THROWS_AS(apply_move(g, empty, PebbleMove::inc_white(0, Rational(1)), GameVariant::Black),
                  IllegalMove);
}

TEST_CASE("eq 4-5 bounds hold after every strategy move") {
  for (auto [d, h] : {std::pair{2, 4}, {3, 3}}) {
    for (auto variant : {GameVariant::Black, GameVariant::BlackWhite, GameVariant::Fractional}) {
      PebbleSequence seq = variant == GameVariant::Black        ? strategy_black(d, h)
                           : variant == GameVariant::BlackWhite ? strategy_bw(d, h)
                                                                : strategy_fractional(d, h);
      PebbleConfig c(seq.graph.size());
      for (size_t i = 0; i < seq.moves.size(); ++i) {
        c = apply_move(seq.graph, c, seq.moves[i], variant, static_cast<int>(i));
        for (int v = 0; v < seq.graph.size(); ++v) {
          CHECK(c.black[v] >= Rational(0));
          CHECK(c.white[v] >= Rational(0));
          CHECK(c.black[v] + c.white[v] <= Rational(1));
        }
      }
    }
  }
}

TEST_CASE("black sequences never use white weight or fractions") {
  PebbleSequence seq = strategy_black(3, 4);
  PebbleConfig c(seq.graph.size());
  for (const auto& m : seq.moves) {
    c = apply_move(seq.graph, c, m, GameVariant::Black);
    for (int v = 0; v < seq.graph.size(); ++v) {
      CHECK(c.white[v].is_zero());
      CHECK((c.black[v].is_zero() || c.black[v] == Rational(1)));
    }
  }
}

TEST_CASE("move text round trip") {
  PebbleSequence seq = strategy_fractional(2, 4);
  std::string text = moves_to_text(seq.graph, seq.moves);
  std::vector<PebbleMove> back = moves_from_text(seq.graph, text);
  CHECK(moves_to_text(seq.graph, back) == text);
  CHECK(validate_sequence(seq.graph, back, GameVariant::Fractional) == seq.claimed_cost);

  PebbleSequence ws = strategy_whiteslide_h4();
  std::string wtext = moves_to_text(ws.graph, ws.moves);
  CHECK(moves_to_text(ws.graph, moves_from_text(ws.graph, wtext)) == wtext);
}

TEST_CASE("finish text format matches the documented example") {
  PebbleGraph g = graph_from_tree(TreeShape(2, 3));
  std::vector<PebbleMove> moves = {
      PebbleMove::finish(1, Rational(1, 2), {{3, Rational(1)}, {4, Rational(1)}})};
  CHECK(moves_to_text(g, moves) == "finish 2 b=1/2 w=0 dec 4=1 5=1\n");
}
