#include "treeval/pebbling.hpp"

#include <algorithm>
#include <sstream>

namespace treeval {

int PebbleGraph::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names[i] == name) return i;
  throw std::invalid_argument("PebbleGraph: unknown node name " + name);
}

PebbleGraph graph_from_tree(const TreeShape& shape) {
  PebbleGraph g;
  long long n = shape.node_count();
  g.children.resize(n);
  g.names.resize(n);
  for (long long node = 1; node <= n; ++node) {
    g.names[node - 1] = std::to_string(node);
    if (!shape.is_leaf(node))
      for (int j = 0; j < shape.degree; ++j)
        g.children[node - 1].push_back(static_cast<int>(shape.child(node, j) - 1));
  }
  g.sinks = {0};
  return g;
}

std::string variant_name(GameVariant v) {
  switch (v) {
    case GameVariant::Black:
      return "black";
    case GameVariant::BlackWhite:
      return "bw";
    case GameVariant::Fractional:
      return "fractional";
    default:
      return "fractional-ws";
  }
}

GameVariant variant_from_name(const std::string& s) {
  if (s == "black") return GameVariant::Black;
  if (s == "bw" || s == "black-white") return GameVariant::BlackWhite;
  if (s == "fractional") return GameVariant::Fractional;
  if (s == "fractional-ws" || s == "white-slide") return GameVariant::FractionalWhiteSlide;
  throw std::invalid_argument("unknown game variant: " + s);
}

PebbleMove PebbleMove::dec_black(int node, Rational amount) {
  PebbleMove m;
  m.kind = MoveKind::DecreaseBlack;
  m.node = node;
  m.amount = std::move(amount);
  return m;
}

PebbleMove PebbleMove::inc_white(int node, Rational amount) {
  PebbleMove m;
  m.kind = MoveKind::IncreaseWhite;
  m.node = node;
  m.amount = std::move(amount);
  return m;
}

PebbleMove PebbleMove::finish(int node, Rational new_black,
                              std::vector<std::pair<int, Rational>> decs) {
  PebbleMove m;
  m.kind = MoveKind::Finish;
  m.node = node;
  m.new_black = std::move(new_black);
  m.child_decreases = std::move(decs);
  return m;
}

PebbleMove PebbleMove::white_slide(int node, int child) {
  PebbleMove m;
  m.kind = MoveKind::WhiteSlide;
  m.node = node;
  m.slide_child = child;
  return m;
}

Rational PebbleConfig::total() const {
  Rational t;
  for (size_t i = 0; i < black.size(); ++i) t += black[i] + white[i];
  return t;
}

bool PebbleConfig::empty() const {
  for (size_t i = 0; i < black.size(); ++i)
    if (!black[i].is_zero() || !white[i].is_zero()) return false;
  return true;
}

namespace {

const Rational kOne(1);

bool is_whole(const Rational& r) { return r.is_zero() || r == kOne; }

void require(bool ok, int index, const std::string& rule, const std::string& what) {
  if (!ok) throw IllegalMove(index, rule, "illegal move" + (index >= 0 ? " #" + std::to_string(index) : std::string()) + ": " + what + " (" + rule + ")");
}

}  // namespace

PebbleConfig apply_move(const PebbleGraph& g, const PebbleConfig& config,
                        const PebbleMove& move, GameVariant variant, int index) {
  const bool whole = variant == GameVariant::Black || variant == GameVariant::BlackWhite;
  require(move.node >= 0 && move.node < g.size(), index, "target", "node out of range");
  PebbleConfig next = config;
  switch (move.kind) {
    case MoveKind::DecreaseBlack: {
      require(move.amount > Rational(0), index, "rule i", "decrease amount must be positive");
      require(move.amount <= config.black[move.node], index, "rule i",
              "cannot decrease b(" + g.names[move.node] + ") below 0");
      next.black[move.node] = config.black[move.node] - move.amount;
      break;
    }
    case MoveKind::IncreaseWhite: {
      require(variant != GameVariant::Black, index, "variant", "white pebbles not allowed in the black game");
      require(move.amount > Rational(0), index, "rule ii", "increase amount must be positive");
      next.white[move.node] = config.white[move.node] + move.amount;
      require(next.white[move.node] + next.black[move.node] <= kOne, index, "rule ii",
              "pebble value of " + g.names[move.node] + " would exceed 1");
      break;
    }
    case MoveKind::Finish: {
      for (int c : g.children[move.node])
        require(config.value(c) == kOne, index, "rule iii",
                "child " + g.names[c] + " of " + g.names[move.node] + " does not have pebble value 1");
      require(move.new_black >= config.black[move.node], index, "rule iii",
              "finish cannot lower the black value of " + g.names[move.node]);
      require(move.new_black <= kOne, index, "rule iii", "black value cannot exceed 1");
      next.black[move.node] = move.new_black;
      next.white[move.node] = Rational(0);
      for (const auto& [child, amt] : move.child_decreases) {
        require(std::find(g.children[move.node].begin(), g.children[move.node].end(), child) !=
                    g.children[move.node].end(),
                index, "rule iii", g.names[child] + " is not a child of " + g.names[move.node]);
        require(amt > Rational(0), index, "rule iii", "child decrease must be positive");
        require(amt <= next.black[child], index, "rule iii",
                "cannot decrease b(" + g.names[child] + ") below 0");
        next.black[child] = next.black[child] - amt;
      }
      break;
    }
    case MoveKind::WhiteSlide: {
      require(variant == GameVariant::FractionalWhiteSlide, index, "rule iv",
              "white sliding is not allowed in this variant");
      require(!g.children[move.node].empty(), index, "rule iv", "white slide needs an internal node");
      const auto& kids = g.children[move.node];
      require(std::find(kids.begin(), kids.end(), move.slide_child) != kids.end(), index, "rule iv",
              g.names[move.slide_child] + " is not a child of " + g.names[move.node]);
      require(config.white[move.node] > Rational(0), index, "rule iv", "no white weight to slide");
      for (int c : kids)
        if (c != move.slide_child)
          require(config.value(c) == kOne, index, "rule iv",
                  "sibling " + g.names[c] + " does not have pebble value 1");
      // The white weight moves down and must top the target child up to exactly 1.
      require(config.value(move.slide_child) + config.white[move.node] == kOne, index, "rule iv",
              "white weight does not top child " + g.names[move.slide_child] + " up to 1");
      next.white[move.slide_child] = config.white[move.slide_child] + config.white[move.node];
      next.white[move.node] = Rational(0);
      break;
    }
  }
  if (whole) {
    require(is_whole(next.black[move.node]) && is_whole(next.white[move.node]), index, "whole game",
            "weights must stay in {0,1}");
    for (const auto& [child, amt] : move.child_decreases) {
      (void)amt;
      require(is_whole(next.black[child]), index, "whole game", "weights must stay in {0,1}");
    }
  }
  if (variant == GameVariant::Black)
    require(next.white[move.node].is_zero(), index, "black game", "white weight must stay 0");
  return next;
}

Rational validate_sequence(const PebbleGraph& g, const std::vector<PebbleMove>& moves,
                           GameVariant variant) {
  PebbleConfig config(g.size());
  Rational max_total;
  std::vector<bool> sink_done(g.sinks.size(), false);
  for (size_t i = 0; i < moves.size(); ++i) {
    config = apply_move(g, config, moves[i], variant, static_cast<int>(i));
    Rational t = config.total();
    if (t > max_total) max_total = t;
    for (size_t s = 0; s < g.sinks.size(); ++s)
      if (config.black[g.sinks[s]] == kOne) sink_done[s] = true;
  }
  if (!config.empty()) throw NonEmptyEnd();
  for (bool done : sink_done)
    if (!done) throw RootNeverBlack();
  return max_total;
}

std::string moves_to_text(const PebbleGraph& g, const std::vector<PebbleMove>& moves) {
  std::ostringstream out;
  for (const auto& m : moves) {
    switch (m.kind) {
      case MoveKind::DecreaseBlack:
        out << "decb " << g.names[m.node] << " " << m.amount.to_string();
        break;
      case MoveKind::IncreaseWhite:
        out << "incw " << g.names[m.node] << " " << m.amount.to_string();
        break;
      case MoveKind::Finish: {
        out << "finish " << g.names[m.node] << " b=" << m.new_black.to_string() << " w=0";
        if (!m.child_decreases.empty()) {
          out << " dec";
          for (const auto& [child, amt] : m.child_decreases)
            out << " " << g.names[child] << "=" << amt.to_string();
        }
        break;
      }
      case MoveKind::WhiteSlide:
        out << "wslide " << g.names[m.node] << " " << g.names[m.slide_child];
        break;
    }
    out << "\n";
  }
  return out.str();
}

std::vector<PebbleMove> moves_from_text(const PebbleGraph& g, const std::string& text) {
  std::vector<PebbleMove> moves;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string op, name;
    ls >> op >> name;
    if (op == "decb" || op == "incw") {
      std::string amt;
      ls >> amt;
      moves.push_back(op == "decb"
                          ? PebbleMove::dec_black(g.index_of(name), Rational::from_string(amt))
                          : PebbleMove::inc_white(g.index_of(name), Rational::from_string(amt)));
    } else if (op == "finish") {
      std::string tok;
      Rational new_black;
      std::vector<std::pair<int, Rational>> decs;
      bool in_decs = false;
      while (ls >> tok) {
        if (tok.rfind("b=", 0) == 0) {
          new_black = Rational::from_string(tok.substr(2));
        } else if (tok.rfind("w=", 0) == 0) {
          if (Rational::from_string(tok.substr(2)) != Rational(0))
            throw std::invalid_argument("finish: w must be 0 after the move");
        } else if (tok == "dec") {
          in_decs = true;
        } else if (in_decs) {
          size_t eq = tok.find('=');
          if (eq == std::string::npos) throw std::invalid_argument("finish: bad dec token " + tok);
          decs.emplace_back(g.index_of(tok.substr(0, eq)), Rational::from_string(tok.substr(eq + 1)));
        } else {
          throw std::invalid_argument("finish: unexpected token " + tok);
        }
      }
      moves.push_back(PebbleMove::finish(g.index_of(name), new_black, std::move(decs)));
    } else if (op == "wslide") {
      std::string child;
      ls >> child;
      moves.push_back(PebbleMove::white_slide(g.index_of(name), g.index_of(child)));
    } else {
      throw std::invalid_argument("unknown move op: " + op);
    }
  }
  return moves;
}

}  // namespace treeval
