#include "treeval/bp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

#include "json.hpp"

namespace treeval {

std::string VarId::to_string() const {
  if (kind == Kind::Leaf) return "L" + std::to_string(node);
  std::string s = "F" + std::to_string(node) + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(args[i]);
  }
  return s + ")";
}

int var_value(const TepInstance& inst, const VarId& var) {
  if (var.kind == VarId::Kind::Leaf) return inst.leaf_value(var.node);
  return inst.func_value(var.node, var.args);
}

int BranchingProgram::final_id(int label) const {
  for (size_t i = 0; i < finals.size(); ++i)
    if (finals[i] == label) return static_cast<int>(states.size() + i);
  throw std::invalid_argument("no final state labeled " + std::to_string(label));
}

void BranchingProgram::check_well_formed() const {
  if (start < 0 || start >= size()) throw std::invalid_argument("bp: bad start state");
  for (const auto& st : states) {
    if (st.var.kind == VarId::Kind::Leaf) {
      if (!shape.is_leaf(st.var.node)) throw std::invalid_argument("bp: leaf query on internal node");
    } else {
      if (shape.is_leaf(st.var.node)) throw std::invalid_argument("bp: table query on leaf");
      if (static_cast<int>(st.var.args.size()) != shape.degree)
        throw std::invalid_argument("bp: wrong query arity");
      for (int a : st.var.args)
        if (a < 1 || a > k) throw std::invalid_argument("bp: query argument out of [k]");
    }
    std::vector<int> per_label(k + 1, 0);
    for (const auto& e : st.edges) {
      if (e.label < 1 || e.label > k) throw std::invalid_argument("bp: edge label out of [k]");
      if (e.target < 0 || e.target >= size()) throw std::invalid_argument("bp: dangling edge");
      ++per_label[e.label];
    }
    if (deterministic)
      for (int a = 1; a <= k; ++a)
        if (per_label[a] != 1)
          throw std::invalid_argument("bp: deterministic state needs exactly one edge per label");
  }
}

RunOutcome run_deterministic(const BranchingProgram& bp, const TepInstance& inst) {
  std::vector<bool> seen(bp.states.size(), false);
  int cur = bp.start;
  for (;;) {
    if (bp.is_final(cur)) return {RunOutcome::Kind::Output, bp.final_label(cur)};
    if (seen[cur]) return {RunOutcome::Kind::Diverge, 0};
    seen[cur] = true;
    const BpState& st = bp.states[cur];
    int answer = var_value(inst, st.var);
    int next = -1;
    for (const auto& e : st.edges)
      if (e.label == answer) {
        next = e.target;
        break;
      }
    if (next < 0) return {RunOutcome::Kind::Abort, 0};
    cur = next;
  }
}

std::set<int> reachable_finals(const BranchingProgram& bp, const TepInstance& inst) {
  std::set<int> out;
  std::vector<bool> seen(bp.size(), false);
  std::vector<int> stack = {bp.start};
  seen[bp.start] = true;
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    if (bp.is_final(cur)) {
      out.insert(bp.final_label(cur));
      continue;
    }
    const BpState& st = bp.states[cur];
    int answer = var_value(inst, st.var);
    for (const auto& e : st.edges)
      if (e.label == answer && !seen[e.target]) {
        seen[e.target] = true;
        stack.push_back(e.target);
      }
  }
  return out;
}

int expected_output(const TepInstance& inst, ProblemKind kind) {
  int v = evaluate_function(inst);
  return kind == ProblemKind::Function ? v : (v == 1 ? 1 : 0);
}

namespace {

template <typename Fn>
CheckReport for_each_input(const BranchingProgram& bp, const CheckMode& mode, Fn&& verdict) {
  CheckReport report;
  if (mode.exhaustive) {
    BigInt total = count_instances(bp.shape, bp.k);
    if (total > mode.cap)
      throw CapExceeded("exhaustive check needs " + total.to_string() + " inputs, cap is " +
                        mode.cap.to_string());
    InstanceEnumerator en(bp.shape, bp.k, mode.cap);
    TepInstance inst;
    while (en.next(inst)) {
      ++report.inputs_checked;
      std::string why = verdict(inst);
      if (!why.empty()) {
        report.pass = false;
        report.counterexample = inst;
        report.detail = why;
        return report;
      }
    }
  } else {
    for (long long i = 0; i < mode.samples; ++i) {
      TepInstance inst = random_instance(bp.shape, bp.k, mode.seed + static_cast<uint64_t>(i));
      ++report.inputs_checked;
      std::string why = verdict(inst);
      if (!why.empty()) {
        report.pass = false;
        report.counterexample = inst;
        report.detail = why;
        return report;
      }
    }
  }
  return report;
}

}  // namespace

CheckReport check_correct(const BranchingProgram& bp, ProblemKind kind, const CheckMode& mode) {
  return for_each_input(bp, mode, [&](const TepInstance& inst) -> std::string {
    int want = expected_output(inst, kind);
    if (bp.deterministic) {
      RunOutcome out = run_deterministic(bp, inst);
      if (out.kind == RunOutcome::Kind::Diverge) return "run diverges";
      if (out.kind == RunOutcome::Kind::Abort) return "run aborts";
      if (out.output != want)
        return "output " + std::to_string(out.output) + ", expected " + std::to_string(want);
      return "";
    }
    std::set<int> reached = reachable_finals(bp, inst);
    if (reached != std::set<int>{want}) {
      std::string got = "{";
      for (int r : reached) got += std::to_string(r) + ",";
      return "reachable finals " + got + "}, expected {" + std::to_string(want) + "}";
    }
    return "";
  });
}

CheckReport check_thrifty(const BranchingProgram& bp, const CheckMode& mode) {
  return for_each_input(bp, mode, [&](const TepInstance& inst) -> std::string {
    std::vector<int> values = node_values(inst);
    auto thrifty_query = [&](const BpState& st) {
      if (st.var.kind == VarId::Kind::Leaf) return true;
      for (int j = 0; j < bp.shape.degree; ++j)
        if (st.var.args[j] != values[bp.shape.child(st.var.node, j)]) return false;
      return true;
    };
    if (bp.deterministic) {
      // Walk the unique computation path; it queries exactly the states it
      // visits, looping forever after a repeat.
      std::vector<bool> seen(bp.states.size(), false);
      int cur = bp.start;
      while (!bp.is_final(cur) && !seen[cur]) {
        seen[cur] = true;
        const BpState& st = bp.states[cur];
        if (!thrifty_query(st)) return "state queries " + st.var.to_string();
        int answer = var_value(inst, st.var);
        int next = -1;
        for (const auto& e : st.edges)
          if (e.label == answer) {
            next = e.target;
            break;
          }
        if (next < 0) break;
        cur = next;
      }
      return "";
    }
    // Nondeterministic: a state matters iff it is reachable from the start
    // and co-reachable to some final within the activated subgraph; this
    // captures every computation that ends in a final state, including
    // non-simple walks.
    int n = static_cast<int>(bp.size());
    std::vector<bool> fwd(n, false);
    std::vector<int> stack = {bp.start};
    fwd[bp.start] = true;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      if (bp.is_final(cur)) continue;
      const BpState& st = bp.states[cur];
      int answer = var_value(inst, st.var);
      for (const auto& e : st.edges)
        if (e.label == answer && !fwd[e.target]) {
          fwd[e.target] = true;
          stack.push_back(e.target);
        }
    }
    std::vector<std::vector<int>> rev(n);
    for (int s = 0; s < static_cast<int>(bp.states.size()); ++s) {
      int answer = var_value(inst, bp.states[s].var);
      for (const auto& e : bp.states[s].edges)
        if (e.label == answer) rev[e.target].push_back(s);
    }
    std::vector<bool> bwd(n, false);
    for (int f = static_cast<int>(bp.states.size()); f < n; ++f) {
      bwd[f] = true;
      stack.push_back(f);
    }
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int p : rev[cur])
        if (!bwd[p]) {
          bwd[p] = true;
          stack.push_back(p);
        }
    }
    for (int s = 0; s < static_cast<int>(bp.states.size()); ++s)
      if (fwd[s] && bwd[s] && !thrifty_query(bp.states[s]))
        return "state " + std::to_string(s) + " queries " + bp.states[s].var.to_string();
    return "";
  });
}

BpMetrics metrics(const BranchingProgram& bp) {
  BpMetrics m;
  m.state_count = bp.size();
  std::map<long long, long long> per_node;
  for (const auto& st : bp.states) ++per_node[st.var.node];
  m.states_per_node.assign(per_node.begin(), per_node.end());
  return m;
}

double growth_exponent(const std::vector<std::pair<int, long long>>& series) {
  if (series.size() < 3) throw DegenerateSeries("need at least 3 points");
  for (size_t i = 1; i < series.size(); ++i)
    if (series[i].first <= series[i - 1].first)
      throw DegenerateSeries("k must be strictly increasing");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = static_cast<double>(series.size());
  for (auto [k, states] : series) {
    if (k < 2 || states < 1) throw DegenerateSeries("need k >= 2 and positive state counts");
    double x = std::log(static_cast<double>(k));
    double y = std::log(static_cast<double>(states));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BranchingProgram merge_finals_boolean(const BranchingProgram& function_bp) {
  BranchingProgram bp = function_bp;
  int old_first_final = static_cast<int>(function_bp.states.size());
  bp.finals = {0, 1};
  for (auto& st : bp.states)
    for (auto& e : st.edges)
      if (e.target >= old_first_final) {
        int label = function_bp.finals[e.target - old_first_final];
        e.target = old_first_final + (label == 1 ? 1 : 0);
      }
  if (function_bp.is_final(function_bp.start))
    bp.start = old_first_final + (function_bp.final_label(function_bp.start) == 1 ? 1 : 0);
  return bp;
}

std::string export_dot(const BranchingProgram& bp) {
  std::ostringstream out;
  out << "digraph bp {\n";
  out << "  // d=" << bp.shape.degree << " h=" << bp.shape.height << " k=" << bp.k
      << " deterministic=" << (bp.deterministic ? 1 : 0) << " start=" << bp.start << "\n";
  for (size_t s = 0; s < bp.states.size(); ++s)
    out << "  q" << s << " [label=\"" << bp.states[s].var.to_string() << "\"];\n";
  for (size_t f = 0; f < bp.finals.size(); ++f)
    out << "  o" << f << " [label=\"=" << bp.finals[f] << "\" shape=doublecircle];\n";
  auto name = [&](int id) {
    return bp.is_final(id) ? "o" + std::to_string(id - bp.states.size())
                           : "q" + std::to_string(id);
  };
  for (size_t s = 0; s < bp.states.size(); ++s)
    for (const auto& e : bp.states[s].edges)
      out << "  q" << s << " -> " << name(e.target) << " [label=\"" << e.label << "\"];\n";
  out << "}\n";
  return out.str();
}

namespace {

VarId var_from_string(const std::string& s) {
  VarId var;
  if (s.empty()) throw std::invalid_argument("bad var string");
  if (s[0] == 'L') {
    var.kind = VarId::Kind::Leaf;
    var.node = std::stoll(s.substr(1));
    return var;
  }
  if (s[0] != 'F') throw std::invalid_argument("bad var string " + s);
  var.kind = VarId::Kind::Func;
  size_t paren = s.find('(');
  var.node = std::stoll(s.substr(1, paren - 1));
  size_t pos = paren + 1;
  while (pos < s.size() && s[pos] != ')') {
    size_t end = s.find_first_of(",)", pos);
    var.args.push_back(std::stoi(s.substr(pos, end - pos)));
    pos = end + (s[end] == ',' ? 1 : 0);
  }
  return var;
}

}  // namespace

BranchingProgram bp_from_dot(const std::string& text) {
  BranchingProgram bp;
  std::istringstream in(text);
  std::string line;
  int d = 0, h = 0;
  std::vector<std::pair<std::string, std::string>> pending_edges;  // from, "to|label"
  std::map<std::string, VarId> vars;
  std::map<std::string, int> final_labels;
  std::vector<std::string> state_order, final_order;
  std::vector<std::tuple<std::string, std::string, int>> edges;
  while (std::getline(in, line)) {
    size_t meta = line.find("// d=");
    if (meta != std::string::npos) {
      std::istringstream ms(line.substr(meta + 3));
      std::string tok;
      while (ms >> tok) {
        size_t eq = tok.find('=');
        std::string key = tok.substr(0, eq);
        int value = std::stoi(tok.substr(eq + 1));
        if (key == "d") d = value;
        if (key == "h") h = value;
        if (key == "k") bp.k = value;
        if (key == "deterministic") bp.deterministic = value != 0;
        if (key == "start") bp.start = value;
      }
      continue;
    }
    size_t arrow = line.find("->");
    if (arrow != std::string::npos) {
      std::string from = line.substr(0, arrow);
      std::string rest = line.substr(arrow + 2);
      auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t;");
        return s.substr(a, b - a + 1);
      };
      from = trim(from);
      size_t bracket = rest.find('[');
      std::string to = trim(rest.substr(0, bracket));
      size_t lab = rest.find("label=\"", bracket);
      size_t endq = rest.find('"', lab + 7);
      int label = std::stoi(rest.substr(lab + 7, endq - lab - 7));
      edges.emplace_back(from, to, label);
      continue;
    }
    size_t bracket = line.find('[');
    if (bracket == std::string::npos) continue;
    std::string name;
    {
      std::istringstream ls(line.substr(0, bracket));
      ls >> name;
    }
    if (name.empty() || (name[0] != 'q' && name[0] != 'o')) continue;
    size_t lab = line.find("label=\"", bracket);
    size_t endq = line.find('"', lab + 7);
    std::string label = line.substr(lab + 7, endq - lab - 7);
    if (name[0] == 'q') {
      vars[name] = var_from_string(label);
      state_order.push_back(name);
    } else {
      final_labels[name] = std::stoi(label.substr(1));  // skip '='
      final_order.push_back(name);
    }
  }
  if (d == 0 || h == 0) throw std::invalid_argument("dot: missing metadata comment");
  bp.shape = TreeShape(d, h);
  std::map<std::string, int> ids;
  for (size_t i = 0; i < state_order.size(); ++i) {
    ids[state_order[i]] = static_cast<int>(i);
    bp.states.push_back({vars[state_order[i]], {}, ""});
  }
  for (size_t i = 0; i < final_order.size(); ++i) {
    ids[final_order[i]] = static_cast<int>(state_order.size() + i);
    bp.finals.push_back(final_labels[final_order[i]]);
  }
  for (auto& [from, to, label] : edges)
    bp.states[ids.at(from)].edges.push_back({label, ids.at(to)});
  bp.check_well_formed();
  return bp;
}

std::string bp_to_json(const BranchingProgram& bp) {
  nlohmann::json j;
  j["d"] = bp.shape.degree;
  j["h"] = bp.shape.height;
  j["k"] = bp.k;
  j["deterministic"] = bp.deterministic;
  j["start"] = bp.start;
  nlohmann::json states = nlohmann::json::array();
  for (const auto& st : bp.states) {
    nlohmann::json s;
    if (st.var.kind == VarId::Kind::Leaf) {
      s["var"] = {{"kind", "leaf"}, {"node", st.var.node}};
    } else {
      s["var"] = {{"kind", "func"}, {"node", st.var.node}, {"args", st.var.args}};
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : st.edges) edges.push_back({{"label", e.label}, {"to", e.target}});
    s["edges"] = edges;
    if (!st.note.empty()) s["note"] = st.note;
    states.push_back(s);
  }
  j["states"] = states;
  j["finals"] = bp.finals;
  return j.dump(2);
}

BranchingProgram bp_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  BranchingProgram bp;
  bp.shape = TreeShape(j.at("d").get<int>(), j.at("h").get<int>());
  bp.k = j.at("k").get<int>();
  bp.deterministic = j.at("deterministic").get<bool>();
  bp.start = j.at("start").get<int>();
  for (const auto& s : j.at("states")) {
    BpState st;
    const auto& var = s.at("var");
    if (var.at("kind") == "leaf") {
      st.var.kind = VarId::Kind::Leaf;
      st.var.node = var.at("node").get<long long>();
    } else {
      st.var.kind = VarId::Kind::Func;
      st.var.node = var.at("node").get<long long>();
      st.var.args = var.at("args").get<std::vector<int>>();
    }
    for (const auto& e : s.at("edges"))
      st.edges.push_back({e.at("label").get<int>(), e.at("to").get<int>()});
    if (s.contains("note")) st.note = s.at("note").get<std::string>();
    bp.states.push_back(std::move(st));
  }
  bp.finals = j.at("finals").get<std::vector<int>>();
  bp.check_well_formed();
  return bp;
}

bool isomorphic(const BranchingProgram& a, const BranchingProgram& b) {
  if (a.k != b.k || a.deterministic != b.deterministic || a.finals != b.finals ||
      a.states.size() != b.states.size() || !(a.shape == b.shape))
    return false;
  // Pair states by traversal from the starts, requiring stored edge order
  // to agree; unreachable states must then match up by index.
  std::vector<int> map_ab(a.size(), -1);
  std::vector<bool> seen_b(b.size(), false);
  std::deque<std::pair<int, int>> queue;
  auto match = [&](int ia, int ib) {
    if (a.is_final(ia) != b.is_final(ib)) return false;
    if (a.is_final(ia)) return ia - static_cast<int>(a.states.size()) ==
                               ib - static_cast<int>(b.states.size());
    if (map_ab[ia] >= 0) return map_ab[ia] == ib;
    if (seen_b[ib]) return false;
    map_ab[ia] = ib;
    seen_b[ib] = true;
    queue.emplace_back(ia, ib);
    return true;
  };
  if (!match(a.start, b.start)) return false;
  while (!queue.empty()) {
    auto [ia, ib] = queue.front();
    queue.pop_front();
    const BpState& sa = a.states[ia];
    const BpState& sb = b.states[ib];
    if (!(sa.var == sb.var) || sa.edges.size() != sb.edges.size()) return false;
    for (size_t e = 0; e < sa.edges.size(); ++e) {
      if (sa.edges[e].label != sb.edges[e].label) return false;
      if (!match(sa.edges[e].target, sb.edges[e].target)) return false;
    }
  }
  return true;
}

}  // namespace treeval
