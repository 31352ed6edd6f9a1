// Acceptance suite: runs every promised result end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "treeval/bounds.hpp"
#include "treeval/compile.hpp"
#include "treeval/dag.hpp"
#include "treeval/lp.hpp"
#include "treeval/search.hpp"
#include "treeval/strategies.hpp"

using namespace treeval;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::function<bool(std::string&)> run;
};

int recursive_value(const TepInstance& inst, long long node) {
  if (inst.shape.is_leaf(node)) return inst.leaf_value(node);
  std::vector<int> child_values;
  for (int j = 0; j < inst.shape.degree; ++j)
    child_values.push_back(recursive_value(inst, inst.shape.child(node, j)));
  return inst.func_value(node, child_values);
}

bool expect(bool ok, const std::string& what, std::string& detail) {
  if (!ok && detail.empty()) detail = what;
  return ok;
}

SearchResult search_tree(int d, int h, GameVariant variant, int c, Rational hint) {
  SearchOptions opts;
  opts.upper_bound_hint = hint;
  return min_pebbles(TreeShape(d, h), variant, c, opts);
}

}  // namespace

int main() {
  std::vector<Criterion> criteria;

  criteria.push_back({1, "black pebbling numbers match (d-1)h-d+2", [](std::string& detail) {
    bool ok = true;
    for (auto [d, hmax] : {std::pair{2, 5}, {3, 4}}) {
      for (int h = 2; h <= hmax; ++h) {
        SearchResult r = search_tree(d, h, GameVariant::Black, 1, black_cost_formula(d, h));
        ok &= expect(r.cost == black_cost_formula(d, h),
                     "d=" + std::to_string(d) + " h=" + std::to_string(h) + " got " +
                         r.cost.to_string(),
                     detail);
        ok &= expect(validate_sequence(graph_from_tree(TreeShape(d, h)), r.witness,
                                       GameVariant::Black) == r.cost,
                     "witness cost mismatch", detail);
      }
    }
    return ok;
  }});

  criteria.push_back({2, "black-white pebbling numbers match ceil((d-1)h/2)+1",
                      [](std::string& detail) {
    bool ok = true;
    for (auto [d, hmax] : {std::pair{2, 5}, {3, 3}}) {
      for (int h = 2; h <= hmax; ++h) {
        SearchResult r = search_tree(d, h, GameVariant::BlackWhite, 1, bw_cost_formula(d, h));
        ok &= expect(r.cost == bw_cost_formula(d, h),
                     "d=" + std::to_string(d) + " h=" + std::to_string(h) + " got " +
                         r.cost.to_string(),
                     detail);
      }
    }
    return ok;
  }});

  criteria.push_back({3, "fractional minima: 5/2 and 3 at c=2, unimproved at c=3",
                      [](std::string& detail) {
    SearchResult h3c2 = search_tree(2, 3, GameVariant::Fractional, 2, Rational(5, 2));
    SearchResult h4c2 = search_tree(2, 4, GameVariant::Fractional, 2, Rational(3));
    SearchResult h3c3 = search_tree(2, 3, GameVariant::Fractional, 3, Rational(3));
    SearchResult h4c3 = search_tree(2, 4, GameVariant::Fractional, 3, Rational(3));
    bool ok = expect(h3c2.cost == Rational(5, 2), "T^3_2 c=2 got " + h3c2.cost.to_string(), detail);
    ok &= expect(h4c2.cost == Rational(3), "T^4_2 c=2 got " + h4c2.cost.to_string(), detail);
    ok &= expect(h3c3.cost >= h3c2.cost, "c=3 improved on T^3_2", detail);
    ok &= expect(h4c3.cost >= h4c2.cost, "c=3 improved on T^4_2", detail);
    return ok;
  }});

  criteria.push_back({4, "generated strategies validate at their exact costs",
                      [](std::string& detail) {
    bool ok = true;
    for (int d : {2, 3}) {
      for (int h = 2; h <= 6; ++h) {
        ok &= expect(validate_sequence(strategy_black(d, h), GameVariant::Black) ==
                         black_cost_formula(d, h),
                     "black " + std::to_string(d) + "," + std::to_string(h), detail);
        ok &= expect(validate_sequence(strategy_bw(d, h), GameVariant::BlackWhite) ==
                         bw_cost_formula(d, h),
                     "bw " + std::to_string(d) + "," + std::to_string(h), detail);
        ok &= expect(validate_sequence(strategy_fractional(d, h), GameVariant::Fractional) ==
                         fractional_cost_formula(d, h),
                     "fractional " + std::to_string(d) + "," + std::to_string(h), detail);
      }
    }
    ok &= expect(validate_sequence(strategy_whiteslide_h4(), GameVariant::FractionalWhiteSlide) ==
                     Rational(8, 3),
                 "white-sliding sequence", detail);
    return ok;
  }});

  criteria.push_back({5, "factor-two conversion gives valid whole pebblings",
                      [](std::string& detail) {
    bool ok = true;
    for (int h : {2, 3, 4}) {
      PebbleSequence frac = strategy_fractional(2, h);
      Rational in_cost = validate_sequence(frac, GameVariant::Fractional);
      PebbleSequence bw = fractional_to_bw(frac);
      Rational out_cost = validate_sequence(bw, GameVariant::BlackWhite);
      ok &= expect(out_cost <= Rational(2) * in_cost,
                   "h=" + std::to_string(h) + " cost " + out_cost.to_string(), detail);
    }
    return ok;
  }});

  criteria.push_back({6, "pruned split graph needs exactly c[(d-1)(h-1)+1] black pebbles",
                      [](std::string& detail) {
    PebbleGraph gp = build_Gprime(2, 3, 2);
    SearchOptions opts;
    opts.upper_bound_hint = Rational(6);
    SearchResult r = min_pebbles(gp, GameVariant::Black, 1, opts);
    bool ok = expect(r.cost == Rational(6), "got " + r.cost.to_string(), detail);
    ok &= expect(validate_sequence(gp, r.witness, GameVariant::Black) == Rational(6),
                 "witness mismatch", detail);
    return ok;
  }});

  criteria.push_back({7, "compiled programs are exhaustively correct", [](std::string& detail) {
    bool ok = true;
    for (auto [d, h, k] : {std::tuple{2, 2, 2}, {2, 2, 3}, {2, 3, 2}, {3, 2, 2}}) {
      CompiledProgram det = compile_black_det_default(d, h, k, ProblemKind::Function);
      CheckReport r = check_correct(det.bp, ProblemKind::Function, CheckMode::Exhaustive());
      ok &= expect(r.pass, "black det at " + std::to_string(d) + "," + std::to_string(h) + "," +
                               std::to_string(k) + ": " + r.detail,
                   detail);
    }
    CompiledProgram nd = compile_fractional_nondet_default(2, 3, 2);
    CheckReport rn = check_correct(nd.bp, ProblemKind::Boolean, CheckMode::Exhaustive());
    ok &= expect(rn.pass && rn.inputs_checked == 65536, "fractional nondet: " + rn.detail, detail);
    CompiledProgram ls = compile_boolean_logsave(2, 3, 2);  // default block size 1
    CheckReport rl = check_correct(ls.bp, ProblemKind::Boolean, CheckMode::Exhaustive());
    ok &= expect(rl.pass && rl.inputs_checked == 65536, "logsave: " + rl.detail, detail);
    CompiledProgram ls2 = compile_boolean_logsave(2, 3, 2, 2);
    CheckReport rl2 = check_correct(ls2.bp, ProblemKind::Boolean, CheckMode::Exhaustive());
    ok &= expect(rl2.pass, "logsave m=2: " + rl2.detail, detail);
    return ok;
  }});

  criteria.push_back({8, "pebbling compilers are thrifty, the log-saving one is not",
                      [](std::string& detail) {
    bool ok = true;
    for (auto [d, h, k] : {std::tuple{2, 2, 2}, {2, 2, 3}, {2, 3, 2}, {3, 2, 2}}) {
      CompiledProgram det = compile_black_det_default(d, h, k, ProblemKind::Function);
      ok &= expect(check_thrifty(det.bp, CheckMode::Exhaustive()).pass, "black det not thrifty",
                   detail);
      CompiledProgram nd = compile_fractional_nondet_default(d, h, k);
      ok &= expect(check_thrifty(nd.bp, CheckMode::Exhaustive()).pass,
                   "fractional nondet not thrifty", detail);
    }
    // Block size 2 makes phase 3 probe the root table off the true tuple;
    // block size 1 would degenerate to a thrifty scan.
    CompiledProgram ls = compile_boolean_logsave(2, 3, 2, 2);
    CheckReport r = check_thrifty(ls.bp, CheckMode::Exhaustive());
    ok &= expect(!r.pass && r.counterexample.has_value() && !r.detail.empty(),
                 "logsave unexpectedly thrifty", detail);
    if (ok) detail = "non-thrifty witness: " + r.detail;
    return ok;
  }});

  criteria.push_back({9, "fitted growth exponents over k=2..8 land in the stated windows",
                      [](std::string& detail) {
    std::vector<std::pair<int, long long>> det_series, nd_series, det_peak, nd_peak;
    for (int k = 2; k <= 8; ++k) {
      CompiledProgram det = compile_black_det_default(2, 3, k, ProblemKind::Function);
      CompiledProgram nd = compile_fractional_nondet_default(2, 3, k);
      det_series.emplace_back(k, det.bp.size());
      nd_series.emplace_back(k, nd.bp.size());
      auto peak = [](const std::vector<long long>& per_step) {
        long long best = 1;
        for (long long s : per_step) best = std::max(best, s);
        return best;
      };
      det_peak.emplace_back(k, peak(det.report.states_per_step));
      nd_peak.emplace_back(k, peak(nd.report.states_per_step));
    }
    double det_exp = growth_exponent(det_series);
    double nd_exp = growth_exponent(nd_series);
    std::ostringstream note;
    note << "total-size fits det=" << det_exp << " (window [2.6,3.4]), nondet=" << nd_exp
         << " (window [2.1,2.9]); the lower-order layers of the pruned programs flatten the"
            " small-k slope -- the same fit on peak states per pebbling step gives det="
         << growth_exponent(det_peak) << ", nondet=" << growth_exponent(nd_peak);
    detail = note.str();
    bool ok = det_exp >= 2.6 && det_exp <= 3.4;
    ok = ok && nd_exp >= 2.1 && nd_exp <= 2.9;
    return ok;
  }});

  criteria.push_back({10, "counting lower bounds: spot values and consistency",
                      [](std::string& detail) {
    BoundTable t = neciporuk_table(2, 3, 4);
    bool ok = expect(t.entries[2][1].exact && *t.entries[2][1].exact == Rational(16),
                     "nondet k-way BT at (2,3,4)", detail);
    ok &= expect(t.entries[0][0].exact && *t.entries[0][0].exact == Rational(16),
                 "det k-way FT at (2,3,4)", detail);
    for (auto [d, h, k] : {std::tuple{2, 2, 2}, {2, 2, 3}, {2, 3, 2}, {3, 2, 2}}) {
      try {
        ok &= expect(consistency_check(d, h, k).pass, "consistency", detail);
      } catch (const ConsistencyViolation& e) {
        ok = expect(false, e.what(), detail);
      }
    }
    return ok;
  }});

  criteria.push_back({11, "single-function reduction preserves node values and answers",
                      [](std::string& detail) {
    bool ok = true;
    for (uint64_t seed = 1; seed <= 50; ++seed) {
      TepInstance inst = random_instance(TreeShape(2, 3), 3, seed * 7919);
      HatInstance hat = to_single_function(inst);
      auto values = node_values(inst);
      auto hat_values = hat_node_values(hat);
      for (long long node = 1; node <= inst.shape.node_count(); ++node)
        ok &= expect(hat_values[node] == hat.encode_pair(node, values[node]),
                     "pair value at node " + std::to_string(node), detail);
      ok &= expect(hat_boolean(hat) == evaluate_boolean(inst), "boolean answers differ", detail);
    }
    return ok;
  }});

  criteria.push_back({12, "stack evaluator agrees with the recursive oracle",
                      [](std::string& detail) {
    bool ok = true;
    int runs = 0;
    for (uint64_t seed = 0; runs < 1000; ++seed) {
      for (int d : {2, 3}) {
        for (int h : {2, 3, 4}) {
          for (int k : {2, 3, 4}) {
            if (runs >= 1000) break;
            TepInstance inst = random_instance(TreeShape(d, h), k, seed * 131 + runs);
            ok &= expect(evaluate_function(inst) == recursive_value(inst, 1),
                         "divergence from the oracle", detail);
            ++runs;
          }
        }
      }
    }
    return ok;
  }});

  int failures = 0;
  for (auto& criterion : criteria) {
    auto start = Clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::ostringstream line;
    line.precision(1);
    line << std::fixed;
    line << (ok ? "PASS" : "FAIL") << "  criterion " << criterion.number << ": " << criterion.title
         << "  [" << secs << "s]";
    if (!detail.empty()) line << "  -- " << detail;
    std::cout << line.str() << std::endl;
    if (!ok) ++failures;
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
