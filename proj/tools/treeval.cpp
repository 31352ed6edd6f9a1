#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "treeval/bounds.hpp"
#include "treeval/compile.hpp"
#include "treeval/dag.hpp"
#include "treeval/lp.hpp"
#include "treeval/search.hpp"
#include "treeval/strategies.hpp"

using namespace treeval;

namespace {

int fail_usage(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

PebbleSequence strategy_by_name(const std::string& name, int d, int h) {
  if (name == "black") return strategy_black(d, h);
  if (name == "bw") return strategy_bw(d, h);
  if (name == "fractional") return strategy_fractional(d, h);
  if (name == "whiteslide-h4") return strategy_whiteslide_h4();
  throw std::invalid_argument("unknown strategy: " + name);
}

CompiledProgram compile_by_name(const std::string& name, int d, int h, int k,
                                const std::string& kind, int block) {
  ProblemKind pk = kind == "boolean" ? ProblemKind::Boolean : ProblemKind::Function;
  if (name == "black") return compile_black_det_default(d, h, k, pk);
  if (name == "fractional") return compile_fractional_nondet_default(d, h, k);
  if (name == "logsave") return compile_boolean_logsave(d, h, k, block);
  throw std::invalid_argument("unknown compiler: " + name);
}

nlohmann::json search_json(const SearchResult& result, const PebbleGraph& g) {
  nlohmann::json j;
  j["cost"] = result.cost.to_string();
  j["states_explored"] = result.states_explored;
  nlohmann::json witness = nlohmann::json::array();
  std::istringstream lines(moves_to_text(g, result.witness));
  std::string line;
  while (std::getline(lines, line)) witness.push_back(line);
  j["witness"] = witness;
  return j;
}

struct ReportGrid {
  int d = 2;
  int hmin = 2, hmax = 4;
  int kmin = 2, kmax = 8;
  std::string out_dir = "report";
  uint64_t max_states = 40000000;
};

int run_report(const ReportGrid& grid, const std::string& invocation) {
  std::filesystem::create_directories(grid.out_dir);
  std::ostringstream peb_csv, peb_md;
  peb_csv << "# " << invocation << "\n";
  peb_csv << "d,h,black_formula,black_search,bw_formula,bw_search,frac_strategy,frac_search_c2\n";
  peb_md << "# Pebbling numbers\n\ncommand: `" << invocation << "`\n\n";
  peb_md << "| d | h | black (formula / search) | bw (formula / search) | fractional "
            "(strategy / search at c=2) |\n|---|---|---|---|---|\n";
  for (int h = grid.hmin; h <= grid.hmax; ++h) {
    int d = grid.d;
    auto cell = [&](GameVariant variant, int c, const Rational& hint) -> std::string {
      SearchOptions opts;
      opts.max_states = grid.max_states;
      opts.upper_bound_hint = hint;
      try {
        return min_pebbles(TreeShape(d, h), variant, c, opts).cost.to_string();
      } catch (const PebbleError& e) {
        return std::string("cap-exceeded");
      }
    };
    std::string black_s = cell(GameVariant::Black, 1, black_cost_formula(d, h));
    std::string bw_s = cell(GameVariant::BlackWhite, 1, bw_cost_formula(d, h));
    std::string frac_s = cell(GameVariant::Fractional, 2, fractional_cost_formula(d, h));
    peb_csv << d << "," << h << "," << black_cost_formula(d, h).to_string() << "," << black_s
            << "," << bw_cost_formula(d, h).to_string() << "," << bw_s << ","
            << fractional_cost_formula(d, h).to_string() << "," << frac_s << "\n";
    peb_md << "| " << d << " | " << h << " | " << black_cost_formula(d, h).to_string() << " / "
           << black_s << " | " << bw_cost_formula(d, h).to_string() << " / " << bw_s << " | "
           << fractional_cost_formula(d, h).to_string() << " / " << frac_s << " |\n";
  }
  write_file(grid.out_dir + "/pebbling.csv", peb_csv.str());
  write_file(grid.out_dir + "/pebbling.md", peb_md.str());

  std::ostringstream exp_csv;
  exp_csv << "# " << invocation << "\n";
  exp_csv << "k,det_states,nondet_states\n";
  std::vector<std::pair<int, long long>> det_series, nd_series;
  for (int k = grid.kmin; k <= grid.kmax; ++k) {
    long long det = compile_black_det_default(grid.d, 3, k, ProblemKind::Function).bp.size();
    long long nd = compile_fractional_nondet_default(grid.d, 3, k).bp.size();
    det_series.emplace_back(k, det);
    nd_series.emplace_back(k, nd);
    exp_csv << k << "," << det << "," << nd << "\n";
  }
  exp_csv << "# fitted exponents: det=" << growth_exponent(det_series)
          << " nondet=" << growth_exponent(nd_series) << "\n";
  write_file(grid.out_dir + "/exponents.csv", exp_csv.str());

  BoundTable table = neciporuk_table(grid.d, 3, 4);
  write_file(grid.out_dir + "/neciporuk.md",
             "command: `" + invocation + "`\n\n" + table.to_markdown());
  write_file(grid.out_dir + "/neciporuk.csv", table.to_csv());
  std::cout << "report written to " << grid.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree evaluation, pebbling games, and branching program synthesis"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");
  // --h is a tree parameter here, so no -h shortcut anywhere
  auto subcommand = [](CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* cmd = parent->add_subcommand(name, desc);
    cmd->set_help_flag("--help", "print help");
    cmd->fallthrough();
    return cmd;
  };
  bool json_out = false;
  app.add_flag("--json", json_out, "machine-readable output");

  std::string invocation;
  for (int i = 0; i < argc; ++i) invocation += std::string(i ? " " : "") + argv[i];

  // eval
  auto* eval_cmd = subcommand(&app, "eval", "evaluate an instance file");
  std::string eval_path;
  bool eval_boolean = false;
  eval_cmd->add_option("--instance", eval_path, "instance JSON file")->required();
  eval_cmd->add_flag("--boolean", eval_boolean, "decide whether the root value is 1");

  // pebble find/verify/show
  auto* pebble_cmd = subcommand(&app, "pebble", "pebbling games on trees");
  pebble_cmd->require_subcommand(1);
  auto* pf = subcommand(pebble_cmd, "find", "exact minimum pebble search");
  int pf_d = 2, pf_h = 3, pf_c = 1;
  std::string pf_variant = "black";
  uint64_t pf_max_states = 40000000;
  std::string pf_cap = "64";
  bool pf_no_hint = false;
  pf->add_option("--d", pf_d, "degree");
  pf->add_option("--h", pf_h, "height (levels)");
  pf->add_option("--c", pf_c, "granularity: weights in multiples of 1/c");
  pf->add_option("--variant", pf_variant, "black | bw | fractional | fractional-ws");
  pf->add_option("--max-states", pf_max_states, "state cap per feasibility probe");
  pf->add_option("--budget-cap", pf_cap, "largest budget to try (rational)");
  pf->add_flag("--no-hint", pf_no_hint, "ignore the generated strategy upper bound");

  auto* pv = subcommand(pebble_cmd, "verify", "validate a move list file");
  std::string pv_seq;
  int pv_d = 2, pv_h = 3;
  std::string pv_variant = "fractional";
  std::string pv_dag;
  pv->add_option("--seq", pv_seq, "move list file")->required();
  pv->add_option("--d", pv_d, "degree");
  pv->add_option("--h", pv_h, "height");
  pv->add_option("--dag", pv_dag, "edge-list DAG file instead of a tree");
  pv->add_option("--variant", pv_variant, "game variant");

  auto* ps = subcommand(pebble_cmd, "show", "print a generated strategy");
  std::string ps_strategy = "black";
  int ps_d = 2, ps_h = 3;
  ps->add_option("--strategy", ps_strategy, "black | bw | fractional | whiteslide-h4");
  ps->add_option("--d", ps_d, "degree");
  ps->add_option("--h", ps_h, "height");

  // search (DAG targets)
  auto* search_cmd = subcommand(&app, "search", "minimum pebbles for an edge-list DAG");
  std::string sd_dag;
  std::string sd_variant = "black";
  int sd_c = 1;
  uint64_t sd_max_states = 40000000;
  std::string sd_cap = "64";
  search_cmd->add_option("--dag", sd_dag, "edge-list DAG file")->required();
  search_cmd->add_option("--variant", sd_variant, "game variant");
  search_cmd->add_option("--c", sd_c, "granularity");
  search_cmd->add_option("--max-states", sd_max_states, "state cap per probe");
  search_cmd->add_option("--budget-cap", sd_cap, "largest budget to try");

  // compile
  auto* compile_cmd = subcommand(&app, "compile", "pebbling strategy to branching program");
  std::string cc_compiler = "black", cc_kind = "function", cc_out, cc_dot;
  int cc_d = 2, cc_h = 3, cc_k = 2, cc_m = 0;
  compile_cmd->add_option("--compiler", cc_compiler, "black | fractional | logsave");
  compile_cmd->add_option("--d", cc_d, "degree");
  compile_cmd->add_option("--h", cc_h, "height");
  compile_cmd->add_option("--k", cc_k, "alphabet size");
  compile_cmd->add_option("--kind", cc_kind, "function | boolean (black compiler)");
  compile_cmd->add_option("--m", cc_m, "logsave block size (0 = default)");
  compile_cmd->add_option("--out", cc_out, "write the program as JSON");
  compile_cmd->add_option("--dot", cc_dot, "write the program as DOT");

  // verify / thrifty
  auto add_check_options = [&](CLI::App* cmd, std::string& compiler, int& d, int& h, int& k,
                               std::string& kind, int& m, std::string& mode, long long& samples,
                               uint64_t& seed, std::string& cap, std::string& bp_path) {
    cmd->add_option("--compiler", compiler, "black | fractional | logsave");
    cmd->add_option("--d", d, "degree");
    cmd->add_option("--h", h, "height");
    cmd->add_option("--k", k, "alphabet size");
    cmd->add_option("--kind", kind, "function | boolean");
    cmd->add_option("--m", m, "logsave block size");
    cmd->add_option("--mode", mode, "exhaustive | sampled");
    cmd->add_option("--samples", samples, "sample count for sampled mode");
    cmd->add_option("--seed", seed, "sample seed");
    cmd->add_option("--cap", cap, "max inputs for exhaustive mode");
    cmd->add_option("--bp", bp_path, "check a program from a JSON file instead");
  };
  auto* verify_cmd = subcommand(&app, "verify", "check a compiled program against the evaluator");
  std::string vc_compiler = "black", vc_kind = "function", vc_mode = "exhaustive", vc_bp;
  int vc_d = 2, vc_h = 2, vc_k = 2, vc_m = 0;
  long long vc_samples = 10000;
  uint64_t vc_seed = 1;
  std::string vc_cap = "100000000";
  add_check_options(verify_cmd, vc_compiler, vc_d, vc_h, vc_k, vc_kind, vc_m, vc_mode, vc_samples,
                    vc_seed, vc_cap, vc_bp);

  auto* thrifty_cmd = subcommand(&app, "thrifty", "check the thrifty property");
  std::string tc_compiler = "black", tc_kind = "function", tc_mode = "exhaustive", tc_bp;
  int tc_d = 2, tc_h = 2, tc_k = 2, tc_m = 0;
  long long tc_samples = 10000;
  uint64_t tc_seed = 1;
  std::string tc_cap = "100000000";
  add_check_options(thrifty_cmd, tc_compiler, tc_d, tc_h, tc_k, tc_kind, tc_m, tc_mode, tc_samples,
                    tc_seed, tc_cap, tc_bp);

  // report
  auto* report_cmd = subcommand(&app, "report", "write reproduction tables");
  ReportGrid grid;
  report_cmd->add_option("--d", grid.d, "degree");
  report_cmd->add_option("--hmin", grid.hmin, "smallest height");
  report_cmd->add_option("--hmax", grid.hmax, "largest height");
  report_cmd->add_option("--kmin", grid.kmin, "smallest k");
  report_cmd->add_option("--kmax", grid.kmax, "largest k");
  report_cmd->add_option("--out", grid.out_dir, "output directory");
  report_cmd->add_option("--max-states", grid.max_states, "search state cap per cell");

  // export-dot
  auto* dot_cmd = subcommand(&app, "export-dot", "write a stored program as DOT");
  std::string xd_bp, xd_out;
  dot_cmd->add_option("--bp", xd_bp, "program JSON file")->required();
  dot_cmd->add_option("--out", xd_out, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval_cmd) {
      TepInstance inst = instance_from_json(read_file(eval_path));
      int value = evaluate_function(inst);
      if (json_out) {
        nlohmann::json j;
        j["value"] = value;
        if (eval_boolean) j["boolean"] = value == 1;
        std::cout << j.dump() << "\n";
      } else if (eval_boolean) {
        std::cout << (value == 1 ? "true" : "false") << "\n";
      } else {
        std::cout << value << "\n";
      }
      return 0;
    }
    if (*pf) {
      SearchOptions opts;
      opts.max_states = pf_max_states;
      opts.budget_cap = Rational::from_string(pf_cap);
      GameVariant variant = variant_from_name(pf_variant);
      if (!pf_no_hint) {
        if (variant == GameVariant::Black)
          opts.upper_bound_hint = black_cost_formula(pf_d, pf_h);
        else if (variant == GameVariant::BlackWhite)
          opts.upper_bound_hint = bw_cost_formula(pf_d, pf_h);
        else
          opts.upper_bound_hint = fractional_cost_formula(pf_d, pf_h);
      }
      SearchResult result = min_pebbles(TreeShape(pf_d, pf_h), variant, pf_c, opts);
      PebbleGraph g = graph_from_tree(TreeShape(pf_d, pf_h));
      if (json_out) {
        std::cout << search_json(result, g).dump(2) << "\n";
      } else {
        std::cout << "cost " << result.cost.to_string() << " (states explored "
                  << result.states_explored << ")\n"
                  << moves_to_text(g, result.witness);
      }
      return 0;
    }
    if (*pv) {
      PebbleGraph g = pv_dag.empty() ? graph_from_tree(TreeShape(pv_d, pv_h))
                                     : dag_from_text(read_file(pv_dag));
      std::vector<PebbleMove> moves = moves_from_text(g, read_file(pv_seq));
      try {
        Rational cost = validate_sequence(g, moves, variant_from_name(pv_variant));
        std::cout << "valid, cost " << cost.to_string() << "\n";
        return 0;
      } catch (const PebbleError& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return 1;
      }
    }
    if (*ps) {
      PebbleSequence seq = strategy_by_name(ps_strategy, ps_d, ps_h);
      GameVariant variant = ps_strategy == "black"        ? GameVariant::Black
                            : ps_strategy == "bw"         ? GameVariant::BlackWhite
                            : ps_strategy == "fractional" ? GameVariant::Fractional
                                                          : GameVariant::FractionalWhiteSlide;
      Rational cost = validate_sequence(seq, variant);
      std::cout << "# cost " << cost.to_string() << "\n" << moves_to_text(seq.graph, seq.moves);
      return 0;
    }
    if (*search_cmd) {
      PebbleGraph g = dag_from_text(read_file(sd_dag));
      SearchOptions opts;
      opts.max_states = sd_max_states;
      opts.budget_cap = Rational::from_string(sd_cap);
      SearchResult result = min_pebbles(g, variant_from_name(sd_variant), sd_c, opts);
      if (json_out)
        std::cout << search_json(result, g).dump(2) << "\n";
      else
        std::cout << "cost " << result.cost.to_string() << " (states explored "
                  << result.states_explored << ")\n"
                  << moves_to_text(g, result.witness);
      return 0;
    }
    if (*compile_cmd) {
      CompiledProgram prog = compile_by_name(cc_compiler, cc_d, cc_h, cc_k, cc_kind, cc_m);
      if (!cc_out.empty()) write_file(cc_out, bp_to_json(prog.bp));
      if (!cc_dot.empty()) write_file(cc_dot, export_dot(prog.bp));
      std::cout << prog.report.to_json() << "\n";
      return 0;
    }
    if (*verify_cmd || *thrifty_cmd) {
      bool is_verify = static_cast<bool>(*verify_cmd);
      const std::string& compiler = is_verify ? vc_compiler : tc_compiler;
      const std::string& kind = is_verify ? vc_kind : tc_kind;
      const std::string& mode_name = is_verify ? vc_mode : tc_mode;
      const std::string& bp_path = is_verify ? vc_bp : tc_bp;
      int d = is_verify ? vc_d : tc_d, h = is_verify ? vc_h : tc_h, k = is_verify ? vc_k : tc_k;
      int m = is_verify ? vc_m : tc_m;
      BranchingProgram bp = bp_path.empty()
                                ? compile_by_name(compiler, d, h, k, kind, m).bp
                                : bp_from_json(read_file(bp_path));
      CheckMode mode;
      if (mode_name == "sampled") {
        mode = CheckMode::Sampled(is_verify ? vc_samples : tc_samples,
                                  is_verify ? vc_seed : tc_seed);
      } else if (mode_name == "exhaustive") {
        mode = CheckMode::Exhaustive();
        mode.cap = BigInt::from_string(is_verify ? vc_cap : tc_cap);
      } else {
        return fail_usage("unknown mode: " + mode_name);
      }
      ProblemKind pk;
      if (!bp_path.empty()) {
        // Boolean programs carry a 0-labeled final; --kind overrides.
        bool has_zero_final = false;
        for (int label : bp.finals) has_zero_final = has_zero_final || label == 0;
        pk = has_zero_final ? ProblemKind::Boolean : ProblemKind::Function;
        if ((is_verify ? verify_cmd : thrifty_cmd)->count("--kind"))
          pk = kind == "boolean" ? ProblemKind::Boolean : ProblemKind::Function;
      } else {
        pk = (compiler == "black" && kind == "function") ? ProblemKind::Function
                                                         : ProblemKind::Boolean;
      }
      CheckReport report = is_verify ? check_correct(bp, pk, mode) : check_thrifty(bp, mode);
      if (report.pass) {
        std::cout << report.inputs_checked << "/" << report.inputs_checked << " inputs OK\n";
        return 0;
      }
      std::cout << "FAIL after " << report.inputs_checked << " inputs: " << report.detail
                << "\ncounterexample:\n"
                << instance_to_json(*report.counterexample) << "\n";
      return 1;
    }
    if (*report_cmd) return run_report(grid, invocation);
    if (*dot_cmd) {
      std::string dot = export_dot(bp_from_json(read_file(xd_bp)));
      if (xd_out.empty())
        std::cout << dot;
      else
        write_file(xd_out, dot);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    return fail_usage(e.what());
  } catch (const PebbleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return fail_usage("no subcommand");
}
