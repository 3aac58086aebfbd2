// sspat: command-line front end for pattern algebra and strong structural
// system analysis.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sspat/json.hpp"
#include "sspat/sspat.hpp"

namespace {

using nlohmann::json;
using namespace sspat;

enum Exit : int { kHolds = 0, kFails = 1, kInconclusive = 2, kInputError = 3 };

struct Options {
  std::string json_path;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  double tol = 1e-9;
  std::string budget_grid;
  bool column = false;
  std::string leaders;
  std::string targets;
  std::vector<std::string> inputs;
};

struct Outcome {
  int code = kHolds;
  std::string text;
  json result;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PatternMatrix load_pattern(const std::string& path) {
  try {
    return parse_pattern(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<PatternMatrix> load_patterns(const Options& opt, std::size_t count) {
  if (opt.inputs.size() != count) {
    throw InputError("expected " + std::to_string(count) + " pattern files, got " +
                     std::to_string(opt.inputs.size()));
  }
  std::vector<PatternMatrix> out;
  for (const auto& p : opt.inputs) out.push_back(load_pattern(p));
  return out;
}

RefutationBudget make_budget(const Options& opt) {
  RefutationBudget budget;
  budget.seed = opt.seed;
  if (opt.budget_grid.empty()) return budget;
  budget.quest_values.clear();
  budget.star_values.clear();
  std::stringstream ss(opt.budget_grid);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Rational v;
    try {
      v = parse_rational(item);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("--budget-grid: ") + e.what());
    }
    budget.quest_values.push_back(v);
    if (v != 0) budget.star_values.push_back(v);
  }
  if (std::find(budget.quest_values.begin(), budget.quest_values.end(), Rational(0)) ==
      budget.quest_values.end())
    budget.quest_values.push_back(0);
  budget.validate();
  return budget;
}

std::string format_rational_matrix(const Matrix<Rational>& m, const std::string& indent) {
  std::vector<std::string> cells;
  std::size_t width = 1;
  for (const auto& x : m.data()) {
    cells.push_back(x.get_str());
    width = std::max(width, cells.back().size());
  }
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += indent;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& s = cells[r * m.cols() + c];
      out += (c ? " " : "") + std::string(width - s.size(), ' ') + s;
    }
    out += '\n';
  }
  return out;
}

std::string indent_pattern(const PatternMatrix& p, const std::string& indent) {
  std::string out;
  std::istringstream in(format_pattern(p));
  for (std::string line; std::getline(in, line);) out += indent + line + '\n';
  return out;
}

std::string format_pivots(const std::vector<Pivot>& pivots) {
  std::string s;
  for (const auto& pv : pivots) s += (s.empty() ? "" : " ") + ("(" + std::to_string(pv.row + 1) + "," + std::to_string(pv.col + 1) + ")");
  return s.empty() ? "(none)" : s;
}

std::string describe_verdict(const RankVerdict& v, const std::string& indent) {
  std::string out;
  if (v.full_rank) {
    out += indent + "pivots: " + format_pivots(v.pivots) + '\n';
    return out;
  }
  if (v.stall) out += indent + "stalled: " + v.stall->reason + '\n';
  if (v.witness) out += indent + "witness:\n" + format_rational_matrix(*v.witness, indent + "  ");
  return out;
}

std::string describe_report(const AnalysisReport& rep) {
  std::string out = std::string(to_string(rep.property)) + ": " + to_string(rep.verdict) + '\n';
  for (const auto& c : rep.conditions) {
    out += "  " + c.name + " (" + shape_string(c.rows, c.cols) + ", full " +
           (c.kind == RankKind::Row ? "row" : "column") + " rank): " +
           (c.verdict.full_rank ? "pass" : "fail") + '\n';
    out += describe_verdict(c.verdict, "    ");
  }
  if (rep.rank_conditions_hold) out += std::string("  rank conditions hold: ") + (*rep.rank_conditions_hold ? "yes" : "no") + '\n';
  if (!rep.notes.empty()) out += "  note: " + rep.notes + '\n';
  return out;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Holds: return kHolds;
    case Verdict::Fails: return kFails;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kInputError;
}

Outcome report_outcome(const AnalysisReport& rep) {
  return {verdict_code(rep.verdict), describe_report(rep), to_json(rep)};
}

Outcome run_binary(const Options& opt, bool multiply) {
  const auto ps = load_patterns(opt, 2);
  const PatternMatrix r = multiply ? pattern_mul(ps[0], ps[1]) : pattern_add(ps[0], ps[1]);
  return {kHolds, format_pattern(r), {{"pattern", pattern_to_json(r)}}};
}

Outcome run_rank(const Options& opt) {
  const auto p = load_patterns(opt, 1)[0];
  RankVerdict v = opt.column ? full_column_rank(p) : full_row_rank(p);
  if (!v.full_rank) {
    // Prefer the simplest member the grid search finds.
    const PatternMatrix q = opt.column ? transpose(p) : p;
    if (auto w = refute_full_rank(q, make_budget(opt))) v.witness = opt.column ? transpose(*w) : *w;
  }
  const std::string kind = opt.column ? "column" : "row";
  std::string text = "full " + kind + " rank: " + (v.full_rank ? "yes" : "no") + '\n';
  text += describe_verdict(v, "  ");
  json result = to_json(v);
  result["rank"] = kind;
  return {v.full_rank ? kHolds : kFails, text, result};
}

Outcome run_ssc(const Options& opt) {
  const auto ps = load_patterns(opt, 2);
  return report_outcome(check_ssc(ps[0], ps[1]));
}

Outcome run_descriptor(const Options& opt) {
  const auto ps = load_patterns(opt, 3);
  const StructuredDescriptorSystem sys{ps[0], ps[1], ps[2]};
  auto out = report_outcome(check_descriptor(sys));
  const double regular = sample_regularity(sys, opt.trials, opt.seed);
  out.text += "  sampled regular members: " + std::to_string(regular) + '\n';
  out.result["sampled_regular_fraction"] = regular;
  return out;
}

StructuredIOSystem load_io_system(const Options& opt) {
  const auto ps = load_patterns(opt, 4);
  StructuredIOSystem sys{ps[0], ps[1], ps[2], ps[3]};
  sys.validate();
  return sys;
}

Outcome run_iso(const Options& opt) {
  const auto sys = load_io_system(opt);
  const auto rep = check_iso(sys);
  auto out = report_outcome(rep);
  if (auto w = iso_witness(sys, rep)) {
    out.text += "  unobservable member at lambda = " + w->lambda.get_str() + ":\n";
    out.text += "    A =\n" + format_rational_matrix(w->a, "      ");
    out.text += "    B =\n" + format_rational_matrix(w->b, "      ");
    out.text += "    C =\n" + format_rational_matrix(w->c, "      ");
    out.text += "    D =\n" + format_rational_matrix(w->d, "      ");
    out.result["iso_witness"] = {{"lambda", w->lambda.get_str()},
                                 {"a", rational_matrix_to_json(w->a)},
                                 {"b", rational_matrix_to_json(w->b)},
                                 {"c", rational_matrix_to_json(w->c)},
                                 {"d", rational_matrix_to_json(w->d)}};
  }
  return out;
}

Outcome run_output_ctrl(const Options& opt) {
  return report_outcome(check_output_controllability(load_io_system(opt)));
}

Outcome run_target(const Options& opt) {
  if (opt.inputs.size() != 1) throw InputError("target expects one graph file");
  GraphParseResult g;
  try {
    g = parse_graph(read_file(opt.inputs[0]));
  } catch (const ParseError& e) {
    throw InputError(opt.inputs[0] + ": " + e.what());
  }
  if (opt.leaders.empty()) throw InputError("--leaders is required");
  if (opt.targets.empty()) throw InputError("--targets is required");
  const NetworkProblem prob{g.graph, parse_vertex_list(opt.leaders, g.graph.n),
                            parse_vertex_list(opt.targets, g.graph.n)};
  for (const auto& w : g.warnings) std::cerr << "warning: " << w << '\n';
  auto out = report_outcome(check_target_controllability(prob));
  out.result["warnings"] = g.warnings;
  return out;
}

Outcome run_oracle(const std::string& which, const Options& opt) {
  OracleResult r;
  if (which == "minkowski") {
    const auto ps = load_patterns(opt, 2);
    r = oracle_minkowski(ps[0], ps[1], opt.trials, opt.seed);
  } else if (which == "pencil") {
    const auto ps = load_patterns(opt, 2);
    r = oracle_pencil(ps[0], ps[1], opt.trials, opt.seed, 20, opt.tol);
  } else {
    const auto ps = load_patterns(opt, 1);
    r = oracle_rank(ps[0], opt.trials, opt.seed);
  }
  std::string text = r.property + ": " + r.detail + '\n';
  if (r.counterexample) text += "  counterexample: " + *r.counterexample + '\n';
  return {r.ok() ? kHolds : kFails, text, to_json(r)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong structural analysis of {0,*,?} pattern matrices"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;

  app.add_option("--json", opt.json_path, "Write a JSON report to PATH");
  app.add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  app.add_option("--trials", opt.trials, "Sampling trials")->capture_default_str();
  app.add_option("--tol", opt.tol, "Relative rank tolerance for floating checks")->capture_default_str();
  app.add_option("--budget-grid", opt.budget_grid, "Comma list of grid values for the witness search");

  auto files = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("files", opt.inputs, what)->required()->check(CLI::ExistingFile);
  };
  std::string command;
  auto add_sub = [&](const std::string& name, const std::string& desc, const std::string& what) {
    auto* sub = app.add_subcommand(name, desc);
    files(sub, what);
    sub->callback([&command, name]() { command = name; });
    return sub;
  };

  add_sub("add", "Pattern sum", "A B");
  add_sub("mul", "Pattern product", "A B");
  add_sub("rank", "Strong full rank of a pattern", "A")
      ->add_flag("--column", opt.column, "Test full column rank instead of row rank");
  add_sub("ssc", "Strong structural controllability of (A, B)", "A B");
  add_sub("descriptor", "Rank conditions for the descriptor system (E, A, B)", "E A B");
  add_sub("iso", "Strong structural input-state observability of (A, B, C, D)", "A B C D");
  add_sub("output-ctrl", "Strong structural output controllability of (A, B, C, D)", "A B C D");
  auto* target = add_sub("target", "Target controllability of a leader-follower network", "GRAPH");
  target->add_option("--leaders", opt.leaders, "Leader vertices, e.g. 1,2")->required();
  target->add_option("--targets", opt.targets, "Target vertices, e.g. 1-7")->required();

  auto* oracle = app.add_subcommand("oracle", "Sampling cross-checks");
  oracle->require_subcommand(1);
  oracle->fallthrough();
  std::string oracle_kind;
  for (const auto& [name, what] : {std::pair{"minkowski", "A B"}, {"pencil", "A B"}, {"rank", "A"}}) {
    auto* sub = oracle->add_subcommand(name, std::string("Oracle: ") + name);
    sub->fallthrough();
    files(sub, what);
    sub->callback([&, n = std::string(name)]() {
      command = "oracle";
      oracle_kind = n;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (command == "add" || command == "mul") out = run_binary(opt, command == "mul");
    else if (command == "rank") out = run_rank(opt);
    else if (command == "ssc") out = run_ssc(opt);
    else if (command == "descriptor") out = run_descriptor(opt);
    else if (command == "iso") out = run_iso(opt);
    else if (command == "output-ctrl") out = run_output_ctrl(opt);
    else if (command == "target") out = run_target(opt);
    else out = run_oracle(oracle_kind, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  std::cout << out.text;
  if (!opt.json_path.empty()) {
    json cmd{{"subcommand", command}, {"inputs", opt.inputs}, {"seed", opt.seed},
             {"trials", opt.trials}, {"tol", opt.tol}};
    if (command == "oracle") cmd["oracle"] = oracle_kind;
    if (command == "rank") cmd["column"] = opt.column;
    if (command == "target") {
      cmd["leaders"] = opt.leaders;
      cmd["targets"] = opt.targets;
    }
    if (!opt.budget_grid.empty()) cmd["budget_grid"] = opt.budget_grid;
    const json report{{"schema_version", kJsonSchemaVersion},
                      {"command", cmd},
                      {"exit_code", out.code},
                      {"result", out.result},
                      {"timing", {{"elapsed_ms", elapsed}}}};
    std::ofstream f(opt.json_path);
    if (!f) {
      std::cerr << "error: cannot write '" << opt.json_path << "'\n";
      return kInputError;
    }
    f << report.dump(2) << '\n';
  }
  return out.code;
}
