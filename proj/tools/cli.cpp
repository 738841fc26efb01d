#include "cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "topomap/error.hpp"
#include "topomap/graph.hpp"
#include "topomap/interpret.hpp"
#include "topomap/partition.hpp"
#include "topomap/qubo.hpp"
#include "topomap/report.hpp"
#include "topomap/solve.hpp"
#include "topomap/woa.hpp"

namespace topomap::cli {

namespace {

namespace fs = std::filesystem;

// Carries an exit code up to `run`.
struct Failure : std::runtime_error {
  int code;
  Failure(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

struct Options {
  std::string tcg, circuit, arc, mode;
  std::string granularity = "off";
  std::string solver = "tabu";
  std::string external_cmd;
  double comp_scale = 1.0;
  double comm_scale = 1.0;
  double pref = 1.0;
  std::optional<std::uint64_t> seed;
  std::optional<long> time_budget_ms;
  std::size_t restarts = 4;
  std::size_t threads = 1;
  std::string out;
  std::string format = "json";
  bool deterministic = false;

  std::string export_as = "qubo";
  bool normalize = false;
  std::string qubo;
  std::string solution;

  double s_spread = 2.0;
  double s_reduction = 0.9;
  double pref_initial = 0.05;
  std::string metric = "fidelity_total";
  bool refine = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(kInput, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  o << text;
  if (!o) throw Failure(kInput, "cannot write '" + path + "'");
}

struct Problem {
  TaskGraph graph;
  Architecture arch;
};

Problem load(const Options& o) {
  const bool tcg = !o.tcg.empty(), circuit = !o.circuit.empty();
  if (tcg == circuit) throw Failure(kUsage, "give exactly one of --tcg or --circuit");
  if (o.arc.empty()) throw Failure(kUsage, "--arc is required");
  if (!o.mode.empty() && (o.mode == "quantum") != circuit)
    throw Failure(kUsage, "--mode " + o.mode + " does not match the input file type");
  auto graph = tcg ? parse_tcg(read_file(o.tcg)) : parse_circuit(read_file(o.circuit));
  auto arch = parse_arch(read_file(o.arc));
  if ((arch.kind() == ArchKind::quantum) != circuit)
    throw Failure(kUsage, circuit ? "a circuit needs a qubit architecture (.arcq)"
                                  : "a task graph needs a mesh architecture");
  return {std::move(graph), std::move(arch)};
}

WeightConfig weights(const Options& o) {
  WeightConfig w;
  w.comp_scale = o.comp_scale;
  w.comm_scale = o.comm_scale;
  w.pref = o.pref;
  return w;
}

std::size_t granularity(const Options& o) {
  if (o.granularity == "off") return 0;
  std::size_t g = 0;
  auto [p, ec] = std::from_chars(o.granularity.data(), o.granularity.data() + o.granularity.size(), g);
  if (ec != std::errc{} || p != o.granularity.data() + o.granularity.size() || g == 0)
    throw Failure(kUsage, "--granularity takes a positive integer or 'off'");
  return g;
}

std::uint64_t seed(const Options& o) {
  if (o.seed) return *o.seed;
  const char* env = std::getenv("TIGER_SEED");
  if (!env || !*env) return 0;
  std::string_view s(env);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw Failure(kUsage, "TIGER_SEED must be a non-negative integer");
  return v;
}

SolverParams solver_params(const Options& o) {
  SolverParams p;
  if (o.time_budget_ms) {
    if (*o.time_budget_ms < 0) throw Failure(kUsage, "--time-budget-ms must not be negative");
    p.time_budget = std::chrono::milliseconds(*o.time_budget_ms);
  } else if (o.deterministic) {
    // A wall-clock cut-off would make the result depend on machine load.
    p.time_budget = std::chrono::hours(24);
  }
  p.seed = seed(o);
  p.restarts = o.restarts;
  p.threads = o.threads;
  return p;
}

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// Scratch directory for the external solver round trip.
struct ScratchDir {
  fs::path path;
  ScratchDir() {
    path = fs::temp_directory_path() / ("topomap-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

SolverFn external_solver(const std::string& cmd, std::shared_ptr<ScratchDir> dir,
                         std::uint64_t seed) {
  auto counter = std::make_shared<std::size_t>(0);
  return [cmd, dir, counter, seed](const QuboProblem& q) {
    const std::string stem = "sub" + std::to_string((*counter)++);
    const std::string in = (dir->path / (stem + ".qubo")).string();
    const std::string out = (dir->path / (stem + ".sol")).string();
    write_file(in, export_qubo(q));
    const std::string line = cmd + " " + shell_quote(in) + " " + shell_quote(out);
    int rc = std::system(line.c_str());
    if (rc != 0)
      throw Failure(kSolver, "external solver failed (status " + std::to_string(rc) + ")");
    std::string text;
    try {
      text = read_file(out);
    } catch (const Failure&) {
      throw Failure(kSolver, "external solver wrote no solution");
    }
    try {
      Solution imported = import_solution(text, q);
      Solution s(q, imported.bits(), "external", seed);
      s.warnings = imported.warnings;
      return s;
    } catch (const Error& e) {
      throw Failure(kSolver, std::string("external solution rejected: ") + e.what());
    }
  };
}

SolverFn solver_for(const Options& o, std::shared_ptr<ScratchDir>& scratch) {
  SolverParams p = solver_params(o);
  if (o.solver == "external") {
    if (o.external_cmd.empty()) throw Failure(kUsage, "--solver external needs --external-cmd");
    scratch = std::make_shared<ScratchDir>();
    return external_solver(o.external_cmd, scratch, p.seed);
  }
  return make_solver(parse_engine(o.solver), p);
}

Json header(const std::string& command, const Options& o, const Problem& p) {
  Json j = {{"tool", "topomap"},
            {"command", command},
            {"mode", std::string(to_string(p.graph.flavor()))},
            {"tasks", p.graph.size()},
            {"edges", p.graph.edges().size()},
            {"units", p.arch.unit_count()}};
  if (command != "map" && command != "eval") {
    j["solver"] = o.solver;
    j["seed"] = seed(o);
  }
  j["granularity"] = granularity(o);
  j["weights"] = {{"comp_scale", o.comp_scale}, {"comm_scale", o.comm_scale}, {"pref", o.pref}};
  return j;
}

std::string fmt_num(const Json& v) {
  if (v.is_null()) return "-inf";
  std::ostringstream os;
  os << v.get<double>();
  return os.str();
}

// Human-readable summary; the JSON form is the machine interface.
std::string render_text(const Json& j) {
  std::ostringstream os;
  os << "topomap " << j.value("command", "") << " (" << j.value("mode", "") << ")\n";
  if (j.contains("pref_best")) {
    os << "pref_best " << fmt_num(j["pref_best"]) << "\n";
    os << "metric_best " << fmt_num(j["metric_best"]) << " (initial "
       << fmt_num(j["metric_initial"]) << ")\n";
    if (j.contains("n_swaps")) os << "n_swaps " << j["n_swaps"].get<long>() << "\n";
    if (j.contains("fidelity_total"))
      os << "fidelity_total " << fmt_num(j["fidelity_total"]) << "\n";
    os << "evaluations " << j["evaluations"].get<std::size_t>() << "\n";
    for (const auto& s : j["trace"])
      os << "  iter " << s["pass"].get<std::size_t>() << "." << s["iteration"].get<std::size_t>()
         << " spread " << fmt_num(s["spread"]) << " left " << fmt_num(s["pref_left"]) << ":"
         << fmt_num(s["metric_left"]) << " right " << fmt_num(s["pref_right"]) << ":"
         << fmt_num(s["metric_right"]) << " best " << fmt_num(s["pref_best"]) << "\n";
    return os.str();
  }
  if (j.contains("placement")) {
    os << "placement";
    for (const auto& row : j["placement"])
      os << ' ' << row["task"].get<int>() << "->" << row["unit"].get<int>();
    os << "\n";
  }
  if (j.contains("cost")) {
    const auto& c = j["cost"];
    os << "cost computation " << fmt_num(c["computation"]) << " communication "
       << fmt_num(c["communication"]) << " total " << fmt_num(c["total"]) << "\n";
  }
  if (j.contains("fidelity")) {
    const auto& f = j["fidelity"];
    os << "fidelity mapping " << fmt_num(f["fidelity_mapping"]) << " swaps "
       << f["n_swaps"].get<long>() << " movement " << fmt_num(f["fidelity_movement"])
       << " total " << fmt_num(f["fidelity_total"]) << "\n";
  }
  if (j.contains("sub_qubos"))
    os << "sub-QUBOs " << j["sub_qubos"].get<std::size_t>() << ", vars "
       << j["vars_total"].get<std::size_t>() << ", couplers "
       << j["couplers_total"].get<std::size_t>() << "\n";
  if (j.contains("violations")) {
    os << "violations " << j["violations"].size() << "\n";
    for (const auto& v : j["violations"]) os << "  " << v.dump() << "\n";
  }
  if (j.contains("files"))
    for (const auto& f : j["files"]) os << "wrote " << f.get<std::string>() << "\n";
  return os.str();
}

void emit(const Json& j, const Options& o, std::ostream& out) {
  std::string text = o.format == "text" ? render_text(j) : j.dump(2) + "\n";
  if (o.out.empty())
    out << text;
  else
    write_file(o.out, text);
}

int cmd_map(const Options& o, std::ostream& out) {
  Problem p = load(o);
  const auto schedule = compute_levels(p.graph, p.arch);
  const auto w = weights(o);
  const auto subs = partition_levels(p.graph, schedule, granularity(o));
  QuboProblem q = subs.empty()
                      ? build_level_range_qubo(p.graph, p.arch, schedule, w, 0, 0)
                      : build_subqubo(subs[0], {}, p.graph, p.arch, schedule, w);
  if (o.normalize) q = normalize_for_hardware(q);
  const bool partitioned = subs.size() > 1;
  const bool want_qubo = o.export_as != "qmasm", want_qmasm = o.export_as != "qubo";

  if (o.out.empty()) {
    if (partitioned || (want_qubo && want_qmasm))
      throw Failure(kUsage, "--out is required when more than one file is written");
    out << (want_qubo ? export_qubo(q) : export_qmasm(q));
    return kOk;
  }
  const std::string base = o.out + (partitioned ? ".sub0" : "");
  Json files = Json::array();
  if (want_qubo) {
    write_file(base + ".qubo", export_qubo(q));
    files.push_back(base + ".qubo");
  }
  if (want_qmasm) {
    write_file(base + ".qmasm", export_qmasm(q));
    files.push_back(base + ".qmasm");
  }
  Json summary = header("map", o, p);
  summary["levels"] = schedule.level_count();
  summary["sub_qubos"] = subs.size();
  summary["vars"] = q.n_vars();
  summary["couplers"] = q.couplers.size();
  if (partitioned) {
    // Later groups depend on solved predecessors, so only the first is emitted.
    Json manifest = {{"granularity", granularity(o)},
                     {"levels", schedule.level_count()},
                     {"sub_qubos", subs.size()}};
    Json rows = Json::array();
    for (std::size_t k = 0; k < subs.size(); ++k) {
      rows.push_back({{"index", k},
                      {"levels", {subs[k].first_level, subs[k].last_level}},
                      {"tasks", subs[k].tasks},
                      {"incoming_cut", subs[k].incoming.size()},
                      {"outgoing_cut", subs[k].outgoing.size()},
                      {"status", k == 0 ? "emitted" : "pending"}});
      if (k == 0) rows.back()["files"] = files;
    }
    manifest["subs"] = rows;
    const std::string path = o.out + ".manifest.json";
    write_file(path, manifest.dump(2) + "\n");
    files.push_back(path);
  }
  summary["files"] = files;
  out << (o.format == "text" ? render_text(summary) : summary.dump(2) + "\n");
  return kOk;
}

int cmd_solve(const Options& o, std::ostream& out) {
  if (o.qubo.empty()) throw Failure(kUsage, "--qubo is required");
  QuboProblem q = parse_qubo(read_file(o.qubo));
  std::shared_ptr<ScratchDir> scratch;
  SolverFn solve = solver_for(o, scratch);
  Solution s = q.n_vars() ? solve(q) : Solution(q, {}, o.solver);
  const std::string text = export_solution(s);
  if (o.out.empty()) {
    out << text;
    return kOk;
  }
  write_file(o.out, text);
  Json j = {{"tool", "topomap"},
            {"command", "solve"},
            {"solver", o.solver},
            {"seed", s.seed()},
            {"vars", q.n_vars()},
            {"energy", s.energy()},
            {"cost", s.energy() + q.offset},
            {"bits", text.substr(0, text.find('\n'))},
            {"samples", s.samples_evaluated},
            {"truncated", s.truncated},
            {"warnings", s.warnings},
            {"files", Json::array({o.out})}};
  if (!o.deterministic)
    j["timing_ms"] = {{"solve", std::chrono::duration<double, std::milli>(s.elapsed).count()}};
  out << (o.format == "text" ? render_text(j) : j.dump(2) + "\n");
  return kOk;
}

int cmd_run(const Options& o, std::ostream& out) {
  Problem p = load(o);
  std::shared_ptr<ScratchDir> scratch;
  SolverFn solve = solver_for(o, scratch);
  auto r = run_pipeline(p.graph, p.arch, weights(o), solve, granularity(o));
  Json j = header("run", o, p);
  j.update(to_json(r, !o.deterministic));
  emit(j, o, out);
  return r.assignment.valid() ? kOk : kInvalid;
}

int cmd_eval(const Options& o, std::ostream& out) {
  if (o.solution.empty()) throw Failure(kUsage, "--solution is required");
  if (o.granularity != "off")
    throw Failure(kUsage, "eval scores the unpartitioned problem; drop --granularity");
  Problem p = load(o);
  const auto schedule = compute_levels(p.graph, p.arch);
  const auto w = weights(o);
  QuboProblem q = build_level_range_qubo(p.graph, p.arch, schedule, w, 0,
                                         schedule.level_count() ? schedule.level_count() - 1 : 0);
  Solution s = import_solution(read_file(o.solution), q);

  PipelineResult r;
  r.schedule = schedule;
  r.assignment = decode(q, s.bits(), p.graph, p.arch, schedule);
  if (r.assignment.valid()) {
    r.assignment = make_assignment(r.assignment.placement, p.graph, p.arch, schedule);
    if (p.graph.flavor() == Flavor::classical)
      r.cost = mtom_classical(r.assignment, p.graph, p.arch);
    else
      r.fidelity = mtom_quantum(r.assignment, p.graph, p.arch);
  }
  SubTrace t;
  t.first_level = 0;
  t.last_level = schedule.level_count() ? schedule.level_count() - 1 : 0;
  t.vars = q.n_vars();
  t.couplers = q.couplers.size();
  t.energy = s.energy();
  t.engine = "import";
  r.trace.push_back(t);
  r.bits.push_back(s.bits());
  r.warnings = s.warnings;

  Json j = header("eval", o, p);
  j.update(to_json(r, false));
  emit(j, o, out);
  return r.assignment.valid() ? kOk : kInvalid;
}

int cmd_woa(const Options& o, std::ostream& out) {
  if (!o.tcg.empty() || o.mode == "classical")
    throw Failure(kUsage, "woa works on circuits only (--circuit with a qubit architecture)");
  Problem p = load(o);
  WoaConfig cfg;
  cfg.s_spread = o.s_spread;
  cfg.s_reduction = o.s_reduction;
  cfg.pref_initial = o.pref_initial;
  cfg.metric = parse_woa_metric(o.metric);
  cfg.refine_pass = o.refine;
  cfg.weights = weights(o);
  cfg.granularity = granularity(o);
  std::shared_ptr<ScratchDir> scratch;
  SolverFn solve = solver_for(o, scratch);
  auto r = optimize_pref(p.graph, p.arch, cfg, solve);
  Json j = header("woa", o, p);
  j.erase("weights");
  j["metric"] = o.metric;
  j["s_spread"] = cfg.s_spread;
  j["s_reduction"] = cfg.s_reduction;
  j["pref_initial"] = cfg.pref_initial;
  j["refine_pass"] = cfg.refine_pass;
  j.update(to_json(r));
  emit(j, o, out);
  return kOk;
}

void add_inputs(CLI::App* c, Options& o) {
  c->add_option("--tcg", o.tcg, "Task communication graph file");
  c->add_option("--circuit", o.circuit, "Quantum circuit file");
  c->add_option("--arc", o.arc, "Architecture file (mesh or qubits)");
  c->add_option("--mode", o.mode, "classical or quantum (inferred from inputs)")
      ->check(CLI::IsMember({"classical", "quantum"}));
  c->add_option("--granularity", o.granularity, "Levels per sub-QUBO, or 'off'");
}

void add_weights(CLI::App* c, Options& o) {
  c->add_option("--comp-scale", o.comp_scale, "Computation cost scale");
  c->add_option("--comm-scale", o.comm_scale, "Communication cost scale");
}

void add_solver(CLI::App* c, Options& o) {
  c->add_option("--solver", o.solver, "exact, tabu, anneal or external")
      ->check(CLI::IsMember({"exact", "tabu", "anneal", "sa", "external"}));
  c->add_option("--external-cmd", o.external_cmd,
                "Command run as '<cmd> <in.qubo> <out.sol>' for --solver external");
  c->add_option("--seed", o.seed, "Solver seed (falls back to TIGER_SEED, then 0)");
  c->add_option("--time-budget-ms", o.time_budget_ms, "Wall-clock budget per solve");
  c->add_option("--restarts", o.restarts, "Independent restarts for tabu / anneal")
      ->check(CLI::PositiveNumber);
  c->add_option("--threads", o.threads, "Restart worker threads (0 = all cores)");
}

void add_output(CLI::App* c, Options& o) {
  c->add_option("--out", o.out, "Output path (default stdout)");
  c->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  c->add_flag("--deterministic", o.deterministic, "Omit wall-clock fields from reports");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Topology-aware task and qubit mapping via QUBO", "topomap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "topomap 0.1.0");

  auto* map = app.add_subcommand("map", "Write the (first) QUBO as .qubo and/or qmasm");
  add_inputs(map, o);
  add_weights(map, o);
  map->add_option("--pref", o.pref, "Mapping-fidelity weight (quantum)");
  map->add_option("--export", o.export_as, "qubo, qmasm or both")
      ->check(CLI::IsMember({"qubo", "qmasm", "both"}));
  map->add_flag("--normalize", o.normalize, "Rescale into |h| <= 2, |J| <= 1");
  add_output(map, o);
  map->get_option("--out")->description("Output base path; extensions are appended");

  auto* solve = app.add_subcommand("solve", "Solve a .qubo file");
  solve->add_option("--qubo", o.qubo, "Input .qubo file");
  add_solver(solve, o);
  add_output(solve, o);

  auto* run = app.add_subcommand("run", "Map, solve, decode and score");
  add_inputs(run, o);
  add_weights(run, o);
  run->add_option("--pref", o.pref, "Mapping-fidelity weight (quantum)");
  add_solver(run, o);
  add_output(run, o);

  auto* woa = app.add_subcommand("woa", "Search the preference coefficient");
  add_inputs(woa, o);
  add_weights(woa, o);
  woa->add_option("--pref", o.pref_initial, "Initial preference coefficient");
  woa->add_option("--s-spread", o.s_spread, "Initial search spread (> 1)");
  woa->add_option("--s-reduction", o.s_reduction, "Spread reduction per iteration");
  woa->add_option("--metric", o.metric, "fidelity_total, fidelity_mapping or neg_n_swaps")
      ->check(CLI::IsMember({"fidelity_total", "fidelity_mapping", "neg_n_swaps"}));
  woa->add_flag("--refine", o.refine, "Repeat once with spread sqrt(s-spread)");
  add_solver(woa, o);
  add_output(woa, o);

  auto* eval = app.add_subcommand("eval", "Score an externally produced solution");
  add_inputs(eval, o);
  add_weights(eval, o);
  eval->add_option("--pref", o.pref, "Mapping-fidelity weight (quantum)");
  eval->add_option("--solution", o.solution, "Solution file: bit string, optional energy");
  add_output(eval, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (map->parsed()) return cmd_map(o, out);
    if (solve->parsed()) return cmd_solve(o, out);
    if (run->parsed()) return cmd_run(o, out);
    if (woa->parsed()) return cmd_woa(o, out);
    if (eval->parsed()) return cmd_eval(o, out);
  } catch (const Failure& e) {
    err << "topomap: " << e.what() << "\n";
    return e.code;
  } catch (const ConfigError& e) {
    err << "topomap: " << e.what() << "\n";
    return kUsage;
  } catch (const SizeError& e) {
    err << "topomap: solver: " << e.what() << "\n";
    return kSolver;
  } catch (const SolveQualityError& e) {
    err << "topomap: solver: " << e.what() << "\n";
    return kSolver;
  } catch (const InvalidAssignmentError& e) {
    err << "topomap: " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    err << "topomap: input: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    err << "topomap: internal error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}

}  // namespace topomap::cli
