// myopic: run closest-neighbor swarms, verify certificates, render scenarios.
//
// Exit codes: 0 success, 1 certificate violation, 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "myopic/analysis.hpp"
#include "myopic/errors.hpp"
#include "myopic/io.hpp"
#include "myopic/seb_oracle.hpp"
#include "myopic/verify.hpp"

namespace fs = std::filesystem;
using namespace myopic;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct RunFlags {
  std::string manifest;
  std::string scenario;
  std::string config;
  std::string algo;
  std::string tie;
  std::string ortho;
  std::string script;
  std::optional<std::size_t> steps;
  std::optional<double> eps_tie;
  std::optional<double> eps_gather;
  std::string out_dir;
  std::string trace;
  std::string metrics;
  std::string summary;
  bool check = false;
  bool no_fixpoint = false;
};

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
}

Json load_json_arg(const std::string& arg) {
  if (arg == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    try {
      return Json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(std::string("stdin: ") + e.what());
    }
  }
  return read_json_file(arg);
}

// Effective manifest: the manifest file, then flags on top.
Json effective_manifest(const RunFlags& f, std::uint64_t seed, bool seed_given) {
  Json m = Json::object();
  if (!f.manifest.empty()) {
    m = read_json_file(f.manifest);
    if (!m.is_object()) throw UsageError("manifest must be a JSON object");
    static const std::set<std::string> known = {"scenario", "config", "algo",  "tie",     "ortho", "script",
                                                "steps",    "eps_tie", "eps_gather", "seed", "outputs", "check",
                                                "fixpoint"};
    for (const auto& [key, value] : m.items())
      if (!known.count(key)) throw UsageError("manifest: unknown field \"" + key + "\"");
    // Paths in a manifest are relative to the manifest.
    const fs::path base = fs::path(f.manifest).parent_path();
    for (const char* key : {"scenario", "config", "script"})
      if (m.contains(key) && m[key].is_string() && m[key] != "-" && fs::path(m[key].get<std::string>()).is_relative())
        m[key] = (base / m[key].get<std::string>()).lexically_normal().string();
  }
  auto set = [&](const char* key, const std::string& v) {
    if (!v.empty()) m[key] = v;
  };
  set("scenario", f.scenario);
  set("config", f.config);
  set("algo", f.algo);
  set("tie", f.tie);
  set("ortho", f.ortho);
  set("script", f.script);
  if (f.steps) m["steps"] = *f.steps;
  if (f.eps_tie) m["eps_tie"] = *f.eps_tie;
  if (f.eps_gather) m["eps_gather"] = *f.eps_gather;
  if (seed_given || !m.contains("seed")) m["seed"] = seed;
  if (f.check) m["check"] = true;
  if (f.no_fixpoint) m["fixpoint"] = false;
  Json outputs = m.contains("outputs") ? m["outputs"] : Json::object();
  if (!outputs.is_object()) throw UsageError("manifest.outputs must be an object");
  if (!f.out_dir.empty()) {
    const fs::path dir(f.out_dir);
    outputs["trace"] = (dir / "trace.jsonl").string();
    outputs["metrics"] = (dir / "metrics.csv").string();
    outputs["summary"] = (dir / "summary.json").string();
  }
  if (!f.trace.empty()) outputs["trace"] = f.trace;
  if (!f.metrics.empty()) outputs["metrics"] = f.metrics;
  if (!f.summary.empty()) outputs["summary"] = f.summary;
  m["outputs"] = outputs;
  if (m.contains("scenario") == m.contains("config")) throw UsageError("run needs exactly one of --scenario or --config");
  return m;
}

std::string text_field(const Json& m, const char* key) {
  if (!m.contains(key)) return {};
  if (!m[key].is_string()) throw UsageError(std::string("manifest.") + key + " must be a string");
  return m[key].get<std::string>();
}

int cmd_run(const RunFlags& flags, std::uint64_t seed, bool seed_given) {
  Json m = effective_manifest(flags, seed, seed_given);
  if (!m["seed"].is_number_unsigned()) throw UsageError("manifest.seed must be a nonnegative integer");
  seed = m["seed"].get<std::uint64_t>();

  std::optional<Scenario> scenario;
  std::string rule_name = "mm";
  if (m.contains("scenario")) {
    ScenarioSpec spec;
    fs::path base;
    if (m["scenario"].is_string()) {
      const fs::path path = m["scenario"].get<std::string>();
      spec = scenario_spec_from_json(read_json_file(path));
      base = path.parent_path();
    } else {
      spec = scenario_spec_from_json(m["scenario"]);
    }
    scenario = build_scenario(spec, seed, base);
    if (auto r = scenario_rule(spec)) rule_name = *r;
  } else {
    const Configuration c = configuration_from_json(load_json_arg(text_field(m, "config")));
    scenario = Scenario{"config", c, TiePolicy::order_based(), OrthogonalChoice::fixed_positive(), CrashPlan{},
                        std::vector<std::size_t>(c.size(), 0)};
  }

  std::shared_ptr<const AdversaryScript> script;
  if (const auto path = text_field(m, "script"); !path.empty())
    script = std::make_shared<const AdversaryScript>(script_from_json(read_json_file(path)));
  if (const auto a = text_field(m, "algo"); !a.empty()) rule_name = a;
  const MoveRule rule = MoveRule::parse(rule_name);
  TiePolicy tie = scenario->tie;
  if (const auto t = text_field(m, "tie"); !t.empty()) tie = tie_policy_from_name(t, seed, script);
  else if (script) tie = TiePolicy{TiePolicy::Kind::scripted, 0, script};
  OrthogonalChoice ortho = scenario->ortho;
  if (const auto o = text_field(m, "ortho"); !o.empty()) ortho = ortho_choice_from_name(o, seed, script);

  RunSettings settings;
  auto number = [&](const char* key, double fallback) {
    if (!m.contains(key)) return fallback;
    if (!m[key].is_number()) throw UsageError(std::string("manifest.") + key + " must be a number");
    return m[key].get<double>();
  };
  if (m.contains("steps")) {
    if (!m["steps"].is_number_unsigned() || m["steps"].get<std::size_t>() < 1)
      throw UsageError("steps must be a positive integer");
    settings.max_steps = m["steps"].get<std::size_t>();
  }
  settings.eps_tie = number("eps_tie", settings.eps_tie);
  settings.eps_gather = number("eps_gather", settings.eps_gather);
  if (m.contains("fixpoint")) settings.stop_on_fixpoint = m["fixpoint"].get<bool>();
  const bool check = m.contains("check") && m["check"].get<bool>();

  // Record the effective policies next to what the user asked for.
  m["algo"] = rule.name();
  m["tie"] = tie.name();
  m["ortho"] = ortho.name();

  const Trace trace = run(scenario->configuration, rule, tie, ortho, settings, scenario->crashes);
  const auto rows = metrics(trace, settings.eps_tie);

  Json summary = trace_summary(trace, settings.eps_tie);
  const auto witness = is_gathered(trace.final_state, settings.eps_gather, settings.eps_tie);
  summary["gathered_within_eps"] = witness.gathered;
  std::optional<std::size_t> first;
  for (const auto& r : rows)
    if (r.gathered && !first) first = r.t;
  summary["first_gathered_step"] = first ? Json(*first) : Json(nullptr);
  std::size_t fallbacks = 0;
  for (const auto& s : trace.steps) fallbacks += s.fallbacks;
  summary["adversary_fallbacks"] = fallbacks;
  summary["f"] = crashed_position_count(trace.final_state, settings.eps_tie);

  bool violated = false;
  if (check) {
    Json certs = Json::array();
    if (rule.is_move_to_middle()) {
      for (const auto& report : {radius_monotonicity_check(rows), diameter_monotonicity_check(rows)}) {
        violated |= !report.passed();
        Json j = to_json(report);
        j.erase("per_step");
        certs.push_back(std::move(j));
      }
      if (tie.kind == TiePolicy::Kind::order_based && crashed_position_count(trace.configurations().front()) == 1) {
        const auto cert = fault_contraction_check(trace, settings.eps_tie);
        for (const auto* report : {&cert.contraction, &cert.edge_bound}) {
          violated |= !report->passed();
          Json j = to_json(*report);
          j.erase("per_step");
          j["t_A"] = cert.attracted_from ? Json(*cert.attracted_from) : Json(nullptr);
          certs.push_back(std::move(j));
        }
      }
    }
    summary["certificates"] = certs;
  }
  summary["manifest"] = m;

  const Json& out = m["outputs"];
  if (out.contains("trace")) {
    std::ostringstream s;
    write_trace_jsonl(s, trace, summary);
    write_file(out["trace"].get<std::string>(), s.str());
  }
  if (out.contains("metrics")) {
    std::ostringstream s;
    write_metrics_csv(s, rows);
    write_file(out["metrics"].get<std::string>(), s.str());
  }
  if (out.contains("summary")) write_file(out["summary"].get<std::string>(), summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return violated ? kViolation : kOk;
}

int cmd_verify(const std::string& suite, std::size_t trials, std::uint64_t seed, std::size_t jobs,
               const std::string& report_path) {
  const SuiteResult r = run_suite(suite, {trials, seed, jobs});
  const Json j = to_json(r);
  std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.verdict << "\n";
  std::cout << "stats: " << r.stats.dump() << "\n";
  if (r.counterexample) std::cout << "first counterexample:\n" << r.counterexample->dump(2) << "\n";
  if (!report_path.empty()) write_file(report_path, j.dump(2) + "\n");
  return r.passed() ? kOk : kViolation;
}

int cmd_scenario_list() {
  for (const auto& k : scenario_catalog()) {
    std::cout << k.name;
    if (!k.aliases.empty()) {
      std::cout << " (aliases:";
      for (const auto& a : k.aliases) std::cout << " " << a;
      std::cout << ")";
    }
    std::cout << "\n  " << k.summary << "\n";
    for (const auto& p : k.parameters) {
      std::cout << "    " << p.name << " : " << p.type << "  " << p.description;
      if (p.default_value) std::cout << " [default " << *p.default_value << "]";
      std::cout << "\n";
    }
  }
  return kOk;
}

// "1" -> 1, "0.5" -> 0.5, "vertex" -> "vertex".
Json param_value(const std::string& text) {
  try {
    Json v = Json::parse(text);
    if (v.is_number() || v.is_boolean() || v.is_array()) return v;
  } catch (const nlohmann::json::parse_error&) {
  }
  return text;
}

int cmd_scenario_render(const std::string& file, const std::string& kind, const std::map<std::string, std::string>& params,
                        const std::vector<std::string>& extra, std::uint64_t seed, const std::string& out) {
  ScenarioSpec spec;
  fs::path base;
  if (!file.empty()) {
    spec = scenario_spec_from_json(read_json_file(file));
    base = fs::path(file).parent_path();
  }
  if (!kind.empty()) spec.kind = canonical_kind(kind);
  if (spec.kind.empty()) throw UsageError("scenario render needs --kind or --file");
  for (const auto& [key, value] : params)
    if (!value.empty()) spec.params[key] = param_value(value);
  for (const auto& kv : extra) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got \"" + kv + "\"");
    spec.params[kv.substr(0, eq)] = param_value(kv.substr(eq + 1));
  }
  const Scenario s = build_scenario(spec, seed, base);
  const std::string text = to_json(s.crashes.apply(s.configuration)).dump(2) + "\n";
  if (out.empty()) std::cout << text;
  else write_file(out, text);
  return kOk;
}

int cmd_oracle_seb(const std::string& input, std::uint64_t seed) {
  const Json doc = load_json_arg(input);
  std::vector<Point> pts;
  if (doc.is_object()) pts = configuration_from_json(doc).positions();
  else if (doc.is_array()) {
    for (const auto& p : doc) pts.push_back(point_from_json(p));
  } else throw UsageError("oracle seb expects an array of points or a configuration");
  if (pts.empty()) throw UsageError("oracle seb needs at least one point");
  for (const auto& p : pts) require_same_dimension(pts.front(), p);
  const Ball fast = smallest_enclosing_ball(pts, seed);
  const Ball slow = brute_force_enclosing_ball(pts);
  const double diff = std::abs(fast.radius - slow.radius);
  const bool agree = diff <= 1e-9 * std::max(1.0, slow.radius);
  const Json out = {{"points", pts.size()},
                    {"oracle", {{"center", to_json(slow.center)}, {"radius", slow.radius}}},
                    {"incremental", {{"center", to_json(fast.center)}, {"radius", fast.radius}}},
                    {"radius_difference", diff},
                    {"agree", agree}};
  std::cout << out.dump(2) << "\n";
  return agree ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closest-neighbor swarm simulator and certificate checker"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (env MYOPIC_SEED)")->envname("MYOPIC_SEED");
  seed_opt->default_val(0);

  RunFlags rf;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario and write its trace, metrics and summary");
  run_cmd->add_option("--manifest", rf.manifest, "Run manifest JSON (flags override its fields)");
  run_cmd->add_option("--scenario", rf.scenario, "Scenario file");
  run_cmd->add_option("--config", rf.config, "Configuration JSON file ('-' for stdin)");
  run_cmd->add_option("--algo", rf.algo, "Move rule: mm or linear:<along>,<across>");
  run_cmd->add_option("--tie", rf.tie, "Tie policy: order, random, lowest-id, cyclic, script");
  run_cmd->add_option("--ortho", rf.ortho, "Orthogonal choice: positive, negative, random, script");
  run_cmd->add_option("--script", rf.script, "Adversary script JSON");
  run_cmd->add_option("--steps", rf.steps, "Step budget");
  run_cmd->add_option("--eps-tie", rf.eps_tie, "Relative tie band");
  run_cmd->add_option("--eps-gather", rf.eps_gather, "(G,eps)-gathering threshold");
  run_cmd->add_option("--out", rf.out_dir, "Directory for trace.jsonl, metrics.csv, summary.json");
  run_cmd->add_option("--trace", rf.trace, "Trace JSONL path");
  run_cmd->add_option("--metrics", rf.metrics, "Metrics CSV path");
  run_cmd->add_option("--summary", rf.summary, "Summary JSON path");
  run_cmd->add_flag("--check", rf.check, "Evaluate certificates on the trace; exit 1 on violation");
  run_cmd->add_flag("--no-fixpoint", rf.no_fixpoint, "Do not stop at fixpoints");
  run_cmd->add_option("--seed", seed, "Master seed (env MYOPIC_SEED)")->envname("MYOPIC_SEED");

  std::string suite, report;
  std::size_t trials = 0;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  bool list_suites = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run a certificate suite");
  verify_cmd->add_option("suite", suite, "Suite name");
  verify_cmd->add_option("--trials", trials, "Trial count (default per suite)");
  verify_cmd->add_option("--jobs", jobs, "Worker threads");
  verify_cmd->add_option("--report", report, "Write the JSON report here");
  verify_cmd->add_flag("--list", list_suites, "List suites");
  verify_cmd->add_option("--seed", seed, "Master seed (env MYOPIC_SEED)")->envname("MYOPIC_SEED");

  auto* scenario_cmd = app.add_subcommand("scenario", "Scenario catalog and rendering");
  scenario_cmd->require_subcommand(1);
  scenario_cmd->add_subcommand("list", "List scenario kinds and parameters");
  auto* render_cmd = scenario_cmd->add_subcommand("render", "Materialize a scenario into a configuration JSON");
  std::string render_file, render_kind, render_out;
  std::map<std::string, std::string> params;
  std::vector<std::string> extra;
  render_cmd->add_option("--file", render_file, "Scenario file");
  render_cmd->add_option("--kind", render_kind, "Scenario kind");
  for (const char* p : {"side", "d", "anchor", "bound", "separation", "n", "D", "scale", "extent"})
    render_cmd->add_option(std::string("--") + p, params[p], std::string("Parameter ") + p);
  render_cmd->add_option("--param", extra, "Extra parameter key=value");
  render_cmd->add_option("-o,--output", render_out, "Output file (default stdout)");
  render_cmd->add_option("--seed", seed, "Master seed (env MYOPIC_SEED)")->envname("MYOPIC_SEED");

  auto* oracle_cmd = app.add_subcommand("oracle", "Reference computations");
  oracle_cmd->require_subcommand(1);
  auto* seb_cmd = oracle_cmd->add_subcommand("seb", "Smallest enclosing ball, incremental vs brute force");
  std::string seb_input = "-";
  seb_cmd->add_option("input", seb_input, "JSON array of points or a configuration ('-' for stdin)");
  seb_cmd->add_option("--seed", seed, "Shuffle seed (env MYOPIC_SEED)")->envname("MYOPIC_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) {
      bool seed_given = std::getenv("MYOPIC_SEED") != nullptr;
      for (const auto* cmd : {static_cast<const CLI::App*>(&app), static_cast<const CLI::App*>(run_cmd)})
        seed_given |= cmd->get_option("--seed")->count() > 0;
      return cmd_run(rf, seed, seed_given);
    }
    if (*verify_cmd) {
      if (list_suites) {
        for (const auto& s : suite_catalog())
          std::cout << s.name << " (" << s.default_trials << " trials): " << s.description << "\n";
        return kOk;
      }
      if (suite.empty()) throw UsageError("verify needs a suite name (see verify --list)");
      return cmd_verify(suite, trials, seed, jobs, report);
    }
    if (*scenario_cmd) {
      if (*render_cmd) return cmd_scenario_render(render_file, render_kind, params, extra, seed, render_out);
      return cmd_scenario_list();
    }
    return cmd_oracle_seb(seb_input, seed);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
