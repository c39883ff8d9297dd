#include "myopic/io.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "myopic/errors.hpp"
#include "myopic/random.hpp"

namespace myopic {

namespace {

[[noreturn]] void bad(const std::string& what) { throw UsageError(what); }

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) bad(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

double as_real(const Json& v, const std::string& what) {
  if (!v.is_number()) bad(what + " must be a number");
  return v.get<double>();
}

std::size_t as_count(const Json& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::size_t>(v.get<std::int64_t>());
  bad(what + " must be a nonnegative integer");
}

std::uint64_t as_seed(const Json& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  bad(what + " must be a nonnegative integer");
}

// Reads scenario parameters and rejects names the kind does not declare.
class Params {
 public:
  Params(const Json& params, const std::string& kind) : params_(params), kind_(kind) {
    if (!params_.is_object()) bad("scenario params must be an object");
    const auto& catalog = scenario_catalog();
    const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const auto& k) { return k.name == kind; });
    std::set<std::string> known;
    for (const auto& p : it->parameters) known.insert(p.name);
    for (const auto& [key, value] : params_.items())
      if (!known.count(key)) bad(kind + ": unknown parameter \"" + key + "\"");
  }

  bool has(const char* key) const { return params_.contains(key); }
  double real(const char* key, double fallback) const {
    return has(key) ? as_real(params_.at(key), where(key)) : fallback;
  }
  std::size_t count(const char* key, std::optional<std::size_t> fallback) const {
    if (has(key)) return as_count(params_.at(key), where(key));
    if (!fallback) bad(kind_ + ": parameter \"" + key + "\" is required");
    return *fallback;
  }
  std::uint64_t seed(const char* key, std::uint64_t fallback) const {
    return has(key) ? as_seed(params_.at(key), where(key)) : fallback;
  }
  std::string text(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!params_.at(key).is_string()) bad(where(key) + " must be a string");
    return params_.at(key).get<std::string>();
  }
  const Json& raw(const char* key) const { return params_.at(key); }

 private:
  std::string where(const char* key) const { return kind_ + "." + key; }
  const Json& params_;
  std::string kind_;
};

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (buf.str().find_first_not_of(" \t\r\n") == std::string::npos) bad(path.string() + " is empty");
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

Json to_json(const Point& p) { return Json(p.coords()); }

Point point_from_json(const Json& doc) {
  if (!doc.is_array() || doc.empty()) bad("a position must be a nonempty array of numbers");
  std::vector<double> c;
  for (const auto& x : doc) c.push_back(as_real(x, "coordinate"));
  try {
    return Point(std::move(c));
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
}

Json to_json(const Configuration& config) {
  Json procs = Json::array();
  for (const auto& r : config.records()) procs.push_back({{"pos", to_json(r.position)}, {"crashed", r.crashed}});
  return {{"time", config.time()}, {"dimension", config.dimension()}, {"processes", std::move(procs)}};
}

Configuration configuration_from_json(const Json& doc) {
  if (!doc.is_object()) bad("configuration must be a JSON object");
  const auto& procs = require(doc, "processes", "configuration");
  if (!procs.is_array() || procs.empty()) bad("configuration: \"processes\" must be a nonempty array");
  const std::size_t time = doc.contains("time") ? as_count(doc.at("time"), "configuration.time") : 0;
  std::vector<ProcessRecord> records;
  for (const auto& p : procs) {
    ProcessRecord r{point_from_json(require(p, "pos", "process")), false};
    if (p.contains("crashed")) {
      if (!p.at("crashed").is_boolean()) bad("process.crashed must be a boolean");
      r.crashed = p.at("crashed").get<bool>();
    }
    records.push_back(std::move(r));
  }
  Configuration config(time, std::move(records));
  if (doc.contains("dimension") && as_count(doc.at("dimension"), "configuration.dimension") != config.dimension())
    bad("configuration: \"dimension\" does not match the positions");
  return config;
}

Json to_json(const AdversaryScript& script) {
  Json out = Json::array();
  for (const auto& e : script.entries()) out.push_back({{"t", e.t}, {"rank", e.rank}, {"choice", e.choice}});
  return out;
}

AdversaryScript script_from_json(const Json& doc) {
  if (!doc.is_array()) bad("script must be a JSON array");
  std::vector<ScriptEntry> entries;
  for (const auto& e : doc) {
    entries.push_back({as_count(require(e, "t", "script entry"), "script.t"),
                       as_count(require(e, "rank", "script entry"), "script.rank"),
                       as_count(require(e, "choice", "script entry"), "script.choice")});
  }
  return AdversaryScript(entries);
}

TiePolicy tie_policy_from_name(const std::string& name, std::uint64_t seed,
                               std::shared_ptr<const AdversaryScript> script) {
  if (name == "order" || name == "order-based") return TiePolicy::order_based();
  if (name == "lowest-id") return TiePolicy::lowest_id();
  if (name == "cyclic") return TiePolicy::cyclic();
  if (name == "random") return TiePolicy::seeded_random(derive_seed(seed, stream_key("tie")));
  if (name == "script") {
    if (!script) bad("tie policy \"script\" needs a script");
    return TiePolicy{TiePolicy::Kind::scripted, 0, std::move(script)};
  }
  bad("unknown tie policy \"" + name + "\"");
}

OrthogonalChoice ortho_choice_from_name(const std::string& name, std::uint64_t seed,
                                        std::shared_ptr<const AdversaryScript> script) {
  if (name == "positive") return OrthogonalChoice::fixed_positive();
  if (name == "negative") return OrthogonalChoice::fixed_negative();
  if (name == "random") return OrthogonalChoice::seeded_random(derive_seed(seed, stream_key("ortho")));
  if (name == "script") {
    if (!script) bad("orthogonal choice \"script\" needs a script");
    return OrthogonalChoice{OrthogonalChoice::Kind::scripted, 0, std::move(script)};
  }
  bad("unknown orthogonal choice \"" + name + "\"");
}

ScenarioSpec scenario_spec_from_json(const Json& doc) {
  if (!doc.is_object() || doc.empty()) bad("scenario must be a nonempty JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "kind" && key != "params" && key != "policy" && key != "crashes")
      bad("scenario: unknown field \"" + key + "\"");
  ScenarioSpec spec;
  const auto& kind = require(doc, "kind", "scenario");
  if (!kind.is_string()) bad("scenario.kind must be a string");
  spec.kind = canonical_kind(kind.get<std::string>());
  if (doc.contains("params")) spec.params = doc.at("params");
  if (!spec.params.is_object()) bad("scenario.params must be an object");
  if (doc.contains("policy")) spec.policy = doc.at("policy");
  if (!spec.policy.is_null() && !spec.policy.is_string() && !spec.policy.is_object())
    bad("scenario.policy must be a string or an object");
  if (doc.contains("crashes")) spec.crashes = doc.at("crashes");
  if (!spec.crashes.is_array()) bad("scenario.crashes must be an array");
  return spec;
}

Json to_json(const ScenarioSpec& spec) {
  Json out = {{"kind", spec.kind}, {"params", spec.params}};
  if (!spec.policy.is_null()) out["policy"] = spec.policy;
  out["crashes"] = spec.crashes;
  return out;
}

std::optional<std::string> scenario_rule(const ScenarioSpec& spec) {
  if (spec.policy.is_object() && spec.policy.contains("algo")) {
    if (!spec.policy.at("algo").is_string()) bad("policy.algo must be a string");
    return spec.policy.at("algo").get<std::string>();
  }
  return std::nullopt;
}

Scenario build_scenario(const ScenarioSpec& spec, std::uint64_t seed, const std::filesystem::path& base_dir) {
  const std::string kind = canonical_kind(spec.kind);
  const Params p(spec.params, kind);
  std::optional<Scenario> built;
  if (kind == "equilateral") {
    const std::string anchor = p.text("anchor", "vertex");
    if (anchor != "vertex" && anchor != "barycenter") bad("equilateral.anchor must be vertex or barycenter");
    built = make_equilateral(p.real("side", 1.0), p.count("d", 2),
                             anchor == "vertex" ? TriangleAnchor::vertex : TriangleAnchor::barycenter);
  } else if (kind == "two-triangles") {
    built = make_two_triangles(p.real("bound", 1.0), p.real("separation", 10.0), p.count("d", 2));
  } else if (kind == "chain") {
    built = make_chain(p.count("n", std::nullopt), p.real("D", 1.0), p.count("d", 1));
  } else if (kind == "random-cloud") {
    built = make_random_cloud(p.count("n", std::nullopt), p.count("d", 2), p.seed("seed", seed), p.real("scale", 1.0));
  } else if (kind == "grid-cloud") {
    built = make_grid_cloud(p.count("n", std::nullopt), p.count("d", 2), p.seed("seed", seed), p.count("extent", 4));
  } else {
    if (!p.has("positions")) bad("custom: parameter \"positions\" is required");
    const Json& pos = p.raw("positions");
    if (!pos.is_array() || pos.empty()) bad("custom.positions must be a nonempty array");
    std::vector<ProcessRecord> records;
    for (const auto& x : pos) records.push_back({point_from_json(x), false});
    if (p.has("crashed")) {
      const Json& flags = p.raw("crashed");
      if (!flags.is_array() || flags.size() != records.size()) bad("custom.crashed must match positions");
      for (std::size_t i = 0; i < records.size(); ++i) {
        if (!flags[i].is_boolean()) bad("custom.crashed entries must be booleans");
        records[i].crashed = flags[i].get<bool>();
      }
    }
    Configuration config(0, std::move(records));
    const std::size_t n = config.size();
    built = Scenario{"custom", std::move(config), TiePolicy::order_based(), OrthogonalChoice::fixed_positive(),
                     CrashPlan{}, std::vector<std::size_t>(n, 0)};
  }
  Scenario s = std::move(*built);

  if (spec.policy.is_string()) {
    s.tie = tie_policy_from_name(spec.policy.get<std::string>(), seed);
  } else if (spec.policy.is_object()) {
    for (const auto& [key, value] : spec.policy.items())
      if (key != "tie" && key != "ortho" && key != "script" && key != "algo")
        bad("scenario.policy: unknown field \"" + key + "\"");
    std::shared_ptr<const AdversaryScript> script;
    if (spec.policy.contains("script")) {
      const Json& sc = spec.policy.at("script");
      const Json doc = sc.is_string() ? read_json_file(base_dir / sc.get<std::string>()) : sc;
      script = std::make_shared<const AdversaryScript>(script_from_json(doc));
    }
    if (spec.policy.contains("tie")) {
      if (!spec.policy.at("tie").is_string()) bad("policy.tie must be a string");
      s.tie = tie_policy_from_name(spec.policy.at("tie").get<std::string>(), seed, script);
    }
    if (spec.policy.contains("ortho")) {
      if (!spec.policy.at("ortho").is_string()) bad("policy.ortho must be a string");
      s.ortho = ortho_choice_from_name(spec.policy.at("ortho").get<std::string>(), seed, script);
    }
  }

  for (const auto& c : spec.crashes) {
    if (c.is_number()) {
      const std::size_t id = as_count(c, "crash id");
      s.crashes.schedule(s.configuration, std::span<const std::size_t>(&id, 1), 0);
      continue;
    }
    if (!c.is_object()) bad("crash entries must be ids or objects");
    const std::size_t at = c.contains("at") ? as_count(c.at("at"), "crash.at") : 0;
    if (c.contains("id")) {
      const std::size_t id = as_count(c.at("id"), "crash.id");
      s.crashes.schedule(s.configuration, std::span<const std::size_t>(&id, 1), at);
    } else if (c.contains("pos")) {
      s.crashes.schedule_at(s.configuration, point_from_json(c.at("pos")), at);
    } else {
      bad("crash entry needs \"id\" or \"pos\"");
    }
  }
  return s;
}

Json to_json(const StepRecord& rec) {
  Json neighbor = Json::array();
  for (const auto& n : rec.neighbor) neighbor.push_back(n ? Json(*n) : Json(nullptr));
  Json target = Json::array();
  for (const auto& t : rec.target) target.push_back(to_json(t));
  return {{"t", rec.time},
          {"configuration", to_json(rec.configuration)},
          {"neighbor", std::move(neighbor)},
          {"target", std::move(target)},
          {"fallbacks", rec.fallbacks}};
}

Json to_json(const MetricsRow& row) {
  Json out = {{"t", row.t},       {"omega", row.omega}, {"d_min", row.d_min},
              {"d_max", row.d_max}, {"R", row.radius},  {"gathered", row.gathered}};
  out["L"] = row.crash_distance ? Json(*row.crash_distance) : Json(nullptr);
  return out;
}

Json to_json(const CertificateReport& report) {
  std::size_t passed = 0;
  for (bool ok : report.per_step) passed += ok ? 1 : 0;
  Json out = {{"name", report.name},
              {"inequality", report.inequality},
              {"relative_tolerance", report.relative_tolerance},
              {"absolute_floor", report.absolute_floor},
              {"applicable", report.applicable},
              {"checked", report.per_step.size()},
              {"passed", passed},
              {"violations", report.violations}};
  if (!report.note.empty()) out["note"] = report.note;
  out["first_violation"] =
      report.first_violation
          ? Json{{"step", report.first_violation->step}, {"lhs", report.first_violation->lhs},
                 {"rhs", report.first_violation->rhs}}
          : Json(nullptr);
  Json steps = Json::array();
  for (std::size_t i = 0; i < report.steps.size(); ++i) steps.push_back({{"t", report.steps[i]}, {"ok", bool(report.per_step[i])}});
  out["per_step"] = std::move(steps);
  return out;
}

Json to_json(const FaultCertificate& cert) {
  Json out = {{"applicable", cert.applicable}, {"n", cert.n}, {"k", cert.factor}};
  if (!cert.note.empty()) out["note"] = cert.note;
  out["t_A"] = cert.attracted_from ? Json(*cert.attracted_from) : Json(nullptr);
  out["L"] = cert.crash_distance;
  out["contraction"] = to_json(cert.contraction);
  out["edge_bound"] = to_json(cert.edge_bound);
  out["passed"] = cert.passed();
  return out;
}

Json trace_summary(const Trace& trace, double eps_tie) {
  const MetricsRow last = metrics(trace.final_state, eps_tie);
  return {{"stop", to_string(trace.stop)},
          {"steps", trace.step_count()},
          {"final_R", last.radius},
          {"final_omega", last.omega},
          {"gathered", last.gathered}};
}

void write_trace_jsonl(std::ostream& out, const Trace& trace, const Json& summary) {
  for (const auto& s : trace.steps) out << to_json(s).dump() << '\n';
  out << summary.dump() << '\n';
}

std::string format_double(double x) { return Json(x).dump(); }

void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows) {
  out << "t,omega,d_min,d_max,R,gathered,L\n";
  for (const auto& r : rows) {
    out << r.t << ',' << r.omega << ',' << format_double(r.d_min) << ',' << format_double(r.d_max) << ','
        << format_double(r.radius) << ',' << (r.gathered ? "true" : "false") << ',';
    if (r.crash_distance) out << format_double(*r.crash_distance);
    out << '\n';
  }
}

}  // namespace myopic
