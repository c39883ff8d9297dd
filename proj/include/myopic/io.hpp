#pragma once

// JSON, JSON Lines and CSV formats for configurations, scripts, scenarios,
// traces, metrics and certificate reports.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "myopic/analysis.hpp"
#include "myopic/engine.hpp"
#include "myopic/policies.hpp"
#include "myopic/scenarios.hpp"
#include "myopic/swarm.hpp"

namespace myopic {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON document. Throws UsageError on I/O or syntax errors.
Json read_json_file(const std::filesystem::path& path);

/// {"time", "dimension", "processes": [{"pos": [...], "crashed": bool}]}
Json to_json(const Configuration& config);
/// Throws UsageError for malformed documents.
Configuration configuration_from_json(const Json& doc);

Json to_json(const Point& p);
Point point_from_json(const Json& doc);

/// [{"t", "rank", "choice"}, ...]
Json to_json(const AdversaryScript& script);
AdversaryScript script_from_json(const Json& doc);

/// "order", "script", "random", "lowest-id" or "cyclic". Random policies
/// are keyed by `seed`; "script" needs `script`. Throws UsageError.
TiePolicy tie_policy_from_name(const std::string& name, std::uint64_t seed,
                               std::shared_ptr<const AdversaryScript> script = nullptr);
/// "positive", "negative", "random" or "script".
OrthogonalChoice ortho_choice_from_name(const std::string& name, std::uint64_t seed,
                                        std::shared_ptr<const AdversaryScript> script = nullptr);

/// Scenario file: {"kind", "params", "policy", "crashes"}.
/// `policy` is a tie policy name ("order", "random", "lowest-id", "cyclic",
/// "script") or an object {"tie", "ortho", "script", "algo"}.
/// `crashes` lists process ids, or objects {"id"|"pos", "at"}.
struct ScenarioSpec {
  std::string kind;
  Json params = Json::object();
  Json policy;
  Json crashes = Json::array();
};

/// Throws UsageError for an empty or malformed document.
ScenarioSpec scenario_spec_from_json(const Json& doc);
Json to_json(const ScenarioSpec& spec);

/// Builds the configuration, policies and crash plan. `seed` feeds random
/// kinds when params carry no seed of their own. A script given by path is
/// resolved relative to `base_dir`.
Scenario build_scenario(const ScenarioSpec& spec, std::uint64_t seed,
                        const std::filesystem::path& base_dir = {});

/// Optional move rule named by the scenario's policy object ("algo").
std::optional<std::string> scenario_rule(const ScenarioSpec& spec);

Json to_json(const StepRecord& rec);
Json to_json(const MetricsRow& row);
Json to_json(const CertificateReport& report);
Json to_json(const FaultCertificate& cert);

/// {"stop", "steps", "final_R", "final_omega"} plus extra fields.
Json trace_summary(const Trace& trace, double eps_tie);

/// One StepRecord per line, then the summary line.
void write_trace_jsonl(std::ostream& out, const Trace& trace, const Json& summary);

/// Header t,omega,d_min,d_max,R,gathered,L. L is empty outside fault mode.
void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace myopic
