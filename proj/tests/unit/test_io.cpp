#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "myopic/errors.hpp"
#include "myopic/io.hpp"

using namespace myopic;

TEST_CASE("configuration JSON round trip") {
  const auto c = Configuration(3, {{{0.1, 2.0}, false}, {{-1e-300, 5.5}, true}});
  const Json j = to_json(c);
  CHECK(j["time"] == 3);
  CHECK(j["dimension"] == 2);
  CHECK(j["processes"][1]["crashed"] == true);
  CHECK(configuration_from_json(Json::parse(j.dump())) == c);
}

TEST_CASE("configuration JSON validation") {
  CHECK_THROWS_AS(configuration_from_json(Json::parse("{}")), UsageError);
  CHECK_THROWS_AS(configuration_from_json(Json::parse(R"({"processes": []})")), UsageError);
  CHECK_THROWS_AS(configuration_from_json(Json::parse(R"({"processes": [{"pos": []}]})")), UsageError);
  CHECK_THROWS_AS(configuration_from_json(Json::parse(R"({"processes": [{"pos": [1, "x"]}]})")), UsageError);
  CHECK_THROWS_AS(configuration_from_json(Json::parse(R"({"dimension": 3, "processes": [{"pos": [1, 2]}]})")),
                  UsageError);
  CHECK_THROWS_AS(configuration_from_json(Json::parse(R"({"processes": [{"pos": [1]}, {"pos": [1, 2]}]})")),
                  UsageError);
  const auto ok = configuration_from_json(Json::parse(R"({"processes": [{"pos": [1]}, {"pos": [2]}]})"));
  CHECK(ok.time() == 0);
  CHECK_FALSE(ok.crashed(0));
}

TEST_CASE("script JSON") {
  const auto s = script_from_json(Json::parse(R"([{"t": 0, "rank": 1, "choice": 0}, {"t": 2, "rank": 0, "choice": 1}])"));
  CHECK(s.lookup(0, 1) == std::optional<std::size_t>(0));
  CHECK_FALSE(s.lookup(1, 1));
  CHECK(to_json(s).size() == 2);
  CHECK_THROWS_AS(script_from_json(Json::parse(R"([{"t": 0, "rank": 1}])")), UsageError);
  CHECK_THROWS_AS(script_from_json(Json::parse(R"([{"t": -1, "rank": 1, "choice": 0}])")), UsageError);
  CHECK_THROWS_AS(script_from_json(Json::parse(R"({"t": 0})")), UsageError);
}

TEST_CASE("scenario spec parsing") {
  CHECK_THROWS_AS(scenario_spec_from_json(Json::parse("{}")), UsageError);
  CHECK_THROWS_AS(scenario_spec_from_json(Json::parse("[]")), UsageError);
  CHECK_THROWS_AS(scenario_spec_from_json(Json::parse(R"({"kind": "spiral"})")), UsageError);
  CHECK_THROWS_AS(scenario_spec_from_json(Json::parse(R"({"kind": "chain", "extra": 1})")), UsageError);

  const auto spec = scenario_spec_from_json(Json::parse(R"({"kind": "collinear-chain", "params": {"n": 6}})"));
  CHECK(spec.kind == "chain");
  const auto s = build_scenario(spec, 0);
  CHECK(s.configuration.size() == 6);
  CHECK(s.tie.kind == TiePolicy::Kind::order_based);

  CHECK_THROWS_AS(build_scenario(scenario_spec_from_json(Json::parse(R"({"kind": "chain"})")), 0), UsageError);
  CHECK_THROWS_AS(build_scenario(scenario_spec_from_json(Json::parse(R"({"kind": "chain", "params": {"n": 1}})")), 0),
                  UsageError);
  CHECK_THROWS_AS(
      build_scenario(scenario_spec_from_json(Json::parse(R"({"kind": "chain", "params": {"n": 3, "side": 1}})")), 0),
      UsageError);
}

TEST_CASE("scenario policies and crashes") {
  const auto spec = scenario_spec_from_json(Json::parse(R"({
    "kind": "custom",
    "params": {"positions": [[0, 0], [1, 0], [5, 5]], "crashed": [false, false, true]},
    "policy": {"tie": "script", "ortho": "negative", "script": [{"t": 0, "rank": 0, "choice": 0}], "algo": "mm"},
    "crashes": [{"id": 1, "at": 3}]
  })"));
  const auto s = build_scenario(spec, 9);
  CHECK(s.configuration.crashed(2));
  CHECK(s.tie.kind == TiePolicy::Kind::scripted);
  CHECK(s.ortho.kind == OrthogonalChoice::Kind::fixed_negative);
  REQUIRE(s.crashes.events().size() == 1);
  CHECK(s.crashes.events()[0].at_time == 3);
  CHECK(scenario_rule(spec) == std::optional<std::string>("mm"));

  const auto random_tie = build_scenario(
      scenario_spec_from_json(Json::parse(R"({"kind": "random-cloud", "params": {"n": 4}, "policy": "random"})")), 3);
  CHECK(random_tie.tie.kind == TiePolicy::Kind::seeded_random);
  CHECK_THROWS_AS(build_scenario(scenario_spec_from_json(Json::parse(R"({"kind": "chain", "params": {"n": 3}, "crashes": [7]})")), 0),
                  UsageError);
  CHECK_THROWS_AS(build_scenario(scenario_spec_from_json(Json::parse(R"({"kind": "chain", "params": {"n": 3}, "policy": "bogus"})")), 0),
                  UsageError);
}

TEST_CASE("random scenario seeds: params win over the run seed") {
  auto spec = scenario_spec_from_json(Json::parse(R"({"kind": "random-cloud", "params": {"n": 4, "seed": 5}})"));
  CHECK(build_scenario(spec, 1).configuration == build_scenario(spec, 2).configuration);
  spec.params.erase("seed");
  CHECK_FALSE(build_scenario(spec, 1).configuration == build_scenario(spec, 2).configuration);
}

TEST_CASE("metrics CSV") {
  std::vector<MetricsRow> rows = {{0, 2, 1.0, 1.0, 0.5, false, {}}, {1, 1, 0.0, 0.0, 0.0, true, 0.25}};
  std::ostringstream out;
  write_metrics_csv(out, rows);
  CHECK(out.str() == "t,omega,d_min,d_max,R,gathered,L\n0,2,1.0,1.0,0.5,false,\n1,1,0.0,0.0,0.0,true,0.25\n");
}

TEST_CASE("doubles print in shortest round-trip form") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5e-17}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("trace JSONL ends with the summary") {
  RunSettings s;
  const auto t = run(Configuration::from_positions({{0}, {1}, {2}}), MoveRule::move_to_middle(),
                     TiePolicy::order_based(), OrthogonalChoice::fixed_positive(), s);
  std::ostringstream out;
  const Json summary = trace_summary(t, s.eps_tie);
  write_trace_jsonl(out, t, summary);
  std::istringstream in(out.str());
  std::vector<Json> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(Json::parse(l));
  REQUIRE(lines.size() == t.step_count() + 1);
  CHECK(lines[0]["t"] == 0);
  CHECK(lines[0]["neighbor"] == Json::parse("[1, 2, 1]"));
  const auto& last = lines.back();
  CHECK(last["stop"] == "gathered");
  CHECK(last["steps"] == 2);
  CHECK(last["final_omega"] == 1);
  CHECK(last["final_R"] == 0.0);
}

TEST_CASE("certificate report JSON lists both sides") {
  CertificateReport r;
  r.name = "x";
  r.inequality = "a <= b";
  r.check(4, 2.0, 1.0, 1.0);
  const Json j = to_json(r);
  CHECK(j["first_violation"]["step"] == 4);
  CHECK(j["first_violation"]["lhs"] == 2.0);
  CHECK(j["first_violation"]["rhs"] == 1.0);
  CHECK(j["relative_tolerance"] == 1e-9);
  CHECK(j["absolute_floor"] == 1e-12);
}

TEST_CASE("read_json_file errors") {
  const auto dir = std::filesystem::temp_directory_path();
  CHECK_THROWS_AS(read_json_file(dir / "definitely-missing-file.json"), UsageError);
  const auto empty = dir / "myopic-empty-test.json";
  std::ofstream(empty).close();
  CHECK_THROWS_AS(read_json_file(empty), UsageError);
  std::ofstream(empty) << "{ not json";
  CHECK_THROWS_AS(read_json_file(empty), UsageError);
  std::filesystem::remove(empty);
}
