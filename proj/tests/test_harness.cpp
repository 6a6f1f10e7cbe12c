#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "harness.hpp"

using namespace altfp;

namespace {

const char* kMinimalConfig = R"({
  "space": {"kind": "euclidean", "dimension": 2},
  "map": {"kind": "rotation", "angle": 1.5707963267948966, "center": [0, 0]},
  "u": [1, 0],
  "x0": [0, 1],
  "schedule": {"kind": "harmonic"},
  "horizon": 1000
})";

const char* kScalingConfig = R"({
  "space": {"kind": "euclidean", "dimension": 1},
  "map": {"kind": "scaling", "factor": 0.5, "center": [0]},
  "u": [1],
  "x0": [1],
  "schedule": {"kind": "harmonic"},
  "horizon": 3,
  "checks": {"rate_transfer": false}
})";

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("altfp-harness-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("parse_config fills defaults") {
  const ExperimentConfig config = parse_config(kMinimalConfig);
  CHECK(config.space.kind == SpaceKind::Euclidean);
  CHECK(config.space.dimension == 2);
  CHECK(config.map.kind() == Mapping::Kind::Rotation);
  CHECK(config.anchor == Point{1, 0});
  CHECK(config.start == Point{0, 1});
  CHECK(config.horizon == 1000);
  CHECK(config.checks.coupling);
  CHECK(config.checks.domination);
  CHECK(config.checks.rate_transfer);
  CHECK(config.checks.nonexpansiveness);
  CHECK_FALSE(config.checks.convergence_threshold.has_value());
  CHECK(config.tolerances.euclidean == 1e-12);
  CHECK(config.tolerances.hyperbolic == 1e-10);
  CHECK(config.grid.values == EpsilonGrid::decades().values);
  CHECK(config.seed == 1);
  CHECK_FALSE(config.skip_validation);
  CHECK(config.output.dir == ".");
}

TEST_CASE("parse_config rejects bad documents") {
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);

  // Unknown keys are named.
  try {
    parse_config(R"({"space": {"kind": "euclidean", "dimension": 1},
      "map": {"kind": "scaling", "factor": 0.5, "center": [0]},
      "u": [1], "x0": [1], "schedule": {"kind": "harmonic"},
      "horizon": 10, "typo_key": 3})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("typo_key") != std::string::npos);
  }

  // Lambda outside [0,1].
  try {
    parse_config(R"({"space": {"kind": "euclidean", "dimension": 1},
      "map": {"kind": "scaling", "factor": 0.5, "center": [0]},
      "u": [1], "x0": [1],
      "schedule": {"kind": "constant", "value": 1.5}, "horizon": 10})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("lambda") != std::string::npos);
  }

  // Explicit schedule shorter than the horizon.
  try {
    parse_config(R"({"space": {"kind": "euclidean", "dimension": 1},
      "map": {"kind": "scaling", "factor": 0.5, "center": [0]},
      "u": [1], "x0": [1],
      "schedule": {"kind": "explicit",
                   "values": [0.5,0.5,0.5,0.5,0.5,0.5,0.5,0.5,0.5,0.5]},
      "horizon": 100})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("exhausted") != std::string::npos);
  }

  // Missing required key.
  CHECK_THROWS_AS(parse_config(R"({"space": {"kind":"euclidean","dimension":1},
      "map": {"kind":"scaling","factor":0.5,"center":[0]},
      "u": [1], "x0": [1], "horizon": 10})"),
                  ConfigError);

  // Point outside the space.
  try {
    parse_config(R"({"space": {"kind": "hyperbolic_disk"},
      "map": {"kind": "hyperbolic_rotation", "center": [0,0], "angle": 1.0},
      "u": [2, 0], "x0": [0, 0], "schedule": {"kind": "harmonic"},
      "horizon": 10})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("u:") != std::string::npos);
  }

  // Expansion map rejected at construction unless the unsafe flag is set.
  const std::string expansion = R"({
    "space": {"kind": "euclidean", "dimension": 1},
    "map": {"kind": "scaling", "factor": 2.0, "center": [0]},
    "u": [1], "x0": [1], "schedule": {"kind": "harmonic"}, "horizon": 10%})";
  std::string strict = expansion;
  strict.erase(strict.find('%'), 1);
  CHECK_THROWS_AS(parse_config(strict), ConfigError);
  std::string bypass = strict;
  bypass.insert(bypass.rfind('}'), ", \"unsafe_skip_validation\": true");
  const ExperimentConfig forced = parse_config(bypass);
  CHECK(forced.skip_validation);

  // Horizon floor.
  CHECK_THROWS_AS(parse_config(R"({"space": {"kind":"euclidean","dimension":1},
      "map": {"kind":"scaling","factor":0.5,"center":[0]},
      "u": [1], "x0": [1], "schedule": {"kind":"harmonic"}, "horizon": 1})"),
                  ConfigError);

  // Bad convergence threshold.
  CHECK_THROWS_AS(parse_config(R"({"space": {"kind":"euclidean","dimension":1},
      "map": {"kind":"scaling","factor":0.5,"center":[0]},
      "u": [1], "x0": [1], "schedule": {"kind":"harmonic"}, "horizon": 10,
      "checks": {"convergence_threshold": 0.0}})"),
                  ConfigError);
}

TEST_CASE("config round-trips through its canonical json") {
  for (const char* text : {kMinimalConfig, kScalingConfig}) {
    const ExperimentConfig config = parse_config(text);
    const Json echo = config_to_json(config);
    const ExperimentConfig reparsed = parse_config(echo.dump());
    CHECK(config_to_json(reparsed) == echo);
  }
}

TEST_CASE("nested map specs parse and round-trip") {
  const char* nested = R"({
    "space": {"kind": "euclidean", "dimension": 2,
              "domain": {"kind": "box", "lower": [-2, -2], "upper": [2, 2]}},
    "map": {"kind": "average", "weight": 0.25,
            "first": {"kind": "compose", "maps": [
              {"kind": "rotation", "angle": 0.5, "center": [0, 0]},
              {"kind": "scaling", "factor": 0.9, "center": [0, 0]}]},
            "second": {"kind": "projection",
                       "target": {"kind": "ball", "center": [0, 0],
                                  "radius": 1.0}}},
    "u": [0.5, 0], "x0": [0, 0.5],
    "schedule": {"kind": "power", "exponent": 0.75},
    "horizon": 50
  })";
  const ExperimentConfig config = parse_config(nested);
  CHECK(config.map.kind() == Mapping::Kind::Average);
  const Json echo = config_to_json(config);
  CHECK(config_to_json(parse_config(echo.dump())) == echo);

  // Unknown keys inside nested maps are rejected too.
  std::string bad = nested;
  bad.insert(bad.find("\"angle\""), "\"spin\": 1, ");
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
}

TEST_CASE("run_experiment: scaling oracle run") {
  const ExperimentResult result = run_experiment(parse_config(kScalingConfig));
  CHECK(result.pass);
  REQUIRE(result.trajectory.xs.size() == 4);
  CHECK(result.trajectory.x(0)[0] == 1.0);
  CHECK(result.trajectory.x(1)[0] == 0.5);
  CHECK(result.trajectory.x(2)[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(result.trajectory.x(3)[0] == 0.25);
  REQUIRE(result.witness.has_value());
  CHECK(result.witness->point == Point{0.0});
  CHECK(result.checks.size() == 3);  // nonexpansiveness, coupling, domination
  for (const CheckOutcome& outcome : result.checks)
    CHECK(outcome.status == CheckStatus::Passed);
  CHECK(result.duration_seconds >= 0.0);
}

TEST_CASE("run_experiment: stationary run passes trivially") {
  const ExperimentResult result = run_experiment(parse_config(R"({
    "space": {"kind": "euclidean", "dimension": 2},
    "map": {"kind": "rotation", "angle": 1.0, "center": [0, 0]},
    "u": [0, 0], "x0": [0, 0],
    "schedule": {"kind": "harmonic"}, "horizon": 10,
    "checks": {"convergence_threshold": 0.5}
  })"));
  CHECK(result.pass);
  for (double step : result.trajectory.x_steps) CHECK(step == 0.0);
}

TEST_CASE("run_experiment: injected expansion fails the guard") {
  const ExperimentResult result = run_experiment(parse_config(R"({
    "space": {"kind": "euclidean", "dimension": 2},
    "map": {"kind": "affine", "matrix": [[2, 0], [0, 2]]},
    "u": [1, 0], "x0": [0, 1],
    "schedule": {"kind": "harmonic"}, "horizon": 40,
    "unsafe_skip_validation": true
  })"));
  CHECK_FALSE(result.pass);
  bool found = false;
  for (const CheckOutcome& outcome : result.checks) {
    if (outcome.name == "nonexpansiveness") {
      found = true;
      CHECK(outcome.status == CheckStatus::Failed);
      CHECK(outcome.details["max_ratio"].get<double>() > 1.9);
    }
  }
  CHECK(found);
}

TEST_CASE("run_experiment: convergence check and constant-lambda warning") {
  const ExperimentResult result = run_experiment(parse_config(R"({
    "space": {"kind": "euclidean", "dimension": 1},
    "map": {"kind": "scaling", "factor": 0.5, "center": [0]},
    "u": [1], "x0": [1],
    "schedule": {"kind": "constant", "value": 0.5}, "horizon": 200,
    "checks": {"convergence_threshold": 0.01}
  })"));
  // Constant lambda stalls: x_n -> lambda/(1+lambda) = 1/3, far above 0.01,
  // so the y series never settles and the check passes vacuously.
  CHECK(result.pass);
  CHECK_FALSE(result.warnings.empty());
  bool found = false;
  for (const CheckOutcome& outcome : result.checks) {
    if (outcome.name == "convergence") {
      found = true;
      CHECK(outcome.status == CheckStatus::Passed);
      CHECK(outcome.details["y_settle_index"].is_null());
    }
  }
  CHECK(found);

  // With the harmonic schedule the same run settles and transfers.
  const ExperimentResult harmonic = run_experiment(parse_config(R"({
    "space": {"kind": "euclidean", "dimension": 1},
    "map": {"kind": "scaling", "factor": 0.5, "center": [0]},
    "u": [1], "x0": [1],
    "schedule": {"kind": "harmonic"}, "horizon": 500,
    "checks": {"convergence_threshold": 0.01}
  })"));
  CHECK(harmonic.pass);
  CHECK(harmonic.warnings.empty());
  for (const CheckOutcome& outcome : harmonic.checks) {
    if (outcome.name == "convergence") {
      CHECK(outcome.status == CheckStatus::Passed);
      CHECK_FALSE(outcome.details["y_settle_index"].is_null());
    }
  }
}

TEST_CASE("run_experiment: convergence check skipped without witness") {
  const ExperimentResult result = run_experiment(parse_config(R"({
    "space": {"kind": "euclidean", "dimension": 2},
    "map": {"kind": "compose", "maps": [
      {"kind": "rotation", "angle": 1.0, "center": [0, 0]},
      {"kind": "scaling", "factor": 0.5, "center": [0, 0]}]},
    "u": [1, 0], "x0": [0, 1],
    "schedule": {"kind": "harmonic"}, "horizon": 50,
    "checks": {"convergence_threshold": 0.01}
  })"));
  CHECK(result.pass);  // skipped is not failed
  bool found = false;
  for (const CheckOutcome& outcome : result.checks) {
    if (outcome.name == "convergence") {
      found = true;
      CHECK(outcome.status == CheckStatus::Skipped);
    }
  }
  CHECK(found);
}

TEST_CASE("emit artifacts: layout, determinism, round-trip") {
  TempDir tmp;
  ExperimentConfig config = parse_config(kScalingConfig);
  const ExperimentResult result = run_experiment(config);

  const auto csv_path = tmp.path / "series.csv";
  const auto json_path = tmp.path / "result.json";
  emit_csv(result, csv_path.string());
  emit_json(result, json_path.string());

  // CSV: header + one row per iterate; y columns empty at n = 0.
  const std::string csv = read_file(csv_path);
  std::istringstream lines(csv);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 5);  // header + 4 data rows
  CHECK(rows[0] == "n,x0,y0,step_x,step_y,dist_x_p,dist_y_p");
  CHECK(rows[1] == "0,1,,0.5,,1,");
  CHECK(rows[2].substr(0, 2) == "1,");
  // Row n = 1: x = 0.5, y = 1, step_x = 1/6, step_y = 1/3, dists 0.5 and 1.
  CHECK(rows[2].find(",0.5,1,") != std::string::npos);

  // Determinism: emitting again gives identical bytes.
  const auto csv2_path = tmp.path / "series2.csv";
  const auto json2_path = tmp.path / "result2.json";
  const ExperimentResult again = run_experiment(config);
  emit_csv(again, csv2_path.string());
  emit_json(again, json2_path.string());
  CHECK(read_file(csv_path) == read_file(csv2_path));
  CHECK(read_file(json_path) == read_file(json2_path));

  // JSON round-trip: numbers reparse to identical values, config echo
  // reparses to the same canonical form.
  const Json doc = Json::parse(read_file(json_path));
  CHECK(doc["verdict"] == "pass");
  CHECK(doc["summary"]["final_x"][0].get<double>() == 0.25);
  CHECK(doc["summary"]["final_y"][0].get<double>() == 0.5);
  const ExperimentConfig reparsed = parse_config(doc["config"].dump());
  CHECK(config_to_json(reparsed) == doc["config"]);
  // Duration never lands in the artifact.
  CHECK_FALSE(doc.contains("duration_seconds"));

  // I/O failure path.
  CHECK_THROWS_AS(
      emit_csv(result, (tmp.path / "missing" / "series.csv").string()),
      IoError);
}

TEST_CASE("csv columns without a witness") {
  TempDir tmp;
  const ExperimentResult result = run_experiment(parse_config(R"({
    "space": {"kind": "euclidean", "dimension": 2},
    "map": {"kind": "compose", "maps": [
      {"kind": "rotation", "angle": 1.0, "center": [0, 0]},
      {"kind": "rotation", "angle": -0.3, "center": [0, 0]}]},
    "u": [1, 0], "x0": [0, 1],
    "schedule": {"kind": "harmonic"}, "horizon": 5
  })"));
  const auto path = tmp.path / "series.csv";
  emit_csv(result, path.string());
  std::istringstream lines(read_file(path));
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,x0,x1,y0,y1,step_x,step_y");
}

TEST_CASE("schedule sweep: harmonic approaches p, constant lambda stalls") {
  // For the 1-D half-scaling map with constant lambda = c the iteration has
  // the closed-form limit c/(1+c); with the harmonic schedule it reaches 0.
  auto run_with = [](const std::string& schedule) {
    ExperimentConfig config = parse_config(std::string(R"({
      "space": {"kind": "euclidean", "dimension": 1},
      "map": {"kind": "scaling", "factor": 0.5, "center": [0]},
      "u": [1], "x0": [1],
      "schedule": )") + schedule + R"(, "horizon": 2000})");
    return run_experiment(config);
  };
  const ExperimentResult harmonic = run_with(R"({"kind": "harmonic"})");
  const ExperimentResult constant =
      run_with(R"({"kind": "constant", "value": 0.5})");
  CHECK(harmonic.pass);
  CHECK(constant.pass);

  const Space e1 = Space::euclidean(1);
  const double harmonic_final =
      distance(e1, harmonic.trajectory.xs.back(), {0.0});
  const double constant_final =
      distance(e1, constant.trajectory.xs.back(), {0.0});
  CHECK(harmonic_final < constant_final);
  CHECK(harmonic_final == doctest::Approx(1.0 / 2001).epsilon(1e-9));
  CHECK(constant_final == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("catalog json lists every kind") {
  const Json catalog = Json::parse(catalog_json());
  CHECK(catalog["spaces"].size() == 2);
  CHECK(catalog["maps"].size() == 7);
  CHECK(catalog["schedules"].size() == 4);
}
