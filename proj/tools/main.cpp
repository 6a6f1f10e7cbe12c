// altfp command line: run / verify / sweep experiments and list the catalog.
// Links the shared C API only.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "altfp/altfp.h"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct ConfigDeleter {
  void operator()(altfp_config* c) const { altfp_config_destroy(c); }
};
struct ResultDeleter {
  void operator()(altfp_result* r) const { altfp_result_destroy(r); }
};
using ConfigPtr = std::unique_ptr<altfp_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<altfp_result, ResultDeleter>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  altfp_string_destroy(s);
  return out;
}

[[noreturn]] void die_usage(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  std::exit(kExitUsage);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) die_usage("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Flags shared by run/verify/sweep.
struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;
  std::int64_t horizon = -1;
  double tol_euclid = -1;
  double tol_hyp = -1;
  std::string epsilon_grid;
  bool unsafe_skip_validation = false;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool with_out_dir) {
  cmd->add_option("config", opts.config_path, "experiment config (JSON)")
      ->required();
  if (with_out_dir)
    cmd->add_option("--out-dir", opts.out_dir,
                    "directory for result.json / series.csv");
  cmd->add_option("--seed", opts.seed, "override the sampling seed")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--horizon", opts.horizon, "override the horizon N")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-euclid", opts.tol_euclid,
                  "override the Euclidean tolerance");
  cmd->add_option("--tol-hyp", opts.tol_hyp,
                  "override the hyperbolic tolerance");
  cmd->add_option("--epsilon-grid", opts.epsilon_grid,
                  "comma-separated decreasing epsilons");
  cmd->add_flag("--unsafe-skip-validation", opts.unsafe_skip_validation,
                "UNSAFE: bypass map construction guards so invalid maps reach "
                "the runtime checks (for exercising failure paths)");
}

ConfigPtr load_config(const CommonOptions& opts) {
  std::string text = read_file(opts.config_path);
  if (opts.unsafe_skip_validation) {
    // Flag form of the config key; injected before parsing so map
    // construction sees it.
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      die_usage(std::string("config parse error: ") + e.what());
    }
    doc["unsafe_skip_validation"] = true;
    text = doc.dump();
  }

  altfp_config* raw = nullptr;
  if (altfp_config_parse(text.c_str(), &raw) != ALTFP_OK)
    die_usage(altfp_last_error());
  ConfigPtr config(raw);

  if (opts.seed >= 0 &&
      altfp_config_set_seed(config.get(), static_cast<uint64_t>(opts.seed)) !=
          ALTFP_OK)
    die_usage(altfp_last_error());
  if (opts.horizon >= 0 &&
      altfp_config_set_horizon(config.get(),
                               static_cast<uint64_t>(opts.horizon)) != ALTFP_OK)
    die_usage(altfp_last_error());
  if (opts.tol_euclid >= 0 &&
      altfp_config_set_tolerance(config.get(), "euclidean", opts.tol_euclid) !=
          ALTFP_OK)
    die_usage(altfp_last_error());
  if (opts.tol_hyp >= 0 &&
      altfp_config_set_tolerance(config.get(), "hyperbolic", opts.tol_hyp) !=
          ALTFP_OK)
    die_usage(altfp_last_error());
  if (!opts.epsilon_grid.empty()) {
    std::vector<double> values;
    std::stringstream stream(opts.epsilon_grid);
    std::string item;
    while (std::getline(stream, item, ',')) {
      try {
        values.push_back(std::stod(item));
      } catch (const std::logic_error&) {
        die_usage("--epsilon-grid: bad number '" + item + "'");
      }
    }
    if (altfp_config_set_epsilon_grid(config.get(), values.data(),
                                      values.size()) != ALTFP_OK)
      die_usage(altfp_last_error());
  }
  if (!opts.out_dir.empty() &&
      altfp_config_set_output_dir(config.get(), opts.out_dir.c_str()) !=
          ALTFP_OK)
    die_usage(altfp_last_error());
  return config;
}

json result_document(const altfp_result* result) {
  char* raw = nullptr;
  if (altfp_result_json(result, &raw) != ALTFP_OK)
    die_usage(altfp_last_error());
  return json::parse(take_string(raw));
}

void print_summary(const json& doc, double duration) {
  for (const json& check : doc["checks"]) {
    std::cout << "  [" << check["status"].get<std::string>() << "] "
              << check["name"].get<std::string>();
    const json& details = check["details"];
    if (details.contains("max_ratio"))
      std::cout << "  max_ratio=" << details["max_ratio"].dump();
    if (details.contains("max_dev_replay"))
      std::cout << "  max_dev=" << details["max_dev_mapped"].dump() << "/"
                << details["max_dev_recurrence"].dump() << "/"
                << details["max_dev_replay"].dump();
    if (details.contains("max_pair_slack"))
      std::cout << "  max_slack=" << details["max_pair_slack"].dump();
    if (details.contains("max_step_slack"))
      std::cout << "  max_step_slack=" << details["max_step_slack"].dump()
                << " (horizon " << details["horizon"].dump() << ")";
    std::cout << '\n';
  }
  for (const json& warning : doc["warnings"])
    std::cout << "  warning: " << warning.get<std::string>() << '\n';
  const json& summary = doc["summary"];
  std::cout << "  final step_x=" << summary["final_x_step"].dump();
  if (!summary["fixed_point"].is_null())
    std::cout << "  d(x_N,p)=" << summary["final_x_dist"].dump()
              << "  d(y_N,p)=" << summary["final_y_dist"].dump();
  std::cout << "\n  verdict: " << doc["verdict"].get<std::string>() << "  ("
            << duration << "s)\n";
}

int run_checks_and_report(const altfp_config* config, bool write_files) {
  altfp_result* raw = nullptr;
  const altfp_status status = altfp_run_experiment(config, &raw);
  if (status != ALTFP_OK) die_usage(altfp_last_error());
  ResultPtr result(raw);

  const json doc = result_document(result.get());
  print_summary(doc, altfp_result_duration_seconds(result.get()));

  if (write_files) {
    const json& output = doc["config"]["output"];
    const std::filesystem::path dir = output["dir"].get<std::string>();
    const auto json_path = dir / output["json"].get<std::string>();
    const auto csv_path = dir / output["csv"].get<std::string>();
    if (altfp_result_write_json(result.get(), json_path.c_str()) != ALTFP_OK)
      die_usage(altfp_last_error());
    if (altfp_result_write_csv(result.get(), csv_path.c_str()) != ALTFP_OK)
      die_usage(altfp_last_error());
    std::cout << "  wrote " << json_path.string() << ", " << csv_path.string()
              << '\n';
  }
  return altfp_result_verdict(result.get()) ? kExitPass : kExitCheckFailed;
}

int cmd_sweep(const CommonOptions& opts, const std::string& schedules) {
  if (schedules.empty()) die_usage("sweep: --schedules is required");
  ConfigPtr base = load_config(opts);

  std::vector<std::string> names;
  std::stringstream stream(schedules);
  std::string item;
  while (std::getline(stream, item, ',')) names.push_back(item);

  bool all_pass = true;
  std::cout << "schedule        verdict  final_step_x      final_dist_x_p\n";
  for (const std::string& name : names) {
    altfp_config* cloned = nullptr;
    if (altfp_config_clone(base.get(), &cloned) != ALTFP_OK)
      die_usage(altfp_last_error());
    ConfigPtr config(cloned);
    if (altfp_config_set_schedule(config.get(), name.c_str()) != ALTFP_OK)
      die_usage(altfp_last_error());

    altfp_result* raw = nullptr;
    if (altfp_run_experiment(config.get(), &raw) != ALTFP_OK)
      die_usage(altfp_last_error());
    ResultPtr result(raw);
    const json doc = result_document(result.get());
    const json& summary = doc["summary"];

    std::cout << name;
    for (std::size_t i = name.size(); i < 16; ++i) std::cout << ' ';
    std::cout << (altfp_result_verdict(result.get()) ? "pass" : "FAIL")
              << "     " << summary["final_x_step"].dump();
    if (!summary["fixed_point"].is_null())
      std::cout << "      " << summary["final_x_dist"].dump();
    std::cout << '\n';
    if (!altfp_result_verdict(result.get())) all_pass = false;
  }
  return all_pass ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anchored fixed-point iteration lab (library version " +
               std::string(altfp_version()) + ")"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  CLI::App* run = app.add_subcommand(
      "run", "run an experiment and write result.json / series.csv");
  add_common_flags(run, run_opts, true);

  CommonOptions verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the checks only; no files are written");
  add_common_flags(verify, verify_opts, false);

  CommonOptions sweep_opts;
  std::string sweep_schedules;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "re-run one config across several schedules");
  add_common_flags(sweep, sweep_opts, false);
  sweep->add_option("--schedules", sweep_schedules,
                    "comma-separated shorthands, e.g. harmonic,constant:0.5");

  CLI::App* catalog = app.add_subcommand(
      "catalog", "list supported spaces, maps and schedules");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  if (run->parsed()) {
    ConfigPtr config = load_config(run_opts);
    std::cout << "run " << run_opts.config_path << '\n';
    return run_checks_and_report(config.get(), true);
  }
  if (verify->parsed()) {
    ConfigPtr config = load_config(verify_opts);
    std::cout << "verify " << verify_opts.config_path << '\n';
    return run_checks_and_report(config.get(), false);
  }
  if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_schedules);
  if (catalog->parsed()) {
    char* raw = nullptr;
    if (altfp_catalog_json(&raw) != ALTFP_OK) die_usage(altfp_last_error());
    std::cout << take_string(raw) << '\n';
    return kExitPass;
  }
  return kExitUsage;
}
