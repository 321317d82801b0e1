// pmproc command-line driver. All numerical work happens behind the C API;
// this binary only assembles configurations and reports results.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmproc/pmproc.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // runtime or verification failure
constexpr int kExitUsage = 2;    // usage / configuration error

int exit_code_for(pmproc_status status) {
  switch (status) {
    case PMPROC_OK:
      return kExitOk;
    case PMPROC_ERR_INVALID_DIMENSION:
    case PMPROC_ERR_INVALID_CONFIG:
    case PMPROC_ERR_UNKNOWN_SELECTOR:
    case PMPROC_ERR_PARSE:
    case PMPROC_ERR_DOMAIN:
    case PMPROC_ERR_NULL_ARGUMENT:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

int report_error(pmproc_status status) {
  std::cerr << "error: " << pmproc_status_message(status);
  const char* detail = pmproc_last_error();
  if (detail != nullptr && detail[0] != '\0') std::cerr << ": " << detail;
  std::cerr << "\n";
  return exit_code_for(status);
}

std::optional<uint64_t> env_seed() {
  const char* raw = std::getenv("PMPROC_SEED");
  if (raw == nullptr || raw[0] == '\0') return std::nullopt;
  try {
    return std::stoull(raw);
  } catch (const std::exception&) {
    std::cerr << "warning: ignoring unparsable PMPROC_SEED='" << raw << "'\n";
    return std::nullopt;
  }
}

struct SweepArgs {
  std::string config_path;
  std::vector<int> r_values;
  std::vector<int> n_offsets;
  std::vector<uint64_t> seeds;
  std::optional<long> t_max;
  std::optional<double> step;
  std::optional<int> restarts;
  std::optional<int> restarts_full;
  std::optional<int> restarts_sub;
  std::optional<int> workers;
  bool timing = false;
  std::string out_dir;
};

int run_sweep_cmd(const SweepArgs& args) {
  json cfg = json::object();
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) {
      std::cerr << "error: cannot read config file: " << args.config_path << "\n";
      return kExitUsage;
    }
    try {
      in >> cfg;
    } catch (const json::exception& e) {
      std::cerr << "error: bad config JSON: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  // Flags always win over the config file; the env seed is only a fallback.
  if (!args.r_values.empty()) cfg["r_values"] = args.r_values;
  if (!args.n_offsets.empty()) cfg["n_offsets"] = args.n_offsets;
  if (!args.seeds.empty()) {
    cfg["seeds"] = args.seeds;
  } else if (!cfg.contains("seeds")) {
    if (auto seed = env_seed()) cfg["seeds"] = std::vector<uint64_t>{*seed};
  }
  if (args.t_max) cfg["t_max"] = *args.t_max;
  if (args.step) cfg["step"] = *args.step;
  if (args.restarts) {
    cfg["restarts_full"] = *args.restarts;
    cfg["restarts_sub"] = *args.restarts;
  }
  if (args.restarts_full) cfg["restarts_full"] = *args.restarts_full;
  if (args.restarts_sub) cfg["restarts_sub"] = *args.restarts_sub;
  if (args.workers) cfg["workers"] = *args.workers;
  if (args.timing) cfg["record_timing"] = true;
  if (!args.out_dir.empty()) cfg["output_dir"] = args.out_dir;

  std::string text = cfg.dump();
  std::vector<char> csv_path(4096, '\0');
  pmproc_status status =
      pmproc_run_sweep(text.c_str(), csv_path.data(), csv_path.size());
  if (status != PMPROC_OK) return report_error(status);
  std::cout << csv_path.data() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projective-measurement Procrustes experiments"};
  app.set_version_flag("--version", std::string(pmproc_version()));
  app.require_subcommand(1);

  // sweep
  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "estimate the suboptimality ratio over an (r, n) grid");
  sweep_cmd->add_option("--config", sweep.config_path, "JSON config file");
  sweep_cmd->add_option("--r", sweep.r_values, "subspace dimensions");
  sweep_cmd->add_option("--n-offset", sweep.n_offsets, "ambient offsets (n = r + offset)");
  sweep_cmd->add_option("--seed", sweep.seeds, "sweep seeds");
  long t_max_opt = 0;
  double step_opt = 0;
  int restarts_opt = 0, restarts_full_opt = 0, restarts_sub_opt = 0, workers_opt = -1;
  auto* tmax_flag = sweep_cmd->add_option("--tmax", t_max_opt, "iterations per ascent");
  auto* step_flag = sweep_cmd->add_option("--step", step_opt, "ascent step size");
  auto* restarts_flag =
      sweep_cmd->add_option("--restarts", restarts_opt, "restarts for both sides");
  auto* rfull_flag = sweep_cmd->add_option("--restarts-full", restarts_full_opt,
                                           "full-space restarts");
  auto* rsub_flag = sweep_cmd->add_option("--restarts-sub", restarts_sub_opt,
                                          "subspace restarts");
  auto* workers_flag = sweep_cmd->add_option("--workers", workers_opt,
                                             "worker threads (0 = hardware)");
  sweep_cmd->add_flag("--timing", sweep.timing,
                      "record wall times in the CSV (breaks byte-for-byte "
                      "reproducibility)");
  sweep_cmd->add_option("--out", sweep.out_dir, "output directory (must exist)");

  // verify
  std::string suite = "all";
  uint64_t verify_seed = env_seed().value_or(42);
  std::string verify_out = "verify_report.json";
  auto* verify_cmd =
      app.add_subcommand("verify", "run the numerical verification campaigns");
  verify_cmd->add_option("--suite", suite,
                         "frames | randomization | inequalities | all");
  verify_cmd->add_option("--seed", verify_seed, "campaign seed");
  verify_cmd->add_option("--out", verify_out, "JSON report path");

  // plot
  std::string plot_csv, plot_svg = "khat.svg";
  auto* plot_cmd = app.add_subcommand("plot", "render sweep results as SVG");
  plot_cmd->add_option("--csv", plot_csv, "results CSV")->required();
  plot_cmd->add_option("--out", plot_svg, "SVG output path");

  // decompose
  int dec_n = 8, dec_r = 2;
  uint64_t dec_seed = env_seed().value_or(42);
  long dec_budget = 1;
  std::string dec_out = "decomposition.json";
  auto* dec_cmd = app.add_subcommand(
      "decompose", "dump the frame decomposition of a seeded measurement");
  dec_cmd->add_option("--n", dec_n, "ambient dimension");
  dec_cmd->add_option("--r", dec_r, "subspace dimension");
  dec_cmd->add_option("--seed", dec_seed, "seed");
  dec_cmd->add_option("--budget", dec_budget,
                      "partition search budget (1 = identity partition only)");
  dec_cmd->add_option("--out", dec_out, "JSON output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  if (sweep_cmd->parsed()) {
    if (*tmax_flag) sweep.t_max = t_max_opt;
    if (*step_flag) sweep.step = step_opt;
    if (*restarts_flag) sweep.restarts = restarts_opt;
    if (*rfull_flag) sweep.restarts_full = restarts_full_opt;
    if (*rsub_flag) sweep.restarts_sub = restarts_sub_opt;
    if (*workers_flag) sweep.workers = workers_opt;
    return run_sweep_cmd(sweep);
  }

  if (verify_cmd->parsed()) {
    int64_t failures = 0;
    pmproc_status status =
        pmproc_run_verify(suite.c_str(), verify_seed, verify_out.c_str(), &failures);
    if (status != PMPROC_OK) return report_error(status);
    std::cout << "report: " << verify_out << "\n";
    std::cout << "failures: " << failures << "\n";
    return failures == 0 ? kExitOk : kExitFailure;
  }

  if (plot_cmd->parsed()) {
    pmproc_status status = pmproc_emit_plot(plot_csv.c_str(), plot_svg.c_str());
    if (status != PMPROC_OK) return report_error(status);
    std::cout << plot_svg << "\n";
    return kExitOk;
  }

  if (dec_cmd->parsed()) {
    pmproc_status status =
        pmproc_decompose(dec_n, dec_r, dec_seed, dec_budget, dec_out.c_str());
    if (status != PMPROC_OK) return report_error(status);
    std::cout << dec_out << "\n";
    return kExitOk;
  }

  return kExitUsage;
}
