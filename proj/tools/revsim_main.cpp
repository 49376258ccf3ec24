// revsim: discrete-event simulator for human content-review queues.
//
//   revsim run      --config scenario.json --out out/
//   revsim sweep    --config scenario.json --param queues.q1.formula.alpha \
//                   --values 0,0.5,1 --seeds 1,2,3 --out out/
//   revsim compare  --config-a a.json --config-b b.json --out out/
//   revsim validate --config scenario.json

#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "revsim/cli.hpp"

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("REVSIM_OUT_DIR");
  return env && *env ? env : "out";
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  for (auto piece : revsim::split(csv, ','))
    if (!revsim::trim(piece).empty()) out.push_back(std::stod(std::string(revsim::trim(piece))));
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& csv) {
  std::vector<std::uint64_t> out;
  for (auto piece : revsim::split(csv, ','))
    if (!revsim::trim(piece).empty()) out.push_back(std::stoull(std::string(revsim::trim(piece))));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"review-queue discrete-event simulator"};
  app.require_subcommand(1);

  revsim::cli::RunOpts run_opts;
  run_opts.out_dir = default_out_dir();
  std::int64_t run_seed = -1;
  bool no_events = false;
  auto* run = app.add_subcommand("run", "simulate one scenario and write artifacts");
  run->add_option("--config", run_opts.config_path, "scenario config file")->required();
  run->add_option("--out", run_opts.out_dir, "output directory");
  run->add_option("--seed", run_seed, "override scenario seed");
  run->add_option("--mode", run_opts.mode, "replay or counterfactual");
  run->add_flag("--no-events", no_events, "skip writing events.ndjson");
  run->add_flag("--quiet", run_opts.quiet, "suppress the summary line");

  revsim::cli::SweepOpts sweep_opts;
  sweep_opts.out_dir = default_out_dir();
  std::string sweep_values, sweep_seeds;
  bool sweep_events = false;
  auto* sw = app.add_subcommand("sweep", "run one scenario across a parameter grid");
  sw->add_option("--config", sweep_opts.config_path, "base scenario config file")->required();
  sw->add_option("--param", sweep_opts.param, "dotted parameter path, e.g. queues.q1.formula.alpha")
      ->required();
  sw->add_option("--values", sweep_values, "comma-separated values")->required();
  sw->add_option("--seeds", sweep_seeds, "comma-separated seeds (default: 1)");
  sw->add_option("--jobs", sweep_opts.jobs, "concurrent runs");
  sw->add_option("--out", sweep_opts.out_dir, "output directory");
  sw->add_option("--mode", sweep_opts.mode, "replay or counterfactual");
  sw->add_flag("--events", sweep_events, "also write per-point events.ndjson");
  sw->add_flag("--quiet", sweep_opts.quiet, "suppress the summary line");

  revsim::cli::CompareOpts cmp_opts;
  cmp_opts.out_dir = default_out_dir();
  auto* cmp = app.add_subcommand("compare", "run two scenarios on the same jobs and diff the metrics");
  cmp->add_option("--config-a", cmp_opts.config_a, "baseline scenario")->required();
  cmp->add_option("--config-b", cmp_opts.config_b, "candidate scenario")->required();
  cmp->add_option("--out", cmp_opts.out_dir, "output directory");
  cmp->add_flag("--quiet", cmp_opts.quiet, "suppress the summary line");

  std::string validate_config;
  auto* val = app.add_subcommand("validate", "schema and reference checks without running");
  val->add_option("--config", validate_config, "scenario config file")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    if (run_seed >= 0) run_opts.seed = static_cast<std::uint64_t>(run_seed);
    run_opts.write_events = !no_events;
    return revsim::cli::cmd_run(run_opts);
  }
  if (sw->parsed()) {
    try {
      sweep_opts.values = parse_values(sweep_values);
      sweep_opts.seeds = parse_seeds(sweep_seeds);
    } catch (const std::exception&) {
      std::cerr << "config error: bad --values/--seeds list\n";
      return revsim::cli::kExitConfig;
    }
    sweep_opts.write_events = sweep_events;
    return revsim::cli::cmd_sweep(sweep_opts);
  }
  if (cmp->parsed()) return revsim::cli::cmd_compare(cmp_opts);
  if (val->parsed()) return revsim::cli::cmd_validate(validate_config);
  return revsim::cli::kExitConfig;
}
