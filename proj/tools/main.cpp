#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "curricula/compare.hpp"
#include "curricula/config.hpp"
#include "curricula/curricula/constant.hpp"
#include "curricula/envs/task_env.hpp"
#include "curricula/errors.hpp"
#include "curricula/learner/trainer.hpp"
#include "curricula/sync/bench.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitConservation = 3;

int log_level() {
  const char* level = std::getenv("CURRICULA_LOG");
  if (!level) return 1;  // warn
  const std::string l = level;
  if (l == "error") return 0;
  if (l == "warn") return 1;
  if (l == "info") return 2;
  if (l == "debug") return 3;
  return 1;
}

void log_info(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[curricula] " << msg << "\n";
}

struct TrainArgs {
  std::string config_path;
  std::string output_dir;
  std::vector<std::uint64_t> seeds;
  std::int64_t episodes = -1;
  int workers = -1;
  int delay = -1;
  int threaded = -1;
};

curricula::ExperimentConfig load_with_overrides(const TrainArgs& args) {
  auto cfg = curricula::ExperimentConfig::load(args.config_path);
  if (!args.output_dir.empty()) cfg.output_dir = args.output_dir;
  if (!args.seeds.empty()) cfg.seeds = args.seeds;
  if (args.episodes > 0) cfg.total_episodes = args.episodes;
  if (args.workers > 0) cfg.workers = args.workers;
  if (args.delay >= 0) cfg.sync.delay = args.delay;
  if (args.threaded >= 0) cfg.sync.threaded = args.threaded != 0;
  if (const char* env_seed = std::getenv("CURRICULA_SEED")) {
    cfg.seeds = {std::strtoull(env_seed, nullptr, 10)};
  }
  return cfg;
}

int cmd_train(const TrainArgs& args) {
  const auto cfg = load_with_overrides(args);
  nlohmann::json per_seed = nlohmann::json::array();
  double mean_return = 0.0;
  double mean_success = 0.0;
  bool conserved = true;
  for (const auto seed : cfg.seeds) {
    const auto out_dir =
        std::filesystem::path(cfg.output_dir) / ("seed_" + std::to_string(seed));
    log_info("training seed " + std::to_string(seed) + " -> " +
             out_dir.string());
    const auto result = curricula::run_training(cfg, seed, out_dir);
    mean_return += result.final_mean_return;
    mean_success += result.final_success_rate;
    conserved = conserved && result.report.conserved();
    per_seed.push_back({{"seed", seed},
                        {"final_mean_return", result.final_mean_return},
                        {"final_success_rate", result.final_success_rate},
                        {"metrics", result.metrics_csv.string()}});
  }
  const auto n = static_cast<double>(cfg.seeds.size());
  nlohmann::json summary = {
      {"curriculum", cfg.curriculum.at("type")},
      {"final_mean_return", mean_return / n},
      {"final_success_rate", mean_success / n},
      {"seeds", per_seed},
  };
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream out(std::filesystem::path(cfg.output_dir) / "summary.json");
  out << summary.dump(2) << "\n";
  std::cout << summary.dump(2) << "\n";
  return conserved ? kExitOk : kExitConservation;
}

int cmd_eval(const std::string& checkpoint_path, const TrainArgs& args,
             const std::string& render) {
  const auto cfg = load_with_overrides(args);
  auto env = curricula::make_env(cfg.env);
  std::ifstream in(checkpoint_path, std::ios::binary);
  if (!in)
    throw curricula::ConfigError("cannot open checkpoint " + checkpoint_path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  auto policy = curricula::TabularPolicy::deserialize(bytes);
  auto eval_cfg = cfg.learner.eval;
  eval_cfg.seed = cfg.seeds.front() * 7919 + 5;
  if (render == "text") {
    // debugging view: the initial state of the first few tasks
    const auto& space = env->task_space();
    const auto n = std::min<std::int64_t>(space.cardinality(), 3);
    for (std::int64_t i = 0; i < n; ++i) {
      env->reset(space.from_flat(i));
      std::cerr << "task " << space.decode(space.from_flat(i)).to_string()
                << "\n"
                << env->render_text() << "\n";
    }
  }
  const auto rates = curricula::evaluate(policy, *env, eval_cfg);
  double sum = 0.0;
  for (double r : rates) sum += r;
  nlohmann::json summary = {
      {"checkpoint", checkpoint_path},
      {"tasks", rates.size()},
      {"mean_success_rate", sum / static_cast<double>(rates.size())},
      {"success_rates", rates},
  };
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

int cmd_bench(const TrainArgs& args, int episodes) {
  const auto cfg = load_with_overrides(args);
  const auto env_spec = cfg.env;
  auto space = curricula::make_env(env_spec)->task_space();
  const auto result = curricula::bench_overhead(
      [env_spec] { return curricula::make_env(env_spec); },
      [space]() -> std::shared_ptr<curricula::Curriculum> {
        return std::make_shared<curricula::Constant>(space, space.from_flat(0));
      },
      cfg.workers, episodes);
  std::printf("%-22s %10s %10s\n", "mode", "seconds", "overhead");
  std::printf("%-22s %10.3f %10s\n", "baseline", result.baseline_s, "-");
  std::printf("%-22s %10.3f %+9.1f%%\n", "episodic updates", result.episodic_s,
              result.episodic_overhead_pct());
  std::printf("%-22s %10.3f %+9.1f%%\n", "step updates", result.step_s,
              result.step_overhead_pct());
  return kExitOk;
}

int cmd_compare(const std::vector<std::string>& run_dirs,
                const std::string& out_path, const std::string& column) {
  std::vector<curricula::RunSeries> runs;
  for (const auto& dir : run_dirs) {
    auto csv = std::filesystem::path(dir);
    if (std::filesystem::is_directory(csv)) csv /= "metrics.csv";
    runs.push_back(curricula::load_metrics_series(csv, column));
  }
  const auto rows = curricula::compare_runs(runs);
  const auto csv_text = curricula::render_compare_csv(rows, runs.size() > 1);
  if (out_path.empty()) {
    std::cout << csv_text;
  } else {
    std::ofstream out(out_path);
    out << csv_text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curriculum learning experiment runner"};
  app.require_subcommand(1);

  TrainArgs args;

  auto* train = app.add_subcommand("train", "Run training per config seed");
  train->add_option("-c,--config", args.config_path, "Experiment config JSON")
      ->required();
  train->add_option("-o,--output-dir", args.output_dir, "Override output_dir");
  train->add_option("-s,--seed", args.seeds, "Override config seeds");
  train->add_option("-e,--episodes", args.episodes, "Override total_episodes");
  train->add_option("-w,--workers", args.workers, "Override workers");
  train->add_option("--delay", args.delay, "Override sync delay");
  train->add_option("--threaded", args.threaded,
                    "1: threaded service, 0: direct-call mode");

  std::string checkpoint;
  std::string render;
  auto* eval = app.add_subcommand(
      "eval", "Evaluate a checkpoint uniformly over the task space");
  eval->add_option("checkpoint", checkpoint, "policy.bin path")->required();
  eval->add_option("-c,--config", args.config_path, "Experiment config JSON")
      ->required();
  eval->add_option("--render", render,
                   "\"text\": print the first tasks' state for debugging");

  int bench_episodes = 500;
  auto* bench =
      app.add_subcommand("bench", "Measure synchronization overhead");
  bench->add_option("-c,--config", args.config_path, "Experiment config JSON")
      ->required();
  bench->add_option("-w,--workers", args.workers, "Override workers");
  bench->add_option("-e,--episodes", bench_episodes, "Episodes per worker");

  std::vector<std::string> run_dirs;
  std::string compare_out;
  std::string compare_column = "return";
  auto* compare = app.add_subcommand(
      "compare", "Aggregate runs into mean and bootstrap CI columns");
  compare->add_option("runs", run_dirs, "Run directories or metrics CSVs")
      ->required();
  compare->add_option("-o,--out", compare_out, "Output CSV path");
  compare->add_option("--column", compare_column, "Metrics column to aggregate");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) return cmd_train(args);
    if (*eval) return cmd_eval(checkpoint, args, render);
    if (*bench) return cmd_bench(args, bench_episodes);
    if (*compare) return cmd_compare(run_dirs, compare_out, compare_column);
  } catch (const curricula::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const curricula::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
