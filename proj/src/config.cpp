#include "curricula/config.hpp"

#include <fstream>

#include "curricula/curricula/annealing.hpp"
#include "curricula/curricula/constant.hpp"
#include "curricula/curricula/domain_randomization.hpp"
#include "curricula/curricula/learning_progress.hpp"
#include "curricula/curricula/omni.hpp"
#include "curricula/curricula/plr.hpp"
#include "curricula/curricula/sequential.hpp"
#include "curricula/curricula/sfl.hpp"
#include "curricula/envs/duel.hpp"
#include "curricula/envs/seeded_grid.hpp"
#include "curricula/envs/simon_says.hpp"
#include "curricula/errors.hpp"

namespace curricula {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::string require_type(const json& spec, const char* what) {
  if (!spec.is_object() || !spec.contains("type"))
    throw ConfigError(std::string(what) + " spec needs a \"type\" field");
  return spec.at("type").get<std::string>();
}

}  // namespace

json LearnerOptions::to_json() const {
  return json{{"gamma", core.gamma},
              {"lambda", core.lambda},
              {"lr_policy", core.lr_policy},
              {"lr_value", core.lr_value},
              {"entropy_coef", core.entropy_coef},
              {"eval_period", eval_period},
              {"eval_episodes_per_task", eval.episodes_per_task},
              {"eval_stochastic", eval.stochastic},
              {"eval_skip_impossible", eval.skip_impossible},
              {"eval_max_steps", eval.max_steps},
              {"eval_use_return_metric", eval.use_return_metric},
              {"eval_return_scale", eval.scalar_metric.scale},
              {"checkpoint_interval", checkpoint_interval}};
}

LearnerOptions LearnerOptions::from_json(const json& j) {
  LearnerOptions opts;
  opts.core.gamma = field(j, "gamma", opts.core.gamma);
  opts.core.lambda = field(j, "lambda", opts.core.lambda);
  opts.core.lr_policy = field(j, "lr_policy", opts.core.lr_policy);
  opts.core.lr_value = field(j, "lr_value", opts.core.lr_value);
  opts.core.entropy_coef = field(j, "entropy_coef", opts.core.entropy_coef);
  opts.eval_period = field(j, "eval_period", opts.eval_period);
  opts.eval.episodes_per_task =
      field(j, "eval_episodes_per_task", opts.eval.episodes_per_task);
  opts.eval.stochastic = field(j, "eval_stochastic", opts.eval.stochastic);
  opts.eval.skip_impossible =
      field(j, "eval_skip_impossible", opts.eval.skip_impossible);
  opts.eval.max_steps = field(j, "eval_max_steps", opts.eval.max_steps);
  opts.eval.use_return_metric =
      field(j, "eval_use_return_metric", opts.eval.use_return_metric);
  opts.eval.scalar_metric.scale =
      field(j, "eval_return_scale", opts.eval.scalar_metric.scale);
  opts.checkpoint_interval =
      field(j, "checkpoint_interval", opts.checkpoint_interval);
  return opts;
}

bool LearnerOptions::operator==(const LearnerOptions& other) const {
  return to_json() == other.to_json();
}

json ExperimentConfig::to_json() const {
  return json{{"env", env},
              {"curriculum", curriculum},
              {"learner", learner.to_json()},
              {"workers", workers},
              {"total_episodes", total_episodes},
              {"seeds", seeds},
              {"output_dir", output_dir},
              {"sync",
               {{"step_batch_size", sync.step_batch_size},
                {"prefetch", sync.prefetch},
                {"delay", sync.delay},
                {"threaded", sync.threaded}}}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig cfg;
  if (!j.contains("env") || !j.contains("curriculum"))
    throw ConfigError("config needs \"env\" and \"curriculum\" sections");
  cfg.env = j.at("env");
  cfg.curriculum = j.at("curriculum");
  if (j.contains("learner"))
    cfg.learner = LearnerOptions::from_json(j.at("learner"));
  cfg.workers = field(j, "workers", cfg.workers);
  cfg.total_episodes = field(j, "total_episodes", cfg.total_episodes);
  cfg.seeds = field(j, "seeds", cfg.seeds);
  cfg.output_dir = field(j, "output_dir", cfg.output_dir);
  if (j.contains("sync")) {
    const auto& s = j.at("sync");
    cfg.sync.step_batch_size =
        field(s, "step_batch_size", cfg.sync.step_batch_size);
    cfg.sync.prefetch = field(s, "prefetch", cfg.sync.prefetch);
    cfg.sync.delay = field(s, "delay", cfg.sync.delay);
    cfg.sync.threaded = field(s, "threaded", cfg.sync.threaded);
  }
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  if (cfg.total_episodes < 1) throw ConfigError("total_episodes must be >= 1");
  if (cfg.seeds.empty()) throw ConfigError("seeds must be nonempty");
  cfg.sync.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

bool ExperimentConfig::operator==(const ExperimentConfig& other) const {
  return to_json() == other.to_json();
}

std::unique_ptr<TaskEnv> make_env(const json& spec) {
  const auto type = require_type(spec, "env");
  if (type == "seeded_grid") {
    SeededGridConfig cfg;
    cfg.seed_count = field(spec, "seed_count", cfg.seed_count);
    cfg.grid_size = field(spec, "grid_size", cfg.grid_size);
    cfg.max_steps = field(spec, "max_steps", cfg.max_steps);
    cfg.shared_states = field(spec, "shared_states", cfg.shared_states);
    return std::make_unique<SeededGrid>(cfg);
  }
  if (type == "simon_says") {
    SimonSaysConfig cfg;
    cfg.chain_length = field(spec, "chain_length", cfg.chain_length);
    cfg.tiers = field(spec, "tiers", cfg.tiers);
    cfg.impossible_families =
        field(spec, "impossible_families", cfg.impossible_families);
    cfg.episode_limit = field(spec, "episode_limit", cfg.episode_limit);
    cfg.task_limit = field(spec, "task_limit", cfg.task_limit);
    cfg.skill_success_prob =
        field(spec, "skill_success_prob", cfg.skill_success_prob);
    return std::make_unique<SimonSaysCraft>(cfg);
  }
  if (type == "duel") {
    DuelConfig cfg;
    cfg.rounds = field(spec, "rounds", cfg.rounds);
    cfg.seed_count = field(spec, "seed_count", cfg.seed_count);
    cfg.bias = field(spec, "bias", cfg.bias);
    cfg.noise = field(spec, "noise", cfg.noise);
    return std::make_unique<DuelGame>(cfg);
  }
  throw ConfigError("unknown env type: " + type);
}

EncodedTask parse_encoded(const TaskSpace& space, const json& j) {
  if (j.is_number_integer() && space.is_discrete())
    return EncodedTask::index(j.get<std::int64_t>());
  if (j.is_string() && space.is_discrete())
    return space.encode(TaskLabel(j.get<std::string>()));
  if (j.is_array() && space.is_box())
    return EncodedTask::vector(j.get<std::vector<double>>());
  if (j.is_array() && space.is_tuple()) {
    const auto& children = space.children();
    if (j.size() != children.size())
      throw ConfigError("tuple task arity mismatch");
    EncodedTask::Composite parts;
    for (std::size_t i = 0; i < children.size(); ++i)
      parts.push_back(parse_encoded(children[i], j[i]));
    return EncodedTask::composite(std::move(parts));
  }
  throw ConfigError("cannot interpret task " + j.dump() +
                    " against the task space");
}

namespace {

LpConfig parse_lp_config(const json& spec) {
  LpConfig cfg;
  cfg.ema_alpha = field(spec, "alpha", cfg.ema_alpha);
  cfg.reweight_theta = field(spec, "theta", cfg.reweight_theta);
  cfg.update_period = field(spec, "update_period", cfg.update_period);
  return cfg;
}

SflConfig parse_sfl_config(const json& spec) {
  SflConfig cfg;
  const auto mode = field<std::string>(spec, "mode", "full_distribution");
  if (mode == "full_distribution") {
    cfg.mode = SflConfig::Mode::full_distribution;
  } else if (mode == "top_k") {
    cfg.mode = SflConfig::Mode::top_k;
  } else {
    throw ConfigError("unknown sfl mode: " + mode);
  }
  cfg.k = field(spec, "k", cfg.k);
  cfg.mix_rho = field(spec, "rho", cfg.mix_rho);
  cfg.update_period = field(spec, "update_period", cfg.update_period);
  return cfg;
}

std::shared_ptr<Curriculum> build_task_curriculum(
    const json& spec, const TaskSpace& space, bool* robust_out) {
  const auto type = require_type(spec, "curriculum");
  if (type == "constant") {
    if (!spec.contains("task")) throw ConfigError("constant needs a task");
    return std::make_shared<Constant>(space,
                                      parse_encoded(space, spec.at("task")));
  }
  if (type == "dr") return std::make_shared<DomainRandomization>(space);
  if (type == "plr") {
    PlrConfig cfg;
    cfg.buffer_size = field(spec, "buffer_size", cfg.buffer_size);
    cfg.temperature = field(spec, "beta", cfg.temperature);
    cfg.staleness_coefficient = field(spec, "rho", cfg.staleness_coefficient);
    cfg.robust = field(spec, "robust", cfg.robust);
    cfg.mean_score_aggregation =
        field(spec, "mean_score_aggregation", cfg.mean_score_aggregation);
    if (robust_out) *robust_out = cfg.robust;
    return std::make_shared<PrioritizedLevelReplay>(space, cfg);
  }
  if (type == "lp")
    return std::make_shared<LearningProgress>(space, parse_lp_config(spec));
  if (type == "sfl")
    return std::make_shared<SamplingForLearnability>(space,
                                                     parse_sfl_config(spec));
  if (type == "omni") {
    const json base_spec = spec.value("base", json{{"type", "lp"}});
    const auto base_type = require_type(base_spec, "omni base");
    std::unique_ptr<Curriculum> base;
    if (base_type == "lp") {
      base = std::make_unique<LearningProgress>(space,
                                                parse_lp_config(base_spec));
    } else if (base_type == "sfl") {
      base = std::make_unique<SamplingForLearnability>(
          space, parse_sfl_config(base_spec));
    } else {
      throw ConfigError("omni base must be lp or sfl");
    }
    InterestingnessOracle oracle = default_interestingness;
    if (spec.contains("oracle") && spec.at("oracle").is_object()) {
      auto cmd = spec.at("oracle").at("cmd").get<std::vector<std::string>>();
      auto subprocess = std::make_shared<SubprocessOracle>(std::move(cmd));
      oracle = [subprocess](const std::vector<std::string>& labels,
                            const std::vector<double>& p) {
        return (*subprocess)(labels, p);
      };
    }
    return std::make_shared<OmniCurriculum>(space, std::move(base),
                                            std::move(oracle));
  }
  if (type == "sequential") {
    if (!spec.contains("stages")) throw ConfigError("sequential needs stages");
    std::vector<CurriculumStage> stages;
    for (const auto& stage_spec : spec.at("stages")) {
      CurriculumStage stage;
      if (stage_spec.contains("task")) {
        stage.inner = std::make_shared<Constant>(
            space, parse_encoded(space, stage_spec.at("task")));
      } else if (stage_spec.contains("curriculum")) {
        stage.inner =
            build_task_curriculum(stage_spec.at("curriculum"), space, nullptr);
      } else {
        throw ConfigError("stage needs a task or a curriculum");
      }
      stage.condition =
          parse_condition(field<std::string>(stage_spec, "until", "episodes>=1"));
      stages.push_back(std::move(stage));
    }
    const auto window =
        field<std::size_t>(spec, "return_window", std::size_t{1000});
    return std::make_shared<SequentialCurriculum>(space, std::move(stages),
                                                  window);
  }
  if (type == "annealing") {
    AnnealingSchedule sched;
    sched.start_low = spec.at("start_low").get<std::vector<double>>();
    sched.start_high = spec.at("start_high").get<std::vector<double>>();
    sched.end_low = spec.at("end_low").get<std::vector<double>>();
    sched.end_high = spec.at("end_high").get<std::vector<double>>();
    sched.horizon = spec.at("horizon").get<std::int64_t>();
    if (!space.is_box())
      throw ConfigError("annealing needs a box-task environment");
    return std::make_shared<AnnealingBox>(sched);
  }
  throw ConfigError("unknown curriculum type: " + type);
}

}  // namespace

BuiltCurriculum make_curriculum(const json& spec, const TaskSpace& space,
                                const std::filesystem::path& run_dir) {
  BuiltCurriculum built;
  const auto type = require_type(spec, "curriculum");
  if (type != "dual") {
    built.curriculum =
        build_task_curriculum(spec, space, &built.robust_plr);
    return built;
  }

  const json task_spec = spec.value("task", json{{"type", "dr"}});
  auto task = build_task_curriculum(task_spec, space, &built.robust_plr);

  const json agent_spec = spec.value("agent", json{{"type", "fsp"}});
  const auto agent_type = require_type(agent_spec, "agent curriculum");
  const int memory = field(agent_spec, "memory", 128);
  auto store = std::make_shared<OpponentStore>(
      run_dir.empty() ? std::filesystem::path{} : run_dir / "opponents",
      memory);
  if (agent_type == "sp") {
    built.agent = std::make_shared<SelfPlay>(store);
  } else if (agent_type == "fsp") {
    built.agent = std::make_shared<FictitiousSelfPlay>(store);
  } else if (agent_type == "pfsp") {
    PfspConfig cfg;
    cfg.hard_exponent = field(agent_spec, "hard_exponent", cfg.hard_exponent);
    cfg.smoothing = field(agent_spec, "smoothing", cfg.smoothing);
    cfg.memory = memory;
    built.agent = std::make_shared<PrioritizedFictitiousSelfPlay>(store, cfg);
  } else {
    throw ConfigError("unknown agent curriculum type: " + agent_type);
  }
  built.curriculum = std::make_shared<DualCurriculum>(task, built.agent);
  built.dual = true;
  return built;
}

}  // namespace curricula
