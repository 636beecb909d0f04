#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <nlohmann/json.hpp>

#include "curricula/config.hpp"
#include "curricula/curricula/learning_progress.hpp"
#include "curricula/curricula/omni.hpp"
#include "curricula/curricula/plr.hpp"
#include "curricula/curricula/sfl.hpp"
#include "curricula/curricula/stopping_condition.hpp"
#include "curricula/envs/success_metric.hpp"
#include "curricula/errors.hpp"
#include "curricula/learner/trainer.hpp"
#include "curricula/selfplay/strategies.hpp"

namespace py = pybind11;
using namespace curricula;

namespace {

// task encodings cross the boundary as plain python values: ints for
// discrete tasks, float lists for box tasks, tuples for composites
EncodedTask encoded_from_py(const py::handle& obj) {
  if (py::isinstance<py::int_>(obj))
    return EncodedTask::index(obj.cast<std::int64_t>());
  if (py::isinstance<py::tuple>(obj)) {
    EncodedTask::Composite parts;
    for (const auto& item : obj.cast<py::tuple>())
      parts.push_back(encoded_from_py(item));
    return EncodedTask::composite(std::move(parts));
  }
  if (py::isinstance<py::sequence>(obj))
    return EncodedTask::vector(obj.cast<std::vector<double>>());
  throw py::type_error("expected an int, float sequence, or tuple task");
}

py::object encoded_to_py(const EncodedTask& enc) {
  if (enc.is_index()) return py::int_(enc.as_index());
  if (enc.is_vector()) return py::cast(enc.as_vector());
  py::tuple parts(enc.as_composite().size());
  for (std::size_t i = 0; i < enc.as_composite().size(); ++i)
    parts[i] = encoded_to_py(enc.as_composite()[i]);
  return parts;
}

TaskLabel label_from_py(const py::handle& obj) {
  if (py::isinstance<py::int_>(obj)) return TaskLabel(obj.cast<std::int64_t>());
  if (py::isinstance<py::str>(obj)) return TaskLabel(obj.cast<std::string>());
  if (py::isinstance<py::tuple>(obj)) {
    TaskLabel::List parts;
    for (const auto& item : obj.cast<py::tuple>())
      parts.push_back(label_from_py(item));
    return TaskLabel(std::move(parts));
  }
  if (py::isinstance<py::sequence>(obj))
    return TaskLabel(obj.cast<std::vector<double>>());
  throw py::type_error("expected an int, str, float sequence, or tuple label");
}

py::object label_to_py(const TaskLabel& label) {
  if (label.is_int()) return py::int_(label.as_int());
  if (label.is_string()) return py::str(label.as_string());
  if (label.is_vector()) return py::cast(label.as_vector());
  py::tuple parts(label.as_list().size());
  for (std::size_t i = 0; i < label.as_list().size(); ++i)
    parts[i] = label_to_py(label.as_list()[i]);
  return parts;
}

MetricBatch batch_from_py(const py::dict& metrics) {
  MetricBatch batch;
  for (const auto& [key, value] : metrics) {
    auto& entry = batch.entries[key.cast<std::string>()];
    for (const auto& pair : value.cast<py::list>()) {
      auto tup = pair.cast<py::tuple>();
      entry.emplace_back(encoded_from_py(tup[0]), tup[1].cast<double>());
    }
  }
  return batch;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curriculum learning toolkit: task spaces, curricula, self-play, "
            "synchronization, and desk-scale environments";

  py::register_exception<Error>(m, "CurriculaError");

  py::class_<TaskSpace>(m, "TaskSpace")
      .def_static("discrete",
                  py::overload_cast<std::int64_t>(&TaskSpace::discrete),
                  py::arg("count"))
      .def_static(
          "discrete_named",
          py::overload_cast<std::vector<std::string>>(&TaskSpace::discrete),
          py::arg("tasks"))
      .def_static("box", &TaskSpace::box, py::arg("low"), py::arg("high"))
      .def_static("tuple_of", &TaskSpace::tuple, py::arg("children"))
      .def("seed", &TaskSpace::seed)
      .def("sample",
           [](TaskSpace& s) { return encoded_to_py(s.sample()); })
      .def("encode",
           [](const TaskSpace& s, const py::handle& label) {
             return encoded_to_py(s.encode(label_from_py(label)));
           })
      .def("decode",
           [](const TaskSpace& s, const py::handle& enc) {
             return label_to_py(s.decode(encoded_from_py(enc)));
           })
      .def("contains",
           [](const TaskSpace& s, const py::handle& enc) {
             return s.contains(encoded_from_py(enc));
           })
      .def("tasks",
           [](const TaskSpace& s) {
             py::list out;
             for (const auto& label : s.tasks()) out.append(label_to_py(label));
             return out;
           })
      .def_property_readonly("enumerable", &TaskSpace::enumerable)
      .def_property_readonly("cardinality", &TaskSpace::cardinality)
      .def("to_json", [](const TaskSpace& s) { return s.to_json().dump(); })
      .def_static("from_json", [](const std::string& text) {
        return TaskSpace::from_json(nlohmann::json::parse(text));
      });

  py::class_<Curriculum, std::shared_ptr<Curriculum>>(m, "Curriculum")
      .def("seed", &Curriculum::seed)
      .def("sample",
           [](Curriculum& c, int k) {
             py::list out;
             for (const auto& task : c.sample(k)) out.append(encoded_to_py(task));
             return out;
           },
           py::arg("k") = 1)
      .def("sample_distribution",
           [](const Curriculum& c) { return c.sample_distribution().probs; })
      .def("update_on_episode",
           [](Curriculum& c, double episodic_return, std::int64_t length,
              const py::handle& task, int env_id) {
             c.update_on_episode(
                 {episodic_return, length, encoded_from_py(task), env_id});
           },
           py::arg("episodic_return"), py::arg("length"), py::arg("task"),
           py::arg("env_id") = -1)
      .def("update_task_progress",
           [](Curriculum& c, const py::handle& task, double progress) {
             c.update_task_progress(encoded_from_py(task), progress);
           })
      .def("update_on_demand",
           [](Curriculum& c, const py::dict& metrics) {
             c.update_on_demand(batch_from_py(metrics));
           })
      .def_property_readonly("requires_step_updates",
                             &Curriculum::requires_step_updates)
      .def_property_readonly("consumed_metrics", &Curriculum::consumed_metrics)
      .def_property_readonly("task_space",
                             [](const Curriculum& c) { return c.space(); });

  m.def(
      "make_curriculum",
      [](const std::string& spec, const TaskSpace& space) {
        return make_curriculum(nlohmann::json::parse(spec), space).curriculum;
      },
      py::arg("spec_json"), py::arg("task_space"),
      "Builds a curriculum from a JSON spec: dr, constant, sequential, "
      "annealing, plr, lp, sfl, or omni");

  m.def("value_l1_score", &value_l1_score, py::arg("td_errors"),
        py::arg("gamma"), py::arg("lambda_gae"));
  m.def("lp_reweight", &lp_reweight, py::arg("x"), py::arg("theta"));
  m.def(
      "sfl_distribution",
      [](const std::vector<double>& p, const std::string& mode, std::int64_t k,
         double rho) {
        SflConfig cfg;
        cfg.mode = mode == "top_k" ? SflConfig::Mode::top_k
                                   : SflConfig::Mode::full_distribution;
        cfg.k = k;
        cfg.mix_rho = rho;
        return sfl_distribution(p, cfg).probs;
      },
      py::arg("success_rates"), py::arg("mode") = "full_distribution",
      py::arg("k") = 10, py::arg("rho") = 1.0);
  m.def(
      "omni_filter",
      [](const std::vector<double>& base, const std::vector<bool>& mask) {
        return omni_filter(SampleDistribution{base}, mask).probs;
      },
      py::arg("distribution"), py::arg("mask"));
  m.def("default_interestingness", &default_interestingness, py::arg("labels"),
        py::arg("success_rates"));
  m.def("normalized_return", &normalized_return, py::arg("r_min"),
        py::arg("r_max"), py::arg("r"));
  m.def("clipped_success", &clipped_success, py::arg("scale"), py::arg("r"));
  m.def(
      "parse_condition",
      [](const std::string& text) { return parse_condition(text).render(); },
      py::arg("text"),
      "Parses a stopping condition and returns its canonical rendering");

  py::class_<OpponentStore, std::shared_ptr<OpponentStore>>(m, "OpponentStore")
      .def(py::init([](const std::string& dir, int memory) {
             return std::make_shared<OpponentStore>(
                 dir.empty() ? std::filesystem::path{} : std::filesystem::path(dir),
                 memory);
           }),
           py::arg("dir") = "", py::arg("memory") = 128)
      .def("add",
           [](OpponentStore& s, const py::bytes& snapshot) {
             return s.add(snapshot.cast<std::string>());
           })
      .def("snapshot",
           [](const OpponentStore& s, int id) {
             return py::bytes(s.snapshot(id));
           })
      .def("record_outcome", &OpponentStore::record_outcome)
      .def("winrate", &OpponentStore::winrate, py::arg("opponent_id"),
           py::arg("smoothing") = 0.01)
      .def_property_readonly("size", &OpponentStore::size);

  py::class_<AgentCurriculum, std::shared_ptr<AgentCurriculum>>(
      m, "AgentCurriculum")
      .def("sample_opponent",
           [](AgentCurriculum& a, std::uint64_t seed) {
             Rng rng(seed);
             return a.sample_opponent(rng);
           },
           py::arg("seed") = 0)
      .def("opponent_distribution",
           [](const AgentCurriculum& a) {
             return a.opponent_distribution().probs;
           })
      .def("update_agent",
           [](AgentCurriculum& a, const py::bytes& snapshot) {
             return a.update_agent(snapshot.cast<std::string>());
           })
      .def("update_winrate", &AgentCurriculum::update_winrate);

  py::class_<SelfPlay, AgentCurriculum, std::shared_ptr<SelfPlay>>(m,
                                                                   "SelfPlay")
      .def(py::init<std::shared_ptr<OpponentStore>>());
  py::class_<FictitiousSelfPlay, AgentCurriculum,
             std::shared_ptr<FictitiousSelfPlay>>(m, "FictitiousSelfPlay")
      .def(py::init<std::shared_ptr<OpponentStore>>());
  py::class_<PrioritizedFictitiousSelfPlay, AgentCurriculum,
             std::shared_ptr<PrioritizedFictitiousSelfPlay>>(
      m, "PrioritizedFictitiousSelfPlay")
      .def(py::init([](std::shared_ptr<OpponentStore> store, double exponent,
                       double smoothing) {
             return std::make_shared<PrioritizedFictitiousSelfPlay>(
                 store, PfspConfig{exponent, smoothing, store->memory()});
           }),
           py::arg("store"), py::arg("hard_exponent") = 2.0,
           py::arg("smoothing") = 0.01);

  py::class_<TaskEnv>(m, "TaskEnv")
      .def("reset",
           [](TaskEnv& env, const py::object& task) {
             if (task.is_none()) return env.reset();
             return env.reset(encoded_from_py(task));
           },
           py::arg("task") = py::none())
      .def("step",
           [](TaskEnv& env, int action) {
             const auto res = env.step(action);
             py::dict info;
             info["task_complete"] = res.info.task_complete;
             info["task_failed"] = res.info.task_failed;
             info["needs_new_task"] = res.info.needs_new_task;
             info["task_progress"] = res.info.task_progress;
             return py::make_tuple(res.obs, res.reward, res.done, info);
           })
      .def("change_task",
           [](TaskEnv& env, const py::handle& task) {
             env.change_task(encoded_from_py(task));
           })
      .def("seed", &TaskEnv::seed)
      .def("task_completion", &TaskEnv::task_completion)
      .def("render_text", &TaskEnv::render_text)
      .def_property_readonly("task_space", &TaskEnv::task_space)
      .def_property_readonly("action_count", &TaskEnv::action_count)
      .def_property_readonly("state_count", &TaskEnv::state_count)
      .def_property_readonly("state_id", &TaskEnv::state_id)
      .def_property_readonly("current_task", [](const TaskEnv& env) {
        return encoded_to_py(env.current_task());
      });

  m.def(
      "make_env",
      [](const std::string& spec) {
        return make_env(nlohmann::json::parse(spec));
      },
      py::arg("spec_json"),
      "Builds an environment from a JSON spec: seeded_grid, simon_says, duel");

  m.def(
      "run_training",
      [](const std::string& config_json, std::uint64_t seed,
         const std::string& out_dir) {
        const auto cfg = ExperimentConfig::from_json(
            nlohmann::json::parse(config_json));
        const auto result = run_training(cfg, seed, out_dir);
        py::dict out;
        out["final_mean_return"] = result.final_mean_return;
        out["final_success_rate"] = result.final_success_rate;
        out["final_success_rates"] = result.final_success_rates;
        out["curriculum"] = result.curriculum_type;
        out["metrics_csv"] = result.metrics_csv.string();
        out["eval_jsonl"] = result.eval_jsonl.string();
        out["summary_json"] = result.summary_json.string();
        out["checkpoint"] = result.checkpoint.string();
        out["conserved"] = result.report.conserved();
        return out;
      },
      py::arg("config_json"), py::arg("seed"), py::arg("out_dir"),
      "Runs one training seed and returns the summary");
}
