#include "curricula/sync/bench.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

namespace curricula {

namespace {

using Clock = std::chrono::steady_clock;

double run_baseline(const EnvFactory& make_env, int workers,
                    int episodes_per_worker) {
  const auto begin = Clock::now();
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      auto env = make_env();
      env->seed(static_cast<std::uint64_t>(w) + 1);
      Rng task_rng(static_cast<std::uint64_t>(w) * 977 + 11);
      Rng action_rng(static_cast<std::uint64_t>(w) * 1231 + 7);
      TaskSpace space = env->task_space();
      space.seed(task_rng.next_u64());
      for (int e = 0; e < episodes_per_worker; ++e) {
        env->reset(space.sample());
        while (true) {
          const int action =
              static_cast<int>(action_rng.uniform_int(env->action_count()));
          if (env->step(action).done) break;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  return std::chrono::duration<double>(Clock::now() - begin).count();
}

double run_synced(const EnvFactory& make_env,
                  const CurriculumFactory& make_curriculum, int workers,
                  int episodes_per_worker, bool force_step_updates) {
  auto curriculum = make_curriculum();
  SyncConfig cfg;
  cfg.threaded = true;
  cfg.prefetch = 2;  // keep episode starts off the service's critical path
  CurriculumService service(curriculum, workers, cfg);
  service.start();

  const auto begin = Clock::now();
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      auto env = make_env();
      env->seed(static_cast<std::uint64_t>(w) + 1);
      EnvSyncWrapper wrapper(std::move(env), service, w, false,
                             force_step_updates);
      Rng action_rng(static_cast<std::uint64_t>(w) * 1231 + 7);
      for (int e = 0; e < episodes_per_worker; ++e) {
        wrapper.reset();
        while (true) {
          const int action = static_cast<int>(
              action_rng.uniform_int(wrapper.env().action_count()));
          if (wrapper.step(action).done) break;
        }
      }
      wrapper.finish();
    });
  }
  for (auto& t : threads) t.join();
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - begin).count();
  service.shutdown();
  return elapsed;
}

}  // namespace

BenchResult bench_overhead(const EnvFactory& make_env,
                           const CurriculumFactory& make_curriculum,
                           int workers, int episodes_per_worker) {
  BenchResult result;
  result.episodes =
      static_cast<std::uint64_t>(workers) * episodes_per_worker;
  // throwaway passes warm allocators and thread startup
  const int warmup = std::max(1, episodes_per_worker / 10);
  run_baseline(make_env, workers, warmup);
  run_synced(make_env, make_curriculum, workers, warmup, false);

  const int reps = 5;
  std::vector<double> baseline(reps), episodic(reps), step(reps);
  std::vector<double> episodic_ratio(reps), step_ratio(reps);
  for (int rep = 0; rep < reps; ++rep) {
    baseline[rep] = run_baseline(make_env, workers, episodes_per_worker);
    episodic[rep] =
        run_synced(make_env, make_curriculum, workers, episodes_per_worker, false);
    step[rep] =
        run_synced(make_env, make_curriculum, workers, episodes_per_worker, true);
    episodic_ratio[rep] = episodic[rep] / baseline[rep] - 1.0;
    step_ratio[rep] = step[rep] / baseline[rep] - 1.0;
  }
  const auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  result.baseline_s = median(baseline);
  result.episodic_s = median(episodic);
  result.step_s = median(step);
  result.episodic_overhead = median(episodic_ratio);
  result.step_overhead = median(step_ratio);
  return result;
}

}  // namespace curricula
