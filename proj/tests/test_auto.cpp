#include <doctest.h>

#include <cmath>

#include "curricula/curricula/learning_progress.hpp"
#include "curricula/curricula/omni.hpp"
#include "curricula/curricula/plr.hpp"
#include "curricula/curricula/sfl.hpp"
#include "curricula/errors.hpp"

using namespace curricula;

namespace {

// direct evaluation of the score definition, quadratic in T
double value_l1_brute(const std::vector<double>& deltas, double gamma,
                      double lambda) {
  const auto t_max = deltas.size();
  double total = 0.0;
  for (std::size_t t = 0; t < t_max; ++t) {
    double inner = 0.0;
    for (std::size_t k = t; k < t_max; ++k)
      inner += std::pow(gamma * lambda, static_cast<double>(k - t)) * deltas[k];
    total += std::abs(inner);
  }
  return total / static_cast<double>(t_max);
}

std::vector<PlrEntry> make_entries(const std::vector<double>& scores,
                                   const std::vector<std::int64_t>& last_update) {
  std::vector<PlrEntry> entries;
  for (std::size_t i = 0; i < scores.size(); ++i)
    entries.push_back({static_cast<std::int64_t>(i), scores[i],
                       last_update[i], true});
  return entries;
}

}  // namespace

TEST_CASE("value_l1_score worked examples") {
  CHECK(value_l1_score({0.5}, 0.7, 0.3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(value_l1_score({0.5, -0.25}, 1.0, 1.0) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(value_l1_score({0.0, 0.0, 0.0}, 0.99, 0.95) == 0.0);
  CHECK_THROWS_AS(value_l1_score({}, 0.99, 0.95), EmptyTrajectoryError);
}

TEST_CASE("value_l1_score matches the brute-force double sum") {
  Rng rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto t_max = 1 + rng.uniform_int(64);
    std::vector<double> deltas(static_cast<std::size_t>(t_max));
    for (auto& d : deltas) {
      // sum of uniforms approximates a normal; the score only needs spread
      d = rng.uniform(-3.0, 3.0);
    }
    const double gamma = rng.uniform(0.01, 1.0);
    const double lambda = rng.uniform(0.0, 1.0);
    CHECK(value_l1_score(deltas, gamma, lambda) ==
          doctest::Approx(value_l1_brute(deltas, gamma, lambda)).epsilon(1e-9));
  }
}

TEST_CASE("plr rank weights at beta 1 with no staleness") {
  PlrConfig cfg;
  cfg.buffer_size = 3;
  cfg.temperature = 1.0;
  cfg.staleness_coefficient = 0.0;
  const auto dist = plr_score_distribution(
      make_entries({0.9, 0.5, 0.1}, {0, 0, 0}), cfg, 0, 3);
  CHECK(dist.probs[0] == doctest::Approx(6.0 / 11.0).epsilon(1e-12));
  CHECK(dist.probs[1] == doctest::Approx(3.0 / 11.0).epsilon(1e-12));
  CHECK(dist.probs[2] == doctest::Approx(2.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("plr staleness-only distribution") {
  PlrConfig cfg;
  cfg.buffer_size = 3;
  cfg.temperature = 1.0;
  cfg.staleness_coefficient = 1.0;
  // staleness [2, 1, 1] against a global counter of 2
  const auto dist = plr_score_distribution(
      make_entries({0.9, 0.5, 0.1}, {0, 1, 1}), cfg, 2, 3);
  CHECK(dist.probs[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist.probs[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(dist.probs[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("plr ties break deterministically by task index") {
  PlrConfig cfg;
  cfg.buffer_size = 3;
  cfg.temperature = 1.0;
  cfg.staleness_coefficient = 0.0;
  const auto dist = plr_score_distribution(
      make_entries({0.4, 0.4, 0.4}, {0, 0, 0}), cfg, 0, 3);
  CHECK(dist.probs[0] == doctest::Approx(6.0 / 11.0).epsilon(1e-12));
  CHECK(dist.probs[1] == doctest::Approx(3.0 / 11.0).epsilon(1e-12));
  CHECK(dist.probs[2] == doctest::Approx(2.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("plr rank prioritization is scale invariant") {
  Rng rng(72);
  PlrConfig cfg;
  cfg.buffer_size = 6;
  cfg.temperature = 0.3;
  cfg.staleness_coefficient = 0.25;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> scores(6);
    std::vector<std::int64_t> ages(6);
    for (auto& s : scores) s = rng.uniform(0.0, 2.0);
    for (auto& a : ages) a = rng.uniform_int(20);
    const double c = rng.uniform(0.1, 50.0);
    std::vector<double> scaled = scores;
    for (auto& s : scaled) s *= c;
    const auto base = plr_score_distribution(make_entries(scores, ages), cfg, 30, 6);
    const auto mult = plr_score_distribution(make_entries(scaled, ages), cfg, 30, 6);
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(base.probs[i] == doctest::Approx(mult.probs[i]).epsilon(1e-12));
  }
}

TEST_CASE("plr with no seen tasks refuses a distribution") {
  PlrConfig cfg;
  std::vector<PlrEntry> entries = {{0, 0.0, 0, false}, {1, 0.0, 0, false}};
  CHECK_THROWS_AS(plr_score_distribution(entries, cfg, 0, 2), NoSeenTasksError);
}

TEST_CASE("plr samples unseen tasks first, then replays") {
  PrioritizedLevelReplay plr(TaskSpace::discrete(5),
                             PlrConfig{5, 0.5, 0.1, false, false});
  plr.seed(19);
  const auto first = plr.sample_choices(5);
  std::vector<bool> covered(5, false);
  for (const auto& choice : first) {
    CHECK(choice.tag == SampleTag::explore);
    covered[static_cast<std::size_t>(choice.task.as_index())] = true;
  }
  CHECK(covered == std::vector<bool>(5, true));

  MetricBatch scores;
  for (std::int64_t t = 0; t < 5; ++t)
    scores.entries["value_l1_score"].emplace_back(EncodedTask::index(t),
                                                  0.1 * static_cast<double>(t + 1));
  plr.update_on_demand(scores);
  for (const auto& choice : plr.sample_choices(20))
    CHECK(choice.tag == SampleTag::replay);
}

TEST_CASE("plr evicts the weakest entry only when the space exceeds K") {
  PrioritizedLevelReplay plr(TaskSpace::discrete(4),
                             PlrConfig{2, 1.0, 0.0, false, false});
  plr.seed(3);
  auto score = [&](std::int64_t task, double value) {
    MetricBatch batch;
    batch.entries["value_l1_score"].emplace_back(EncodedTask::index(task), value);
    plr.update_on_demand(batch);
  };
  score(0, 0.5);
  score(1, 0.3);
  // buffer full at K = 2; a stronger task displaces the weakest
  score(2, 0.4);
  auto dist = plr.sample_distribution();
  CHECK(dist.probs[0] > 0.0);
  CHECK(dist.probs[1] == 0.0);
  CHECK(dist.probs[2] > 0.0);
  // a weaker task does not displace anything
  score(3, 0.1);
  dist = plr.sample_distribution();
  CHECK(dist.probs[3] == 0.0);
  CHECK(dist.probs[0] > 0.0);
  CHECK(dist.probs[2] > 0.0);
}

TEST_CASE("robust changes tags only, not the sampled stream") {
  PlrConfig plain{5, 0.5, 0.1, false, false};
  PlrConfig robust = plain;
  robust.robust = true;
  PrioritizedLevelReplay a(TaskSpace::discrete(5), plain);
  PrioritizedLevelReplay b(TaskSpace::discrete(5), robust);
  a.seed(33);
  b.seed(33);
  for (int round = 0; round < 10; ++round) {
    const auto ca = a.sample_choices(3);
    const auto cb = b.sample_choices(3);
    for (int i = 0; i < 3; ++i) {
      CHECK(ca[static_cast<std::size_t>(i)].task ==
            cb[static_cast<std::size_t>(i)].task);
      CHECK(ca[static_cast<std::size_t>(i)].tag ==
            cb[static_cast<std::size_t>(i)].tag);
    }
    MetricBatch scores;
    for (const auto& choice : ca)
      scores.entries["value_l1_score"].emplace_back(choice.task, 0.5);
    a.update_on_demand(scores);
    b.update_on_demand(scores);
    a.update_on_episode({0.0, 1, ca[0].task});
    b.update_on_episode({0.0, 1, ca[0].task});
  }
}

TEST_CASE("lp reweight fixes its endpoints and is monotone") {
  for (double theta : {0.05, 0.1, 0.3, 0.7}) {
    CHECK(lp_reweight(0.0, theta) == 0.0);
    CHECK(lp_reweight(1.0, theta) == doctest::Approx(1.0).epsilon(1e-12));
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = static_cast<double>(i) / 100.0;
      const double y = lp_reweight(x, theta);
      CHECK(y >= prev);
      prev = y;
    }
  }
}

TEST_CASE("lp first update from zero-initialized EMAs") {
  SuccessRateTable table(2);
  LpConfig cfg{0.3, 0.1, 25};
  const auto dist = lp_update(table, {1.0, 0.0}, cfg);
  CHECK(table.p_fast[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(table.p_slow[0] == doctest::Approx(0.09).epsilon(1e-12));
  CHECK(table.p_fast[1] == 0.0);
  CHECK(table.p_slow[1] == 0.0);
  CHECK(dist.probs[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dist.probs[1] == 0.0);
}

TEST_CASE("lp converges to uniform under constant success rates") {
  SUBCASE("symmetric rates give uniform immediately") {
    SuccessRateTable table(3);
    LpConfig cfg{0.2, 0.1, 25};
    SampleDistribution dist{{}};
    for (int round = 0; round < 10; ++round)
      dist = lp_update(table, {0.4, 0.4, 0.4}, cfg);
    for (double p : dist.probs)
      CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("distinct constant rates reach the zero fixed point") {
    SuccessRateTable table(2);
    LpConfig cfg{0.5, 0.1, 25};
    SampleDistribution dist{{}};
    for (int round = 0; round < 5000; ++round)
      dist = lp_update(table, {0.3, 0.9}, cfg);
    // fast and slow EMAs have met; learning progress is exactly zero
    CHECK(dist.probs[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dist.probs[1] == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("sfl full distribution worked examples") {
  SflConfig cfg;
  const auto dist = sfl_distribution({0.0, 0.5, 1.0}, cfg);
  CHECK(dist.probs[0] == 0.0);
  CHECK(dist.probs[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dist.probs[2] == 0.0);

  const auto single = sfl_distribution({0.5}, cfg);
  CHECK(single.probs == std::vector<double>{1.0});

  SflConfig topk;
  topk.mode = SflConfig::Mode::top_k;
  topk.k = 1;
  topk.mix_rho = 1.0;
  const auto single_topk = sfl_distribution({0.5}, topk);
  CHECK(single_topk.probs == std::vector<double>{1.0});
}

TEST_CASE("sfl top-k mixes the top set with the full space") {
  SflConfig cfg;
  cfg.mode = SflConfig::Mode::top_k;
  cfg.k = 2;
  cfg.mix_rho = 0.5;
  const auto dist = sfl_distribution({0.9, 0.5, 0.1, 0.2}, cfg);
  CHECK(dist.probs[0] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(dist.probs[1] == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(dist.probs[2] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(dist.probs[3] == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("sfl learnability is symmetric in p and 1-p") {
  Rng rng(81);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> p(5), q(5);
    for (std::size_t i = 0; i < 5; ++i) {
      p[i] = rng.uniform();
      q[i] = 1.0 - p[i];
    }
    for (auto mode : {SflConfig::Mode::full_distribution, SflConfig::Mode::top_k}) {
      SflConfig cfg;
      cfg.mode = mode;
      cfg.k = 2;
      cfg.mix_rho = 0.7;
      const auto a = sfl_distribution(p, cfg);
      const auto b = sfl_distribution(q, cfg);
      for (std::size_t i = 0; i < 5; ++i)
        CHECK(a.probs[i] == doctest::Approx(b.probs[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("sfl all-zero learnability falls back to uniform") {
  const auto dist = sfl_distribution({0.0, 1.0, 0.0}, SflConfig{});
  for (double p : dist.probs)
    CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("omni_filter worked examples") {
  const SampleDistribution base{{0.5, 0.3, 0.2}};
  const auto filtered = omni_filter(base, {true, false, true});
  CHECK(filtered.probs[0] == doctest::Approx(5.0 / 7.0).epsilon(1e-12));
  CHECK(filtered.probs[1] == 0.0);
  CHECK(filtered.probs[2] == doctest::Approx(2.0 / 7.0).epsilon(1e-12));

  const auto identity = omni_filter(base, {true, true, true});
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(identity.probs[i] == doctest::Approx(base.probs[i]).epsilon(1e-12));

  const auto all_false = omni_filter(base, {false, false, false});
  for (double p : all_false.probs)
    CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // surviving mass can be zero even with a nonempty mask
  const auto zero_mass = omni_filter(SampleDistribution{{0.0, 1.0}}, {true, false});
  CHECK(zero_mass.probs[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("omni_filter is idempotent for a fixed mask") {
  Rng rng(90);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> weights(6);
    std::vector<bool> mask(6);
    for (std::size_t i = 0; i < 6; ++i) {
      weights[i] = rng.uniform();
      mask[i] = rng.uniform() < 0.6;
    }
    const auto base = normalize_or_uniform(weights);
    const auto once = omni_filter(base, mask);
    const auto twice = omni_filter(once, mask);
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(twice.probs[i] == doctest::Approx(once.probs[i]).epsilon(1e-9));
  }
}

TEST_CASE("default oracle keeps undominated unmastered tasks") {
  SUBCASE("tier domination requires a strictly better equal-or-higher tier") {
    const std::vector<std::string> labels = {"collect:1", "collect:8"};
    CHECK(default_interestingness(labels, {0.9, 0.1}) ==
          std::vector<bool>{true, true});
    CHECK(default_interestingness(labels, {0.96, 0.1}) ==
          std::vector<bool>{false, true});
    // the higher tier dominates the lower one when it is doing better
    CHECK(default_interestingness(labels, {0.1, 0.9}) ==
          std::vector<bool>{false, true});
  }
  SUBCASE("single task") {
    CHECK(default_interestingness({"solo:1"}, {0.5}) == std::vector<bool>{true});
    CHECK(default_interestingness({"solo:1"}, {0.95}) == std::vector<bool>{false});
  }
  SUBCASE("impossible tasks stay interesting to the rule-based oracle") {
    const std::vector<std::string> labels = {"gather:1", "relic00:1", "relic01:3"};
    CHECK(default_interestingness(labels, {0.9, 0.0, 0.0}) ==
          std::vector<bool>{true, true, true});
  }
}

TEST_CASE("sfl_with_omni composes the filter with the distribution") {
  SflConfig cfg;
  const std::vector<std::string> labels = {"a:1", "b:1", "c:1"};
  const std::vector<double> p = {0.5, 0.5, 0.96};
  const auto dist = sfl_with_omni(labels, p, cfg, default_interestingness);
  // c is mastered and masked out; a and b split the learnability mass
  CHECK(dist.probs[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist.probs[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist.probs[2] == 0.0);
}

TEST_CASE("omni curriculum masks its base distribution") {
  const auto space =
      TaskSpace::discrete(std::vector<std::string>{"a:1", "a:2", "b:1"});
  OmniCurriculum omni(space,
                      std::make_unique<LearningProgress>(space, LpConfig{}));
  MetricBatch batch;
  auto& entry = batch.entries["success_rates"];
  entry.emplace_back(EncodedTask::index(0), 0.2);
  entry.emplace_back(EncodedTask::index(1), 0.6);  // dominates a:1
  entry.emplace_back(EncodedTask::index(2), 0.0);
  omni.update_on_demand(batch);
  CHECK(omni.last_mask() == std::vector<bool>{false, true, true});
  const auto dist = omni.sample_distribution();
  dist.validate();
  CHECK(dist.probs[0] == 0.0);
}

TEST_CASE("subprocess oracle speaks line-delimited json") {
  const char* script =
      "import sys, json\n"
      "for line in sys.stdin:\n"
      "    req = json.loads(line)\n"
      "    mask = [p < 0.95 for p in req['success_rates']]\n"
      "    print(json.dumps({'mask': mask}), flush=True)\n";
  SubprocessOracle oracle({"python3", "-c", script});
  const auto mask = oracle({"x:1", "y:1", "z:1"}, {0.2, 0.99, 0.5});
  CHECK(mask == std::vector<bool>{true, false, true});
  // a second round trip on the same process
  const auto mask2 = oracle({"x:1"}, {0.96});
  CHECK(mask2 == std::vector<bool>{false});
}
