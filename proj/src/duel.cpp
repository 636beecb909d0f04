#include "curricula/envs/duel.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include "curricula/errors.hpp"

namespace curricula {

std::array<std::array<double, 3>, 3> duel_payoffs(std::int64_t seed,
                                                  const DuelConfig& cfg) {
  std::array<std::array<double, 3>, 3> m = {{{0.0, -1.0, 1.0},
                                             {1.0, 0.0, -1.0},
                                             {-1.0, 1.0, 0.0}}};
  const int favored = static_cast<int>(((seed % 3) + 3) % 3);
  for (int j = 0; j < 3; ++j) {
    if (j == favored) continue;
    m[favored][j] += cfg.bias;
    m[j][favored] -= cfg.bias;
  }
  Rng rng(static_cast<std::uint64_t>(seed) * 0x9e3779b97f4a7c15ULL + 0xd0e1);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double eps = cfg.noise * (2.0 * rng.uniform() - 1.0);
      m[i][j] += eps;
      m[j][i] -= eps;
    }
  }
  return m;
}

DuelPolicy DuelPolicy::uniform(int rounds) {
  DuelPolicy p;
  p.rounds = rounds;
  p.logits.assign(static_cast<std::size_t>(rounds) * 3, 0.0);
  return p;
}

int DuelPolicy::act(int round, Rng& rng) const {
  const auto base = static_cast<std::size_t>(round % rounds) * 3;
  double mx = logits[base];
  for (int a = 1; a < 3; ++a) mx = std::max(mx, logits[base + a]);
  double weights[3];
  double total = 0.0;
  for (int a = 0; a < 3; ++a) {
    weights[a] = std::exp(logits[base + a] - mx);
    total += weights[a];
  }
  const double u = rng.uniform() * total;
  double acc = 0.0;
  for (int a = 0; a < 3; ++a) {
    acc += weights[a];
    if (u < acc) return a;
  }
  return 2;
}

int DuelPolicy::act_greedy(int round) const {
  const auto base = static_cast<std::size_t>(round % rounds) * 3;
  int best = 0;
  for (int a = 1; a < 3; ++a)
    if (logits[base + a] > logits[base + best]) best = a;
  return best;
}

std::string DuelPolicy::serialize() const {
  std::string out;
  const std::int64_t n = rounds;
  out.append(reinterpret_cast<const char*>(&n), sizeof(n));
  out.append(reinterpret_cast<const char*>(logits.data()),
             logits.size() * sizeof(double));
  return out;
}

DuelPolicy DuelPolicy::deserialize(const std::string& bytes) {
  if (bytes.size() < sizeof(std::int64_t))
    throw Error("duel policy bytes are truncated");
  std::int64_t rounds = 0;
  std::memcpy(&rounds, bytes.data(), sizeof(rounds));
  const std::size_t expected =
      sizeof(rounds) + static_cast<std::size_t>(rounds) * 3 * sizeof(double);
  if (rounds < 1 || bytes.size() != expected)
    throw Error("duel policy bytes have the wrong size");
  DuelPolicy p;
  p.rounds = static_cast<int>(rounds);
  p.logits.resize(static_cast<std::size_t>(rounds) * 3);
  std::memcpy(p.logits.data(), bytes.data() + sizeof(rounds),
              p.logits.size() * sizeof(double));
  return p;
}

double duel_play(const DuelPolicy& a, const DuelPolicy& b, std::int64_t seed,
                 const DuelConfig& cfg, bool greedy) {
  const auto payoff = duel_payoffs(seed, cfg);
  Rng rng_a(static_cast<std::uint64_t>(seed) * 31 + 1);
  Rng rng_b(static_cast<std::uint64_t>(seed) * 31 + 2);
  double total = 0.0;
  for (int round = 0; round < cfg.rounds; ++round) {
    const int ai = greedy ? a.act_greedy(round) : a.act(round, rng_a);
    const int bi = greedy ? b.act_greedy(round) : b.act(round, rng_b);
    total += payoff[static_cast<std::size_t>(ai)][static_cast<std::size_t>(bi)];
  }
  return total;
}

DuelGame::DuelGame(DuelConfig cfg)
    : cfg_(cfg),
      space_(TaskSpace::discrete(cfg.seed_count)),
      task_(EncodedTask::index(0)),
      payoff_(duel_payoffs(0, cfg)),
      opponent_(DuelPolicy::uniform(cfg.rounds)) {
  if (cfg_.rounds < 1) throw ConfigError("duel needs at least one round");
}

Observation DuelGame::reset(std::optional<EncodedTask> new_task) {
  if (new_task) change_task(*new_task);
  round_ = 0;
  return_ = 0.0;
  return {static_cast<double>(task_.as_index()), 0.0};
}

void DuelGame::change_task(const EncodedTask& new_task) {
  if (!space_.contains(new_task))
    throw OutOfRangeError("seed outside the duel task space");
  task_ = new_task;
  payoff_ = duel_payoffs(task_.as_index(), cfg_);
}

StepResult DuelGame::step(int action) {
  if (action < 0 || action >= 3) throw OutOfRangeError("duel action must be 0..2");
  const int opp = opponent_.act(round_, rng_);
  StepResult res;
  res.reward =
      payoff_[static_cast<std::size_t>(action)][static_cast<std::size_t>(opp)];
  return_ += res.reward;
  ++round_;
  res.done = round_ >= cfg_.rounds;
  res.info.task_progress = task_completion();
  res.info.task_complete = res.done && return_ > 0.0;
  res.obs = {static_cast<double>(task_.as_index()),
             static_cast<double>(round_)};
  return res;
}

double DuelGame::task_completion() const { return return_ > 0.0 ? 1.0 : 0.0; }

int DuelGame::state_count() const {
  return static_cast<int>(cfg_.seed_count) * cfg_.rounds;
}

int DuelGame::state_id() const {
  return static_cast<int>(task_.as_index()) * cfg_.rounds +
         std::min(round_, cfg_.rounds - 1);
}

void DuelGame::set_opponent(DuelPolicy policy) { opponent_ = std::move(policy); }

void DuelGame::set_opponent_bytes(const std::string& bytes) {
  opponent_ = DuelPolicy::deserialize(bytes);
}

void DuelGame::set_opponent_uniform() {
  opponent_ = DuelPolicy::uniform(cfg_.rounds);
}

std::string DuelGame::render_text() const {
  std::ostringstream out;
  out << "seed=" << task_.as_index() << " round=" << round_
      << " return=" << return_;
  return out.str();
}

}  // namespace curricula
