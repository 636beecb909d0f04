#include "curricula/curricula/omni.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <charconv>
#include <csignal>
#include <nlohmann/json.hpp>

#include "curricula/errors.hpp"

namespace curricula {

using nlohmann::json;

SampleDistribution omni_filter(const SampleDistribution& base,
                               const std::vector<bool>& mask) {
  if (mask.size() != base.probs.size())
    throw Error("omni mask length does not match the distribution");
  const bool any_true =
      std::any_of(mask.begin(), mask.end(), [](bool b) { return b; });
  if (!any_true) return SampleDistribution::uniform(
      static_cast<std::int64_t>(base.probs.size()));

  std::vector<double> masked(base.probs.size(), 0.0);
  double surviving = 0.0;
  for (std::size_t i = 0; i < masked.size(); ++i) {
    if (!mask[i]) continue;
    masked[i] = base.probs[i];
    surviving += masked[i];
  }
  if (surviving <= 0.0) {
    // interesting tasks carry no mass; spread uniformly over them
    for (std::size_t i = 0; i < masked.size(); ++i)
      masked[i] = mask[i] ? 1.0 : 0.0;
  }
  return normalize_or_uniform(std::move(masked));
}

namespace {

struct FamilyTier {
  std::string family;
  std::int64_t tier = 0;
};

FamilyTier split_label(const std::string& label) {
  const auto colon = label.rfind(':');
  if (colon == std::string::npos || colon + 1 == label.size())
    return {label, 0};
  std::int64_t tier = 0;
  const char* first = label.data() + colon + 1;
  const char* last = label.data() + label.size();
  const auto res = std::from_chars(first, last, tier);
  if (res.ec != std::errc{} || res.ptr != last) return {label, 0};
  return {label.substr(0, colon), tier};
}

}  // namespace

std::vector<bool> default_interestingness(const std::vector<std::string>& labels,
                                          const std::vector<double>& p) {
  if (labels.size() != p.size())
    throw Error("oracle needs one success rate per label");
  std::vector<FamilyTier> parsed(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    parsed[i] = split_label(labels[i]);

  std::vector<bool> mask(labels.size(), true);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (p[i] >= 0.95) {
      mask[i] = false;  // already mastered
      continue;
    }
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (j == i) continue;
      if (parsed[j].family == parsed[i].family &&
          parsed[j].tier >= parsed[i].tier && p[j] > p[i]) {
        mask[i] = false;  // dominated within its own skill family
        break;
      }
    }
  }
  return mask;
}

SubprocessOracle::SubprocessOracle(std::vector<std::string> argv) {
  if (argv.empty()) throw ConfigError("oracle command is empty");
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
    throw Error("failed to create oracle pipes");
  const pid_t pid = fork();
  if (pid < 0) throw Error("failed to fork oracle process");
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (auto& a : argv) cargv.push_back(a.data());
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    _exit(127);
  }
  child_pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  close(in_pipe[0]);
  close(out_pipe[1]);
}

SubprocessOracle::~SubprocessOracle() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (child_pid_ > 0) {
    int status = 0;
    if (waitpid(child_pid_, &status, WNOHANG) == 0) {
      kill(child_pid_, SIGTERM);
      waitpid(child_pid_, &status, 0);
    }
  }
}

std::vector<bool> SubprocessOracle::operator()(
    const std::vector<std::string>& labels, const std::vector<double>& p) {
  json request;
  request["tasks"] = labels;
  request["success_rates"] = p;
  std::string line = request.dump();
  line.push_back('\n');
  std::size_t written = 0;
  while (written < line.size()) {
    const auto n =
        write(to_child_, line.data() + written, line.size() - written);
    if (n <= 0) throw Error("oracle process is not accepting requests");
    written += static_cast<std::size_t>(n);
  }

  std::string reply;
  char ch = 0;
  while (true) {
    const auto n = read(from_child_, &ch, 1);
    if (n <= 0) throw Error("oracle process closed its output");
    if (ch == '\n') break;
    reply.push_back(ch);
  }
  const auto parsed = json::parse(reply);
  auto mask = parsed.at("mask").get<std::vector<bool>>();
  if (mask.size() != labels.size())
    throw Error("oracle mask length does not match the task list");
  return mask;
}

SampleDistribution sfl_with_omni(const std::vector<std::string>& labels,
                                 const std::vector<double>& p,
                                 const SflConfig& cfg,
                                 const InterestingnessOracle& oracle) {
  return omni_filter(sfl_distribution(p, cfg), oracle(labels, p));
}

OmniCurriculum::OmniCurriculum(TaskSpace space, std::unique_ptr<Curriculum> base,
                               InterestingnessOracle oracle)
    : Curriculum(std::move(space)),
      base_(std::move(base)),
      oracle_(std::move(oracle)),
      p_(static_cast<std::size_t>(space_.cardinality()), 0.0),
      mask_(static_cast<std::size_t>(space_.cardinality()), true),
      dist_(SampleDistribution::uniform(space_.cardinality())) {
  if (!base_) throw ConfigError("omni needs a base curriculum");
  if (base_->space().cardinality() != space_.cardinality())
    throw ConfigError("omni base curriculum has a mismatched task space");
  labels_.reserve(p_.size());
  for (const auto& label : space_.tasks()) labels_.push_back(label.to_string());
}

SampleDistribution OmniCurriculum::sample_distribution() const { return dist_; }

std::vector<std::string> OmniCurriculum::consumed_metrics() const {
  return base_->consumed_metrics();
}

std::optional<int> OmniCurriculum::evaluation_period() const {
  return base_->evaluation_period();
}

void OmniCurriculum::seed(std::uint64_t s) {
  Curriculum::seed(s);
  base_->seed(rng_.fork_seed());
}

bool OmniCurriculum::consume_metric(
    const std::string& key,
    const std::vector<std::pair<EncodedTask, double>>& values) {
  if (key != "success_rates") return false;
  MetricBatch forwarded;
  forwarded.entries[key] = values;
  base_->update_on_demand(forwarded);
  for (const auto& [task, rate] : values)
    p_[static_cast<std::size_t>(space_.flat_index(task))] = rate;
  mask_ = oracle_(labels_, p_);
  dist_ = omni_filter(base_->sample_distribution(), mask_);
  return true;
}

}  // namespace curricula
