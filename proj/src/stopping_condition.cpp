#include "curricula/curricula/stopping_condition.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "curricula/errors.hpp"

namespace curricula {

namespace {

const char* metric_name(StoppingCondition::Metric m) {
  switch (m) {
    case StoppingCondition::Metric::steps: return "steps";
    case StoppingCondition::Metric::episodes: return "episodes";
    case StoppingCondition::Metric::tasks: return "tasks";
    case StoppingCondition::Metric::episodic_return: return "return";
  }
  return "?";
}

const char* cmp_name(StoppingCondition::Cmp c) {
  switch (c) {
    case StoppingCondition::Cmp::lt: return "<";
    case StoppingCondition::Cmp::le: return "<=";
    case StoppingCondition::Cmp::gt: return ">";
    case StoppingCondition::Cmp::ge: return ">=";
    case StoppingCondition::Cmp::eq: return "=";
  }
  return "?";
}

bool compare(double value, StoppingCondition::Cmp cmp, double threshold,
             bool integral) {
  switch (cmp) {
    case StoppingCondition::Cmp::lt: return value < threshold;
    case StoppingCondition::Cmp::le: return value <= threshold;
    case StoppingCondition::Cmp::gt: return value > threshold;
    case StoppingCondition::Cmp::ge: return value >= threshold;
    case StoppingCondition::Cmp::eq:
      // exact on integer metrics, tolerant on reals
      return integral ? value == threshold
                      : std::abs(value - threshold) <= 1e-9;
  }
  return false;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  StoppingCondition parse() {
    StoppingCondition cond;
    cond.clauses.push_back(parse_and());
    while (accept("||")) cond.clauses.push_back(parse_and());
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return cond;
  }

 private:
  std::vector<StoppingCondition::Atom> parse_and() {
    std::vector<StoppingCondition::Atom> atoms;
    atoms.push_back(parse_atom());
    while (accept("&&")) atoms.push_back(parse_atom());
    return atoms;
  }

  StoppingCondition::Atom parse_atom() {
    skip_ws();
    StoppingCondition::Atom atom{};
    if (accept_word("steps")) {
      atom.metric = StoppingCondition::Metric::steps;
    } else if (accept_word("episodes")) {
      atom.metric = StoppingCondition::Metric::episodes;
    } else if (accept_word("tasks")) {
      atom.metric = StoppingCondition::Metric::tasks;
    } else if (accept_word("return")) {
      atom.metric = StoppingCondition::Metric::episodic_return;
    } else {
      throw ParseError("expected a metric name", pos_);
    }
    skip_ws();
    if (accept("<=")) {
      atom.cmp = StoppingCondition::Cmp::le;
    } else if (accept(">=")) {
      atom.cmp = StoppingCondition::Cmp::ge;
    } else if (accept("<")) {
      atom.cmp = StoppingCondition::Cmp::lt;
    } else if (accept(">")) {
      atom.cmp = StoppingCondition::Cmp::gt;
    } else if (accept("=")) {
      atom.cmp = StoppingCondition::Cmp::eq;
    } else {
      throw ParseError("expected a comparator", pos_);
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.' || text_[pos_] == '-' || text_[pos_] == '+' ||
            text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
    }
    double value = 0.0;
    const auto res =
        std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (start == pos_ || res.ec != std::errc{} ||
        res.ptr != text_.data() + pos_) {
      throw ParseError("expected a numeric threshold", start);
    }
    if (!std::isfinite(value)) throw ParseError("threshold must be finite", start);
    atom.threshold = value;
    return atom;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(const char* tok) {
    skip_ws();
    const std::size_t n = std::char_traits<char>::length(tok);
    if (text_.compare(pos_, n, tok) == 0) {
      pos_ += n;
      return true;
    }
    return false;
  }

  bool accept_word(const char* word) {
    const std::size_t n = std::char_traits<char>::length(word);
    if (text_.compare(pos_, n, word) != 0) return false;
    const std::size_t end = pos_ + n;
    if (end < text_.size() &&
        std::isalpha(static_cast<unsigned char>(text_[end])))
      return false;
    pos_ = end;
    return true;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

bool StoppingCondition::evaluate(const StageMetrics& m) const {
  for (const auto& conjunction : clauses) {
    bool all = true;
    for (const auto& atom : conjunction) {
      double value = 0.0;
      bool integral = true;
      switch (atom.metric) {
        case Metric::steps: value = static_cast<double>(m.steps); break;
        case Metric::episodes: value = static_cast<double>(m.episodes); break;
        case Metric::tasks: value = static_cast<double>(m.tasks); break;
        case Metric::episodic_return:
          if (!m.trailing_return) {
            all = false;
            break;
          }
          value = *m.trailing_return;
          integral = false;
          break;
      }
      if (!all) break;
      if (!compare(value, atom.cmp, atom.threshold, integral)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

std::string StoppingCondition::render() const {
  std::string out;
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    if (c) out += "||";
    for (std::size_t a = 0; a < clauses[c].size(); ++a) {
      if (a) out += "&&";
      const auto& atom = clauses[c][a];
      char buf[48];
      std::snprintf(buf, sizeof(buf), "%.17g", atom.threshold);
      out += metric_name(atom.metric);
      out += cmp_name(atom.cmp);
      out += buf;
    }
  }
  return out;
}

StoppingCondition parse_condition(const std::string& text) {
  if (text.empty()) throw ParseError("empty condition", 0);
  return Parser(text).parse();
}

MetricTracker::MetricTracker(std::size_t return_window)
    : window_(return_window), recent_returns_(return_window, 0.0) {}

void MetricTracker::on_episode(double episodic_return, std::int64_t length) {
  metrics_.episodes += 1;
  metrics_.steps += length;
  window_sum_ += episodic_return - recent_returns_[next_];
  recent_returns_[next_] = episodic_return;
  next_ = (next_ + 1) % window_;
  if (next_ == 0) full_ = true;
  if (full_)
    metrics_.trailing_return = window_sum_ / static_cast<double>(window_);
}

void MetricTracker::on_task_progress(double progress) {
  if (progress >= 1.0) metrics_.tasks += 1;
}

void MetricTracker::reset() {
  metrics_ = StageMetrics{};
  std::fill(recent_returns_.begin(), recent_returns_.end(), 0.0);
  next_ = 0;
  full_ = false;
  window_sum_ = 0.0;
}

StageMetrics MetricTracker::snapshot() const { return metrics_; }

}  // namespace curricula
