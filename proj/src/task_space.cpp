#include "curricula/task_space.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "curricula/errors.hpp"

namespace curricula {

using nlohmann::json;

std::int64_t TaskLabel::as_int() const {
  if (!is_int()) throw OutOfRangeError("task label is not an integer");
  return std::get<std::int64_t>(value_);
}

const std::string& TaskLabel::as_string() const {
  if (!is_string()) throw OutOfRangeError("task label is not a string");
  return std::get<std::string>(value_);
}

const std::vector<double>& TaskLabel::as_vector() const {
  if (!is_vector()) throw OutOfRangeError("task label is not a vector");
  return std::get<std::vector<double>>(value_);
}

const TaskLabel::List& TaskLabel::as_list() const {
  if (!is_list()) throw OutOfRangeError("task label is not a list");
  return std::get<List>(value_);
}

std::string TaskLabel::to_string() const {
  std::ostringstream out;
  if (is_int()) {
    out << as_int();
  } else if (is_string()) {
    out << as_string();
  } else if (is_vector()) {
    out << "[";
    const auto& v = as_vector();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out << ";";
      out << v[i];
    }
    out << "]";
  } else {
    out << "(";
    const auto& parts = as_list();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out << "|";
      out << parts[i].to_string();
    }
    out << ")";
  }
  return out.str();
}

std::int64_t EncodedTask::as_index() const {
  if (!is_index()) throw OutOfRangeError("encoding is not an index");
  return std::get<std::int64_t>(value_);
}

const std::vector<double>& EncodedTask::as_vector() const {
  if (!is_vector()) throw OutOfRangeError("encoding is not a vector");
  return std::get<std::vector<double>>(value_);
}

const EncodedTask::Composite& EncodedTask::as_composite() const {
  if (!is_composite()) throw OutOfRangeError("encoding is not a composite");
  return std::get<Composite>(value_);
}

std::string EncodedTask::to_string() const {
  std::ostringstream out;
  if (is_index()) {
    out << as_index();
  } else if (is_vector()) {
    out << "[";
    const auto& v = as_vector();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out << ";";
      out << v[i];
    }
    out << "]";
  } else {
    out << "(";
    const auto& parts = as_composite();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out << "|";
      out << parts[i].to_string();
    }
    out << ")";
  }
  return out.str();
}

TaskSpace TaskSpace::discrete(std::int64_t count) {
  if (count < 1) throw ConfigError("discrete space needs count >= 1");
  TaskSpace s;
  s.kind_ = Kind::Discrete;
  s.count_ = count;
  return s;
}

TaskSpace TaskSpace::discrete(std::vector<std::string> task_names) {
  if (task_names.empty()) throw ConfigError("discrete space needs tasks");
  for (std::size_t i = 0; i < task_names.size(); ++i) {
    for (std::size_t j = i + 1; j < task_names.size(); ++j) {
      if (task_names[i] == task_names[j])
        throw ConfigError("duplicate task label: " + task_names[i]);
    }
  }
  TaskSpace s;
  s.kind_ = Kind::Discrete;
  s.count_ = static_cast<std::int64_t>(task_names.size());
  s.names_ = std::move(task_names);
  return s;
}

TaskSpace TaskSpace::box(std::vector<double> low, std::vector<double> high) {
  if (low.empty() || low.size() != high.size())
    throw ConfigError("box space needs matching nonempty bounds");
  for (std::size_t i = 0; i < low.size(); ++i) {
    if (!(low[i] <= high[i])) throw ConfigError("box space needs low <= high");
  }
  TaskSpace s;
  s.kind_ = Kind::Box;
  s.low_ = std::move(low);
  s.high_ = std::move(high);
  return s;
}

TaskSpace TaskSpace::tuple(std::vector<TaskSpace> children) {
  if (children.empty()) throw ConfigError("tuple space needs children");
  TaskSpace s;
  s.kind_ = Kind::Tuple;
  s.children_ = std::move(children);
  return s;
}

std::int64_t TaskSpace::count() const {
  if (!is_discrete()) throw NotEnumerableError("space is not discrete");
  return count_;
}

const std::vector<double>& TaskSpace::low() const {
  if (!is_box()) throw OutOfRangeError("space is not a box");
  return low_;
}

const std::vector<double>& TaskSpace::high() const {
  if (!is_box()) throw OutOfRangeError("space is not a box");
  return high_;
}

const std::vector<TaskSpace>& TaskSpace::children() const {
  if (!is_tuple()) throw OutOfRangeError("space is not a tuple");
  return children_;
}

EncodedTask TaskSpace::sample() { return sample_with(rng_); }

EncodedTask TaskSpace::sample_with(Rng& rng) const {
  switch (kind_) {
    case Kind::Discrete:
      return EncodedTask::index(rng.uniform_int(count_));
    case Kind::Box: {
      std::vector<double> v(low_.size());
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = rng.uniform(low_[i], high_[i]);
      return EncodedTask::vector(std::move(v));
    }
    case Kind::Tuple: {
      EncodedTask::Composite parts;
      parts.reserve(children_.size());
      for (const auto& c : children_) parts.push_back(c.sample_with(rng));
      return EncodedTask::composite(std::move(parts));
    }
  }
  throw Error("unreachable");
}

EncodedTask TaskSpace::encode(const TaskLabel& task) const {
  switch (kind_) {
    case Kind::Discrete: {
      if (names_) {
        if (!task.is_string())
          throw UnknownTaskError("expected a named task label");
        auto it = std::find(names_->begin(), names_->end(), task.as_string());
        if (it == names_->end())
          throw UnknownTaskError("unknown task: " + task.as_string());
        return EncodedTask::index(it - names_->begin());
      }
      if (!task.is_int()) throw UnknownTaskError("expected an integer task");
      const auto i = task.as_int();
      if (i < 0 || i >= count_)
        throw UnknownTaskError("task out of range: " + std::to_string(i));
      return EncodedTask::index(i);
    }
    case Kind::Box: {
      if (!task.is_vector()) throw UnknownTaskError("expected a vector task");
      auto v = task.as_vector();
      auto enc = EncodedTask::vector(std::move(v));
      check_contains(enc);
      return enc;
    }
    case Kind::Tuple: {
      if (!task.is_list()) throw UnknownTaskError("expected a task list");
      const auto& parts = task.as_list();
      if (parts.size() != children_.size())
        throw UnknownTaskError("tuple arity mismatch");
      EncodedTask::Composite enc;
      enc.reserve(parts.size());
      for (std::size_t i = 0; i < parts.size(); ++i)
        enc.push_back(children_[i].encode(parts[i]));
      return EncodedTask::composite(std::move(enc));
    }
  }
  throw Error("unreachable");
}

TaskLabel TaskSpace::decode(const EncodedTask& enc) const {
  check_contains(enc);
  switch (kind_) {
    case Kind::Discrete: {
      const auto i = enc.as_index();
      if (names_) return TaskLabel((*names_)[static_cast<std::size_t>(i)]);
      return TaskLabel(i);
    }
    case Kind::Box:
      return TaskLabel(enc.as_vector());
    case Kind::Tuple: {
      TaskLabel::List parts;
      const auto& comps = enc.as_composite();
      parts.reserve(comps.size());
      for (std::size_t i = 0; i < comps.size(); ++i)
        parts.push_back(children_[i].decode(comps[i]));
      return TaskLabel(std::move(parts));
    }
  }
  throw Error("unreachable");
}

bool TaskSpace::contains(const EncodedTask& enc) const {
  switch (kind_) {
    case Kind::Discrete:
      return enc.is_index() && enc.as_index() >= 0 && enc.as_index() < count_;
    case Kind::Box: {
      if (!enc.is_vector()) return false;
      const auto& v = enc.as_vector();
      if (v.size() != low_.size()) return false;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] < low_[i] || v[i] > high_[i]) return false;
      return true;
    }
    case Kind::Tuple: {
      if (!enc.is_composite()) return false;
      const auto& parts = enc.as_composite();
      if (parts.size() != children_.size()) return false;
      for (std::size_t i = 0; i < parts.size(); ++i)
        if (!children_[i].contains(parts[i])) return false;
      return true;
    }
  }
  return false;
}

void TaskSpace::check_contains(const EncodedTask& enc) const {
  if (!contains(enc))
    throw OutOfRangeError("encoding " + enc.to_string() +
                          " is outside the task space");
}

bool TaskSpace::enumerable() const {
  switch (kind_) {
    case Kind::Discrete:
      return true;
    case Kind::Box:
      return false;
    case Kind::Tuple:
      return std::all_of(children_.begin(), children_.end(),
                         [](const TaskSpace& c) { return c.enumerable(); });
  }
  return false;
}

std::int64_t TaskSpace::cardinality() const {
  if (!enumerable())
    throw NotEnumerableError("task space is not enumerable");
  if (is_discrete()) return count_;
  std::int64_t n = 1;
  for (const auto& c : children_) n *= c.cardinality();
  return n;
}

std::vector<TaskLabel> TaskSpace::tasks() const {
  const auto n = cardinality();
  std::vector<TaskLabel> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.push_back(decode(from_flat(i)));
  return out;
}

std::int64_t TaskSpace::flat_index(const EncodedTask& enc) const {
  check_contains(enc);
  if (is_discrete()) return enc.as_index();
  if (!enumerable()) throw NotEnumerableError("task space is not enumerable");
  std::int64_t idx = 0;
  const auto& parts = enc.as_composite();
  for (std::size_t i = 0; i < children_.size(); ++i) {
    idx = idx * children_[i].cardinality() + children_[i].flat_index(parts[i]);
  }
  return idx;
}

EncodedTask TaskSpace::from_flat(std::int64_t i) const {
  const auto n = cardinality();
  if (i < 0 || i >= n)
    throw OutOfRangeError("flat index out of range: " + std::to_string(i));
  if (is_discrete()) return EncodedTask::index(i);
  EncodedTask::Composite parts(children_.size());
  for (std::size_t c = children_.size(); c-- > 0;) {
    const auto card = children_[c].cardinality();
    parts[c] = children_[c].from_flat(i % card);
    i /= card;
  }
  return EncodedTask::composite(std::move(parts));
}

json TaskSpace::to_json() const {
  json j;
  switch (kind_) {
    case Kind::Discrete:
      j["type"] = "discrete";
      j["count"] = count_;
      if (names_) j["tasks"] = *names_;
      break;
    case Kind::Box:
      j["type"] = "box";
      j["low"] = low_;
      j["high"] = high_;
      break;
    case Kind::Tuple: {
      j["type"] = "tuple";
      json kids = json::array();
      for (const auto& c : children_) kids.push_back(c.to_json());
      j["children"] = std::move(kids);
      break;
    }
  }
  return j;
}

TaskSpace TaskSpace::from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "discrete") {
    if (j.contains("tasks")) {
      auto names = j.at("tasks").get<std::vector<std::string>>();
      if (j.contains("count") &&
          j.at("count").get<std::int64_t>() !=
              static_cast<std::int64_t>(names.size()))
        throw ConfigError("discrete count does not match task list length");
      return discrete(std::move(names));
    }
    return discrete(j.at("count").get<std::int64_t>());
  }
  if (type == "box") {
    return box(j.at("low").get<std::vector<double>>(),
               j.at("high").get<std::vector<double>>());
  }
  if (type == "tuple") {
    std::vector<TaskSpace> kids;
    for (const auto& cj : j.at("children")) kids.push_back(from_json(cj));
    return tuple(std::move(kids));
  }
  throw ConfigError("unknown task space type: " + type);
}

}  // namespace curricula
