#pragma once

#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "curricula/rng.hpp"

namespace curricula {

/// Environment-facing task identity. Discrete tasks are integers or strings,
/// box tasks are real vectors, tuple tasks are lists of component labels.
class TaskLabel {
 public:
  using List = std::vector<TaskLabel>;

  TaskLabel() : value_(std::int64_t{0}) {}
  TaskLabel(std::int64_t i) : value_(i) {}
  TaskLabel(int i) : value_(static_cast<std::int64_t>(i)) {}
  TaskLabel(std::string s) : value_(std::move(s)) {}
  TaskLabel(const char* s) : value_(std::string(s)) {}
  TaskLabel(std::vector<double> v) : value_(std::move(v)) {}
  TaskLabel(List parts) : value_(std::move(parts)) {}

  bool is_int() const { return value_.index() == 0; }
  bool is_string() const { return value_.index() == 1; }
  bool is_vector() const { return value_.index() == 2; }
  bool is_list() const { return value_.index() == 3; }

  std::int64_t as_int() const;
  const std::string& as_string() const;
  const std::vector<double>& as_vector() const;
  const List& as_list() const;

  /// Compact human-readable rendering, used in CSV output and oracle calls.
  std::string to_string() const;

  bool operator==(const TaskLabel&) const = default;

 private:
  std::variant<std::int64_t, std::string, std::vector<double>, List> value_;
};

/// Curriculum-facing task encoding: a flat index for discrete spaces, a real
/// vector for box spaces, or a composite of component encodings for tuples.
class EncodedTask {
 public:
  using Composite = std::vector<EncodedTask>;

  EncodedTask() : value_(std::int64_t{0}) {}

  static EncodedTask index(std::int64_t i) { return EncodedTask(Value(i)); }
  static EncodedTask vector(std::vector<double> v) {
    return EncodedTask(Value(std::move(v)));
  }
  static EncodedTask composite(Composite parts) {
    return EncodedTask(Value(std::move(parts)));
  }

  bool is_index() const { return value_.index() == 0; }
  bool is_vector() const { return value_.index() == 1; }
  bool is_composite() const { return value_.index() == 2; }

  std::int64_t as_index() const;
  const std::vector<double>& as_vector() const;
  const Composite& as_composite() const;

  std::string to_string() const;

  bool operator==(const EncodedTask&) const = default;

 private:
  using Value = std::variant<std::int64_t, std::vector<double>, Composite>;
  explicit EncodedTask(Value v) : value_(std::move(v)) {}
  Value value_;
};

/// The set of legal tasks an environment supports plus the bijection between
/// task labels and compact encodings.
///
/// Variants: Discrete(count, optional labels), Box(low, high), Tuple(children).
/// A space owns one seedable generator (std::mt19937_64, stable across runs
/// and platforms); `sample` is the only mutating operation.
class TaskSpace {
 public:
  enum class Kind { Discrete, Box, Tuple };

  static TaskSpace discrete(std::int64_t count);
  static TaskSpace discrete(std::vector<std::string> task_names);
  static TaskSpace box(std::vector<double> low, std::vector<double> high);
  static TaskSpace tuple(std::vector<TaskSpace> children);

  Kind kind() const { return kind_; }
  bool is_discrete() const { return kind_ == Kind::Discrete; }
  bool is_box() const { return kind_ == Kind::Box; }
  bool is_tuple() const { return kind_ == Kind::Tuple; }

  /// Discrete count; throws for other variants.
  std::int64_t count() const;
  const std::vector<double>& low() const;
  const std::vector<double>& high() const;
  const std::vector<TaskSpace>& children() const;

  void seed(std::uint64_t s) { rng_.seed(s); }
  EncodedTask sample();

  EncodedTask encode(const TaskLabel& task) const;
  TaskLabel decode(const EncodedTask& enc) const;
  bool contains(const EncodedTask& enc) const;

  /// All task labels for discrete (and tuple-of-discrete) spaces.
  /// Throws NotEnumerableError otherwise.
  std::vector<TaskLabel> tasks() const;

  bool enumerable() const;
  /// Number of tasks for enumerable spaces; throws NotEnumerableError.
  std::int64_t cardinality() const;

  /// Canonical flat index of an encoding in an enumerable space. Tuple
  /// encodings map to a mixed-radix index with the first child as the most
  /// significant digit. Inverse of from_flat.
  std::int64_t flat_index(const EncodedTask& enc) const;
  EncodedTask from_flat(std::int64_t i) const;

  nlohmann::json to_json() const;
  static TaskSpace from_json(const nlohmann::json& j);

 private:
  TaskSpace() = default;
  EncodedTask sample_with(Rng& rng) const;
  void check_contains(const EncodedTask& enc) const;

  Kind kind_ = Kind::Discrete;
  std::int64_t count_ = 0;
  std::optional<std::vector<std::string>> names_;
  std::vector<double> low_, high_;
  std::vector<TaskSpace> children_;
  Rng rng_;
};

}  // namespace curricula
