#pragma once

#include <stdexcept>
#include <string>

namespace curricula {

// Base for all library errors so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownTaskError : public Error {
 public:
  using Error::Error;
};

class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

class NotEnumerableError : public Error {
 public:
  using Error::Error;
};

class EmptyTaskSpaceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class NoSeenTasksError : public Error {
 public:
  using Error::Error;
};

class EmptyTrajectoryError : public Error {
 public:
  using Error::Error;
};

class UnknownOpponentError : public Error {
 public:
  using Error::Error;
};

class EmptyStoreError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace curricula
