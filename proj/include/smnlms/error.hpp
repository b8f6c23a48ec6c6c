#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smnlms {

// Base of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(const char* what_op, std::size_t expected, std::size_t got)
      : Error(std::string(what_op) + ": dimension mismatch (expected " +
              std::to_string(expected) + ", got " + std::to_string(got) + ")") {}
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class NonFiniteSample : public Error {
 public:
  using Error::Error;
};

// d(k) does not agree with w0'x(k) + n(k) for the audited step.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class NonContiguousRecords : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Wraps a step or audit failure raised inside a scenario run.
class IterationError : public Error {
 public:
  IterationError(std::size_t iteration, const std::string& cause)
      : Error("iteration " + std::to_string(iteration) + ": " + cause),
        iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

inline void require_same_size(const char* op, std::size_t expected, std::size_t got) {
  if (expected != got) throw DimensionMismatch(op, expected, got);
}

}  // namespace smnlms
