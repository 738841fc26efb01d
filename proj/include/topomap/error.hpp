#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topomap {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An id (task, unit, qubit) that does not exist.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

class CycleError : public Error {
 public:
  CycleError(int edge_id, int src, int dst)
      : Error("dependency cycle through edge " + std::to_string(edge_id) +
              " (" + std::to_string(src) + " -> " + std::to_string(dst) + ")"),
        edge_id_(edge_id) {}
  int edge_id() const noexcept { return edge_id_; }

 private:
  int edge_id_;
};

class ConnectivityError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for the requested engine.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A sub-problem was built before the placements it depends on exist.
class PipelineOrderError : public Error {
 public:
  using Error::Error;
};

/// A solver returned a constraint-violating solution for sub-problem `sub()`.
class SolveQualityError : public Error {
 public:
  SolveQualityError(std::size_t sub, const std::string& what)
      : Error("sub-QUBO " + std::to_string(sub) + ": " + what), sub_(sub) {}
  std::size_t sub() const noexcept { return sub_; }

 private:
  std::size_t sub_;
};

class InvalidAssignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace topomap
