#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zdring {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed ring or polynomial text.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position, std::vector<std::string> expected)
      : Error(std::move(message)), position_(position), expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

// Well-formed text that violates a constraint (Z(1), empty relation list, ...).
class SemanticError : public Error {
 public:
  using Error::Error;
};

// A spec that cannot be realized as a finite ring.
class BuildError : public Error {
 public:
  using Error::Error;
};

class RingMismatch : public Error {
 public:
  RingMismatch() : Error("operands belong to different rings") {}
};

class NotAnIdeal : public Error {
 public:
  NotAnIdeal(std::string message, std::pair<std::size_t, std::size_t> witness)
      : Error(std::move(message)), witness_(witness) {}
  std::pair<std::size_t, std::size_t> witness() const noexcept { return witness_; }

 private:
  std::pair<std::size_t, std::size_t> witness_;
};

// Two deciders for the same property disagreed.
class InconsistencyError : public Error {
 public:
  InconsistencyError(std::string flag, std::string ring, std::string witness)
      : Error("inconsistent '" + flag + "' on " + ring + ": " + witness),
        flag_(std::move(flag)), ring_(std::move(ring)), witness_(std::move(witness)) {}

  const std::string& flag() const noexcept { return flag_; }
  const std::string& ring() const noexcept { return ring_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string flag_, ring_, witness_;
};

}  // namespace zdring
