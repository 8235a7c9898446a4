#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace syscan {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter fell outside its admissible interval.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A probability vector that does not sum to one or has negative mass.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Surface string could not be parsed. `position()` is the 0-based token index.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at token " + std::to_string(position) + ")"), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A verb quota asked for more unique commands than the grammar can provide.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t requested, std::size_t available)
      : Error(what), requested_(requested), available_(available) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t available() const noexcept { return available_; }
  std::size_t deficit() const noexcept { return requested_ - available_; }

 private:
  std::size_t requested_;
  std::size_t available_;
};

/// Asked for a statistic over a slice of a dataset that has no samples.
class EmptySliceError : public Error {
 public:
  using Error::Error;
};

/// A file was malformed. `line()` is 1-based, or 0 when not line-oriented.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Predictions do not cover the gold indices exactly once.
class CoverageError : public Error {
 public:
  CoverageError(std::vector<std::size_t> missing, std::vector<std::size_t> duplicates,
                std::vector<std::size_t> out_of_range);

  const std::vector<std::size_t>& missing() const noexcept { return missing_; }
  const std::vector<std::size_t>& duplicates() const noexcept { return duplicates_; }
  const std::vector<std::size_t>& out_of_range() const noexcept { return out_of_range_; }

 private:
  std::vector<std::size_t> missing_;
  std::vector<std::size_t> duplicates_;
  std::vector<std::size_t> out_of_range_;
};

}  // namespace syscan
