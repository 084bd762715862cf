#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace redplan {

// Base of every validation failure.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisibilityError : public InvalidArgument {
 public:
  DivisibilityError(std::size_t divisor, std::size_t dividend, const std::string& what);

  std::size_t divisor() const noexcept { return divisor_; }
  std::size_t dividend() const noexcept { return dividend_; }

 private:
  std::size_t divisor_;
  std::size_t dividend_;
};

class NoOverlapError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class IncompleteAssignmentError : public InvalidArgument {
 public:
  explicit IncompleteAssignmentError(std::vector<std::size_t> missing);

  const std::vector<std::size_t>& missing_batches() const noexcept { return missing_; }

 private:
  std::vector<std::size_t> missing_;
};

class PlanParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A computation produced a non-finite or otherwise impossible value.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace redplan
