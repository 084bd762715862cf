#include "redplan/errors.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace redplan {

DivisibilityError::DivisibilityError(std::size_t divisor, std::size_t dividend,
                                     const std::string& what)
    : InvalidArgument(fmt::format("{}: {} does not divide {}", what, divisor, dividend)),
      divisor_(divisor),
      dividend_(dividend) {}

IncompleteAssignmentError::IncompleteAssignmentError(std::vector<std::size_t> missing)
    : InvalidArgument(fmt::format("incomplete assignment: batches [{}] are hosted by no worker",
                                  fmt::join(missing, ", "))),
      missing_(std::move(missing)) {}

}  // namespace redplan
