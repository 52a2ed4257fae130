#pragma once

#include <stdexcept>
#include <string>

namespace nfpp {

/// A precondition on an argument was violated.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The sampling window does not cover what the operation needs.
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested window would not fit in memory.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search ran out of its fixed budget before bracketing its target.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value was requested outside the range of a tabulated quantity.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nfpp
