#pragma once

#include <stdexcept>
#include <string>

namespace conjfix {

/// A caller broke a documented precondition (bad dimensions, value out of
/// domain, operand not in the required family).  Maps to CLI exit code 2.
struct contract_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed or unreadable input file.  Maps to CLI exit code 2.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A configured resource limit (e.g. the grid node cap) was exceeded.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Internal consistency check failed: a state the underlying theory rules
/// out was observed.  Indicates a bug, not a usage error.
struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace conjfix
