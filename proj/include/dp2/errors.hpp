#pragma once

#include <stdexcept>

namespace dp2 {

// Raised when an input exceeds a documented size budget.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an internal consistency check fails.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace dp2
