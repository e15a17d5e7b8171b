#pragma once

#include <stdexcept>
#include <string>

namespace urnlab {

// Malformed input: bad distribution spec, invalid parameters, inconsistent counts.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured work or enumeration budget would be exceeded. Never silently approximated.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A per-trial algebraic identity failed. Indicates a bug, never expected in practice.
class IdentityViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Goodness-of-fit cannot be formed (e.g. fewer than two cells after pooling).
class DegenerateFit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace urnlab
