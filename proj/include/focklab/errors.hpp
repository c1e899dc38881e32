#pragma once

#include <stdexcept>
#include <string>

namespace focklab {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OverflowError : std::range_error {
    using std::range_error::range_error;
};

struct SizeLimitError : std::length_error {
    using std::length_error::length_error;
};

struct IllConditionedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotConvergedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace focklab
