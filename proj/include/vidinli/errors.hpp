#pragma once

#include <stdexcept>
#include <string>

namespace vidinli {

/// Bad input: malformed data, violated preconditions, refused size bounds.
/// CLI maps this to exit code 1.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A structural guarantee that must hold for every accepted instance failed
/// to hold. Reaching this means the implementation, not the input, is wrong.
/// CLI maps this to exit code 2.
struct theorem_violation : std::logic_error {
    explicit theorem_violation(const std::string& what) : std::logic_error(what) {}
};

} // namespace vidinli
