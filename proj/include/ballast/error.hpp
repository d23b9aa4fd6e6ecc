#ifndef BALLAST_ERROR_HPP
#define BALLAST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ballast {

/// Malformed or unusable input: bad numbers, empty instances, non-permutations.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input is well formed but outside what a planner or solver supports
/// (too many points for the exact solver, n < 4 for the exponential planner, ...).
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace ballast

#endif // BALLAST_ERROR_HPP
