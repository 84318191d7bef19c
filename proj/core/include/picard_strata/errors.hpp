#pragma once

#include <stdexcept>
#include <string>

namespace picard_strata {

// Raised when an input violates a documented precondition (bad graph,
// wrong degree, out-of-range bound).  The CLI maps this to exit code 2.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation falsifies an invariant the library relies on
// (e.g. a multidegree class without a semibalanced representative).  These
// are never expected on valid input; the CLI maps them to exit code 1.
class internal_error : public std::runtime_error {
public:
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace picard_strata
