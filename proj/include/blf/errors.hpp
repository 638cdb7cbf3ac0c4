#ifndef BLF_ERRORS_HPP
#define BLF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace blf {

// Input could not be read or parsed.  CLI maps this to exit code 2.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was invoked on data that fails its preconditions.  Exit code 3.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Matching/gluing is impossible for the given pair of sides.  Exit code 4.
struct PlanError : std::runtime_error {
    explicit PlanError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace blf

#endif
