#ifndef TUAV_ERRORS_HPP
#define TUAV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tuav {

// Thrown when a config or input file violates one of its invariants.
// The message names the offending field so the CLI can print it verbatim.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a persisted file (scenario, Q-table) cannot be parsed.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace tuav

#endif
