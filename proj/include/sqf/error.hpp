#pragma once

#include <stdexcept>
#include <string>

namespace sqf {

// Exit-code families used by the CLI: parse (1), precondition (2), cap (3).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sqf
