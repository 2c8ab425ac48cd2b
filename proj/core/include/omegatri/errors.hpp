#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace omegatri {

// Error taxonomy matches the CLI exit-code contract:
//   usage_error -> 2, integrity_error (incl. parse_error) -> 3, resource_error -> 4.

/// Caller mistake: bad argument, violated precondition, unknown format.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Data that fails a structural invariant (row sums, endpoints, monotonicity).
class integrity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed serialized text; carries the 1-based line number.
class parse_error : public integrity_error {
public:
    parse_error(const std::string& what, std::size_t line)
        : integrity_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Allocation or scale failure; the operation was sound but did not fit.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace omegatri
