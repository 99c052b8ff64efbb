#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tyre {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A regex literal that does not follow the grammar.
class malformed_literal : public error {
    std::size_t pos_;

public:
    malformed_literal(std::size_t position, const std::string& message)
        : error("malformed literal at " + std::to_string(position) + ": " + message),
          pos_(position) {}
    std::size_t position() const { return pos_; }
};

/// `or` applied to regexes with different parse-tree shapes.
class shape_mismatch : public error {
public:
    using error::error;
};

/// Checked execution found a stack that breaks an instruction contract.
class shape_violation : public error {
public:
    using error::error;
};

/// PushChar executed with no current character.
class missing_char : public error {
public:
    using error::error;
};

/// A regex that may match the empty string was passed to an operation that
/// needs guaranteed progress (disjoint matching, substitution).
class not_consuming : public error {
public:
    using error::error;
};

}  // namespace tyre
