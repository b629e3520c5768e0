#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cliffq {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different algebras Cl(p,q).
class signature_error : public error {
public:
    using error::error;
};

/// An argument lies outside the domain of an operation (grade out of range,
/// bracket arity below two, exponent cap exceeded, ...).
class domain_error : public error {
public:
    using error::error;
};

/// A power series did not reach its tolerance within the term cap.
class convergence_error : public error {
public:
    using error::error;
};

/// A declared type or rank has no nonzero element in the requested algebra.
class infeasible_error : public error {
public:
    using error::error;
};

/// Malformed input text. `position()` is a 0-based byte offset.
class parse_error : public error {
public:
    parse_error(const std::string& message, std::size_t position)
        : error(message + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace cliffq
