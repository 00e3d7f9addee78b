#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace s3vm {

// Bad arguments or violated preconditions.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A factorization or solve that could not complete.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, std::size_t pivot)
        : std::runtime_error(what + " (pivot " + std::to_string(pivot) + ")"), pivot_(pivot) {}

    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

// Malformed input files. line() is 1-based, 0 when not tied to a line.
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace s3vm
