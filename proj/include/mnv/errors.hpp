#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mnv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZeroFunction : public Error {
public:
    DivisionByZeroFunction() : Error("division by the zero rational function") {}
};

/// The denominator of a field vanishes (or underflows) at the requested point.
class SingularPoint : public Error {
public:
    using Error::Error;
};

class ToleranceNotMet : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, std::vector<std::string> expected, const std::string& message)
        : Error(message), position_(position), expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::vector<std::string> expected_;
};

}  // namespace mnv
