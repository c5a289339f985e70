#pragma once

#include <stdexcept>
#include <string>

namespace polycollatz {

// Base for every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroPolynomialError : public Error {
public:
    explicit ZeroPolynomialError(const std::string& where)
        : Error("zero polynomial: " + where) {}
};

class DivisionByZeroError : public Error {
public:
    DivisionByZeroError() : Error("division by the zero polynomial") {}
};

class ParseError : public Error {
public:
    ParseError(std::string token, const std::string& why)
        : Error("cannot parse polynomial token '" + token + "': " + why), token_(std::move(token)) {}

    const std::string& token() const noexcept { return token_; }

private:
    std::string token_;
};

// A parameter outside the documented domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// An internal consistency check failed. Always indicates an arithmetic bug.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace polycollatz
