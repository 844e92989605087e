#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ibds {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller passed something outside an operation's precondition.
class InputError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error("config key '" + key + "': " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// An internal guarantee of the round engine failed. Never expected to fire.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

} // namespace ibds
