#pragma once

#include <stdexcept>
#include <string>

namespace chatprofiler {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input data could not be parsed (wire format, config, resource files).
class ParseError : public Error {
public:
    ParseError(const std::string& what, long line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    long line() const noexcept { return line_; }

private:
    long line_;
};

/// A configuration value violates its contract.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace chatprofiler
