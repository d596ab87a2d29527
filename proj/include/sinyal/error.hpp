// SPDX-License-Identifier: Apache-2.0

#ifndef SINYAL_ERROR_HPP
#define SINYAL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sinyal {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or unreadable input (the CLI maps these to exit code 2).
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

/// File could not be opened or read.
class IoError : public InputError {
public:
    explicit IoError(const std::string& msg) : InputError(msg) {}
};

/// A record file line failed to parse or validate. Carries the 1-based line number.
class LoadError : public InputError {
public:
    LoadError(std::size_t line, const std::string& reason)
        : InputError("line " + std::to_string(line) + ": " + reason), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Query string failed to parse. Carries the byte offset of the offending token.
class QueryParseError : public InputError {
public:
    QueryParseError(std::size_t offset, const std::string& reason)
        : InputError("query offset " + std::to_string(offset) + ": " + reason),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Invalid configuration value or unknown key (the CLI maps these to exit code 3).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// Degenerate or incompatible data: empty vocabulary, single-class labels,
/// dimension mismatch, insufficient audit strata, unknown vocabulary term.
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

} // namespace sinyal

#endif
