#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nlqs {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation of f(n) or Omega(n) hit a pole, or Omega(n) is unusable
/// (non-positive) where a confining oscillator is required.
class SingularityError : public Error {
public:
    SingularityError(int n, const std::string& what) : Error(what), n_(n) {}
    int n() const noexcept { return n_; }

private:
    int n_;
};

/// The nonlinearity kind has no continuous real-argument extension.
class UnsupportedKindError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. line() is 1-based, 0 when no line applies.
class ConfigError : public Error {
public:
    ConfigError(std::string source, int line, const std::string& message)
        : Error(format(source, line, message)), source_(std::move(source)), line_(line) {}

    const std::string& source() const noexcept { return source_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& source, int line, const std::string& message) {
        return line > 0 ? source + ":" + std::to_string(line) + ": " + message : source + ": " + message;
    }

    std::string source_;
    int line_;
};

}  // namespace nlqs
