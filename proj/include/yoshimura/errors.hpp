#pragma once

#include <stdexcept>
#include <string>

namespace yoshimura {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad flags, out-of-range parameters, malformed state words.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The design cannot fold at all (sector angle below the flat-foldable bound).
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

/// A pop-out class has no kinematically admissible solution for this design.
class NoSolution : public Error {
public:
    using Error::Error;
};

/// The root finder did not reach tolerance within its iteration budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Kinematics that are only derived for n = 3.
class Unsupported : public Error {
public:
    using Error::Error;
};

/// A request would enumerate more configurations than the configured cap.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

class EmptyTarget : public Error {
public:
    using Error::Error;
};

class EmptyConfiguration : public Error {
public:
    using Error::Error;
};

/// Document parse failure with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error(message + " (line " + std::to_string(line) + ", column " +
                std::to_string(column) + ")"),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace yoshimura
