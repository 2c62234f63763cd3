#ifndef PWAMIN_ERRORS_HPP
#define PWAMIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pwamin {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Vector/matrix dimensions do not agree.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

/// A documented operation precondition does not hold.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// A univariate minimization has no minimizer (objective decreases forever).
class UnboundedCoordinateError : public Error {
public:
    UnboundedCoordinateError(int coordinate, const std::string& what)
        : Error(what), coordinate_(coordinate) {}
    int coordinate() const { return coordinate_; }

private:
    int coordinate_;
};

/// Instance file could not be parsed. Line/column are 1-based; 0 means
/// the position is unknown (semantic errors found after syntax parsing).
class ParseError : public Error {
public:
    ParseError(std::string origin, int line, int column, const std::string& what)
        : Error(origin + (line > 0 ? ":" + std::to_string(line) + ":" + std::to_string(column)
                                   : std::string()) +
                ": " + what),
          origin_(std::move(origin)), line_(line), column_(column) {}
    const std::string& origin() const { return origin_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    std::string origin_;
    int line_;
    int column_;
};

/// The set {x | Ax <= b} is empty, so the boundedness question is void.
class EmptyFeasibleSetError : public Error {
public:
    explicit EmptyFeasibleSetError(const std::string& what) : Error(what) {}
};

} // namespace pwamin

#endif
