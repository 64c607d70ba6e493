#ifndef DISPSTAT_ERRORS_HPP
#define DISPSTAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dispstat {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptySeries : Error {
    EmptySeries() : Error("series is empty") {}
    explicit EmptySeries(const std::string& what) : Error(what) {}
};

struct InvalidDuration : Error {
    explicit InvalidDuration(const std::string& what) : Error(what) {}
};

struct InvalidProbability : Error {
    explicit InvalidProbability(double p)
        : Error("probability must lie in [0, 1], got " + std::to_string(p)) {}
};

struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& what) : Error(what) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

struct UndefinedCorrelation : Error {
    explicit UndefinedCorrelation(const std::string& what) : Error(what) {}
};

struct InsufficientData : Error {
    explicit InsufficientData(const std::string& what) : Error(what) {}
};

struct UnknownIndicator : Error {
    explicit UnknownIndicator(const std::string& name)
        : Error("unknown indicator: " + name) {}
};

struct InvalidThreshold : Error {
    explicit InvalidThreshold(const std::string& what) : Error(what) {}
};

struct FatalParseError : Error {
    explicit FatalParseError(const std::string& what) : Error(what) {}
};

}  // namespace dispstat

#endif  // DISPSTAT_ERRORS_HPP
