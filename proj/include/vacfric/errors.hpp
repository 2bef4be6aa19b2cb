#pragma once

#include <stdexcept>
#include <string>

namespace vacfric {

/// Base of every error raised by the library. `is_numerical()` separates
/// failures of a numerical method from bad inputs, which the CLI maps to
/// distinct exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, bool numerical = false)
        : std::runtime_error(what), numerical_(numerical) {}
    bool is_numerical() const noexcept { return numerical_; }

private:
    bool numerical_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(w) {}
};

// Evaluation at a point where the formula itself is singular.
struct SingularityError : Error {
    explicit SingularityError(const std::string& w) : Error(w) {}
};

struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error(w) {}
};

struct FormatError : Error {
    explicit FormatError(const std::string& w) : Error(w) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(w) {}
};

struct RangeError : Error {
    explicit RangeError(const std::string& w) : Error(w) {}
};

struct CoincidenceError : Error {
    explicit CoincidenceError(const std::string& w) : Error(w) {}
};

struct BracketError : Error {
    explicit BracketError(const std::string& w) : Error(w, true) {}
};

struct NoEquilibriumError : Error {
    explicit NoEquilibriumError(const std::string& w) : Error(w, true) {}
};

struct RegimeError : Error {
    explicit RegimeError(const std::string& w) : Error(w, true) {}
};

struct UndefinedPeakError : Error {
    explicit UndefinedPeakError(const std::string& w) : Error(w, true) {}
};

} // namespace vacfric
