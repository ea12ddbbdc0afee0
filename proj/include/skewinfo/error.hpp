#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skewinfo {

enum class ErrorKind {
    NotSquare,
    DimensionMismatch,
    NotHermitian,
    NotPSD,
    TraceNotOne,
    ConvergenceFailure,
    CompletenessViolated,
    NotUnitary,
    SizeMismatch,
    InvalidRank,
    InvalidCount,
    InvalidPermutation,
    InvalidIndices,
    BudgetExceeded,
    InvalidT,
    OutOfRange,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorKind kind);

// Every library failure carries its kind and, where one exists, the offending
// magnitude (asymmetry, most negative eigenvalue, residual, ...).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, double magnitude = 0.0)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          kind_(kind),
          magnitude_(magnitude) {}

    ErrorKind kind() const noexcept { return kind_; }
    double magnitude() const noexcept { return magnitude_; }

private:
    ErrorKind kind_;
    double magnitude_;
};

}  // namespace skewinfo
