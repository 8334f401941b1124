#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmetallic {

enum class ErrorKind {
    ZeroSeries,
    InsufficientOrder,
    BadConstantTerm,
    NonIntegralCoefficient,
    NoStabilization,
    BranchMismatch,
    NonExactDivision,
    NonIntegralResult,
    NoConvergence,
    MultipleRoot,
    ImaginaryResidual,
    NotMonomialDenominator,
    BudgetExceeded,
    CacheCorrupt,
    InvalidArgument,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::ZeroSeries: return "ZeroSeries";
    case ErrorKind::InsufficientOrder: return "InsufficientOrder";
    case ErrorKind::BadConstantTerm: return "BadConstantTerm";
    case ErrorKind::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case ErrorKind::NoStabilization: return "NoStabilization";
    case ErrorKind::BranchMismatch: return "BranchMismatch";
    case ErrorKind::NonExactDivision: return "NonExactDivision";
    case ErrorKind::NonIntegralResult: return "NonIntegralResult";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::MultipleRoot: return "MultipleRoot";
    case ErrorKind::ImaginaryResidual: return "ImaginaryResidual";
    case ErrorKind::NotMonomialDenominator: return "NotMonomialDenominator";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::CacheCorrupt: return "CacheCorrupt";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string &what)
{
    throw Error(kind, what);
}

} // namespace qmetallic
