#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geolat {

enum class ErrorCode {
    DimensionMismatch,
    AsymmetricRTT,
    NonzeroDiagonal,
    NegativeRTT,
    DuplicateNodeName,
    EmptyNetwork,
    UnknownNode,
    KOutOfRange,
    InvalidArgument,
    NotAProperColoring,
    WrongColorCount,
    MissingFileUndefined,
    RankDeficient,
    FieldTooSmall,
    NotPrime,
    Undecodable,
    TimeBudgetExceeded,
    BudgetExceeded,
    InternalAssertion,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AsymmetricRTT: return "AsymmetricRTT";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::NegativeRTT: return "NegativeRTT";
    case ErrorCode::DuplicateNodeName: return "DuplicateNodeName";
    case ErrorCode::EmptyNetwork: return "EmptyNetwork";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotAProperColoring: return "NotAProperColoring";
    case ErrorCode::WrongColorCount: return "WrongColorCount";
    case ErrorCode::MissingFileUndefined: return "MissingFileUndefined";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::Undecodable: return "Undecodable";
    case ErrorCode::TimeBudgetExceeded: return "TimeBudgetExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InternalAssertion: return "InternalAssertion";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can dispatch on the kind rather than the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

inline void check_k(std::size_t k, std::size_t n)
{
    if (k < 1 || k > n) {
        fail(ErrorCode::KOutOfRange,
             "k=" + std::to_string(k) + " must satisfy 1 <= k <= n=" + std::to_string(n));
    }
}

} // namespace geolat
