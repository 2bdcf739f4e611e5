#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fourbody {

enum class ErrorCode {
    NonFinite,
    AllSameSign,
    ZeroArea,
    ImpossibleTriangle,
    NotKite,
    NegativeRadicand,
    InconsistentDistances,
    OutOfDomain,
    EmptyBracket,
    NoRoot,
    NonPhysicalRoot,
    DomainError,
    InvalidConfig,
    InvalidArgument,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::AllSameSign: return "AllSameSign";
        case ErrorCode::ZeroArea: return "ZeroArea";
        case ErrorCode::ImpossibleTriangle: return "ImpossibleTriangle";
        case ErrorCode::NotKite: return "NotKite";
        case ErrorCode::NegativeRadicand: return "NegativeRadicand";
        case ErrorCode::InconsistentDistances: return "InconsistentDistances";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::EmptyBracket: return "EmptyBracket";
        case ErrorCode::NoRoot: return "NoRoot";
        case ErrorCode::NonPhysicalRoot: return "NonPhysicalRoot";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable code; every failure in the library
/// is reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

#define FOURBODY_REQUIRE(cond, code, msg)              \
    do {                                               \
        if (!(cond)) throw ::fourbody::Error((code), (msg)); \
    } while (0)

}  // namespace fourbody
