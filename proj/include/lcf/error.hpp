#pragma once

#include <stdexcept>
#include <string>

namespace lcf {

enum class ErrorKind {
    DivisionByZero,
    SpecMismatch,
    ParseError,
    InsufficientPrecision,
    DegenerateQuadratic,
    InseparableQuadratic,
    PreconditionViolated,
    CertificateFailed,
    SearchExhausted,
    InternalInvariantViolated,
    ThresholdViolated,
    HypothesisViolated,
    SideConditionViolated,
    EnumerationTooLarge,
    NotFound,
    NotApplicable,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    const char* kind_name() const { return error_kind_name(kind_); }

private:
    ErrorKind kind_;
};

#define LCF_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(ErrorKind::Name, what) {} \
    };

LCF_DEFINE_ERROR(DivisionByZero)
LCF_DEFINE_ERROR(SpecMismatch)
LCF_DEFINE_ERROR(ParseError)
LCF_DEFINE_ERROR(InsufficientPrecision)
LCF_DEFINE_ERROR(DegenerateQuadratic)
LCF_DEFINE_ERROR(InseparableQuadratic)
LCF_DEFINE_ERROR(PreconditionViolated)
LCF_DEFINE_ERROR(CertificateFailed)
LCF_DEFINE_ERROR(SearchExhausted)
LCF_DEFINE_ERROR(InternalInvariantViolated)
LCF_DEFINE_ERROR(ThresholdViolated)
LCF_DEFINE_ERROR(HypothesisViolated)
LCF_DEFINE_ERROR(SideConditionViolated)
LCF_DEFINE_ERROR(EnumerationTooLarge)
LCF_DEFINE_ERROR(NotFound)
LCF_DEFINE_ERROR(NotApplicable)

#undef LCF_DEFINE_ERROR

inline const char* error_kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::DegenerateQuadratic: return "DegenerateQuadratic";
    case ErrorKind::InseparableQuadratic: return "InseparableQuadratic";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::CertificateFailed: return "CertificateFailed";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::InternalInvariantViolated: return "InternalInvariantViolated";
    case ErrorKind::ThresholdViolated: return "ThresholdViolated";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::SideConditionViolated: return "SideConditionViolated";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::NotApplicable: return "NotApplicable";
    }
    return "Error";
}

} // namespace lcf
