#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qls {

enum class ErrorCode {
  NonHermitian,
  NotDensity,
  DomainError,
  InvalidP,
  Overflow,
  DimMismatch,
  NotCP,
  NotTracePreserving,
  NotQubit,
  NotDoublyStochastic,
  NotUnitary,
  InvalidDistribution,
  DimensionCap,
  NotPrimitive,
  NotPrimitiveComposite,
  NotReversible,
  NotPositive,
  Singular,
  InfiniteDivergence,
  NotEigenbasis,
  QOutOfRange,
  BoundViolation,
  InvalidArgument,
  InputError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NotDensity: return "NotDensity";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotCP: return "NotCP";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::NotQubit: return "NotQubit";
    case ErrorCode::NotDoublyStochastic: return "NotDoublyStochastic";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotPrimitiveComposite: return "NotPrimitiveComposite";
    case ErrorCode::NotReversible: return "NotReversible";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::InfiniteDivergence: return "InfiniteDivergence";
    case ErrorCode::NotEigenbasis: return "NotEigenbasis";
    case ErrorCode::QOutOfRange: return "QOutOfRange";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InputError: return "InputError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace qls
