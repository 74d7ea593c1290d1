#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cocycle {

enum class ErrorCode {
  UnsupportedFamily,
  ParameterOutOfRange,
  RadiusBudgetExceeded,
  BallTooLarge,
  TorsionElement,
  NotAGroup,
  BackgroundNotAdmissible,
  AgreementBallViolated,
  NotInSubshift,
  PeriodTooSmall,
  PatternNotAdmissible,
  RelatorViolation,
  InverseInconsistency,
  CapExceeded,
  HomomorphismInvalid,
  SeparationViolated,
  NoWitnessConstructor,
  PatternEnumerationTooLarge,
  RadiusInsufficient,
  ParseError,
};

inline std::string_view errorName(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(errorName(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view errorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::RadiusBudgetExceeded: return "RadiusBudgetExceeded";
    case ErrorCode::BallTooLarge: return "BallTooLarge";
    case ErrorCode::TorsionElement: return "TorsionElement";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::BackgroundNotAdmissible: return "BackgroundNotAdmissible";
    case ErrorCode::AgreementBallViolated: return "AgreementBallViolated";
    case ErrorCode::NotInSubshift: return "NotInSubshift";
    case ErrorCode::PeriodTooSmall: return "PeriodTooSmall";
    case ErrorCode::PatternNotAdmissible: return "PatternNotAdmissible";
    case ErrorCode::RelatorViolation: return "RelatorViolation";
    case ErrorCode::InverseInconsistency: return "InverseInconsistency";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::HomomorphismInvalid: return "HomomorphismInvalid";
    case ErrorCode::SeparationViolated: return "SeparationViolated";
    case ErrorCode::NoWitnessConstructor: return "NoWitnessConstructor";
    case ErrorCode::PatternEnumerationTooLarge: return "PatternEnumerationTooLarge";
    case ErrorCode::RadiusInsufficient: return "RadiusInsufficient";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace cocycle
