#pragma once

#include <stdexcept>
#include <string>

namespace lt {

enum class Errc {
  InverseOfNonUnit,
  PrecisionExhausted,
  ConvergenceDomain,
  RingMismatch,
  NotAUnit,
  RootCountMismatch,
  NotInSubfield,
  NonzeroConstantTerm,
  TailNotBounded,
  NotInGhostImage,
  IntegralityViolation,
  CheckFailed,
  GramNotIdentity,
  SetMismatch,
  DuplicateFingerprint,
  PivotNotUnit,
  NonUnitLeadingTerm,
  DegreeOverflow,
  IdentityResidualNonzero,
  ConfigError,
};

constexpr const char* to_string(Errc c) {
  switch (c) {
    case Errc::InverseOfNonUnit: return "InverseOfNonUnit";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::ConvergenceDomain: return "ConvergenceDomain";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::RootCountMismatch: return "RootCountMismatch";
    case Errc::NotInSubfield: return "NotInSubfield";
    case Errc::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case Errc::TailNotBounded: return "TailNotBounded";
    case Errc::NotInGhostImage: return "NotInGhostImage";
    case Errc::IntegralityViolation: return "IntegralityViolation";
    case Errc::CheckFailed: return "CheckFailed";
    case Errc::GramNotIdentity: return "GramNotIdentity";
    case Errc::SetMismatch: return "SetMismatch";
    case Errc::DuplicateFingerprint: return "DuplicateFingerprint";
    case Errc::PivotNotUnit: return "PivotNotUnit";
    case Errc::NonUnitLeadingTerm: return "NonUnitLeadingTerm";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::IdentityResidualNonzero: return "IdentityResidualNonzero";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto a report status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lt
