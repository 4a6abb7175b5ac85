#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace foliation {

enum class ErrorKind {
  BaseMismatch,
  DivisionBySingularJet,
  BranchCutViolation,
  DomainError,
  OrderExceeded,
  ParseError,
  ArityMismatch,
  FamilyParamMismatch,
  SingularMap,
  EtaVanishes,
  FVanishes,
  NegativeDiscriminant,
  ConstraintViolation,
  SingularDenominator,
  NonReal,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorKind::ParseError, message + " at offset " + std::to_string(position)),
        position_(position),
        detail_(message) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::DivisionBySingularJet: return "DivisionBySingularJet";
    case ErrorKind::BranchCutViolation: return "BranchCutViolation";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::OrderExceeded: return "OrderExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::FamilyParamMismatch: return "FamilyParamMismatch";
    case ErrorKind::SingularMap: return "SingularMap";
    case ErrorKind::EtaVanishes: return "EtaVanishes";
    case ErrorKind::FVanishes: return "FVanishes";
    case ErrorKind::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::NonReal: return "NonReal";
  }
  return "Unknown";
}

}  // namespace foliation
