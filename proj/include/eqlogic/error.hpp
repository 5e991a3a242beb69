#ifndef EQLOGIC_ERROR_HPP
#define EQLOGIC_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eqlogic {

enum class ErrorKind {
  // frontend
  ParseError,
  UnknownElement,
  DuplicateElement,
  DuplicateEquation,
  DuplicateVariable,
  InvalidIdentifier,
  // signature
  DuplicateSort,
  DuplicateOperator,
  UndeclaredSort,
  UnknownOperator,
  // terms and substitutions
  UnboundVariable,
  ArityMismatch,
  SortMismatch,
  MissingBinding,
  // models
  EmptyCarrier,
  NonIdempotentRepr,
  PartialTable,
  DuplicateRow,
  NonCongruentOp,
  BudgetExceeded,
  // calculus
  UnknownHypothesis,
  ContextMismatch,
  MiddleTermMismatch,
  ConclusionMismatch,
  PreconditionFailed,
  EvidenceMismatch,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::DuplicateElement: return "DuplicateElement";
    case ErrorKind::DuplicateEquation: return "DuplicateEquation";
    case ErrorKind::DuplicateVariable: return "DuplicateVariable";
    case ErrorKind::InvalidIdentifier: return "InvalidIdentifier";
    case ErrorKind::DuplicateSort: return "DuplicateSort";
    case ErrorKind::DuplicateOperator: return "DuplicateOperator";
    case ErrorKind::UndeclaredSort: return "UndeclaredSort";
    case ErrorKind::UnknownOperator: return "UnknownOperator";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::MissingBinding: return "MissingBinding";
    case ErrorKind::EmptyCarrier: return "EmptyCarrier";
    case ErrorKind::NonIdempotentRepr: return "NonIdempotentRepr";
    case ErrorKind::PartialTable: return "PartialTable";
    case ErrorKind::DuplicateRow: return "DuplicateRow";
    case ErrorKind::NonCongruentOp: return "NonCongruentOp";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::UnknownHypothesis: return "UnknownHypothesis";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::MiddleTermMismatch: return "MiddleTermMismatch";
    case ErrorKind::ConclusionMismatch: return "ConclusionMismatch";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::EvidenceMismatch: return "EvidenceMismatch";
  }
  return "Unknown";
}

/// Errors that stem from the logic itself (a bad proof) rather than from
/// malformed input. The CLI maps these to exit code 1.
inline bool is_proof_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownHypothesis:
    case ErrorKind::ContextMismatch:
    case ErrorKind::MiddleTermMismatch:
    case ErrorKind::ConclusionMismatch:
    case ErrorKind::PreconditionFailed:
    case ErrorKind::EvidenceMismatch:
    case ErrorKind::BudgetExceeded:
      return true;
    default:
      return false;
  }
}

struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string detail, std::optional<SourcePos> pos = std::nullopt)
      : std::runtime_error(format(kind, detail, pos)), kind_(kind), detail_(std::move(detail)), pos_(pos) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::optional<SourcePos>& pos() const noexcept { return pos_; }

  // Returns a copy positioned at `pos` unless this error already carries one.
  Error at(SourcePos pos) const { return pos_ ? *this : Error(kind_, detail_, pos); }

 private:
  static std::string format(ErrorKind kind, const std::string& detail, const std::optional<SourcePos>& pos) {
    std::string out(to_string(kind));
    out += ": ";
    out += detail;
    if (pos) {
      out += " (line " + std::to_string(pos->line) + ", column " + std::to_string(pos->column) + ")";
    }
    return out;
  }

  ErrorKind kind_;
  std::string detail_;
  std::optional<SourcePos> pos_;
};

}  // namespace eqlogic

#endif  // EQLOGIC_ERROR_HPP
