#include "expunge/errors.hpp"

namespace expunge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::OccurrenceDeficit: return "OccurrenceDeficit";
    case ErrorCode::PrefixViolation: return "PrefixViolation";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ShiftOutOfRange: return "ShiftOutOfRange";
    case ErrorCode::RowAlreadyDropped: return "RowAlreadyDropped";
    case ErrorCode::RuleArityMismatch: return "RuleArityMismatch";
    case ErrorCode::RuleViolated: return "RuleViolated";
    case ErrorCode::MNotTwo: return "MNotTwo";
    case ErrorCode::CoverageGap: return "CoverageGap";
    case ErrorCode::ReductionMismatch: return "ReductionMismatch";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::NotExtendable: return "NotExtendable";
    case ErrorCode::OutOfScope: return "OutOfScope";
    case ErrorCode::DistinctnessFailure: return "DistinctnessFailure";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::UnsupportedRank: return "UnsupportedRank";
    case ErrorCode::InvalidSectionData: return "InvalidSectionData";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

OccurrenceDeficit::OccurrenceDeficit(std::int64_t value_, std::int64_t count_, std::int64_t required_)
    : Error(ErrorCode::OccurrenceDeficit, "value " + std::to_string(value_) + " occurs " + std::to_string(count_) +
                                              " times, at least " + std::to_string(required_) + " required"),
      value(value_),
      count(count_),
      required(required_) {}

PrefixViolation::PrefixViolation(std::int64_t position_, std::int64_t smaller_)
    : Error(ErrorCode::PrefixViolation, "prefix condition fails at position " + std::to_string(position_) +
                                            ": value " + std::to_string(smaller_) + " occurs too rarely"),
      position(position_),
      smaller(smaller_) {}

CoverageGap::CoverageGap(std::int64_t column_, std::int64_t value_)
    : Error(ErrorCode::CoverageGap,
            "column " + std::to_string(column_) + " does not cover value " + std::to_string(value_)),
      column(column_),
      value(value_) {}

}  // namespace expunge
