#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace expunge {

enum class ErrorCode {
  InvalidArgument,
  Overflow,
  OccurrenceDeficit,
  PrefixViolation,
  PreconditionViolated,
  ShiftOutOfRange,
  RowAlreadyDropped,
  RuleArityMismatch,
  RuleViolated,
  MNotTwo,
  CoverageGap,
  ReductionMismatch,
  NotInjective,
  NotExtendable,
  OutOfScope,
  DistinctnessFailure,
  HypothesisViolation,
  UnsupportedRank,
  InvalidSectionData,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class OccurrenceDeficit : public Error {
 public:
  OccurrenceDeficit(std::int64_t value, std::int64_t count, std::int64_t required);
  std::int64_t value;
  std::int64_t count;
  std::int64_t required;
};

/// `position` is 1-based; `smaller` is the value that occurs too rarely.
class PrefixViolation : public Error {
 public:
  PrefixViolation(std::int64_t position, std::int64_t smaller);
  std::int64_t position;
  std::int64_t smaller;
};

class CoverageGap : public Error {
 public:
  CoverageGap(std::int64_t column, std::int64_t value);
  std::int64_t column;
  std::int64_t value;
};

}  // namespace expunge
