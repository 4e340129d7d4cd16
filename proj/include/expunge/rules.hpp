#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expunge/tables.hpp"

namespace expunge {

enum class Rule { II, III, IV, V, VI, VII };

std::string_view to_string(Rule rule);
/// Accepts "II", "ii", "2" and the like.
Rule parse_rule(std::string_view text);

/// One application of a row-dropping rule. `rows` lists the rows the rule names:
/// the dropped row for II/III/V, the one or two rows for IV, the pair (j^1, j^2) for VI,
/// and j^1..j^n for VII, optionally followed by (delta_i, delta_i).
struct RuleStep {
  Rule rule = Rule::II;
  Int column = 1;
  std::vector<RowIndex> rows;
  std::optional<Int> j;        // V
  std::optional<Int> n;        // V, VII
  std::optional<Int> witness;  // VI: i' in {i, i+1}

  static RuleStep ii(Int column, RowIndex row);
  static RuleStep iii(Int column, RowIndex row);
  static RuleStep iv(Int column, std::vector<RowIndex> rows);
  static RuleStep v(Int column, RowIndex row, Int j, Int n);
  static RuleStep vi(Int column, RowIndex first, RowIndex second, Int witness);
  static RuleStep vii(Int column, std::vector<RowIndex> rows);

  std::string describe() const;

  friend bool operator==(const RuleStep&, const RuleStep&) = default;
};

struct Certificate {
  CaseParams params;
  GrdSequence sequence;
  TwistVector w;
  std::vector<RowIndex> selected;  // rows kept by Rule (i)
  std::vector<RuleStep> steps;

  Int N() const { return static_cast<Int>(selected.size()); }
};

struct VerifyOptions {
  /// Require both VI rows to be present in columns i and i+1.
  bool strict_vi = true;
};

class VerifierState {
 public:
  /// Throws InvalidArgument when a selected row is unknown or repeated.
  VerifierState(const TensorTable& table, const ErasureMask& mask, std::span<const RowIndex> selected);
  static VerifierState all_rows(const TensorTable& table, const ErasureMask& mask);

  const TensorTable& table() const { return *table_; }
  const ErasureMask& mask() const { return *mask_; }
  bool remaining(std::size_t row) const { return remaining_[row] != 0; }
  bool appears(std::size_t row, Int i) const { return remaining_[row] && mask_->present(row, i); }
  std::size_t remaining_count() const { return count_; }
  std::vector<RowIndex> remaining_rows() const;
  const std::vector<std::uint8_t>& remaining_bits() const { return remaining_; }
  /// remaining AND present in column i, one byte per row.
  std::vector<std::uint8_t> present_in(Int i) const;

  void drop(std::size_t row);

 private:
  VerifierState(const TensorTable& table, const ErasureMask& mask) : table_(&table), mask_(&mask) {}

  const TensorTable* table_;
  const ErasureMask* mask_;
  std::vector<std::uint8_t> remaining_;
  std::size_t count_ = 0;
};

struct StepCheck {
  bool ok = false;
  std::optional<ErrorCode> error;  // set for structural failures (arity, dropped rows, m)
  std::string diagnostic;
  std::vector<std::size_t> drops;  // rows removed when ok

  explicit operator bool() const { return ok; }
};

StepCheck check_step(const VerifierState& state, const RuleStep& step, const VerifyOptions& options = {});

/// Pure transition; throws Error (the structural code, or RuleViolated) when the step does not apply.
VerifierState apply_step(const VerifierState& state, const RuleStep& step, const VerifyOptions& options = {});

struct StepTrace {
  std::size_t index = 0;
  RuleStep step;
  bool ok = false;
  std::string diagnostic;
  std::size_t remaining_after = 0;
};

struct VerificationReport {
  bool valid = false;
  Int N = 0;
  bool steady = false;
  bool unimaginative = false;
  std::vector<StepTrace> trace;
  std::vector<RowIndex> remaining;
  std::string failure;
};

VerificationReport verify_certificate(const TensorTable& table, const ErasureMask& mask, const Certificate& cert,
                                      const VerifyOptions& options = {});
/// Builds the table and mask from the certificate's own data.
VerificationReport verify_certificate(const Certificate& cert, const VerifyOptions& options = {});

}  // namespace expunge
