#pragma once

#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "expunge/rules.hpp"

namespace expunge::detail {

/// Records rule applications against a live verifier state; every step is checked as it is added.
class StepBuilder {
 public:
  StepBuilder(const GrdSequence& seq, Int m, const TwistVector& w, std::vector<RowIndex> selected);
  StepBuilder(const StepBuilder&) = delete;
  StepBuilder& operator=(const StepBuilder&) = delete;

  const TensorTable& table() const { return *table_; }
  const ErasureMask& mask() const { return *mask_; }
  const VerifierState& state() const { return *state_; }
  std::size_t remaining() const { return state_->remaining_count(); }

  /// Throws RuleViolated (with the checker's diagnostic) when the step does not apply.
  void apply(const RuleStep& step);
  bool try_apply(const RuleStep& step);

  /// Applies the first valid step of the listed rules at column i until none applies.
  std::size_t greedy(Int column, std::initializer_list<Rule> rules);
  /// Same, sweeping all columns until nothing changes.
  std::size_t greedy_all(std::initializer_list<Rule> rules);
  /// Rule IV on every row still present in the column; no-op when the column is empty.
  void clear_iv(Int column);
  /// First valid Rule VI application at column i (pairs in lexicographic order, witness i first).
  void any_vi(Int column);

  Certificate certificate() const;

 private:
  std::unique_ptr<TensorTable> table_;
  std::unique_ptr<ErasureMask> mask_;
  std::unique_ptr<VerifierState> state_;
  TwistVector w_;
  std::vector<RowIndex> selected_;
  std::vector<RuleStep> steps_;
};

/// Throws RuleViolated unless the certificate verifies.
void require_valid(const Certificate& cert, const std::string& what);

}  // namespace expunge::detail
