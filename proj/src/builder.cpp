#include "builder.hpp"

#include "expunge/search.hpp"

namespace expunge::detail {

StepBuilder::StepBuilder(const GrdSequence& seq, Int m, const TwistVector& w, std::vector<RowIndex> selected)
    : w_(w), selected_(std::move(selected)) {
  table_ = std::make_unique<TensorTable>(build_tensor_table(build_vanishing_table(seq), m));
  mask_ = std::make_unique<ErasureMask>(erase(*table_, w));
  state_ = std::make_unique<VerifierState>(*table_, *mask_, selected_);
}

void StepBuilder::apply(const RuleStep& step) {
  *state_ = apply_step(*state_, step);
  steps_.push_back(step);
}

bool StepBuilder::try_apply(const RuleStep& step) {
  if (!check_step(*state_, step)) return false;
  apply(step);
  return true;
}

std::size_t StepBuilder::greedy(Int column, std::initializer_list<Rule> rules) {
  std::size_t applied = 0;
  while (true) {
    bool progress = false;
    for (Rule rule : rules) {
      auto found = candidate_steps(*state_, rule, column);
      if (found.empty()) continue;
      apply(found.front());
      ++applied;
      progress = true;
      break;
    }
    if (!progress) return applied;
  }
}

std::size_t StepBuilder::greedy_all(std::initializer_list<Rule> rules) {
  std::size_t total = 0;
  while (true) {
    std::size_t round = 0;
    for (Int i = 1; i <= table_->g(); ++i) round += greedy(i, rules);
    total += round;
    if (round == 0) return total;
  }
}

void StepBuilder::clear_iv(Int column) {
  auto found = candidate_steps(*state_, Rule::IV, column);
  if (found.empty()) {
    const auto bits = state_->present_in(column);
    for (auto bit : bits)
      if (bit) throw Error(ErrorCode::RuleViolated, "rule IV does not apply at column " + std::to_string(column));
    return;
  }
  apply(found.front());
}

void StepBuilder::any_vi(Int column) {
  auto found = candidate_steps(*state_, Rule::VI, column);
  if (found.empty()) throw Error(ErrorCode::RuleViolated, "no rule VI application at column " + std::to_string(column));
  apply(found.front());
}

Certificate StepBuilder::certificate() const {
  return Certificate{table_->params(), table_->sequence(), w_, selected_, steps_};
}

void require_valid(const Certificate& cert, const std::string& what) {
  const auto report = verify_certificate(cert);
  if (!report.valid) throw Error(ErrorCode::RuleViolated, what + ": certificate does not verify (" + report.failure + ")");
}

}  // namespace expunge::detail
