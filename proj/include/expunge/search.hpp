#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "expunge/rules.hpp"

namespace expunge {

enum class SelectionStrategy { Auto, Explicit, ColumnSweep, ExhaustiveSmall };

enum class SearchStatus { Found, NotFound, BudgetExhausted };

std::string_view to_string(SearchStatus status);

struct SearchConfig {
  std::vector<Rule> rule_order{Rule::II, Rule::III, Rule::IV, Rule::V, Rule::VI, Rule::VII};
  /// Maximum number of nested VI/VII branch points (greedy mode) or steps (exhaustive mode).
  Int depth_limit = 256;
  SelectionStrategy selection = SelectionStrategy::Auto;
  std::vector<RowIndex> selected;  // for Explicit
  std::chrono::milliseconds budget{10'000};
  /// Largest number of Rule (i) subsets tried by ExhaustiveSmall.
  Int exhaustive_cap = 1'000'000;
  /// Branch over every rule application (all IV subsets included) instead of saturating II-V.
  bool exhaustive = false;
  VerifyOptions verify;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<Certificate> certificate;
  std::vector<RowIndex> deepest_remaining;  // smallest remaining set reached
  std::vector<Rule> rules_attempted;        // rules with at least one valid application
  std::size_t nodes = 0;
  std::string strategy;
};

/// Every valid application of `rule` at column i in the current state.
/// With `all_subsets`, Rule IV yields each nonempty subset of the present rows.
std::vector<RuleStep> candidate_steps(const VerifierState& state, Rule rule, Int column, bool all_subsets = false,
                                      const VerifyOptions& options = {});

/// Drops every remaining row of `state` if possible. Failure does not prove non-expungeability.
SearchOutcome search_from(const VerifierState& state, const TwistVector& w, const SearchConfig& config = {});

SearchOutcome search_certificate(const TensorTable& table, const ErasureMask& mask, const TwistVector& w, Int N,
                                 const SearchConfig& config = {});

// Column sweep for the surjective range ------------------------------------------------------

enum class SweepVariant {
  Generic,   // per-column subset search with Rules II-V
  Coverage,  // every target value occurs once
  Relaxed,   // Coverage, or c_{i+1}-2 twice in place of c_{i+1}-1 with a Rule IV finish
  Auto,      // Relaxed, then Generic
};

struct SweepResult {
  std::vector<RowIndex> selected;
  Certificate certificate;
  SweepVariant variant = SweepVariant::Relaxed;
};

/// Rows selected column by column from i0 on, each column's rows new to the sweep, dropped in
/// increasing a. Coverage/Relaxed throw CoverageGap naming the first missing value; Generic returns
/// nullopt when a column cannot be filled. Auto rethrows the gap if both attempts fail.
std::optional<SweepResult> surjective_sweep(const TensorTable& table, const ErasureMask& mask, const TwistVector& w,
                                            Int i0, SweepVariant variant = SweepVariant::Auto);

}  // namespace expunge
