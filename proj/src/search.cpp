#include "expunge/search.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_set>

#include "expunge/kernels.hpp"

namespace expunge {

std::string_view to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::Found: return "found";
    case SearchStatus::NotFound: return "not-found";
    case SearchStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

namespace {

std::vector<std::size_t> present_rows(const VerifierState& state, Int column) {
  std::vector<std::size_t> out;
  const auto bits = state.present_in(column);
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (bits[k]) out.push_back(k);
  return out;
}

void keep_valid(const VerifierState& state, const RuleStep& step, const VerifyOptions& options,
                std::vector<RuleStep>& out) {
  if (check_step(state, step, options)) out.push_back(step);
}

}  // namespace

std::vector<RuleStep> candidate_steps(const VerifierState& state, Rule rule, Int column, bool all_subsets,
                                      const VerifyOptions& options) {
  const TensorTable& t = state.table();
  std::vector<RuleStep> out;
  if (column < 1 || column > t.g()) return out;
  const auto present = present_rows(state, column);
  if (present.empty()) return out;

  switch (rule) {
    case Rule::II:
    case Rule::III: {
      const auto active = state.present_in(column);
      const auto values = rule == Rule::II ? t.a_column(column) : t.b_column(column);
      const auto info = kernels::masked_min(values.data(), active.data(), active.size());
      if (info.count == 1) {
        const RowIndex& row = t.row(info.first);
        keep_valid(state, rule == Rule::II ? RuleStep::ii(column, row) : RuleStep::iii(column, row), options, out);
      }
      break;
    }
    case Rule::IV: {
      if (present.size() > 2) break;
      if (present.size() == 1 || !all_subsets) {
        std::vector<RowIndex> rows;
        for (std::size_t k : present) rows.push_back(t.row(k));
        keep_valid(state, RuleStep::iv(column, rows), options, out);
      } else {
        keep_valid(state, RuleStep::iv(column, {t.row(present[0]), t.row(present[1])}), options, out);
        keep_valid(state, RuleStep::iv(column, {t.row(present[0])}), options, out);
        keep_valid(state, RuleStep::iv(column, {t.row(present[1])}), options, out);
      }
      break;
    }
    case Rule::V: {
      const Int delta = t.sequence().at(column);
      for (Int j = 0; j <= t.r(); ++j) {
        if (j == delta) continue;
        Int least = t.m() + 1;
        std::size_t holder = 0, ties = 0;
        for (std::size_t k : present) {
          const Int mult = t.multiplicity(k, j);
          if (mult < least) {
            least = mult;
            holder = k;
            ties = 1;
          } else if (mult == least) {
            ++ties;
          }
        }
        if (ties == 1) keep_valid(state, RuleStep::v(column, t.row(holder), j, least), options, out);
      }
      break;
    }
    case Rule::VI: {
      if (column >= t.g()) break;
      std::vector<Int> present_a;
      for (std::size_t k : present) present_a.push_back(t.a(k, column));
      std::sort(present_a.begin(), present_a.end());
      const Int threshold = present_a.size() >= 3 ? present_a[2] : std::numeric_limits<Int>::max();
      std::vector<std::size_t> pool;
      for (std::size_t k = 0; k < t.rows(); ++k) {
        if (!state.remaining(k) || t.a(k, column) > threshold) continue;
        if (options.strict_vi && !(state.appears(k, column) && state.appears(k, column + 1))) continue;
        pool.push_back(k);
      }
      for (std::size_t x : pool)
        for (std::size_t y : pool) {
          if (x == y || t.a(x, column) != t.a(y, column)) continue;
          for (Int witness : {column, column + 1})
            keep_valid(state, RuleStep::vi(column, t.row(x), t.row(y), witness), options, out);
        }
      break;
    }
    case Rule::VII: {
      if (t.m() != 2) break;
      const std::size_t diag = t.diagonal(t.sequence().at(column));
      std::vector<RowIndex> rows;
      for (std::size_t k : present)
        if (k != diag) rows.push_back(t.row(k));
      if (rows.size() >= 2) keep_valid(state, RuleStep::vii(column, rows), options, out);
      break;
    }
  }
  return out;
}

namespace {

struct BudgetExceeded {};

class Searcher {
 public:
  Searcher(const SearchConfig& config, std::chrono::steady_clock::time_point deadline)
      : config_(config), deadline_(deadline) {}

  /// Steps emptying `state`, or nullopt.
  std::optional<std::vector<RuleStep>> run(const VerifierState& state) {
    memo_.clear();
    std::vector<RuleStep> steps;
    if (config_.exhaustive ? exhaustive(state, steps, 0) : greedy(state, steps, 0)) return steps;
    return std::nullopt;
  }

  std::size_t nodes() const { return nodes_; }
  const std::vector<RowIndex>& deepest() const { return deepest_; }
  std::vector<Rule> attempted() const { return {attempted_.begin(), attempted_.end()}; }

 private:
  static std::string key(const VerifierState& state) {
    const auto& bits = state.remaining_bits();
    return std::string(bits.begin(), bits.end());
  }

  void tick(const VerifierState& state) {
    ++nodes_;
    if ((nodes_ & 63) == 1 && std::chrono::steady_clock::now() >= deadline_) throw BudgetExceeded{};
    if (!have_deepest_ || state.remaining_count() < deepest_count_) {
      have_deepest_ = true;
      deepest_count_ = state.remaining_count();
      deepest_ = state.remaining_rows();
    }
  }

  std::vector<RuleStep> candidates(const VerifierState& state, Rule rule, bool all_subsets) {
    std::vector<RuleStep> out;
    for (Int i = 1; i <= state.table().g(); ++i) {
      auto found = candidate_steps(state, rule, i, all_subsets, config_.verify);
      out.insert(out.end(), found.begin(), found.end());
    }
    if (!out.empty()) attempted_.insert(rule);
    return out;
  }

  bool exhaustive(const VerifierState& state, std::vector<RuleStep>& steps, Int depth) {
    tick(state);
    if (state.remaining_count() == 0) return true;
    if (depth >= config_.depth_limit) return false;
    const std::string k = key(state);
    if (memo_.count(k)) return false;
    for (Rule rule : config_.rule_order) {
      for (const RuleStep& step : candidates(state, rule, true)) {
        steps.push_back(step);
        if (exhaustive(apply_step(state, step, config_.verify), steps, depth + 1)) return true;
        steps.pop_back();
      }
    }
    memo_.insert(k);
    return false;
  }

  void saturate(VerifierState& state, std::vector<RuleStep>& steps) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (Rule rule : config_.rule_order) {
        if (rule == Rule::VI || rule == Rule::VII) continue;
        for (Int i = 1; i <= state.table().g(); ++i) {
          while (true) {
            auto found = candidate_steps(state, rule, i, false, config_.verify);
            if (found.empty()) break;
            attempted_.insert(rule);
            state = apply_step(state, found.front(), config_.verify);
            steps.push_back(std::move(found.front()));
            progress = true;
          }
        }
      }
    }
  }

  bool greedy(VerifierState state, std::vector<RuleStep>& steps, Int depth) {
    const std::size_t mark = steps.size();
    saturate(state, steps);
    tick(state);
    if (state.remaining_count() == 0) return true;
    const std::string k = key(state);
    if (depth < config_.depth_limit && !memo_.count(k)) {
      for (Rule rule : config_.rule_order) {
        if (rule != Rule::VI && rule != Rule::VII) continue;
        for (const RuleStep& step : candidates(state, rule, false)) {
          steps.push_back(step);
          if (greedy(apply_step(state, step, config_.verify), steps, depth + 1)) return true;
          steps.pop_back();
        }
      }
      memo_.insert(k);
    }
    steps.resize(mark);
    return false;
  }

  const SearchConfig& config_;
  std::chrono::steady_clock::time_point deadline_;
  std::unordered_set<std::string> memo_;
  std::set<Rule> attempted_;
  std::size_t nodes_ = 0;
  bool have_deepest_ = false;
  std::size_t deepest_count_ = 0;
  std::vector<RowIndex> deepest_;
};

Certificate make_certificate(const TensorTable& table, const TwistVector& w, std::vector<RowIndex> selected,
                             std::vector<RuleStep> steps) {
  return Certificate{table.params(), table.sequence(), w, std::move(selected), std::move(steps)};
}

struct Attempt {
  std::optional<std::vector<RuleStep>> steps;
  bool budget = false;
};

Attempt attempt(Searcher& searcher, const VerifierState& state) {
  try {
    return {searcher.run(state), false};
  } catch (const BudgetExceeded&) {
    return {std::nullopt, true};
  }
}

void finish(SearchOutcome& out, const Searcher& searcher) {
  out.nodes += searcher.nodes();
  out.deepest_remaining = searcher.deepest();
  out.rules_attempted = searcher.attempted();
}

}  // namespace

SearchOutcome search_from(const VerifierState& state, const TwistVector& w, const SearchConfig& config) {
  Searcher searcher(config, std::chrono::steady_clock::now() + config.budget);
  const Attempt result = attempt(searcher, state);
  SearchOutcome out;
  finish(out, searcher);
  out.strategy = "explicit";
  if (result.budget) {
    out.status = SearchStatus::BudgetExhausted;
  } else if (result.steps) {
    out.status = SearchStatus::Found;
    out.certificate = make_certificate(state.table(), w, state.remaining_rows(), *result.steps);
  }
  return out;
}

SearchOutcome search_certificate(const TensorTable& table, const ErasureMask& mask, const TwistVector& w, Int N,
                                 const SearchConfig& config) {
  const Int total = static_cast<Int>(table.rows());
  if (N < 0 || N > total) throw Error(ErrorCode::InvalidArgument, "N must lie in [0, C(r+m,m)]");
  if (config.depth_limit < 0) throw Error(ErrorCode::InvalidArgument, "depth limit must be nonnegative");
  const auto deadline = std::chrono::steady_clock::now() + config.budget;
  SearchOutcome out;

  auto run_selected = [&](const std::vector<RowIndex>& selected, const std::string& strategy) {
    Searcher searcher(config, deadline);
    const VerifierState state(table, mask, selected);
    const Attempt result = attempt(searcher, state);
    finish(out, searcher);
    out.strategy = strategy;
    if (result.budget) {
      out.status = SearchStatus::BudgetExhausted;
    } else if (result.steps) {
      out.status = SearchStatus::Found;
      out.certificate = make_certificate(table, w, selected, *result.steps);
    } else {
      out.status = SearchStatus::NotFound;
    }
    return out.status != SearchStatus::NotFound;
  };

  SelectionStrategy strategy = config.selection;
  if (strategy == SelectionStrategy::Auto) {
    if (!config.selected.empty())
      strategy = SelectionStrategy::Explicit;
    else if (N == total)
      strategy = SelectionStrategy::Explicit;
  }

  if (strategy == SelectionStrategy::Explicit) {
    std::vector<RowIndex> selected = config.selected;
    if (selected.empty() && N == total) selected = table.row_indices();
    if (static_cast<Int>(selected.size()) != N)
      throw Error(ErrorCode::InvalidArgument, "explicit selection must contain exactly N rows");
    run_selected(selected, "explicit");
    return out;
  }

  const CaseParams p = table.params();
  const bool sweep_applies = p.surjective() && N == p.target_dimension();
  if (strategy == SelectionStrategy::ColumnSweep || (strategy == SelectionStrategy::Auto && sweep_applies)) {
    for (Int i0 = 1; i0 <= table.g(); ++i0) {
      try {
        if (auto sweep = surjective_sweep(table, mask, w, i0, SweepVariant::Auto)) {
          out.status = SearchStatus::Found;
          out.strategy = "column-sweep";
          out.certificate = std::move(sweep->certificate);
          return out;
        }
      } catch (const Error&) {
        // this i0 does not satisfy the sweep's hypotheses
      }
      if (std::chrono::steady_clock::now() > deadline) {
        out.status = SearchStatus::BudgetExhausted;
        out.strategy = "column-sweep";
        return out;
      }
    }
    out.status = SearchStatus::NotFound;
    out.strategy = "column-sweep";
    if (strategy == SelectionStrategy::ColumnSweep) return out;
  }

  // Exhaustive over Rule (i) subsets, in lexicographic order of row positions.
  Int subsets = 0;
  try {
    subsets = binomial(total, N);
  } catch (const Error&) {
    subsets = config.exhaustive_cap + 1;
  }
  if (subsets > config.exhaustive_cap) {
    out.status = SearchStatus::NotFound;
    out.strategy = "exhaustive-small (over cap)";
    return out;
  }
  std::vector<std::size_t> pick(static_cast<std::size_t>(N));
  for (std::size_t k = 0; k < pick.size(); ++k) pick[k] = k;
  const std::size_t n_rows = table.rows();
  while (true) {
    std::vector<RowIndex> selected;
    for (std::size_t k : pick) selected.push_back(table.row(k));
    if (run_selected(selected, "exhaustive-small")) return out;
    if (std::chrono::steady_clock::now() > deadline) {
      out.status = SearchStatus::BudgetExhausted;
      return out;
    }
    // next combination
    std::size_t pos = pick.size();
    while (pos > 0 && pick[pos - 1] == n_rows - pick.size() + pos - 1) --pos;
    if (pos == 0) break;
    ++pick[pos - 1];
    for (std::size_t k = pos; k < pick.size(); ++k) pick[k] = pick[k - 1] + 1;
  }
  out.status = SearchStatus::NotFound;
  out.strategy = "exhaustive-small";
  return out;
}

}  // namespace expunge
