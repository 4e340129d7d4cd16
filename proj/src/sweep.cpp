#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>

#include "expunge/search.hpp"

namespace expunge {

namespace {

struct ColumnPlan {
  std::vector<std::size_t> rows;
  std::vector<RuleStep> steps;
};

class Sweep {
 public:
  Sweep(const TensorTable& table, const ErasureMask& mask, const TwistVector& w, Int i0)
      : t_(table), mask_(mask), w_(w), i0_(i0) {
    const CaseParams p = table.params();
    if (!p.surjective()) throw Error(ErrorCode::PreconditionViolated, "case is not in the surjective range");
    if (w.genus() != table.g()) throw Error(ErrorCode::InvalidArgument, "twist vector does not match the table");
    if (i0 < 1 || i0 > table.g()) throw Error(ErrorCode::PreconditionViolated, "i0 outside [1, g]");
    const auto degrees = multidegree(w.entries, table.md());
    for (std::size_t i = 1; i < degrees.size(); ++i)
      if (degrees[i] <= 0) throw Error(ErrorCode::PreconditionViolated, "multidegree is not positive beyond column 1");
    if (sub(c(i0 + 1), i0) < 0)
      throw Error(ErrorCode::PreconditionViolated, "sum of d_i - 1 up to i0 is negative");
  }

  // c_1 = 0, c_{g+1} = md.
  Int c(Int i) const {
    if (i <= 1) return 0;
    if (i > t_.g()) return t_.md();
    return w_.c(i);
  }

  /// Rows present in column i and in no earlier column.
  std::vector<std::size_t> fresh(Int i) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < t_.rows(); ++k) {
      if (!mask_.present(k, i)) continue;
      bool earlier = false;
      for (Int e = 1; e < i && !earlier; ++e) earlier = mask_.present(k, e);
      if (!earlier) out.push_back(k);
    }
    return out;
  }

  Int quota(Int i) const { return i == i0_ ? c(i0_ + 1) - i0_ + 1 : c(i + 1) - c(i) - 1; }

  std::vector<Int> targets(Int i) const {
    std::vector<Int> out;
    if (i == i0_) {
      out.push_back(0);
      for (Int v = std::max<Int>(i0_, 1); v <= c(i0_ + 1) - 1; ++v) out.push_back(v);
    } else {
      for (Int v = c(i) + 1; v <= c(i + 1) - 1; ++v) out.push_back(v);
    }
    return out;
  }

  ColumnPlan coverage(Int i, bool relaxed) const {
    ColumnPlan plan;
    const auto pool = fresh(i);
    std::vector<char> used(t_.rows(), 0);
    auto take = [&](Int value) -> std::optional<std::size_t> {
      for (std::size_t k : pool)  // lexicographic order
        if (!used[k] && t_.a(k, i) == value) {
          used[k] = 1;
          return k;
        }
      return std::nullopt;
    };
    const auto want = targets(i);
    bool pair_finish = false;
    for (std::size_t n = 0; n < want.size(); ++n) {
      const Int v = want[n];
      const bool last = n + 1 == want.size();
      auto row = take(v);
      if (!row && last && i == t_.g() && v == t_.md() - 1) row = take(t_.md());
      if (!row && relaxed && last && n > 0 && want[n - 1] == v - 1) {
        row = take(v - 1);
        pair_finish = row.has_value();
      }
      if (!row) throw CoverageGap(i, v);
      plan.rows.push_back(*row);
    }
    const std::size_t singles = pair_finish ? plan.rows.size() - 2 : plan.rows.size();
    for (std::size_t n = 0; n < singles; ++n) plan.steps.push_back(RuleStep::ii(i, t_.row(plan.rows[n])));
    if (pair_finish)
      plan.steps.push_back(
          RuleStep::iv(i, {t_.row(plan.rows[plan.rows.size() - 2]), t_.row(plan.rows[plan.rows.size() - 1])}));
    return plan;
  }

  /// Drops `rows` using Rules II-V in column i only, as if they were the only rows there.
  std::optional<std::vector<RuleStep>> droppable(Int i, std::vector<std::size_t> rows) const {
    std::vector<RuleStep> steps;
    const Int delta = t_.sequence().at(i);
    while (!rows.empty()) {
      if (rows.size() <= 2) {
        std::vector<RowIndex> named;
        for (std::size_t k : rows) named.push_back(t_.row(k));
        steps.push_back(RuleStep::iv(i, named));
        return steps;
      }
      std::optional<std::size_t> pick;
      std::optional<RuleStep> step;
      for (int pass = 0; pass < 2 && !pick; ++pass) {
        Int best = std::numeric_limits<Int>::max();
        std::size_t ties = 0, at = 0;
        for (std::size_t n = 0; n < rows.size(); ++n) {
          const Int v = pass == 0 ? t_.a(rows[n], i) : t_.b(rows[n], i);
          if (v < best) {
            best = v;
            ties = 1;
            at = n;
          } else if (v == best) {
            ++ties;
          }
        }
        if (ties == 1) {
          pick = at;
          step = pass == 0 ? RuleStep::ii(i, t_.row(rows[at])) : RuleStep::iii(i, t_.row(rows[at]));
        }
      }
      for (Int j = 0; j <= t_.r() && !pick; ++j) {
        if (j == delta) continue;
        Int least = t_.m() + 1;
        std::size_t ties = 0, at = 0;
        for (std::size_t n = 0; n < rows.size(); ++n) {
          const Int mult = t_.multiplicity(rows[n], j);
          if (mult < least) {
            least = mult;
            ties = 1;
            at = n;
          } else if (mult == least) {
            ++ties;
          }
        }
        if (ties == 1) {
          pick = at;
          step = RuleStep::v(i, t_.row(rows[at]), j, least);
        }
      }
      if (!pick) return std::nullopt;
      steps.push_back(*step);
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(*pick));
    }
    return steps;
  }

  std::optional<ColumnPlan> generic(Int i) const {
    const Int need = quota(i);
    ColumnPlan plan;
    if (need == 0) return plan;
    auto pool = fresh(i);
    if (static_cast<Int>(pool.size()) < need) return std::nullopt;
    std::stable_sort(pool.begin(), pool.end(), [&](std::size_t x, std::size_t y) { return t_.a(x, i) < t_.a(y, i); });

    // Distinct a-values (or b-values) first: always droppable by II (or III).
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<std::size_t> pick;
      std::vector<Int> seen;
      for (std::size_t k : pool) {
        const Int v = pass == 0 ? t_.a(k, i) : t_.b(k, i);
        if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
        seen.push_back(v);
        pick.push_back(k);
        if (static_cast<Int>(pick.size()) == need) break;
      }
      if (static_cast<Int>(pick.size()) == need)
        if (auto steps = droppable(i, pick)) return ColumnPlan{pick, *steps};
    }

    // Bounded subset search.
    constexpr Int kCap = 200'000;
    const std::size_t n = pool.size(), k = static_cast<std::size_t>(need);
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (Int tried = 0; tried < kCap; ++tried) {
      std::vector<std::size_t> pick;
      for (std::size_t x : idx) pick.push_back(pool[x]);
      if (auto steps = droppable(i, pick)) return ColumnPlan{pick, *steps};
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t q = pos; q < k; ++q) idx[q] = idx[q - 1] + 1;
    }
    return std::nullopt;
  }

  std::optional<SweepResult> run(SweepVariant variant) const {
    std::vector<std::size_t> chosen;
    std::vector<RuleStep> steps;
    for (Int i = i0_; i <= t_.g(); ++i) {
      ColumnPlan plan;
      if (variant == SweepVariant::Generic) {
        auto found = generic(i);
        if (!found) return std::nullopt;
        plan = std::move(*found);
      } else {
        plan = coverage(i, variant == SweepVariant::Relaxed);
      }
      chosen.insert(chosen.end(), plan.rows.begin(), plan.rows.end());
      steps.insert(steps.end(), plan.steps.begin(), plan.steps.end());
    }
    std::sort(chosen.begin(), chosen.end());
    if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end()) return std::nullopt;
    std::vector<RowIndex> selected;
    for (std::size_t k : chosen) selected.push_back(t_.row(k));
    Certificate cert{t_.params(), t_.sequence(), w_, selected, std::move(steps)};
    if (cert.N() != t_.params().target_dimension()) return std::nullopt;
    if (!verify_certificate(t_, mask_, cert).valid) return std::nullopt;
    SweepResult result{std::move(selected), std::move(cert), variant};
    return result;
  }

 private:
  const TensorTable& t_;
  const ErasureMask& mask_;
  const TwistVector& w_;
  Int i0_;
};

}  // namespace

std::optional<SweepResult> surjective_sweep(const TensorTable& table, const ErasureMask& mask, const TwistVector& w,
                                            Int i0, SweepVariant variant) {
  const Sweep sweep(table, mask, w, i0);
  if (variant != SweepVariant::Auto) return sweep.run(variant);
  std::optional<CoverageGap> gap;
  try {
    if (auto result = sweep.run(SweepVariant::Relaxed)) return result;
  } catch (const CoverageGap& e) {
    gap = e;
  }
  if (auto result = sweep.run(SweepVariant::Generic)) return result;
  if (gap) throw *gap;
  return std::nullopt;
}

}  // namespace expunge
