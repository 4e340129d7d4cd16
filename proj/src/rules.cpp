#include "expunge/rules.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "expunge/kernels.hpp"

namespace expunge {

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::II: return "II";
    case Rule::III: return "III";
    case Rule::IV: return "IV";
    case Rule::V: return "V";
    case Rule::VI: return "VI";
    case Rule::VII: return "VII";
  }
  return "?";
}

Rule parse_rule(std::string_view text) {
  std::string up;
  for (char ch : text) up += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (up == "II" || up == "2") return Rule::II;
  if (up == "III" || up == "3") return Rule::III;
  if (up == "IV" || up == "4") return Rule::IV;
  if (up == "V" || up == "5") return Rule::V;
  if (up == "VI" || up == "6") return Rule::VI;
  if (up == "VII" || up == "7") return Rule::VII;
  throw Error(ErrorCode::ParseError, "unknown rule '" + std::string(text) + "'");
}

RuleStep RuleStep::ii(Int column, RowIndex row) { return RuleStep{Rule::II, column, {std::move(row)}, {}, {}, {}}; }

RuleStep RuleStep::iii(Int column, RowIndex row) { return RuleStep{Rule::III, column, {std::move(row)}, {}, {}, {}}; }

RuleStep RuleStep::iv(Int column, std::vector<RowIndex> rows) {
  return RuleStep{Rule::IV, column, std::move(rows), {}, {}, {}};
}

RuleStep RuleStep::v(Int column, RowIndex row, Int j, Int n) {
  return RuleStep{Rule::V, column, {std::move(row)}, j, n, {}};
}

RuleStep RuleStep::vi(Int column, RowIndex first, RowIndex second, Int witness) {
  return RuleStep{Rule::VI, column, {std::move(first), std::move(second)}, {}, {}, witness};
}

RuleStep RuleStep::vii(Int column, std::vector<RowIndex> rows) {
  // n counts the rows j^e; a trailing diagonal row is optional.
  Int n = 0;
  for (const auto& row : rows) {
    const auto& p = row.parts();
    if (!(p.size() == 2 && p[0] == p[1])) ++n;
  }
  return RuleStep{Rule::VII, column, std::move(rows), {}, n, {}};
}

std::string RuleStep::describe() const {
  std::ostringstream out;
  out << "rule " << to_string(rule) << " at column " << column;
  if (!rows.empty()) {
    out << " on";
    for (const auto& row : rows) out << ' ' << row.to_string();
  }
  if (j) out << " j=" << *j;
  if (n) out << " n=" << *n;
  if (witness) out << " witness=" << *witness;
  return out.str();
}

// ---------------------------------------------------------------------------

VerifierState::VerifierState(const TensorTable& table, const ErasureMask& mask, std::span<const RowIndex> selected)
    : VerifierState(table, mask) {
  if (mask.rows() != table.rows() || mask.g() != table.g())
    throw Error(ErrorCode::InvalidArgument, "mask does not match the table");
  remaining_.assign(table.rows(), 0);
  for (const auto& row : selected) {
    const std::size_t k = table.index_of(row);
    if (remaining_[k]) throw Error(ErrorCode::InvalidArgument, "row " + row.to_string() + " selected twice");
    remaining_[k] = 1;
    ++count_;
  }
}

VerifierState VerifierState::all_rows(const TensorTable& table, const ErasureMask& mask) {
  return VerifierState(table, mask, table.row_indices());
}

std::vector<RowIndex> VerifierState::remaining_rows() const {
  std::vector<RowIndex> out;
  for (std::size_t k = 0; k < remaining_.size(); ++k)
    if (remaining_[k]) out.push_back(table_->row(k));
  return out;
}

std::vector<std::uint8_t> VerifierState::present_in(Int i) const {
  std::vector<std::uint8_t> out(remaining_.size());
  const auto col = mask_->column(i);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = remaining_[k] & col[k];
  return out;
}

void VerifierState::drop(std::size_t row) {
  if (remaining_[row]) {
    remaining_[row] = 0;
    --count_;
  }
}

// ---------------------------------------------------------------------------

namespace {

class Checker {
 public:
  Checker(const VerifierState& state, const RuleStep& step, const VerifyOptions& options)
      : st_(state), step_(step), opt_(options), t_(state.table()) {
    std::ostringstream p;
    p << "rule " << to_string(step.rule) << " at column " << step.column << ": ";
    prefix_ = p.str();
  }

  StepCheck run() {
    if (!resolve_rows()) return out_;
    switch (step_.rule) {
      case Rule::II: return extremum(true);
      case Rule::III: return extremum(false);
      case Rule::IV: return rule_iv();
      case Rule::V: return rule_v();
      case Rule::VI: return rule_vi();
      case Rule::VII: return rule_vii();
    }
    return structural(ErrorCode::InvalidArgument, "unknown rule");
  }

 private:
  StepCheck structural(ErrorCode code, const std::string& message) {
    out_.ok = false;
    out_.error = code;
    out_.diagnostic = prefix_ + message;
    out_.drops.clear();
    return out_;
  }

  StepCheck reject(const std::string& message) {
    out_.ok = false;
    out_.error.reset();
    out_.diagnostic = prefix_ + message;
    out_.drops.clear();
    return out_;
  }

  StepCheck accept(std::vector<std::size_t> drops) {
    out_.ok = true;
    out_.error.reset();
    out_.diagnostic.clear();
    out_.drops = std::move(drops);
    return out_;
  }

  std::string name(std::size_t row) const { return t_.row(row).to_string(); }

  bool resolve_rows() {
    for (const auto& row : step_.rows) {
      bool valid = row.size() == t_.m();
      for (Int v : row.parts()) valid = valid && v >= 0 && v <= t_.r();
      if (!valid) {
        structural(ErrorCode::InvalidArgument, "row " + row.to_string() + " is not a row of the table");
        return false;
      }
      idx_.push_back(t_.index_of(row));
    }
    auto sorted = idx_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      structural(ErrorCode::RuleArityMismatch, "rows are not pairwise distinct");
      return false;
    }
    return true;
  }

  bool column_in(Int lo, Int hi) {
    if (step_.column < lo || step_.column > hi) {
      reject("column outside [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
      return false;
    }
    return true;
  }

  bool params_exactly(bool want_j, bool want_n, bool want_witness) {
    if (step_.j.has_value() != want_j || step_.n.has_value() != want_n || step_.witness.has_value() != want_witness) {
      structural(ErrorCode::RuleArityMismatch, "wrong parameters for this rule");
      return false;
    }
    return true;
  }

  bool all_remaining(const std::vector<std::size_t>& rows) {
    for (std::size_t k : rows)
      if (!st_.remaining(k)) {
        structural(ErrorCode::RowAlreadyDropped, "row " + name(k) + " was already dropped");
        return false;
      }
    return true;
  }

  bool appears(std::size_t row, Int i) {
    if (!st_.appears(row, i)) {
      reject("row " + name(row) + " is erased in column " + std::to_string(i));
      return false;
    }
    return true;
  }

  StepCheck extremum(bool use_a) {
    if (step_.rows.size() != 1) return structural(ErrorCode::RuleArityMismatch, "expects exactly one row");
    if (!params_exactly(false, false, false) || !column_in(1, t_.g()) || !all_remaining(idx_)) return out_;
    const Int i = step_.column;
    const std::size_t row = idx_[0];
    if (!appears(row, i)) return out_;
    const auto active = st_.present_in(i);
    const auto values = use_a ? t_.a_column(i) : t_.b_column(i);
    const auto info = kernels::masked_min(values.data(), active.data(), active.size());
    const char* label = use_a ? "a" : "b";
    if (info.value != values[row] || info.count != 1) {
      std::ostringstream msg;
      msg << "row " << name(row) << " is not strictly minimal (" << label << "=" << values[row] << ", minimum "
          << info.value << " attained by " << info.count << " row" << (info.count == 1 ? "" : "s") << ")";
      return reject(msg.str());
    }
    return accept({row});
  }

  StepCheck rule_iv() {
    if (step_.rows.empty() || step_.rows.size() > 2)
      return structural(ErrorCode::RuleArityMismatch, "expects one or two rows");
    if (!params_exactly(false, false, false) || !column_in(1, t_.g()) || !all_remaining(idx_)) return out_;
    const Int i = step_.column;
    for (std::size_t k : idx_)
      if (!appears(k, i)) return out_;
    const auto active = st_.present_in(i);
    const auto present = std::count(active.begin(), active.end(), std::uint8_t{1});
    if (present > 2) return reject("more than two rows remain in the column (" + std::to_string(present) + ")");
    return accept(idx_);
  }

  StepCheck rule_v() {
    if (step_.rows.size() != 1) return structural(ErrorCode::RuleArityMismatch, "expects exactly one row");
    if (!params_exactly(true, true, false) || !column_in(1, t_.g()) || !all_remaining(idx_)) return out_;
    const Int i = step_.column;
    const Int j = *step_.j;
    const Int n = *step_.n;
    if (j < 0 || j > t_.r()) return reject("j outside [0,r]");
    if (j == t_.sequence().at(i)) return reject("j equals delta_i");
    if (n < 0) return reject("n is negative");
    const std::size_t row = idx_[0];
    if (!appears(row, i)) return out_;
    const auto active = st_.present_in(i);
    std::size_t exact = 0;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (!active[k]) continue;
      const Int mult = t_.multiplicity(k, j);
      if (mult < n) return reject("row " + name(k) + " has fewer than n copies of j");
      if (mult == n) ++exact;
    }
    if (t_.multiplicity(row, j) != n) return reject("row " + name(row) + " does not have exactly n copies of j");
    if (exact != 1) return reject("the row with exactly n copies of j is not unique");
    return accept({row});
  }

  StepCheck rule_vi() {
    if (step_.rows.size() != 2) return structural(ErrorCode::RuleArityMismatch, "expects exactly two rows");
    if (!params_exactly(false, false, true) || !column_in(1, t_.g() - 1) || !all_remaining(idx_)) return out_;
    const Int i = step_.column;
    const std::size_t r1 = idx_[0], r2 = idx_[1];
    const Int witness = *step_.witness;
    if (witness != i && witness != i + 1) return reject("witness column must be i or i+1");
    if (opt_.strict_vi)
      for (Int col : {i, i + 1})
        for (std::size_t k : {r1, r2})
          if (!appears(k, col)) return out_;

    auto strictly_below_others = [&](Int col, bool use_a) {
      const Int v1 = use_a ? t_.a(r1, col) : t_.b(r1, col);
      const Int v2 = use_a ? t_.a(r2, col) : t_.b(r2, col);
      if (v1 != v2) return false;
      for (std::size_t k = 0; k < t_.rows(); ++k) {
        if (k == r1 || k == r2 || !st_.appears(k, col)) continue;
        if ((use_a ? t_.a(k, col) : t_.b(k, col)) <= v1) return false;
      }
      return true;
    };
    if (!strictly_below_others(i, true)) return reject("a-values at column i are not equal and strictly minimal");
    if (!strictly_below_others(i + 1, false))
      return reject("b-values at column i+1 are not equal and strictly minimal");
    const Int delta = t_.sequence().at(witness);
    const Int need = t_.m() - 2;
    if (t_.multiplicity(r1, delta) != need || t_.multiplicity(r2, delta) != need)
      return reject("rows do not have exactly m-2 entries equal to delta at the witness column");
    if (t_.a(r1, witness) == t_.a(t_.diagonal(delta), witness) - 1)
      return reject("a-value of the first row is one below the diagonal row at the witness column");
    return accept({r1, r2});
  }

  StepCheck rule_vii() {
    if (t_.m() != 2) return structural(ErrorCode::MNotTwo, "requires m = 2");
    if (!params_exactly(false, true, false)) return out_;
    const Int i = step_.column;
    const Int n = *step_.n;
    if (!column_in(1, t_.g())) return out_;
    const Int delta = t_.sequence().at(i);
    const std::size_t diag = t_.diagonal(delta);
    std::vector<std::size_t> rows;
    bool lists_diagonal = false;
    for (std::size_t k : idx_) {
      if (k == diag)
        lists_diagonal = true;
      else
        rows.push_back(k);
    }
    if (static_cast<Int>(rows.size()) != n) return structural(ErrorCode::RuleArityMismatch, "n does not match the rows");
    if (n < 2) return reject("needs n >= 2");
    if (!all_remaining(rows)) return out_;
    if (lists_diagonal && !st_.remaining(diag))
      return structural(ErrorCode::RowAlreadyDropped, "row " + name(diag) + " was already dropped");
    if (i + n - 1 > t_.g()) return reject("window i..i+n-1 exceeds g");
    for (Int col = i; col < i + n; ++col)
      if (t_.sequence().at(col) != delta) return reject("delta is not constant on the window");
    for (std::size_t k : rows) {
      const auto& p = t_.row(k).parts();
      if (!(p[0] < delta && delta < p[1])) return reject("row " + name(k) + " does not straddle delta_i");
      if (t_.a(k, i) != t_.a(rows[0], i)) return reject("a-values at column i differ");
    }
    for (Int col = i; col < i + n; ++col) {
      for (std::size_t k : rows)
        if (!appears(k, col)) return out_;
      for (std::size_t k = 0; k < t_.rows(); ++k) {
        if (!st_.appears(k, col) || k == diag) continue;
        if (std::find(rows.begin(), rows.end(), k) == rows.end())
          return reject("row " + name(k) + " also appears in column " + std::to_string(col));
      }
    }
    if (st_.remaining(diag)) rows.push_back(diag);
    return accept(rows);
  }

  const VerifierState& st_;
  const RuleStep& step_;
  const VerifyOptions& opt_;
  const TensorTable& t_;
  std::string prefix_;
  std::vector<std::size_t> idx_;
  StepCheck out_;
};

}  // namespace

StepCheck check_step(const VerifierState& state, const RuleStep& step, const VerifyOptions& options) {
  return Checker(state, step, options).run();
}

VerifierState apply_step(const VerifierState& state, const RuleStep& step, const VerifyOptions& options) {
  const StepCheck check = check_step(state, step, options);
  if (!check) throw Error(check.error.value_or(ErrorCode::RuleViolated), check.diagnostic);
  VerifierState next = state;
  for (std::size_t k : check.drops) next.drop(k);
  return next;
}

// ---------------------------------------------------------------------------

namespace {

std::string join_rows(const std::vector<RowIndex>& rows) {
  std::string out;
  for (const auto& row : rows) {
    if (!out.empty()) out += " ";
    out += row.to_string();
  }
  return out;
}

}  // namespace

VerificationReport verify_certificate(const TensorTable& table, const ErasureMask& mask, const Certificate& cert,
                                      const VerifyOptions& options) {
  VerificationReport report;
  report.N = cert.N();
  if (cert.params != table.params() || cert.sequence.entries() != table.sequence().entries() ||
      cert.w.genus() != table.g() || mask.rows() != table.rows() || mask.g() != table.g()) {
    report.failure = "certificate dimensions do not match the table";
    return report;
  }
  report.steady = is_steady_table(table, cert.w);
  report.unimaginative = is_unimaginative(cert.w.entries, table.m());

  std::optional<VerifierState> state;
  try {
    state.emplace(table, mask, cert.selected);
  } catch (const Error& e) {
    report.failure = std::string("invalid selection: ") + e.what();
    return report;
  }

  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    const StepCheck check = check_step(*state, cert.steps[k], options);
    StepTrace trace{k, cert.steps[k], check.ok, check.diagnostic, state->remaining_count()};
    if (check) {
      for (std::size_t row : check.drops) state->drop(row);
      trace.remaining_after = state->remaining_count();
    }
    report.trace.push_back(trace);
    if (!check) {
      report.failure = "step " + std::to_string(k + 1) + ": " + check.diagnostic;
      break;
    }
  }
  report.remaining = state->remaining_rows();
  if (report.failure.empty() && !report.remaining.empty())
    report.failure = "rows remain: " + join_rows(report.remaining);
  report.valid = report.failure.empty();
  return report;
}

VerificationReport verify_certificate(const Certificate& cert, const VerifyOptions& options) {
  try {
    const auto& p = cert.params;
    if (cert.sequence.g() != p.g || cert.sequence.r() != p.r || cert.sequence.d() != p.d)
      throw Error(ErrorCode::InvalidArgument, "sequence does not match the case parameters");
    const TensorTable table(build_vanishing_table(cert.sequence), p.m);
    const ErasureMask mask = erase(table, cert.w);
    return verify_certificate(table, mask, cert, options);
  } catch (const Error& e) {
    VerificationReport report;
    report.N = cert.N();
    report.failure = e.what();
    return report;
  }
}

}  // namespace expunge
