#include "expunge/constructions.hpp"

#include <algorithm>
#include <map>

#include "builder.hpp"
#include "expunge/search.hpp"

namespace expunge {

namespace {

using detail::require_valid;
using detail::StepBuilder;

Error mismatch(const std::string& what) { return Error(ErrorCode::ReductionMismatch, what); }

ConstructionResult finish(CaseParams params, GrdSequence seq, TwistVector w, Certificate cert, std::string provenance) {
  require_valid(cert, provenance);
  ConstructionResult out{params, std::move(seq), std::move(w), params.expected_rank(), std::move(cert),
                         std::move(provenance), {}};
  return out;
}

Int max_repetition(const GrdSequence& seq) {
  Int most = 0;
  for (Int v = 0; v <= seq.r(); ++v) most = std::max(most, seq.count(v));
  return most;
}

const Certificate& certificate_of(const ConstructionResult& result, const char* what) {
  if (!result.certificate) throw Error(ErrorCode::PreconditionViolated, std::string(what) + ": no certificate attached");
  return *result.certificate;
}

}  // namespace

// Critical m = 2 cases ------------------------------------------------------------------------

CaseParams critical_m2_case(Int r) {
  if (r < 2) throw Error(ErrorCode::InvalidArgument, "critical case needs r >= 2");
  if (r % 2 == 0) return CaseParams::make((r + 1) * r / 2, r, (r + 2) * r / 2, 2);
  return CaseParams::make((r + 1) * (r + 1) / 2, r, r * (r + 3) / 2, 2);
}

namespace {

std::vector<Int> critical_twist(Int g, Int ell) {
  std::vector<Int> c{2};
  for (Int i = 3; i <= g; ++i) {
    const bool first_half = 2 * i <= g + 2;
    const Int residue = first_half ? 2 % ell : 1 % ell;
    c.push_back(c.back() + (i % ell == residue ? 3 : 2));
  }
  return c;
}

/// Columns in the block order of the critical certificate.
std::vector<Int> critical_column_order(Int r, Int ell) {
  std::vector<Int> order;
  auto block = [&](Int b, bool forward) {
    for (Int k = 0; k < ell; ++k) order.push_back(forward ? b * ell + 1 + k : (b + 1) * ell - k);
  };
  const Int left = r % 2 == 0 ? r / 2 : (r + 1) / 2;
  for (Int b = 0; b < left; ++b) block(b, true);
  for (Int b = r; b >= left + (r % 2 == 0 ? 1 : 0); --b) block(b, false);
  if (r % 2 == 0) block(r / 2, true);
  return order;
}

void drive_column(StepBuilder& builder, Int col) {
  while (true) {
    const auto bits = builder.state().present_in(col);
    const auto present = std::count(bits.begin(), bits.end(), std::uint8_t{1});
    if (present == 0) return;
    if (present <= 2) {
      builder.clear_iv(col);
      continue;
    }
    bool progress = false;
    for (Rule rule : {Rule::II, Rule::III}) {
      auto found = candidate_steps(builder.state(), rule, col);
      if (!found.empty()) {
        builder.apply(found.front());
        progress = true;
        break;
      }
    }
    if (progress) continue;
    for (Int s = 1; s <= col && !progress; ++s) {
      for (const auto& step : candidate_steps(builder.state(), Rule::VII, s)) {
        if (s + *step.n - 1 < col) continue;
        builder.apply(step);
        progress = true;
        break;
      }
    }
    if (!progress) return;
  }
}

}  // namespace

ConstructionResult critical_m2(Int r) {
  if (r < 4) throw Error(ErrorCode::OutOfScope, "critical_m2 needs r >= 4");
  const CaseParams p = critical_m2_case(r);
  const Int ell = p.excess();
  std::vector<Int> delta;
  for (Int v = 0; v <= r; ++v) delta.insert(delta.end(), static_cast<std::size_t>(ell), v);
  auto seq = validate_sequence(delta, p.g, r, p.d);
  TwistVector w{critical_twist(p.g, ell), 2 * p.d};

  StepBuilder builder(seq, 2, w, all_row_indices(r, 2));
  for (Int col : critical_column_order(r, ell)) drive_column(builder, col);
  Certificate cert = builder.certificate();
  if (builder.remaining() > 0) {
    SearchConfig config;
    const auto outcome = search_from(builder.state(), w, config);
    if (!outcome.certificate) throw Error(ErrorCode::RuleViolated, "critical_m2: block procedure left rows");
    cert.steps.insert(cert.steps.end(), outcome.certificate->steps.begin(), outcome.certificate->steps.end());
  }
  return finish(p, std::move(seq), std::move(w), std::move(cert), "critical_m2");
}

// Basic reduction -----------------------------------------------------------------------------

BasicReduction basic_reduction_target(Int g, Int r, Int d) {
  const CaseParams p = CaseParams::make(g, r, d, 2);
  const Int t = std::min(add(p.rho(), p.excess()), r - 1);
  if (t < 1) throw Error(ErrorCode::OutOfScope, "basic reduction needs rho + r + g - d >= 1");
  return BasicReduction{t, CaseParams::make(g - t, r - 1, d - t - 1, 2)};
}

ConstructionResult basic_reduction_lift(const ConstructionResult& sub, Int r, Int g, Int d) {
  const auto [t, expected] = basic_reduction_target(g, r, d);
  if (sub.params != expected)
    throw mismatch("(" + std::to_string(g) + "," + std::to_string(r) + "," + std::to_string(d) + ") reduces to " +
                   to_string(expected) + ", not " + to_string(sub.params));
  const Certificate& sub_cert = certificate_of(sub, "basic_reduction_lift");
  if (max_repetition(sub.seq) > sub.params.r) throw mismatch("sub sequence repeats a value more than r' times");
  if (!sub.w.entries.empty() && sub.w.c(2) < 2) throw mismatch("sub twist vector has c'_2 < 2");

  std::vector<Int> delta(static_cast<std::size_t>(t), 0);
  for (Int v : sub.seq.entries()) delta.push_back(v + 1);
  auto seq = validate_sequence(delta, g, r, d);

  std::vector<Int> c;
  for (Int i = 2; i <= t + 1; ++i) c.push_back(3 + 2 * (i - 2));
  for (Int i = t + 2; i <= g; ++i) c.push_back(sub.w.c(i - t) + 2 * t + 2);
  TwistVector w{c, 2 * d};

  std::vector<RowIndex> selected;
  for (Int j = 0; j <= t + 1; ++j) selected.push_back(RowIndex{0, j});
  for (const auto& row : sub_cert.selected) selected.push_back(row.shifted(1));

  StepBuilder builder(seq, 2, w, selected);
  for (Int j = 0; j <= 2; ++j) builder.apply(RuleStep::ii(1, RowIndex{0, j}));
  for (Int col = 2; col <= t; ++col) builder.clear_iv(col);
  for (const auto& step : sub_cert.steps) {
    RuleStep lifted = step;
    lifted.column += t;
    if (lifted.witness) *lifted.witness += t;
    if (lifted.j) *lifted.j += 1;
    for (auto& row : lifted.rows) row = row.shifted(1);
    builder.apply(lifted);
  }
  if (builder.remaining() != 0) throw mismatch("lifted certificate leaves rows");

  const CaseParams p = CaseParams::make(g, r, d, 2);
  auto out = finish(p, std::move(seq), std::move(w), builder.certificate(), "basic_reduction_lift");
  out.target = sub.target + t + 2;
  return out;
}

// Injective extension -------------------------------------------------------------------------

ConstructionResult injective_extend(const ConstructionResult& sub, Int g_new, Int d_new) {
  const Certificate& cert = certificate_of(sub, "injective_extend");
  const CaseParams& p = sub.params;
  if (cert.N() != p.row_count()) throw Error(ErrorCode::NotInjective, "sub certificate has N < C(r+m,m)");
  if (g_new < p.g || d_new < p.d) throw Error(ErrorCode::InvalidArgument, "extension needs g_new >= g and d_new >= d");
  const CaseParams q = CaseParams::make(g_new, p.r, d_new, p.m);
  if (!q.injective()) throw Error(ErrorCode::NotInjective, to_string(q) + " is not in the injective range");
  if (q == p) return sub;

  std::vector<Int> delta = sub.seq.entries();
  if (g_new - d_new <= p.g - p.d) {
    delta.resize(static_cast<std::size_t>(g_new), 0);
  } else if (is_extendable(sub.seq)) {
    const Int beta = p.g % (p.r + 1);
    for (Int k = 0; static_cast<Int>(delta.size()) < g_new; ++k) delta.push_back((beta + k) % (p.r + 1));
  } else {
    throw Error(ErrorCode::NotExtendable, "sequence is not extendable and g_new - d_new > g - d");
  }
  auto seq = validate_sequence(delta, g_new, p.r, d_new);

  std::vector<Int> c = sub.w.entries;
  if (g_new > p.g) {
    Int next = std::max(c.empty() ? 0 : c.back() + p.m, mul(p.m, d_new) + 1);
    for (Int i = p.g + 1; i <= g_new; ++i, next += p.m) c.push_back(next);
  }
  TwistVector w{c, mul(p.m, d_new)};

  Certificate next_cert{q, seq, w, cert.selected, cert.steps};
  auto out = finish(q, std::move(seq), std::move(w), std::move(next_cert), sub.provenance + "+injective_extend");
  out.target = cert.N();
  out.chain = sub.chain;
  return out;
}

// m = 2 driver --------------------------------------------------------------------------------

namespace {

ConstructionResult m2_driver(const CaseParams& p) {
  const Int g = p.g, r = p.r, d = p.d;
  if (r == 3) {
    if (g == 4 && d == 6) return example_g4_r3_d6();
    if (g == 5 && d == 7) return example_g5_r3_d7();
    auto base = example_g5_r3_d7();
    auto out = injective_extend(base, g, d);
    out.chain.insert(out.chain.begin(), ReductionLink{"extension", p, base.params, 0});
    return out;
  }
  if (p.surjective() && !(p.injective() && p.rho() == 0)) {
    const auto [t, sub_case] = basic_reduction_target(g, r, d);
    auto sub = m2_driver(sub_case);
    auto out = basic_reduction_lift(sub, r, g, d);
    out.chain = sub.chain;
    out.chain.insert(out.chain.begin(), ReductionLink{"basic", p, sub_case, t});
    return out;
  }
  const Int s = std::min(sub(p.target_dimension(), p.row_count()), p.rho());
  if (s > 0) {
    const CaseParams sub_case = CaseParams::make(g - s, r, d - s, 2);
    auto inner = m2_driver(sub_case);
    auto out = injective_extend(inner, g, d);
    out.chain = inner.chain;
    out.chain.insert(out.chain.begin(), ReductionLink{"degree-genus", p, sub_case, s});
    return out;
  }
  if (p.rho() != 0) throw Error(ErrorCode::OutOfScope, "no reduction applies to " + to_string(p));
  auto critical = critical_m2(r);
  if (critical.params == p) return critical;
  auto out = injective_extend(critical, g, d);
  out.chain.insert(out.chain.begin(), ReductionLink{"extension", p, critical.params, 0});
  return out;
}

}  // namespace

ConstructionResult m2_certify(Int g, Int r, Int d) {
  if (r < 3) throw Error(ErrorCode::OutOfScope, "m2_certify needs r >= 3");
  if (g < 1 || d < 1) throw Error(ErrorCode::OutOfScope, "m2_certify needs g, d >= 1");
  const CaseParams p = CaseParams::make(g, r, d, 2);
  if (p.rho() < 0) throw Error(ErrorCode::OutOfScope, "rho < 0");
  if (p.excess() <= 0) throw Error(ErrorCode::OutOfScope, "r + g - d <= 0");
  auto out = m2_driver(p);
  const auto& cert = certificate_of(out, "m2_certify");
  if (cert.N() != p.expected_rank())
    throw Error(ErrorCode::RuleViolated, "m2_certify produced N=" + std::to_string(cert.N()) + " for " + to_string(p));
  if (p.surjective() && !out.w.entries.empty() && out.w.c(2) < 2)
    throw Error(ErrorCode::RuleViolated, "surjective result has c_2 < 2");
  out.target = p.expected_rank();
  return out;
}

// Big-genus injectivity -----------------------------------------------------------------------

Int big_g_min_genus(Int r, Int m) { return mul(r + 1, sub(ipow(m + 1, r - 1), r)); }

BigGLayout big_g_layout(Int r, Int m, Int g) {
  if (r < 2 || m < 2) throw Error(ErrorCode::InvalidArgument, "big-genus construction needs r >= 2, m >= 2");
  if (g < big_g_min_genus(r, m)) throw Error(ErrorCode::PreconditionViolated, "g below the big-genus bound");
  const Int k = sub(ipow(m + 1, r - 1), r);
  BigGLayout out;
  auto repeat = [&](Int value, Int times) {
    for (Int n = 0; n < times; ++n) out.delta.push_back(value);
  };
  repeat(0, k);
  for (Int i = 1; i <= r - 1; ++i) repeat(i, k - ipow(m + 1, i - 1) + i);
  out.i0 = static_cast<Int>(out.delta.size()) + 1;
  repeat(2, m - 1);
  for (Int i = 3; i <= r; ++i) repeat(i, ipow(m + 1, i - 1) - i);
  for (Int n = 0; static_cast<Int>(out.delta.size()) < g; ++n) out.delta.push_back(n % (r + 1));
  return out;
}

ConstructionResult big_g_inject(Int r, Int m, Int g, Int d) {
  const CaseParams p = CaseParams::make(g, r, d, m);
  if (p.rho() < 0) throw Error(ErrorCode::PreconditionViolated, "rho < 0");
  auto layout = big_g_layout(r, m, g);
  auto seq = validate_sequence(layout.delta, g, r, d);
  const Int i0 = layout.i0;

  const VanishingTable vt = build_vanishing_table(seq);
  const Int base = vt.a(0, i0);
  for (Int j = 1; j <= r; ++j) {
    const Int want = add(base, ipow(m + 1, j - 1));
    if (vt.a(j, i0) != want)
      throw Error(ErrorCode::DistinctnessFailure, "column " + std::to_string(i0) + " of T' has a^" +
                                                      std::to_string(j) + " = " + std::to_string(vt.a(j, i0)) +
                                                      ", expected " + std::to_string(want));
  }

  const Int md = mul(m, d);
  std::vector<Int> c;
  for (Int i = 2; i <= g; ++i) c.push_back(i <= i0 ? 0 : md);
  TwistVector w{c, md};

  const TensorTable table = build_tensor_table(vt, m);
  std::vector<std::size_t> order(table.rows());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return table.a(x, i0) < table.a(y, i0); });
  for (std::size_t k = 1; k < order.size(); ++k)
    if (table.a(order[k], i0) == table.a(order[k - 1], i0))
      throw Error(ErrorCode::DistinctnessFailure, "repeated sum in column " + std::to_string(i0));
  order.resize(static_cast<std::size_t>(p.expected_rank()));

  std::vector<RowIndex> selected;
  std::vector<RuleStep> steps;
  for (std::size_t k : order) {
    selected.push_back(table.row(k));
    steps.push_back(RuleStep::ii(i0, table.row(k)));
  }
  Certificate cert{p, seq, w, selected, steps};
  return finish(p, std::move(seq), std::move(w), std::move(cert), "big_g_inject");
}

// Cubic surjectivity --------------------------------------------------------------------------

namespace {

Error hypothesis(const std::string& what) { return Error(ErrorCode::HypothesisViolation, what); }

}  // namespace

SurjLayout surj_m3_layout(Int g, Int r, Int d, SurjCase which) {
  const CaseParams p = CaseParams::make(g, r, d, 3);
  const Int rho = p.rho();
  if (rho < 0) throw hypothesis("rho < 0");
  const bool first = which == SurjCase::I;
  if (p.excess() != (first ? 1 : 2)) throw hypothesis(first ? "case (i) needs r + g - d = 1" : "case (ii) needs r + g - d = 2");
  if (first && !(2 * r - 3 >= rho + 1)) throw hypothesis("case (i) needs 2r - 3 >= rho + 1");
  if (!first && r < 4) throw hypothesis("case (ii) needs r >= 4");
  if (!first && !(2 * r - 3 >= rho + 2)) throw hypothesis("case (ii) needs 2r - 3 >= rho + 2");

  std::vector<Int> delta(static_cast<std::size_t>(rho), 0);
  for (Int v = 0; v <= r; ++v) {
    delta.push_back(v);
    if (!first) delta.push_back(v);
  }
  const auto seq = validate_sequence(delta, g, r, d);
  const TensorTable table = build_tensor_table(build_vanishing_table(seq), 3);

  const Int n = first ? std::min(r - 1, rho + 2) : (rho > 0 ? std::min(r - 1, rho + 1) : 2);
  const Int i0 = (first ? rho + 3 : rho + 4) - n;

  std::map<Int, Int> c;
  auto assign = [&](Int column, Int value) {
    if (column < 2 || column > g) throw hypothesis("twist column " + std::to_string(column) + " outside [2, g]");
    if (!c.emplace(column, value).second) throw hypothesis("twist column " + std::to_string(column) + " assigned twice");
  };
  auto anchor = [&](Int column, RowIndex row) {
    const auto k = table.find(row);
    if (!k) throw hypothesis("anchor row " + row.to_string() + " is not a row of the table");
    if (column < 1 || column > g) throw hypothesis("anchor column " + std::to_string(column) + " outside [1, g]");
    assign(column, table.a(*k, column));
  };

  for (Int i = 2; i <= i0; ++i) assign(i, -3 * (i0 - i) - 1);
  if (first) {
    for (Int i = 0; i <= n - 2; ++i) anchor(rho + 2 - i, RowIndex{0, n - i, n - i});
    for (Int i = 3; i <= r + 1; ++i) anchor(rho + i, RowIndex{i - 2, i - 2, r});
  } else {
    for (Int i = 0; i <= n - 2; ++i) anchor(rho + 3 - i, RowIndex{0, n - i, n - i});
    for (Int i = 2; i <= r - 2; ++i) anchor(rho + 2 * i, RowIndex{i - 1, i - 1, r - 2});
    for (Int i = 2; i <= r - 1; ++i) anchor(rho + 2 * i + 1, RowIndex{i - 1, i - 1, r});
    anchor(rho + 2 * r - 2, RowIndex{r - 3, r - 2, r});
    anchor(rho + 2 * r, RowIndex{r - 2, r - 1, r - 1});
    anchor(rho + 2 * r + 1, RowIndex{r - 3, r - 1, r});
    anchor(rho + 2 * r + 2, RowIndex{r - 2, r, r});
  }
  std::vector<Int> entries;
  for (Int i = 2; i <= g; ++i) {
    auto it = c.find(i);
    if (it == c.end()) throw hypothesis("twist column " + std::to_string(i) + " is not assigned");
    entries.push_back(it->second);
  }
  TwistVector w{entries, mul(3, d)};
  if (!is_unimaginative(w.entries, 3)) throw hypothesis("constructed w is not unimaginative");
  return SurjLayout{p, delta, w, i0};
}

ConstructionResult surj_m3(Int g, Int r, Int d, SurjCase which) {
  auto layout = surj_m3_layout(g, r, d, which);
  auto seq = validate_sequence(layout.delta, g, r, d);
  const TensorTable table = build_tensor_table(build_vanishing_table(seq), 3);
  const ErasureMask mask = erase(table, layout.w);
  auto swept = surjective_sweep(table, mask, layout.w, layout.i0, SweepVariant::Auto);
  if (!swept) throw Error(ErrorCode::RuleViolated, "surj_m3: column sweep did not produce a certificate");
  auto out = finish(layout.params, std::move(seq), layout.w, std::move(swept->certificate),
                    which == SurjCase::I ? "surj_m3(i)" : "surj_m3(ii)");
  out.target = layout.params.target_dimension();
  return out;
}

// m = 3 driver --------------------------------------------------------------------------------

ConstructionResult m3_certify(Int g, Int r, Int d) {
  const CaseParams p = CaseParams::make(g, r, d, 3);
  if (p.rho() < 0) throw Error(ErrorCode::OutOfScope, "rho < 0");
  if (p.excess() <= 0) throw Error(ErrorCode::OutOfScope, "r + g - d <= 0");
  if (r >= 3 && r <= 5) {
    auto base = m3_catalog(r);
    if (g >= base.params.g && d >= base.params.d && p.injective()) {
      auto out = injective_extend(base, g, d);
      if (!(out.params == base.params)) out.chain.insert(out.chain.begin(), ReductionLink{"extension", p, base.params, 0});
      return out;
    }
  }
  const Int rho = p.rho();
  if (p.excess() == 1 && 2 * r - 3 >= rho + 1) return surj_m3(g, r, d, SurjCase::I);
  if (p.excess() == 2 && r >= 4 && 2 * r - 3 >= rho + 2) return surj_m3(g, r, d, SurjCase::II);
  throw Error(ErrorCode::OutOfScope, "no m = 3 construction covers " + to_string(p));
}

}  // namespace expunge
