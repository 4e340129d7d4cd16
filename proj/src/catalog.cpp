#include <memory>

#include "builder.hpp"
#include "expunge/constructions.hpp"
#include "expunge/search.hpp"

// Worked examples: each certificate replays the prose walkthrough as checked steps.

namespace expunge {

namespace {

using detail::require_valid;
using detail::StepBuilder;

struct Stored {
  Int g, r, d, m;
  std::vector<Int> delta;
  std::vector<Int> w;
};

ConstructionResult package(const Stored& s, StepBuilder& builder, std::string provenance) {
  const CaseParams p = CaseParams::make(s.g, s.r, s.d, s.m);
  Certificate cert = builder.certificate();
  require_valid(cert, provenance);
  if (builder.remaining() != 0) throw Error(ErrorCode::RuleViolated, provenance + ": rows remain");
  return ConstructionResult{p, cert.sequence, cert.w, cert.N(), std::move(cert), std::move(provenance), {}};
}

std::unique_ptr<StepBuilder> start(const Stored& s, std::vector<RowIndex> selected) {
  auto seq = validate_sequence(s.delta, s.g, s.r, s.d);
  return std::make_unique<StepBuilder>(seq, s.m, TwistVector{s.w, s.m * s.d}, std::move(selected));
}

/// Rule V dropping `row` at column i, with n its multiplicity of j.
RuleStep rule_v(Int column, RowIndex row, Int j) {
  const Int n = row.multiplicity(j);
  return RuleStep::v(column, std::move(row), j, n);
}

}  // namespace

ConstructionResult example_g4_r3_d6() {
  const Stored s{4, 3, 6, 2, {0, 1, 2, 3}, {2, 6, 8}};
  std::vector<RowIndex> selected;
  for (const auto& row : all_row_indices(3, 2))
    if (row != RowIndex{0, 3}) selected.push_back(row);
  auto b = start(s, selected);
  b->greedy_all({Rule::II});
  return package(s, *b, "example");
}

ConstructionResult example_g5_r3_d7() {
  const Stored s{5, 3, 7, 2, {0, 1, 2, 3, 0}, {2, 6, 8, 10}};
  auto b = start(s, all_row_indices(3, 2));
  for (int k = 0; k < 2; ++k) b->apply(candidate_steps(b->state(), Rule::III, 5).at(0));
  b->clear_iv(5);
  b->apply(RuleStep::iv(3, {RowIndex{0, 3}, RowIndex{1, 2}}));
  b->greedy_all({Rule::II, Rule::III});
  return package(s, *b, "example");
}

ConstructionResult example_g10_r4_d12() {
  const Stored s{10, 4, 12, 2, {0, 0, 1, 1, 2, 2, 3, 3, 4, 4}, {2, 4, 7, 9, 12, 15, 17, 20, 22}};
  auto b = start(s, all_row_indices(4, 2));
  b->apply(RuleStep::ii(1, {0, 0}));
  b->apply(RuleStep::ii(1, {0, 1}));
  b->apply(RuleStep::ii(2, {0, 2}));
  b->apply(RuleStep::ii(3, {0, 3}));
  b->apply(RuleStep::ii(3, {1, 1}));
  b->apply(RuleStep::ii(4, {1, 2}));
  b->apply(RuleStep::iii(10, {4, 4}));
  b->apply(RuleStep::iii(10, {3, 4}));
  b->apply(RuleStep::iii(9, {2, 4}));
  b->apply(RuleStep::iii(8, {1, 4}));
  b->apply(RuleStep::iii(8, {3, 3}));
  b->apply(RuleStep::iii(7, {2, 3}));
  b->apply(RuleStep::vii(5, {RowIndex{0, 4}, RowIndex{1, 3}, RowIndex{2, 2}}));
  return package(s, *b, "example");
}

ConstructionResult m3_catalog(Int r) {
  if (r == 3) {
    const Stored s{7, 3, 9, 3, {0, 0, 1, 1, 2, 2, 3}, {4, 7, 10, 13, 17, 21}};
    auto b = start(s, all_row_indices(3, 3));
    for (Int col : {1, 3, 4, 7}) b->greedy(col, {Rule::II});
    b->greedy(6, {Rule::III});
    for (Int col : {2, 1, 5}) b->clear_iv(col);
    return package(s, *b, "m3_catalog");
  }
  if (r == 4) {
    // The printed sequence has 13 entries; the 16-entry one below matches the printed T' columns.
    const Stored s{16, 4, 17, 3, {0, 0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4},
                   {3, 5, 7, 12, 16, 19, 22, 24, 28, 31, 35, 37, 41, 44, 47}};
    auto b = start(s, all_row_indices(4, 3));
    for (Int col : {1, 2, 3, 6, 7, 8, 10, 16}) b->greedy(col, {Rule::II, Rule::III});
    b->greedy(4, {Rule::II, Rule::IV});
    for (Int col : {5, 9}) b->clear_iv(col);
    b->greedy(11, {Rule::II});
    b->greedy(15, {Rule::III});
    // Row (3,3,4) also sits in column 16 (tied minimum), which stalls columns 15 and 16 under II/III;
    // after column 12 the remaining rows fall to II/III/IV in columns 13, 14, 15, 16.
    b->clear_iv(12);
    b->greedy_all({Rule::II, Rule::III, Rule::IV});
    return package(s, *b, "m3_catalog");
  }
  if (r == 5) {
    const Stored s{26, 5, 27, 3, {0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5},
                   {3, 6, 8, 11, 15, 18, 21, 24, 28, 31, 34, 37, 41, 44, 47, 50, 53, 56, 60, 63, 66, 70, 73, 76, 78}};
    auto b = start(s, all_row_indices(5, 3));
    for (Int col : {1, 4, 17, 24, 25, 26}) b->greedy(col, {Rule::III});
    b->greedy(18, {Rule::II});
    for (Int col : {3, 2, 23}) b->clear_iv(col);
    b->apply(rule_v(22, {4, 4, 4}, 5));
    for (Int col : {22, 21, 20, 19}) b->clear_iv(col);
    b->apply(rule_v(6, {1, 1, 1}, 0));
    b->apply(rule_v(7, {0, 1, 5}, 2));
    for (Int col : {7, 6, 5, 8}) b->clear_iv(col);
    b->apply(rule_v(10, {0, 3, 3}, 2));
    b->apply(rule_v(9, {1, 1, 5}, 2));
    for (Int col : {9, 10, 11, 12}) b->clear_iv(col);
    b->apply(rule_v(13, {2, 2, 4}, 3));
    b->apply(rule_v(14, {2, 2, 5}, 3));
    for (Int col : {14, 13}) b->clear_iv(col);
    b->any_vi(15);
    for (Int col : {15, 16}) b->clear_iv(col);
    return package(s, *b, "m3_catalog");
  }
  throw Error(ErrorCode::UnsupportedRank, "m3_catalog stores r = 3, 4, 5 only");
}

}  // namespace expunge
