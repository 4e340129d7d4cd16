#pragma once

// Randomized property checks shared by the unit suite and the acceptance binary.
// Each returns the number of failing trials.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "expunge/divisors.hpp"
#include "expunge/search.hpp"
#include "oracles/brute_force.hpp"

namespace props {

using expunge::Int;
using Rng = std::mt19937_64;

inline Int uniform(Rng& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

struct RandomCase {
  Int g, r, d, m, shift;
  std::vector<Int> delta;
};

/// A valid (shifted) sequence built position by position; counts stay nonincreasing in the value.
inline std::vector<Int> random_sequence(Rng& rng, Int g, Int r, Int need) {
  std::vector<Int> counts(static_cast<std::size_t>(r + 1), 0), out;
  for (Int pos = 0; pos < g; ++pos) {
    std::vector<Int> allowed;
    for (Int v = 0; v <= r; ++v) {
      if (v > 0 && counts[static_cast<std::size_t>(v - 1)] < counts[static_cast<std::size_t>(v)] + 1) continue;
      Int deficit = 0;
      for (Int u = 0; u <= r; ++u) deficit += std::max<Int>(0, need - counts[static_cast<std::size_t>(u)] - (u == v));
      if (deficit <= g - pos - 1) allowed.push_back(v);
    }
    const Int v = allowed[static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(allowed.size()) - 1))];
    ++counts[static_cast<std::size_t>(v)];
    out.push_back(v);
  }
  return out;
}

inline RandomCase random_case(Rng& rng, Int max_r, Int max_g, Int m, Int max_shift = 0) {
  while (true) {
    const Int r = uniform(rng, 1, max_r), shift = uniform(rng, 0, max_shift), excess = uniform(rng, 1, 2);
    const Int min_g = (r + 1) * (excess + shift);
    if (min_g > max_g) continue;
    const Int g = uniform(rng, min_g, max_g);
    const Int d = r + g - excess;
    return {g, r, d, m, shift, random_sequence(rng, g, r, excess + shift)};
  }
}

inline expunge::TensorTable table_of(const RandomCase& c) {
  return expunge::build_tensor_table(
      expunge::build_vanishing_table(expunge::validate_sequence(c.delta, c.g, c.r, c.d, c.shift)), c.m);
}

// (a) ---------------------------------------------------------------------------------------------

inline std::size_t epsilon_fast_matches(Rng& rng, int trials) {
  std::size_t failures = 0;
  for (int t = 0; t < trials; ++t) {
    const Int n = uniform(rng, 0, 12);
    const Int up = uniform(rng, 0, n), flat = uniform(rng, up, n);
    std::vector<Int> w(static_cast<std::size_t>(n)), wp(static_cast<std::size_t>(n));
    for (Int k = 0; k < n; ++k) {
      w[static_cast<std::size_t>(k)] = uniform(rng, -20, 40);
      const Int diff = k < up ? uniform(rng, 1, 5) : k < flat ? 0 : -uniform(rng, 1, 5);
      wp[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(k)] + diff;
    }
    const auto slow = expunge::epsilon(wp, w);
    if (slow != expunge::epsilon_fast(wp, w)) ++failures;
    if (slow != oracle::epsilon({wp.begin(), wp.end()}, {w.begin(), w.end()})) ++failures;
  }
  return failures;
}

// (b) ---------------------------------------------------------------------------------------------

inline std::size_t unimaginative_is_steady(Rng& rng, int trials) {
  std::size_t failures = 0;
  for (int t = 0; t < trials; ++t) {
    const Int m = uniform(rng, 2, 3);
    const auto c = random_case(rng, 4, 14, m);
    const auto table = table_of(c);
    std::vector<Int> w;
    Int value = uniform(rng, -5, m * c.d);
    for (Int i = 2; i <= c.g; ++i) {
      w.push_back(value);
      value += uniform(rng, m, m + 4);
    }
    if (!expunge::is_unimaginative(w, m)) ++failures;
    if (!expunge::is_steady_table(table, expunge::TwistVector{w, m * c.d})) ++failures;
  }
  return failures;
}

// (c) ---------------------------------------------------------------------------------------------

inline std::size_t shift_keeps_mask(Rng& rng, int trials) {
  std::size_t failures = 0;
  for (int t = 0; t < trials; ++t) {
    const Int m = uniform(rng, 2, 3);
    const auto c = random_case(rng, 4, 14, m);
    const auto seq = expunge::validate_sequence(c.delta, c.g, c.r, c.d);
    std::vector<Int> w;
    for (Int i = 2; i <= c.g; ++i) w.push_back(uniform(rng, -3, m * c.d + 3));
    const expunge::TwistVector tw{w, m * c.d};
    const Int a = uniform(rng, 0, 6);
    const Int d_new = c.d + a + uniform(rng, 0, 1);
    const auto [seq2, w2] = expunge::shift_pair(seq, tw, m, a, d_new);
    const auto t1 = expunge::build_tensor_table(expunge::build_vanishing_table(seq), m);
    const auto t2 = expunge::build_tensor_table(expunge::build_vanishing_table(seq2), m);
    if (!(expunge::erase(t1, tw) == expunge::erase(t2, w2))) ++failures;
    for (std::size_t k = 0; k < t1.rows(); ++k)
      if (t2.a(k, 1) != t1.a(k, 1) + m * a) ++failures;
  }
  return failures;
}

// (d) ---------------------------------------------------------------------------------------------

inline std::size_t nonconstant_matches_divisor(Rng& rng, int trials) {
  std::size_t failures = 0;
  int done = 0;
  const Int d = 52;
  auto ok = [](Int a, Int c) { return a - c != 0 && a - c != -1; };
  while (done < trials) {
    const Int c = uniform(rng, 1, 50);
    const Int a1 = uniform(rng, 0, 50), a2 = uniform(rng, 0, 50), a1p = uniform(rng, 0, 50);
    const Int a2p = a1 + a2 - a1p;
    if (a2p < 0 || a2p > 50) continue;
    if (!ok(a1, c) || !ok(a2, c) || !ok(a1p, c) || !ok(a2p, c)) continue;
    ++done;
    const expunge::SectionData data{{a1, a2}, {a1p, a2p}, c, d};
    const auto div = expunge::div_f(data);
    if (expunge::is_nonconstant_m2(a1, a2, a1p, a2p, c) == div.zero()) ++failures;
    if (div.degree_sum() != 0) ++failures;
    if (!(-div == expunge::div_f(expunge::SectionData{{a1p, a2p}, {a1, a2}, c, d}))) ++failures;
  }
  return failures;
}

// (e) ---------------------------------------------------------------------------------------------

inline std::uint32_t bits_of(const expunge::VerifierState& s) {
  std::uint32_t out = 0;
  for (std::size_t k = 0; k < s.table().rows(); ++k)
    if (s.remaining(k)) out |= 1u << k;
  return out;
}

inline std::set<std::uint32_t> library_successors(const expunge::VerifierState& s) {
  using expunge::Rule;
  std::set<std::uint32_t> out;
  for (Rule rule : {Rule::II, Rule::III, Rule::IV, Rule::V, Rule::VI, Rule::VII})
    for (Int i = 1; i <= s.table().g(); ++i)
      for (const auto& step : expunge::candidate_steps(s, rule, i, true))
        out.insert(bits_of(expunge::apply_step(s, step)));
  return out;
}

struct SmallCase {
  RandomCase c;
  std::vector<Int> w;
};

inline SmallCase random_small_case(Rng& rng) {
  while (true) {
    const Int m = uniform(rng, 2, 4);
    auto c = random_case(rng, 3, 6, m);
    if (expunge::binomial(c.r + m, m) > 12) continue;
    std::vector<Int> w;
    for (Int i = 2; i <= c.g; ++i) w.push_back(uniform(rng, -2, m * c.d + 2));
    return {c, w};
  }
}

/// Search with full backtracking and the one-step successor relation both agree with brute force.
inline std::size_t verifier_matches_brute_force(Rng& rng, int cases) {
  std::size_t failures = 0;
  for (int n = 0; n < cases; ++n) {
    const auto s = random_small_case(rng);
    const auto table = table_of(s.c);
    const expunge::TwistVector tw{s.w, s.c.m * s.c.d};
    const auto mask = expunge::erase(table, tw);
    const auto ref = oracle::tensor({s.c.delta.begin(), s.c.delta.end()}, s.c.r, s.c.d, s.c.m, s.c.shift);
    const auto ref_mask = oracle::mask(ref, {s.w.begin(), s.w.end()});
    for (std::size_t k = 0; k < table.rows(); ++k)
      for (Int i = 1; i <= table.g(); ++i)
        if (mask.present(k, i) != ref_mask[k][static_cast<std::size_t>(i - 1)]) ++failures;

    const std::uint32_t full = (1u << table.rows()) - 1;
    for (int pick = 0; pick < 6; ++pick) {
      const std::uint32_t subset = pick == 0 ? full : static_cast<std::uint32_t>(uniform(rng, 0, full));
      std::vector<expunge::RowIndex> selected;
      for (std::size_t k = 0; k < table.rows(); ++k)
        if ((subset >> k) & 1u) selected.push_back(table.row(k));
      const expunge::VerifierState state(table, mask, selected);
      if (library_successors(state) != oracle::successors(ref, ref_mask, subset)) ++failures;

      expunge::SearchConfig config;
      config.selection = expunge::SelectionStrategy::Explicit;
      config.selected = selected;
      config.exhaustive = true;
      const auto out = expunge::search_certificate(table, mask, tw, static_cast<Int>(selected.size()), config);
      const bool found = out.status == expunge::SearchStatus::Found;
      if (found != oracle::expungeable(ref, ref_mask, subset)) ++failures;
      if (found && !expunge::verify_certificate(table, mask, *out.certificate).valid) ++failures;
    }
  }
  return failures;
}

}  // namespace props
