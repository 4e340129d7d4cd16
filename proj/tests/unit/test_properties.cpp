#include <doctest.h>

#include "oracles/properties.hpp"

using namespace expunge;

TEST_CASE("epsilon_fast agrees with epsilon on sign-monotone inputs") {
  props::Rng rng(101);
  CHECK(props::epsilon_fast_matches(rng, 10000) == 0);
}

TEST_CASE("unimaginative twists are steady") {
  props::Rng rng(102);
  CHECK(props::unimaginative_is_steady(rng, 1000) == 0);
}

TEST_CASE("shifting preserves the erasure mask") {
  props::Rng rng(103);
  CHECK(props::shift_keeps_mask(rng, 1000) == 0);
}

TEST_CASE("nonconstancy predicate matches the divisor") {
  props::Rng rng(104);
  CHECK(props::nonconstant_matches_divisor(rng, 10000) == 0);
}

TEST_CASE("rule engine matches brute force on small tables") {
  props::Rng rng(105);
  CHECK(props::verifier_matches_brute_force(rng, 200) == 0);
}

TEST_CASE("table invariants") {
  props::Rng rng(106);
  for (int t = 0; t < 300; ++t) {
    const Int m = props::uniform(rng, 2, 4);
    const auto c = props::random_case(rng, 5, 16, m, 2);
    const auto table = props::table_of(c);
    const auto& vt = table.vanishing();
    for (Int i = 1; i <= c.g; ++i) {
      for (Int j = 1; j <= c.r; ++j) CHECK(vt.a(j - 1, i) < vt.a(j, i));
      for (Int j = 0; j <= c.r; ++j) {
        if (c.shift == 0) {
          CHECK(vt.a(j, i) >= 0);
          CHECK(vt.a(j, i) <= c.d);
        }
        if (i < c.g) CHECK(vt.a(j, i + 1) == c.d - vt.b(j, i));
      }
      for (std::size_t k = 0; k < table.rows(); ++k)
        CHECK(table.a(k, i) + table.b(k, i) ==
              m * c.d - m + table.multiplicity(k, table.sequence().at(i)));
    }
    std::vector<Int> w;
    for (Int i = 2; i <= c.g; ++i) w.push_back(props::uniform(rng, -5, m * c.d + 5));
    Int total = 0;
    for (Int v : multidegree(w, m * c.d)) total += v;
    CHECK(total == m * c.d);
    const auto mask = erase(table, TwistVector{w, m * c.d});
    for (std::size_t k = 0; k < table.rows(); ++k) {
      bool any = false;
      for (Int i = 1; i <= c.g; ++i) any = any || mask.present(k, i);
      CHECK(any);
    }
  }
}

TEST_CASE("single-row columns fall to rules II and III") {
  props::Rng rng(107);
  for (int t = 0; t < 200; ++t) {
    const auto s = props::random_small_case(rng);
    const auto table = props::table_of(s.c);
    const auto mask = erase(table, TwistVector{s.w, s.c.m * s.c.d});
    std::vector<RowIndex> selected;
    for (std::size_t k = 0; k < table.rows(); ++k)
      if (props::uniform(rng, 0, 1)) selected.push_back(table.row(k));
    const VerifierState state(table, mask, selected);
    for (Int i = 1; i <= table.g(); ++i)
      for (const auto& step : candidate_steps(state, Rule::IV, i, true)) {
        std::size_t shown = 0;
        for (std::size_t k = 0; k < table.rows(); ++k) shown += state.remaining(k) && mask.present(k, i);
        if (shown != 1) continue;
        CHECK(check_step(state, RuleStep::ii(i, step.rows[0])));
        CHECK(check_step(state, RuleStep::iii(i, step.rows[0])));
      }
  }
}

TEST_CASE("distinct values in every column make rule II alone enough") {
  props::Rng rng(108);
  int exercised = 0;
  for (int t = 0; t < 400; ++t) {
    const auto s = props::random_small_case(rng);
    const auto table = props::table_of(s.c);
    const TwistVector tw{s.w, s.c.m * s.c.d};
    const auto mask = erase(table, tw);
    bool distinct = true;
    for (Int i = 1; i <= table.g(); ++i) {
      std::set<Int> seen;
      for (std::size_t k = 0; k < table.rows(); ++k)
        if (mask.present(k, i) && !seen.insert(table.a(k, i)).second) distinct = false;
    }
    if (!distinct) continue;
    ++exercised;
    SearchConfig config;
    config.rule_order = {Rule::II};
    const auto out = search_certificate(table, mask, tw, static_cast<Int>(table.rows()), config);
    CHECK(out.status == SearchStatus::Found);
  }
  CHECK(exercised > 0);
}

TEST_CASE("rule VI steps induce nonconstant divisor data") {
  props::Rng rng(109);
  int seen = 0;
  for (int t = 0; t < 3000 && seen < 50; ++t) {
    auto c = props::random_case(rng, 5, 12, 2);
    const auto table = props::table_of(c);
    std::vector<Int> w;
    for (Int i = 2; i <= c.g; ++i) w.push_back(props::uniform(rng, 0, 2 * c.d));
    std::sort(w.begin(), w.end());
    const auto mask = erase(table, TwistVector{w, 2 * c.d});
    std::vector<RowIndex> selected;
    for (std::size_t k = 0; k < table.rows(); ++k)
      if (props::uniform(rng, 0, 3)) selected.push_back(table.row(k));
    const VerifierState state(table, mask, selected);
    for (Int i = 1; i < table.g(); ++i)
      for (const auto& step : candidate_steps(state, Rule::VI, i)) {
        ++seen;
        const auto data = section_data_for_rows(table, *step.witness, step.rows[0], step.rows[1]);
        CHECK(is_nonconstant_m2(data.a[0], data.a[1], data.a_prime[0], data.a_prime[1], data.c));
      }
  }
  CHECK(seen > 0);
}

TEST_CASE("search results verify and are deterministic") {
  props::Rng rng(110);
  for (int t = 0; t < 60; ++t) {
    const auto s = props::random_small_case(rng);
    const auto table = props::table_of(s.c);
    const TwistVector tw{s.w, s.c.m * s.c.d};
    const auto mask = erase(table, tw);
    const Int n = props::uniform(rng, 0, static_cast<Int>(table.rows()));
    const auto first = search_certificate(table, mask, tw, n);
    const auto second = search_certificate(table, mask, tw, n);
    CHECK(first.status == second.status);
    if (first.certificate) {
      CHECK(verify_certificate(table, mask, *first.certificate).valid);
      CHECK(first.certificate->steps == second.certificate->steps);
      CHECK(first.certificate->selected == second.certificate->selected);
    }
  }
}
