#include <doctest.h>

#include <map>

#include "expunge/constructions.hpp"

using namespace expunge;

namespace {

bool verified(const ConstructionResult& r) {
  return r.certificate && verify_certificate(*r.certificate).valid && r.certificate->N() == r.target;
}

Int max_repetition(const GrdSequence& seq) {
  std::map<Int, Int> counts;
  Int best = 0;
  for (Int v : seq.entries()) best = std::max(best, ++counts[v]);
  return best;
}

ErasureMask mask_of(const ConstructionResult& r) {
  return erase(build_tensor_table(build_vanishing_table(r.seq), r.params.m), r.w);
}

}  // namespace

TEST_CASE("critical case for r = 4") {
  const auto c = critical_m2(4);
  CHECK(c.params == CaseParams::make(10, 4, 12, 2));
  CHECK(c.seq.entries() == std::vector<Int>{0, 0, 1, 1, 2, 2, 3, 3, 4, 4});
  CHECK(c.w.entries == std::vector<Int>{2, 4, 7, 9, 12, 15, 17, 20, 22});
  CHECK(c.target == 15);
  CHECK(c.provenance == "critical_m2");
  CHECK(verified(c));
}

TEST_CASE("critical cases for larger r") {
  CHECK(critical_m2_case(5) == CaseParams::make(18, 5, 20, 2));
  CHECK(critical_m2_case(6) == CaseParams::make(21, 6, 24, 2));
  const auto five = critical_m2(5);
  for (Int v = 0; v <= 5; ++v) CHECK(five.seq.count(v) == 3);
  CHECK(verified(five));
  const auto six = critical_m2(6);
  for (Int i = 3; i <= six.w.genus(); ++i) {
    const Int gap = six.w.c(i) - six.w.c(i - 1);
    CHECK((gap == 2 || gap == 3));
  }
  CHECK(is_unimaginative(six.w.entries, 2));
  CHECK(verified(six));
  CHECK(verified(critical_m2(7)));
  CHECK(verified(critical_m2(8)));
}

TEST_CASE("basic reduction arithmetic") {
  const auto b = basic_reduction_target(14, 5, 17);
  CHECK(b.t == 4);
  CHECK(b.sub == CaseParams::make(10, 4, 12, 2));
  for (Int r = 4; r <= 9; ++r) {
    const auto canon = basic_reduction_target(r + 1, r, 2 * r);
    CHECK(canon.t == 1);
    CHECK(canon.sub == CaseParams::make(r, r - 1, 2 * r - 2, 2));
  }
  // rank gap drops by r - 1 - t
  for (Int r = 4; r <= 6; ++r)
    for (Int g = r + 1; g <= 25; ++g)
      for (Int d = 1; d < r + g; ++d) {
        const auto p = CaseParams::make(g, r, d, 2);
        if (p.rho() < 0 || !p.surjective()) continue;
        const auto red = basic_reduction_target(g, r, d);
        CHECK(m2_rank_gap(red.sub.g, red.sub.r, red.sub.d) == m2_rank_gap(g, r, d) - (r - 1 - red.t));
      }
}

TEST_CASE("basic reduction lift") {
  const auto lifted = basic_reduction_lift(example_g4_r3_d6(), 4, 5, 8);
  CHECK(lifted.params == CaseParams::make(5, 4, 8, 2));
  CHECK(lifted.target == 12);
  CHECK(lifted.provenance == "basic_reduction_lift");
  CHECK(verified(lifted));
  CHECK(is_unimaginative(lifted.w.entries, 2));
  CHECK(lifted.w.c(2) >= 2);
  CHECK(max_repetition(lifted.seq) <= 4);

  const auto crit = basic_reduction_lift(critical_m2(4), 5, 14, 17);
  CHECK(crit.seq.entries().size() == 14);
  CHECK(std::vector<Int>(crit.seq.entries().begin(), crit.seq.entries().begin() + 4) == std::vector<Int>(4, 0));
  CHECK(crit.w.c(2) == 3);
  CHECK(verified(crit));

  CHECK(verified(basic_reduction_lift(example_g4_r3_d6(), 4, 6, 9)));
  CHECK_THROWS_AS(basic_reduction_lift(example_g5_r3_d7(), 4, 6, 9), Error);
}

TEST_CASE("injective extension") {
  const auto g5 = example_g5_r3_d7();
  const auto ext = injective_extend(g5, 6, 8);
  CHECK(ext.params == CaseParams::make(6, 3, 8, 2));
  CHECK(ext.certificate->N() == 10);
  CHECK(ext.provenance == "example+injective_extend");
  CHECK(verified(ext));
  CHECK(is_unimaginative(ext.w.entries, 2));

  const auto before = mask_of(g5), after = mask_of(ext);
  for (std::size_t k = 0; k < before.rows(); ++k) {
    for (Int i = 1; i <= 5; ++i) CHECK(after.present(k, i) == before.present(k, i));
    CHECK_FALSE(after.present(k, 6));
  }

  const auto m3 = injective_extend(m3_catalog(3), 8, 10);
  CHECK(m3.certificate->N() == 20);
  CHECK(verified(m3));

  const auto same = injective_extend(g5, 5, 7);
  CHECK(same.seq == g5.seq);
  CHECK(same.w == g5.w);

  try {
    injective_extend(example_g4_r3_d6(), 5, 7);
    FAIL("expected NotInjective");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInjective);
  }
}

TEST_CASE("m = 2 driver") {
  const auto g4 = m2_certify(4, 3, 6);
  CHECK(g4.certificate->N() == 9);
  CHECK(verified(g4));
  const auto crit = m2_certify(10, 4, 12);
  CHECK(crit.certificate->N() == 15);
  CHECK(crit.provenance == "critical_m2");

  const auto big = m2_certify(20, 6, 24);
  CHECK(big.certificate->N() == 28);
  CHECK(verified(big));
  REQUIRE(big.chain.size() == 3);
  CHECK(big.chain[0].kind == "degree-genus");
  CHECK(big.chain[0].to == CaseParams::make(19, 6, 23, 2));
  CHECK(big.chain[1].kind == "basic");
  CHECK(big.chain[1].parameter == 5);
  CHECK(big.chain[1].to == CaseParams::make(14, 5, 17, 2));
  CHECK(big.chain[2].parameter == 4);
  CHECK(big.chain[2].to == CaseParams::make(10, 4, 12, 2));

  for (auto [g, r, d] : {std::tuple{3, 3, 5}, {4, 3, 7}, {7, 3, 8}})
    CHECK_THROWS_AS(m2_certify(g, r, d), Error);
  CHECK_THROWS_AS(m2_certify(6, 2, 6), Error);
}

TEST_CASE("big genus injectivity") {
  CHECK(big_g_min_genus(3, 2) == 24);
  for (auto [r, m, g, d] : {std::tuple{3, 2, 24, 21}, {3, 3, 52, 42}, {4, 2, 115, 96}}) {
    CAPTURE(r);
    CAPTURE(m);
    const auto layout = big_g_layout(r, m, g);
    const auto vt = build_vanishing_table(validate_sequence(layout.delta, g, r, d));
    const Int base = vt.a(0, layout.i0);
    CHECK(vt.a(1, layout.i0) == base + 1);
    for (Int j = 2; j <= r; ++j) CHECK(vt.a(j, layout.i0) == base + ipow(m + 1, j - 1));

    const auto built = big_g_inject(r, m, g, d);
    CHECK(verified(built));
    CHECK(built.certificate->N() == binomial(r + m, m));
    for (const auto& step : built.certificate->steps) CHECK(step.rule == Rule::II);
    CHECK(is_steady_table(build_tensor_table(vt, m), built.w));
  }
  CHECK_THROWS_AS(big_g_inject(3, 2, 23, 20), Error);
}

TEST_CASE("cubic surjectivity construction") {
  const auto one = surj_m3(6, 5, 10, SurjCase::I);
  CHECK(verified(one));
  CHECK(one.certificate->N() == 3 * 10 + 1 - 6);
  CHECK(is_unimaginative(one.w.entries, 3));
  CHECK(one.provenance == "surj_m3(i)");

  const auto two = surj_m3(10, 4, 12, SurjCase::II);
  CHECK(verified(two));
  CHECK(two.certificate->N() == 27);
  CHECK(two.provenance == "surj_m3(ii)");

  try {
    surj_m3(8, 3, 9, SurjCase::II);
    FAIL("expected HypothesisViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolation);
  }
  CHECK_THROWS_AS(surj_m3(10, 4, 12, SurjCase::I), Error);
}

TEST_CASE("cubic catalog") {
  const std::map<Int, Int> expected{{3, 20}, {4, 35}, {5, 56}};
  for (auto [r, n] : expected) {
    const auto c = m3_catalog(r);
    CHECK(c.certificate->N() == n);
    CHECK(c.provenance == "m3_catalog");
    CHECK(verified(c));
  }
  CHECK(is_steady_table(build_tensor_table(build_vanishing_table(m3_catalog(4).seq), 3), m3_catalog(4).w));
  try {
    m3_catalog(6);
    FAIL("expected UnsupportedRank");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedRank);
  }

  const auto r5 = *m3_catalog(5).certificate;
  std::size_t v = 0, vi = 0;
  for (const auto& step : r5.steps) {
    v += step.rule == Rule::V;
    vi += step.rule == Rule::VI;
  }
  CHECK(v >= 2);
  CHECK(vi == 1);
}

TEST_CASE("cubic driver") {
  for (Int g = 7; g <= 12; ++g) {
    const auto c = m3_certify(g, 3, g + 2);
    CHECK(verified(c));
    CHECK(c.provenance.rfind("m3_catalog", 0) == 0);
  }
  CHECK(m3_certify(26, 5, 27).provenance == "m3_catalog");
  try {
    m3_certify(10, 4, 13);
    FAIL("expected OutOfScope");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfScope);
  }
}
