#include <doctest.h>

#include "expunge/divisors.hpp"

using namespace expunge;

TEST_CASE("torsion offsets") {
  CHECK(r_offset(0, 2) == std::pair<Int, Int>{-1, -2});
  CHECK(r_offset(6, 5) == std::pair<Int, Int>{2, 1});
  CHECK_THROWS_AS(r_offset(4, 4), Error);
  CHECK_THROWS_AS(r_offset(3, 4), Error);
}

TEST_CASE("divisor of the ratio") {
  const auto div = div_f(SectionData{{0, 6}, {1, 5}, 3, 8});
  TorsionDivisor expected;
  expected.add(3, 3);
  expected.add(1, 1);
  expected.add(2, -3);
  expected.add(4, -1);
  CHECK(div == expected);
  CHECK(div.degree_sum() == 0);
  CHECK(div.to_string() == "-[4] + 3*[3] - 3*[2] + [1]");
  CHECK(-div == div_f(SectionData{{1, 5}, {0, 6}, 3, 8}));

  CHECK(div_f(SectionData{{0, 6}, {6, 0}, 3, 8}).zero());
  CHECK(div_f(SectionData{{0, 5}, {1, 4}, 3, 8}).zero());
  CHECK(div_f(SectionData{{0, 5}, {1, 4}, 3, 8}).to_string() == "0");
}

TEST_CASE("section data validation") {
  CHECK_THROWS_AS(div_f(SectionData{{0, 6}, {1, 4}, 3, 8}), Error);     // sums differ
  CHECK_THROWS_AS(div_f(SectionData{{3, 3}, {1, 5}, 3, 8}), Error);     // a = c
  CHECK_THROWS_AS(div_f(SectionData{{2, 4}, {1, 5}, 3, 8}), Error);     // a = c - 1
  CHECK_THROWS_AS(div_f(SectionData{{0, 9}, {1, 8}, 3, 8}), Error);     // a > d - 1
  CHECK_THROWS_AS(div_f(SectionData{{0, 6}, {6}, 3, 8}), Error);        // lengths
  CHECK_THROWS_AS(div_f(SectionData{{}, {}, 3, 8}), Error);
  try {
    SectionData{{3, 3}, {1, 5}, 3, 8}.validate();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSectionData);
  }
  TorsionDivisor t;
  CHECK_THROWS_AS(t.add(0, 1), Error);
}

TEST_CASE("nonconstancy for m = 2") {
  CHECK(is_nonconstant_m2(0, 6, 1, 5, 3));
  CHECK_FALSE(is_nonconstant_m2(0, 6, 6, 0, 3));
  CHECK_FALSE(is_nonconstant_m2(0, 5, 1, 4, 3));
}

TEST_CASE("nondegeneracy hypotheses") {
  const auto t = build_tensor_table(
      build_vanishing_table(validate_sequence({0, 0, 1, 1, 2, 2, 3, 3, 4, 4}, 10, 4, 12)), 2);
  const std::vector<RowIndex> rows{{0, 4}, {1, 3}};
  const auto cols = section_columns_for_rows(t, 5, rows);
  CHECK(cols == std::vector<std::pair<Int, Int>>{{2, 8}, {3, 7}});
  CHECK(divisor_pivot(t, 5) == 6);
  CHECK(nondegen_hypotheses(cols, divisor_pivot(t, 5)));

  using P = std::vector<std::pair<Int, Int>>;
  CHECK_FALSE(nondegen_hypotheses(P{{1, 2}, {0, 8}}, 6));  // both below
  CHECK_FALSE(nondegen_hypotheses(P{{2, 8}, {2, 9}}, 6));  // repeated value
  CHECK_FALSE(nondegen_hypotheses(P{{2, 9}, {3, 7}}, 6));  // 2 + 9 = 2c - 1

  const auto data = section_data_for_rows(t, 5, {0, 4}, {1, 3});
  CHECK(data.a == std::vector<Int>{2, 8});
  CHECK(data.a_prime == std::vector<Int>{3, 7});
  CHECK(data.c == 6);
  CHECK(is_nonconstant_m2(2, 8, 3, 7, 6) == !div_f(data).zero());
}
