#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expunge/tables.hpp"

namespace expunge {

/// Formal sum of torsion classes P + Pic^0[n], keyed by n. Characteristic 0: every class reduced.
struct TorsionDivisor {
  std::map<Int, Int> terms;  // no zero coefficients, keys >= 1

  bool zero() const { return terms.empty(); }
  Int degree_sum() const;
  void add(Int order, Int coefficient);
  std::string to_string() const;

  friend bool operator==(const TorsionDivisor&, const TorsionDivisor&) = default;
};

TorsionDivisor operator-(const TorsionDivisor& divisor);

struct SectionData {
  std::vector<Int> a;
  std::vector<Int> a_prime;
  Int c = 0;
  Int d = 0;

  /// Throws InvalidSectionData unless a_i + b_i = d - 1 with b_i >= 0, a_i - c not in {0, -1},
  /// both lists of the same length m >= 1 and equal sums.
  void validate() const;
};

/// (a + 1 - c, a - c): R = P iff Q - P is |a+1-c|-torsion, R = Q iff |a-c|-torsion.
std::pair<Int, Int> r_offset(Int a, Int c);

TorsionDivisor div_f(const SectionData& data);

/// {a1,a2} != {a1p,a2p} and a1 + a2 != 2c - 1.
bool is_nonconstant_m2(Int a1, Int a2, Int a1p, Int a2p, Int c);

/// m = 2 data (a_1^j, a_2^j) per section: all values distinct, no pair summing to 2c - 1,
/// exactly one value of each pair below c.
bool nondegen_hypotheses(std::span<const std::pair<Int, Int>> columns, Int c);

/// Section data of two m = 2 rows at column i of T'(delta): a-values of the row parts,
/// pivot c = a^i_{delta_i}, degree d.
SectionData section_data_for_rows(const TensorTable& table, Int column, const RowIndex& row, const RowIndex& other);

/// The (a_1^j, a_2^j) pairs of m = 2 rows at column i, in the given order.
std::vector<std::pair<Int, Int>> section_columns_for_rows(const TensorTable& table, Int column,
                                                          std::span<const RowIndex> rows);

/// a^i_{delta_i} of the vanishing table.
Int divisor_pivot(const TensorTable& table, Int column);

}  // namespace expunge
