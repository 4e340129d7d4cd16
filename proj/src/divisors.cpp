#include "expunge/divisors.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

namespace expunge {

Int TorsionDivisor::degree_sum() const {
  Int total = 0;
  for (const auto& [order, coefficient] : terms) total = expunge::add(total, coefficient);
  return total;
}

void TorsionDivisor::add(Int order, Int coefficient) {
  if (order < 1) throw Error(ErrorCode::InvalidSectionData, "torsion order must be positive");
  const Int value = expunge::add(terms[order], coefficient);
  if (value == 0)
    terms.erase(order);
  else
    terms[order] = value;
}

std::string TorsionDivisor::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const Int coefficient = it->second;
    if (!first || coefficient < 0) out << (coefficient < 0 ? (first ? "-" : " - ") : " + ");
    const Int magnitude = coefficient < 0 ? -coefficient : coefficient;
    if (magnitude != 1) out << magnitude << "*";
    out << "[" << it->first << "]";
    first = false;
  }
  return out.str();
}

TorsionDivisor operator-(const TorsionDivisor& divisor) {
  TorsionDivisor out;
  for (const auto& [order, coefficient] : divisor.terms) out.terms[order] = -coefficient;
  return out;
}

void SectionData::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidSectionData, why); };
  if (a.empty() || a.size() != a_prime.size()) fail("a and a' must be nonempty lists of equal length");
  auto check = [&](Int value) {
    if (value < 0 || value > d - 1) fail("vanishing order " + std::to_string(value) + " outside [0, d-1]");
    if (value - c == 0 || value - c == -1) fail("a - c is 0 or -1 for a = " + std::to_string(value));
  };
  for (Int v : a) check(v);
  for (Int v : a_prime) check(v);
  if (std::accumulate(a.begin(), a.end(), Int{0}) != std::accumulate(a_prime.begin(), a_prime.end(), Int{0}))
    fail("sum of a differs from sum of a'");
}

std::pair<Int, Int> r_offset(Int a, Int c) {
  if (a - c == 0 || a - c == -1) throw Error(ErrorCode::InvalidSectionData, "a - c must not be 0 or -1");
  return {add(sub(a, c), 1), sub(a, c)};
}

TorsionDivisor div_f(const SectionData& data) {
  data.validate();
  TorsionDivisor out;
  auto order = [&](Int v) { return std::abs(sub(v, data.c)); };
  for (std::size_t i = 0; i < data.a.size(); ++i) {
    const Int a = data.a[i], ap = data.a_prime[i];
    out.add(order(a), 1);
    out.add(order(ap), -1);
    out.add(order(a + 1), -1);
    out.add(order(ap + 1), 1);
  }
  return out;
}

bool is_nonconstant_m2(Int a1, Int a2, Int a1p, Int a2p, Int c) {
  const bool same = std::minmax(a1, a2) == std::minmax(a1p, a2p);
  return !same && add(a1, a2) != sub(mul(2, c), 1);
}

bool nondegen_hypotheses(std::span<const std::pair<Int, Int>> columns, Int c) {
  std::set<Int> seen;
  for (const auto& [a1, a2] : columns) {
    if (!seen.insert(a1).second || !seen.insert(a2).second) return false;
    if (add(a1, a2) == sub(mul(2, c), 1)) return false;
    if ((a1 < c) == (a2 < c)) return false;
  }
  return true;
}

Int divisor_pivot(const TensorTable& table, Int column) {
  return table.vanishing().a(table.sequence().at(column), column);
}

namespace {

std::vector<Int> part_orders(const TensorTable& table, Int column, const RowIndex& row) {
  std::vector<Int> out;
  for (Int j : row.parts()) out.push_back(table.vanishing().a(j, column));
  return out;
}

}  // namespace

SectionData section_data_for_rows(const TensorTable& table, Int column, const RowIndex& row, const RowIndex& other) {
  if (column < 1 || column > table.g()) throw Error(ErrorCode::InvalidArgument, "column out of range");
  table.index_of(row);
  table.index_of(other);
  return SectionData{part_orders(table, column, row), part_orders(table, column, other), divisor_pivot(table, column),
                     table.d()};
}

std::vector<std::pair<Int, Int>> section_columns_for_rows(const TensorTable& table, Int column,
                                                          std::span<const RowIndex> rows) {
  if (table.m() != 2) throw Error(ErrorCode::MNotTwo, "section pairs need m = 2");
  std::vector<std::pair<Int, Int>> out;
  for (const auto& row : rows) {
    table.index_of(row);
    const auto orders = part_orders(table, column, row);
    out.emplace_back(orders[0], orders[1]);
  }
  return out;
}

}  // namespace expunge
