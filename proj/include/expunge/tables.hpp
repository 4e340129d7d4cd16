#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "expunge/checked.hpp"

// Conventions: columns are 1-based (i = 1..g) everywhere in the public API,
// rows of a tensor table are 0-based positions in lexicographic RowIndex order.

namespace expunge {

struct CaseParams {
  Int g = 0;
  Int r = 0;
  Int d = 0;
  Int m = 2;

  /// Rejects g < 1, r < 1, d < 1, m < 2.
  static CaseParams make(Int g, Int r, Int d, Int m);

  Int rho() const;               // g - (r+1)(r+g-d)
  Int excess() const;            // r + g - d
  Int row_count() const;         // C(r+m, m)
  Int target_dimension() const;  // md + 1 - g
  Int expected_rank() const;     // min(row_count, target_dimension)
  bool injective() const { return row_count() <= target_dimension(); }
  bool surjective() const { return row_count() >= target_dimension(); }

  friend bool operator==(const CaseParams&, const CaseParams&) = default;
  friend auto operator<=>(const CaseParams&, const CaseParams&) = default;
};

std::string to_string(const CaseParams& p);

class GrdSequence {
 public:
  /// Throws OccurrenceDeficit or PrefixViolation on the first violated constraint.
  static GrdSequence validate(std::vector<Int> entries, Int g, Int r, Int d, Int shift = 0);

  const std::vector<Int>& entries() const { return entries_; }
  Int at(Int i) const { return entries_.at(static_cast<std::size_t>(i - 1)); }
  Int g() const { return static_cast<Int>(entries_.size()); }
  Int r() const { return r_; }
  Int d() const { return d_; }
  Int shift() const { return shift_; }
  Int count(Int value) const;
  Int required_count() const { return shift_ + r_ + g() - d_; }

  friend bool operator==(const GrdSequence&, const GrdSequence&) = default;

 private:
  GrdSequence(std::vector<Int> entries, Int r, Int d, Int shift)
      : entries_(std::move(entries)), r_(r), d_(d), shift_(shift) {}

  std::vector<Int> entries_;
  Int r_ = 0;
  Int d_ = 0;
  Int shift_ = 0;
};

GrdSequence validate_sequence(std::vector<Int> entries, Int g, Int r, Int d, Int shift = 0);

/// count(0) <= count(r) + 1.
bool is_extendable(const GrdSequence& seq);

struct TwistVector {
  std::vector<Int> entries;  // c_2, ..., c_g
  Int total_degree = 0;

  Int c(Int i) const { return entries.at(static_cast<std::size_t>(i - 2)); }
  Int genus() const { return static_cast<Int>(entries.size()) + 1; }

  friend bool operator==(const TwistVector&, const TwistVector&) = default;
};

class RowIndex {
 public:
  RowIndex() = default;
  explicit RowIndex(std::vector<Int> parts);
  RowIndex(std::initializer_list<Int> parts) : RowIndex(std::vector<Int>(parts)) {}

  const std::vector<Int>& parts() const { return parts_; }
  Int size() const { return static_cast<Int>(parts_.size()); }
  Int multiplicity(Int value) const;
  RowIndex shifted(Int by) const;
  std::string to_string() const;
  /// Accepts "(0,1)", "0,1" or "0 1".
  static RowIndex parse(std::string_view text);

  friend bool operator==(const RowIndex&, const RowIndex&) = default;
  friend auto operator<=>(const RowIndex&, const RowIndex&) = default;

 private:
  std::vector<Int> parts_;
};

/// All size-m multisets of [0, r] in lexicographic order.
std::vector<RowIndex> all_row_indices(Int r, Int m);

/// Orders rows by entry sum, then lexicographically (the layout used in printed tables).
std::vector<std::size_t> degree_row_order(const std::vector<RowIndex>& rows);

class VanishingTable {
 public:
  explicit VanishingTable(GrdSequence seq);

  const GrdSequence& sequence() const { return seq_; }
  Int g() const { return seq_.g(); }
  Int r() const { return seq_.r(); }
  Int d() const { return seq_.d(); }
  Int a(Int j, Int i) const { return a_[index(j, i)]; }
  Int b(Int j, Int i) const { return b_[index(j, i)]; }

 private:
  std::size_t index(Int j, Int i) const {
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(r() + 1) + static_cast<std::size_t>(j);
  }

  GrdSequence seq_;
  std::vector<Int> a_;
  std::vector<Int> b_;
};

VanishingTable build_vanishing_table(const GrdSequence& seq);

class TensorTable {
 public:
  TensorTable(VanishingTable base, Int m);

  const VanishingTable& vanishing() const { return base_; }
  const GrdSequence& sequence() const { return base_.sequence(); }
  Int m() const { return m_; }
  Int g() const { return base_.g(); }
  Int r() const { return base_.r(); }
  Int d() const { return base_.d(); }
  Int md() const { return mul(m_, base_.d()); }
  CaseParams params() const { return CaseParams{g(), r(), d(), m_}; }

  std::size_t rows() const { return rows_.size(); }
  const RowIndex& row(std::size_t k) const { return rows_.at(k); }
  const std::vector<RowIndex>& row_indices() const { return rows_; }
  std::optional<std::size_t> find(const RowIndex& row) const;
  /// Throws InvalidArgument when the row is not a valid index of this table.
  std::size_t index_of(const RowIndex& row) const;
  std::size_t diagonal(Int value) const;
  Int multiplicity(std::size_t row, Int value) const { return rows_[row].multiplicity(value); }

  Int a(std::size_t row, Int i) const { return a_[offset(row, i)]; }
  Int b(std::size_t row, Int i) const { return b_[offset(row, i)]; }
  /// Column i over all rows, contiguous.
  std::span<const Int> a_column(Int i) const;
  std::span<const Int> b_column(Int i) const;
  /// Column-major storage of every a-value; column i starts at (i-1)*rows().
  std::span<const Int> a_data() const { return a_; }

 private:
  std::size_t offset(std::size_t row, Int i) const { return static_cast<std::size_t>(i - 1) * rows_.size() + row; }

  VanishingTable base_;
  Int m_;
  std::vector<RowIndex> rows_;
  std::vector<Int> a_;
  std::vector<Int> b_;
};

TensorTable build_tensor_table(const VanishingTable& vtable, Int m);

class ErasureMask {
 public:
  ErasureMask() = default;
  ErasureMask(std::size_t rows, Int g, std::vector<std::uint8_t> bits);

  bool present(std::size_t row, Int i) const { return bits_[static_cast<std::size_t>(i - 1) * rows_ + row] != 0; }
  std::span<const std::uint8_t> column(Int i) const;
  std::size_t rows() const { return rows_; }
  Int g() const { return g_; }

  friend bool operator==(const ErasureMask&, const ErasureMask&) = default;

 private:
  std::size_t rows_ = 0;
  Int g_ = 0;
  std::vector<std::uint8_t> bits_;
};

std::vector<bool> epsilon(std::span<const Int> w_prime, std::span<const Int> w);
/// Throws PreconditionViolated unless the signs of c'_i - c_i are weakly decreasing.
std::vector<bool> epsilon_fast(std::span<const Int> w_prime, std::span<const Int> w);
bool is_steady_pair(std::span<const Int> w_prime, std::span<const Int> w);

/// (a^2_J, ..., a^g_J) for the given row.
std::vector<Int> row_twist(const TensorTable& table, std::size_t row);

bool is_steady_table(const TensorTable& table, const TwistVector& w);
bool is_unimaginative(std::span<const Int> w, Int m);
ErasureMask erase(const TensorTable& table, const TwistVector& w);

/// (c_2, c_3 - c_2, ..., d' - c_g).
std::vector<Int> multidegree(std::span<const Int> w, Int d_prime);

/// Returns seq with shift a at degree d_prime_new and w + m*a. Throws ShiftOutOfRange.
std::pair<GrdSequence, TwistVector> shift_pair(const GrdSequence& seq, const TwistVector& w, Int m, Int a,
                                               Int d_prime_new);

/// C(r+2,2) - (2d+1-g); checks the identity with C(r,2) - rho - (g+r-d)(r-1).
Int m2_rank_gap(Int g, Int r, Int d);

}  // namespace expunge
