#include "expunge/tables.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "expunge/kernels.hpp"

namespace expunge {

namespace {

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorCode::InvalidArgument, message); }

}  // namespace

CaseParams CaseParams::make(Int g, Int r, Int d, Int m) {
  if (g < 1) invalid("g must be positive");
  if (r < 1) invalid("r must be positive");
  if (d < 1) invalid("d must be positive");
  if (m < 2) invalid("m must be at least 2");
  return CaseParams{g, r, d, m};
}

Int CaseParams::rho() const { return sub(g, mul(add(r, 1), excess())); }
Int CaseParams::excess() const { return sub(add(r, g), d); }
Int CaseParams::row_count() const { return binomial(add(r, m), m); }
Int CaseParams::target_dimension() const { return sub(add(mul(m, d), 1), g); }
Int CaseParams::expected_rank() const { return std::min(row_count(), target_dimension()); }

std::string to_string(const CaseParams& p) {
  std::ostringstream out;
  out << "(g,r,d,m)=(" << p.g << "," << p.r << "," << p.d << "," << p.m << ")";
  return out.str();
}

// ---------------------------------------------------------------------------

GrdSequence GrdSequence::validate(std::vector<Int> entries, Int g, Int r, Int d, Int shift) {
  if (g < 1 || static_cast<Int>(entries.size()) != g) invalid("sequence length must equal g");
  if (r < 1) invalid("r must be positive");
  if (shift < 0) invalid("shift must be nonnegative");
  for (Int v : entries)
    if (v < 0 || v > r) invalid("sequence entry " + std::to_string(v) + " outside [0," + std::to_string(r) + "]");

  const Int required = add(shift, sub(add(r, g), d));
  std::vector<Int> counts(static_cast<std::size_t>(r + 1), 0);
  for (Int v : entries) ++counts[static_cast<std::size_t>(v)];
  for (Int v = 0; v <= r; ++v)
    if (counts[static_cast<std::size_t>(v)] < required)
      throw OccurrenceDeficit(v, counts[static_cast<std::size_t>(v)], required);

  std::fill(counts.begin(), counts.end(), 0);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Int v = entries[i];
    ++counts[static_cast<std::size_t>(v)];
    for (Int u = 0; u < v; ++u)
      if (counts[static_cast<std::size_t>(u)] < counts[static_cast<std::size_t>(v)])
        throw PrefixViolation(static_cast<Int>(i) + 1, u);
  }
  return GrdSequence(std::move(entries), r, d, shift);
}

Int GrdSequence::count(Int value) const { return std::count(entries_.begin(), entries_.end(), value); }

GrdSequence validate_sequence(std::vector<Int> entries, Int g, Int r, Int d, Int shift) {
  return GrdSequence::validate(std::move(entries), g, r, d, shift);
}

bool is_extendable(const GrdSequence& seq) { return seq.count(0) <= seq.count(seq.r()) + 1; }

// ---------------------------------------------------------------------------

RowIndex::RowIndex(std::vector<Int> parts) : parts_(std::move(parts)) { std::sort(parts_.begin(), parts_.end()); }

Int RowIndex::multiplicity(Int value) const { return std::count(parts_.begin(), parts_.end(), value); }

RowIndex RowIndex::shifted(Int by) const {
  std::vector<Int> out = parts_;
  for (Int& v : out) v = add(v, by);
  return RowIndex(std::move(out));
}

std::string RowIndex::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(parts_[k]);
  }
  return out + ")";
}

RowIndex RowIndex::parse(std::string_view text) {
  std::vector<Int> parts;
  std::size_t k = 0;
  auto fail = [&] { throw Error(ErrorCode::ParseError, "cannot parse row index '" + std::string(text) + "'"); };
  while (k < text.size()) {
    const char ch = text[k];
    if (ch == '(' || ch == ')' || ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      ++k;
      continue;
    }
    Int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + k, text.data() + text.size(), value);
    if (ec != std::errc()) fail();
    parts.push_back(value);
    k = static_cast<std::size_t>(ptr - text.data());
  }
  if (parts.empty()) fail();
  return RowIndex(std::move(parts));
}

std::vector<RowIndex> all_row_indices(Int r, Int m) {
  std::vector<RowIndex> out;
  std::vector<Int> cur(static_cast<std::size_t>(m), 0);
  auto rec = [&](auto&& self, std::size_t pos, Int lo) -> void {
    if (pos == cur.size()) {
      out.emplace_back(cur);
      return;
    }
    for (Int v = lo; v <= r; ++v) {
      cur[pos] = v;
      self(self, pos + 1, v);
    }
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<std::size_t> degree_row_order(const std::vector<RowIndex>& rows) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  auto sum = [&](std::size_t k) {
    const auto& p = rows[k].parts();
    return std::accumulate(p.begin(), p.end(), Int{0});
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const Int sx = sum(x), sy = sum(y);
    if (sx != sy) return sx < sy;
    return rows[x] < rows[y];
  });
  return order;
}

// ---------------------------------------------------------------------------

VanishingTable::VanishingTable(GrdSequence seq) : seq_(std::move(seq)) {
  const Int g = seq_.g(), r = seq_.r(), d = seq_.d();
  const std::size_t cells = static_cast<std::size_t>(g) * static_cast<std::size_t>(r + 1);
  a_.assign(cells, 0);
  b_.assign(cells, 0);
  for (Int j = 0; j <= r; ++j) a_[index(j, 1)] = add(seq_.shift(), j);
  for (Int i = 1; i <= g; ++i) {
    for (Int j = 0; j <= r; ++j) {
      const Int a = a_[index(j, i)];
      b_[index(j, i)] = j == seq_.at(i) ? sub(d, a) : sub(sub(d, 1), a);
      if (i < g) a_[index(j, i + 1)] = sub(d, b_[index(j, i)]);
    }
    for (Int j = 1; j <= r; ++j)
      if (a_[index(j - 1, i)] >= a_[index(j, i)])
        throw Error(ErrorCode::PreconditionViolated, "vanishing table column is not strictly increasing");
    if (seq_.shift() == 0)
      for (Int j = 0; j <= r; ++j)
        if (a_[index(j, i)] < 0 || a_[index(j, i)] > d)
          throw Error(ErrorCode::PreconditionViolated, "vanishing order outside [0,d]");
  }
}

VanishingTable build_vanishing_table(const GrdSequence& seq) { return VanishingTable(seq); }

TensorTable::TensorTable(VanishingTable base, Int m) : base_(std::move(base)), m_(m) {
  if (m < 1) invalid("m must be positive");
  rows_ = all_row_indices(base_.r(), m);
  const Int g = base_.g();
  a_.assign(rows_.size() * static_cast<std::size_t>(g), 0);
  b_.assign(a_.size(), 0);
  for (Int i = 1; i <= g; ++i) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Int sa = 0, sb = 0;
      for (Int j : rows_[k].parts()) {
        sa = add(sa, base_.a(j, i));
        sb = add(sb, base_.b(j, i));
      }
      a_[offset(k, i)] = sa;
      b_[offset(k, i)] = sb;
    }
  }
}

TensorTable build_tensor_table(const VanishingTable& vtable, Int m) { return TensorTable(vtable, m); }

std::optional<std::size_t> TensorTable::find(const RowIndex& row) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), row);
  if (it == rows_.end() || *it != row) return std::nullopt;
  return static_cast<std::size_t>(it - rows_.begin());
}

std::size_t TensorTable::index_of(const RowIndex& row) const {
  auto k = find(row);
  if (!k) invalid("row " + row.to_string() + " is not a row of the table");
  return *k;
}

std::size_t TensorTable::diagonal(Int value) const {
  return index_of(RowIndex(std::vector<Int>(static_cast<std::size_t>(m_), value)));
}

std::span<const Int> TensorTable::a_column(Int i) const {
  return std::span<const Int>(a_).subspan(offset(0, i), rows_.size());
}

std::span<const Int> TensorTable::b_column(Int i) const {
  return std::span<const Int>(b_).subspan(offset(0, i), rows_.size());
}

ErasureMask::ErasureMask(std::size_t rows, Int g, std::vector<std::uint8_t> bits)
    : rows_(rows), g_(g), bits_(std::move(bits)) {
  if (bits_.size() != rows_ * static_cast<std::size_t>(g_)) invalid("mask size mismatch");
}

std::span<const std::uint8_t> ErasureMask::column(Int i) const {
  return std::span<const std::uint8_t>(bits_).subspan(static_cast<std::size_t>(i - 1) * rows_, rows_);
}

// ---------------------------------------------------------------------------

namespace {

void require_same_length(std::span<const Int> x, std::span<const Int> y) {
  if (x.size() != y.size()) invalid("twist vectors have different lengths");
}

}  // namespace

std::vector<bool> epsilon(std::span<const Int> w_prime, std::span<const Int> w) {
  require_same_length(w_prime, w);
  const std::size_t g = w.size() + 1;
  std::vector<Int> suffix(g, 0);
  for (std::size_t i = g - 1; i-- > 0;) suffix[i] = add(suffix[i + 1], sub(w_prime[i], w[i]));
  const Int lowest = *std::min_element(suffix.begin(), suffix.end());
  std::vector<bool> out(g);
  for (std::size_t i = 0; i < g; ++i) out[i] = suffix[i] == lowest;
  return out;
}

std::vector<bool> epsilon_fast(std::span<const Int> w_prime, std::span<const Int> w) {
  require_same_length(w_prime, w);
  const std::size_t g = w.size() + 1;
  std::vector<Int> diff(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) diff[k] = sub(w_prime[k], w[k]);
  auto sign = [](Int v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  for (std::size_t k = 1; k < diff.size(); ++k)
    if (sign(diff[k]) > sign(diff[k - 1]))
      throw Error(ErrorCode::PreconditionViolated, "signs of c'_i - c_i are not weakly decreasing");
  // diff[k] is c'_{k+2} - c_{k+2}; bit i (1-based) reads D_i and D_{i+1}.
  std::vector<bool> out(g);
  for (std::size_t i = 1; i <= g; ++i) {
    const bool left = i == 1 || diff[i - 2] >= 0;
    const bool right = i == g || diff[i - 1] <= 0;
    out[i - 1] = left && right;
  }
  return out;
}

bool is_steady_pair(std::span<const Int> w_prime, std::span<const Int> w) {
  require_same_length(w_prime, w);
  bool seen_negative = false;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const Int diff = sub(w_prime[k], w[k]);
    if (diff < 0) seen_negative = true;
    if (diff > 0 && seen_negative) return false;
  }
  return true;
}

std::vector<Int> row_twist(const TensorTable& table, std::size_t row) {
  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(table.g() - 1));
  for (Int i = 2; i <= table.g(); ++i) out.push_back(table.a(row, i));
  return out;
}

bool is_steady_table(const TensorTable& table, const TwistVector& w) {
  if (w.genus() != table.g()) invalid("twist vector length does not match the table");
  for (std::size_t k = 0; k < table.rows(); ++k)
    if (!is_steady_pair(row_twist(table, k), w.entries)) return false;
  return true;
}

bool is_unimaginative(std::span<const Int> w, Int m) {
  for (std::size_t k = 1; k < w.size(); ++k)
    if (sub(w[k], w[k - 1]) < m) return false;
  return true;
}

ErasureMask erase(const TensorTable& table, const TwistVector& w) {
  const Int g = table.g();
  if (w.genus() != g) invalid("twist vector length does not match the table");
  std::vector<Int> c(static_cast<std::size_t>(g), 0);
  for (Int i = 2; i <= g; ++i) c[static_cast<std::size_t>(i - 1)] = w.c(i);

  // The kernels run unchecked; bound every partial suffix sum up front.
  Int largest = 0;
  for (Int v : table.a_data()) largest = std::max(largest, v < 0 ? sub(0, v) : v);
  Int largest_c = 0;
  for (Int v : c) largest_c = std::max(largest_c, v < 0 ? sub(0, v) : v);
  (void)mul(g, add(largest, largest_c));

  std::vector<std::uint8_t> bits(table.rows() * static_cast<std::size_t>(g));
  kernels::erasure_mask(table.a_data().data(), table.rows(), static_cast<std::size_t>(g), c.data(), bits.data());
  return ErasureMask(table.rows(), g, std::move(bits));
}

std::vector<Int> multidegree(std::span<const Int> w, Int d_prime) {
  std::vector<Int> out;
  out.reserve(w.size() + 1);
  Int prev = 0;
  for (Int c : w) {
    out.push_back(sub(c, prev));
    prev = c;
  }
  out.push_back(sub(d_prime, prev));
  return out;
}

std::pair<GrdSequence, TwistVector> shift_pair(const GrdSequence& seq, const TwistVector& w, Int m, Int a,
                                               Int d_prime_new) {
  if (seq.shift() != 0) invalid("shift_pair expects an unshifted sequence");
  if (w.genus() != seq.g()) invalid("twist vector length does not match the sequence");
  if (a < 0 || a > sub(d_prime_new, seq.d()))
    throw Error(ErrorCode::ShiftOutOfRange, "shift " + std::to_string(a) + " outside [0, d'-d]");
  GrdSequence shifted = GrdSequence::validate(seq.entries(), seq.g(), seq.r(), d_prime_new, a);
  TwistVector out{w.entries, mul(m, d_prime_new)};
  for (Int& c : out.entries) c = add(c, mul(m, a));
  return {std::move(shifted), std::move(out)};
}

Int m2_rank_gap(Int g, Int r, Int d) {
  const CaseParams p{g, r, d, 2};
  const Int gap = sub(p.row_count(), p.target_dimension());
  const Int other = sub(sub(binomial(r, 2), p.rho()), mul(p.excess(), sub(r, 1)));
  if (gap != other) throw std::logic_error("rank gap identity failed");
  return gap;
}

}  // namespace expunge
