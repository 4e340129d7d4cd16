#include <algorithm>
#include <limits>
#include <vector>

#include "expunge/kernels.hpp"

namespace expunge::kernels::scalar {

void erasure_mask(const Int* a_cols, std::size_t rows, std::size_t g, const Int* c, std::uint8_t* out) {
  if (rows == 0 || g == 0) return;
  // Suffix sums S_i = sum_{j>i} (a^j - c_j), stored column-major like the input.
  std::vector<Int> suffix(rows * g);
  std::vector<Int> lowest(rows, 0);
  Int* last = suffix.data() + (g - 1) * rows;
  std::fill(last, last + rows, 0);
  for (std::size_t i = g - 1; i-- > 0;) {
    const Int* next = suffix.data() + (i + 1) * rows;
    const Int* a = a_cols + (i + 1) * rows;
    const Int ci = c[i + 1];
    Int* cur = suffix.data() + i * rows;
    for (std::size_t k = 0; k < rows; ++k) {
      cur[k] = next[k] + (a[k] - ci);
      lowest[k] = std::min(lowest[k], cur[k]);
    }
  }
  for (std::size_t i = 0; i < g; ++i) {
    const Int* cur = suffix.data() + i * rows;
    std::uint8_t* o = out + i * rows;
    for (std::size_t k = 0; k < rows; ++k) o[k] = cur[k] == lowest[k] ? 1 : 0;
  }
}

MinInfo masked_min(const Int* values, const std::uint8_t* active, std::size_t n) {
  MinInfo info;
  for (std::size_t k = 0; k < n; ++k) {
    if (!active[k]) continue;
    if (info.count == 0 || values[k] < info.value) {
      info.value = values[k];
      info.count = 1;
      info.first = k;
    } else if (values[k] == info.value) {
      ++info.count;
    }
  }
  return info;
}

}  // namespace expunge::kernels::scalar
