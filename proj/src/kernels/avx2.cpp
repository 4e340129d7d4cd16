#include <immintrin.h>

#include <algorithm>
#include <cstring>
#include <limits>
#include <vector>

#include "expunge/kernels.hpp"

// Compiled with -mavx2; only reached after a runtime CPU check.

namespace expunge::kernels::avx2 {

namespace {

inline __m256i min_epi64(__m256i x, __m256i y) { return _mm256_blendv_epi8(x, y, _mm256_cmpgt_epi64(x, y)); }

inline __m256i load(const Int* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(Int* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

// Widen four mask bytes to four all-ones/all-zeros 64-bit lanes.
inline __m256i lanes_active(const std::uint8_t* active) {
  std::int32_t word;
  std::memcpy(&word, active, sizeof(word));
  const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(word));
  return _mm256_xor_si256(_mm256_cmpeq_epi64(wide, _mm256_setzero_si256()), _mm256_set1_epi64x(-1));
}

}  // namespace

void erasure_mask(const Int* a_cols, std::size_t rows, std::size_t g, const Int* c, std::uint8_t* out) {
  if (rows == 0 || g == 0) return;
  std::vector<Int> suffix(rows * g);
  std::vector<Int> lowest(rows, 0);
  Int* last = suffix.data() + (g - 1) * rows;
  std::fill(last, last + rows, 0);
  const std::size_t vec_end = rows - rows % 4;
  for (std::size_t i = g - 1; i-- > 0;) {
    const Int* next = suffix.data() + (i + 1) * rows;
    const Int* a = a_cols + (i + 1) * rows;
    const Int ci = c[i + 1];
    const __m256i cv = _mm256_set1_epi64x(ci);
    Int* cur = suffix.data() + i * rows;
    std::size_t k = 0;
    for (; k < vec_end; k += 4) {
      const __m256i s = _mm256_add_epi64(load(next + k), _mm256_sub_epi64(load(a + k), cv));
      store(cur + k, s);
      store(lowest.data() + k, min_epi64(load(lowest.data() + k), s));
    }
    for (; k < rows; ++k) {
      cur[k] = next[k] + (a[k] - ci);
      lowest[k] = std::min(lowest[k], cur[k]);
    }
  }
  for (std::size_t i = 0; i < g; ++i) {
    const Int* cur = suffix.data() + i * rows;
    std::uint8_t* o = out + i * rows;
    std::size_t k = 0;
    for (; k < vec_end; k += 4) {
      const int bits = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(load(cur + k), load(lowest.data() + k))));
      for (int lane = 0; lane < 4; ++lane) o[k + lane] = (bits >> lane) & 1;
    }
    for (; k < rows; ++k) o[k] = cur[k] == lowest[k] ? 1 : 0;
  }
}

MinInfo masked_min(const Int* values, const std::uint8_t* active, std::size_t n) {
  const std::size_t vec_end = n - n % 4;
  const __m256i sentinel = _mm256_set1_epi64x(std::numeric_limits<Int>::max());
  __m256i best = sentinel;
  __m256i any = _mm256_setzero_si256();
  for (std::size_t k = 0; k < vec_end; k += 4) {
    const __m256i on = lanes_active(active + k);
    best = min_epi64(best, _mm256_blendv_epi8(sentinel, load(values + k), on));
    any = _mm256_or_si256(any, on);
  }
  alignas(32) Int lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), best);
  bool found = !_mm256_testz_si256(any, any);
  Int value = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  for (std::size_t k = vec_end; k < n; ++k) {
    if (!active[k]) continue;
    value = found ? std::min(value, values[k]) : values[k];
    found = true;
  }
  MinInfo info;
  if (!found) return info;
  info.value = value;
  const __m256i target = _mm256_set1_epi64x(value);
  std::size_t k = 0;
  for (; k < vec_end; k += 4) {
    const __m256i hit = _mm256_and_si256(_mm256_cmpeq_epi64(load(values + k), target), lanes_active(active + k));
    const int bits = _mm256_movemask_pd(_mm256_castsi256_pd(hit));
    if (bits && info.count == 0) info.first = k + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(bits)));
    info.count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(bits)));
  }
  for (; k < n; ++k) {
    if (!active[k] || values[k] != value) continue;
    if (info.count == 0) info.first = k;
    ++info.count;
  }
  return info;
}

}  // namespace expunge::kernels::avx2
