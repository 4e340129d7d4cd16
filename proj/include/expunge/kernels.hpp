#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "expunge/checked.hpp"

// Data-parallel inner loops with a scalar reference and an AVX2 variant.
// The variant is picked once per process; EXPUNGE_ISA=scalar forces the reference.

namespace expunge::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();

/// a_cols is column-major, g columns of `rows` values; c[i-1] holds c_i (c[0] is ignored).
/// out receives the mask in the same layout. Callers guarantee the suffix sums fit in 64 bits.
void erasure_mask(const Int* a_cols, std::size_t rows, std::size_t g, const Int* c, std::uint8_t* out,
                  Isa isa = active_isa());

struct MinInfo {
  Int value = 0;
  std::size_t count = 0;  // active lanes attaining the minimum; 0 when no lane is active
  std::size_t first = 0;  // first such lane
};

MinInfo masked_min(const Int* values, const std::uint8_t* active, std::size_t n, Isa isa = active_isa());

namespace scalar {
void erasure_mask(const Int* a_cols, std::size_t rows, std::size_t g, const Int* c, std::uint8_t* out);
MinInfo masked_min(const Int* values, const std::uint8_t* active, std::size_t n);
}  // namespace scalar

#if defined(EXPUNGE_HAVE_AVX2)
namespace avx2 {
void erasure_mask(const Int* a_cols, std::size_t rows, std::size_t g, const Int* c, std::uint8_t* out);
MinInfo masked_min(const Int* values, const std::uint8_t* active, std::size_t n);
}  // namespace avx2
#endif

}  // namespace expunge::kernels
