#include <cstdlib>
#include <string>

#include "expunge/kernels.hpp"

namespace expunge::kernels {

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(EXPUNGE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  static const Isa chosen = [] {
    const char* forced = std::getenv("EXPUNGE_ISA");
    if (forced && std::string(forced) == "scalar") return Isa::Scalar;
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  }();
  return chosen;
}

void erasure_mask(const Int* a_cols, std::size_t rows, std::size_t g, const Int* c, std::uint8_t* out, Isa isa) {
#if defined(EXPUNGE_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) return avx2::erasure_mask(a_cols, rows, g, c, out);
#endif
  (void)isa;
  scalar::erasure_mask(a_cols, rows, g, c, out);
}

MinInfo masked_min(const Int* values, const std::uint8_t* active, std::size_t n, Isa isa) {
#if defined(EXPUNGE_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) return avx2::masked_min(values, active, n);
#endif
  (void)isa;
  return scalar::masked_min(values, active, n);
}

}  // namespace expunge::kernels
