#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expunge/rules.hpp"

namespace expunge {

/// One link of a reduction chain: `from` is handled by lifting a result for `to`.
struct ReductionLink {
  std::string kind;  // "degree-genus" (parameter s) or "basic" (parameter t)
  CaseParams from;
  CaseParams to;
  Int parameter = 0;
};

struct ConstructionResult {
  CaseParams params;
  GrdSequence seq;
  TwistVector w;
  Int target = 0;
  std::optional<Certificate> certificate;
  std::string provenance;
  std::vector<ReductionLink> chain;
};

// Worked examples with certificates transcribed from their walkthroughs.
ConstructionResult example_g4_r3_d6();
ConstructionResult example_g5_r3_d7();
ConstructionResult example_g10_r4_d12();

/// Critical m = 2 case: r even gives g = r(r+1)/2, d = r(r+2)/2; r odd gives g = (r+1)^2/2, d = r(r+3)/2.
CaseParams critical_m2_case(Int r);
ConstructionResult critical_m2(Int r);

struct BasicReduction {
  Int t = 0;
  CaseParams sub;
};

/// t = min(rho + r + g - d, r - 1) and (g - t, r - 1, d - t - 1).
BasicReduction basic_reduction_target(Int g, Int r, Int d);

/// Lifts a verified m = 2 result for the reduced case to (g, r, d). Throws ReductionMismatch.
ConstructionResult basic_reduction_lift(const ConstructionResult& sub, Int r, Int g, Int d);

/// Carries an injective certificate to (g_new, r, d_new): delta padded with zeros when
/// g_new - d_new <= g - d, otherwise continued cyclically (needs an extendable delta).
ConstructionResult injective_extend(const ConstructionResult& sub, Int g_new, Int d_new);

/// Full m = 2 driver for r >= 3, rho >= 0, r + g - d > 0. Throws OutOfScope.
ConstructionResult m2_certify(Int g, Int r, Int d);

/// Smallest genus the big-genus construction accepts: (r+1)((m+1)^{r-1} - r).
Int big_g_min_genus(Int r, Int m);
/// Sequence of the big-genus construction and the column i0 whose T' entries are a, a+1, a+m+1, ...
struct BigGLayout {
  std::vector<Int> delta;
  Int i0 = 0;
};
BigGLayout big_g_layout(Int r, Int m, Int g);
ConstructionResult big_g_inject(Int r, Int m, Int g, Int d);

enum class SurjCase { I, II };

/// Sequence, twist vector and i0 of the cubic surjectivity construction, before any sweep.
struct SurjLayout {
  CaseParams params;
  std::vector<Int> delta;
  TwistVector w;
  Int i0 = 1;
};
SurjLayout surj_m3_layout(Int g, Int r, Int d, SurjCase which);
ConstructionResult surj_m3(Int g, Int r, Int d, SurjCase which);

/// Stored m = 3 examples for r = 3, 4, 5 with their transcribed certificates. Throws UnsupportedRank.
ConstructionResult m3_catalog(Int r);

/// m = 3 driver: surjectivity construction when it applies, else the catalog plus injective_extend.
ConstructionResult m3_certify(Int g, Int r, Int d);

}  // namespace expunge
