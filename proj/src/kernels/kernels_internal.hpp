#pragma once

#include "timqd/kernels.hpp"

namespace timqd::kernels {

// Measurement outcomes with 2p below this carry no weight in the
// conditional entropy.
inline constexpr double kMinOutcomeWeight = 1e-300;

#if defined(TIMQD_HAVE_AVX2)
// Defined in kernels_avx2.cpp, which is the only TU compiled with -mavx2.
const KernelTable& avx2_table_unchecked();
#endif

}  // namespace timqd::kernels
