#include <cstdlib>
#include <iostream>
#include <string_view>

#include "kernels_internal.hpp"
#include "timqd/kernels.hpp"

namespace timqd::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(TIMQD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& resolve() {
  const KernelTable* avx2 = avx2_table();
  const char* env = std::getenv("TIMQD_KERNELS");
  const std::string_view choice = env ? env : "auto";
  if (choice == "scalar") return scalar_table();
  if (choice == "avx2") {
    if (avx2) return *avx2;
    std::cerr << "timqd: TIMQD_KERNELS=avx2 requested but unavailable; using scalar kernels\n";
    return scalar_table();
  }
  if (choice != "auto") {
    std::cerr << "timqd: unknown TIMQD_KERNELS value '" << choice << "'; using auto\n";
  }
  return avx2 ? *avx2 : scalar_table();
}

}  // namespace

const KernelTable* avx2_table() {
#if defined(TIMQD_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = resolve();
  return table;
}

}  // namespace timqd::kernels
