#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version;
// an AVX2+FMA version is built on x86-64 and picked at runtime when the CPU
// supports it. Set TIMQD_KERNELS=scalar|avx2|auto to override the choice.

#include <span>
#include <string_view>

namespace timqd::kernels {

// Two-qubit state in Pauli form:
//   rho = 1/4 (I + r.sigma (x) I + I (x) s.sigma + sum_ij t[i][j] sigma_i (x) sigma_j)
// with A the first qubit and B the second.
struct BlochCoefficients {
  double r[3] = {0, 0, 0};
  double s[3] = {0, 0, 0};
  double t[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
};

struct KernelTable {
  std::string_view name;

  // For every node phi_i given as (cos phi_i, sin phi_i), with
  //   A = (1 + lambda cos phi) / omega,  B = lambda sin phi / omega,
  //   omega = sqrt((lambda sin phi)^2 + (1 + lambda cos phi)^2),
  // adds sum_i cos(k phi_i) A_i into acc[2k] and sum_i sin(k phi_i) B_i into
  // acc[2k+1] for k = 0..kmax. acc.size() must be 2 (kmax + 1).
  void (*g_moments)(double lambda, int kmax, std::span<const double> cos_phi,
                    std::span<const double> sin_phi, std::span<double> acc);

  // Conditional entropy S(A | projective measurement of B along n) in bits,
  // one output per direction (nx[i], ny[i], nz[i]), |n| = 1.
  void (*conditional_entropy)(const BlochCoefficients& bloch, std::span<const double> nx,
                              std::span<const double> ny, std::span<const double> nz,
                              std::span<double> out);

  // out[i] = log2(x[i]) for finite x[i] > 0.
  void (*log2)(std::span<const double> x, std::span<double> out);
};

const KernelTable& scalar_table();

// nullptr when the AVX2 variants were not compiled in or the CPU lacks
// AVX2/FMA.
const KernelTable* avx2_table();

// Table used by the library, resolved once per process.
const KernelTable& active();

}  // namespace timqd::kernels
