// Scalar reference kernels. The AVX2 variants are tested against these.

#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"
#include "timqd/kernels.hpp"

namespace timqd::kernels {

namespace {

void g_moments_scalar(double lambda, int kmax, std::span<const double> cos_phi,
                      std::span<const double> sin_phi, std::span<double> acc) {
  const std::size_t n = cos_phi.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double c = cos_phi[i];
    const double s = sin_phi[i];
    const double re = 1.0 + lambda * c;
    const double im = lambda * s;
    const double omega = std::sqrt(im * im + re * re);
    double A;
    double B;
    if (omega > 0.0) {
      A = re / omega;
      B = im / omega;
    } else {
      // Only reachable at lambda = 1, phi = pi.
      A = 0.0;
      B = 1.0;
    }
    // cos(k phi), sin(k phi) by the Chebyshev recurrence.
    double c_prev = 1.0, c_cur = c;
    double s_prev = 0.0, s_cur = s;
    acc[0] += A;
    for (int k = 1; k <= kmax; ++k) {
      acc[2 * k] += c_cur * A;
      acc[2 * k + 1] += s_cur * B;
      const double c_next = 2.0 * c * c_cur - c_prev;
      const double s_next = 2.0 * c * s_cur - s_prev;
      c_prev = c_cur;
      c_cur = c_next;
      s_prev = s_cur;
      s_cur = s_next;
    }
  }
}

double binary_entropy(double x) {
  x = std::min(std::abs(x), 1.0);
  const double p = 0.5 * (1.0 + x);
  const double q = 0.5 * (1.0 - x);
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (q > 0.0) h -= q * std::log2(q);
  return h;
}

void conditional_entropy_scalar(const BlochCoefficients& bl, std::span<const double> nx,
                                std::span<const double> ny, std::span<const double> nz,
                                std::span<double> out) {
  const std::size_t n = nx.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double dir[3] = {nx[i], ny[i], nz[i]};
    const double sn = bl.s[0] * dir[0] + bl.s[1] * dir[1] + bl.s[2] * dir[2];
    double tn[3];
    for (int a = 0; a < 3; ++a)
      tn[a] = bl.t[a][0] * dir[0] + bl.t[a][1] * dir[1] + bl.t[a][2] * dir[2];

    double total = 0.0;
    for (double sign : {1.0, -1.0}) {
      const double weight = 1.0 + sign * sn;  // 2 * outcome probability
      if (weight <= kMinOutcomeWeight) continue;
      double norm2 = 0.0;
      for (int a = 0; a < 3; ++a) {
        const double v = bl.r[a] + sign * tn[a];
        norm2 += v * v;
      }
      total += 0.5 * weight * binary_entropy(std::sqrt(norm2) / weight);
    }
    out[i] = total;
  }
}

void log2_scalar(std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::log2(x[i]);
}

constexpr KernelTable kScalarTable{"scalar", &g_moments_scalar, &conditional_entropy_scalar,
                                   &log2_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalarTable; }

}  // namespace timqd::kernels
