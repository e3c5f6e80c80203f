// Scalar reference kernels vs the AVX2 variants, plus a direct check of the
// conditional-entropy kernel against explicit projection.

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

#include <Eigen/Eigenvalues>

#include "catch_amalgamated.hpp"

#include "timqd/density_matrix.hpp"
#include "timqd/kernels.hpp"

using namespace timqd;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Directions {
  std::vector<double> x, y, z;
};

Directions random_directions(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  Directions d;
  for (std::size_t i = 0; i < n; ++i) {
    double v[3] = {g(rng), g(rng), g(rng)};
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    d.x.push_back(v[0] / norm);
    d.y.push_back(v[1] / norm);
    d.z.push_back(v[2] / norm);
  }
  // Poles and equator, where one outcome can carry zero weight.
  for (double z : {1.0, -1.0, 0.0}) {
    d.x.push_back(z == 0.0 ? 1.0 : 0.0);
    d.y.push_back(0.0);
    d.z.push_back(z);
  }
  return d;
}

XState random_xstate(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x = u(rng), y = u(rng);
  if (x > y) std::swap(x, y);
  XState s{x, 0.5 * (y - x), 1.0 - y, 0.0, 0.0};
  s.z = s.b * (2 * u(rng) - 1);
  s.f = std::sqrt(s.a * s.d) * (2 * u(rng) - 1);
  return s;
}

double entropy_bits(const Eigen::Matrix2cd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho, Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-300) h -= p * std::log2(p);
  }
  return h;
}

// S(A | B measured along n) from explicit projectors on the 4x4 matrix.
double conditional_entropy_direct(const DensityMatrix4& rho, double nx, double ny, double nz) {
  const Complex I(0.0, 1.0);
  Matrix2c n_sigma;
  n_sigma << nz, nx - I * ny, nx + I * ny, -nz;  // computational basis {|0>, |1>}
  double total = 0.0;
  for (double sign : {1.0, -1.0}) {
    const Matrix2c proj = 0.5 * (Matrix2c::Identity() + sign * n_sigma);
    Matrix4c m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        m(i, j) = (qubit_a_level(i) == qubit_a_level(j) ? 1.0 : 0.0) *
                  proj(qubit_b_level(i), qubit_b_level(j));
    const Matrix4c post = m * rho.matrix() * m;
    Matrix2c rho_a = Matrix2c::Zero();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (qubit_b_level(i) == qubit_b_level(j)) rho_a(qubit_a_level(i), qubit_a_level(j)) += post(i, j);
    const double p = rho_a.trace().real();
    if (p > 1e-300) total += p * entropy_bits(rho_a / p);
  }
  return total;
}

}  // namespace

TEST_CASE("dispatch honours TIMQD_KERNELS") {
  const char* env = std::getenv("TIMQD_KERNELS");
  const std::string_view choice = env ? env : "auto";
  const auto& active = kernels::active();
  if (choice == "scalar") {
    CHECK(active.name == "scalar");
  } else if (kernels::avx2_table() != nullptr) {
    CHECK(active.name == "avx2");
  } else {
    CHECK(active.name == "scalar");
  }
}

TEST_CASE("scalar conditional entropy matches explicit projection") {
  std::mt19937_64 rng(11);
  const auto& k = kernels::scalar_table();
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix4 rho = DensityMatrix4::from_xstate(random_xstate(rng));
    const auto bloch = bloch_coefficients(rho);
    const Directions d = random_directions(rng, 20);
    std::vector<double> out(d.x.size());
    k.conditional_entropy(bloch, d.x, d.y, d.z, out);
    for (std::size_t i = 0; i < out.size(); ++i)
      CHECK_THAT(out[i], WithinAbs(conditional_entropy_direct(rho, d.x[i], d.y[i], d.z[i]), 1e-12));
  }
}

TEST_CASE("AVX2 log2 agrees with std::log2") {
  const auto* avx2 = kernels::avx2_table();
  if (!avx2) SKIP("AVX2 kernels unavailable");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> expo(-1000.0, 1000.0);
  std::uniform_real_distribution<double> mant(1.0, 2.0);
  std::vector<double> x;
  for (int i = 0; i < 4001; ++i) x.push_back(mant(rng) * std::exp2(std::floor(expo(rng))));
  for (double v : {1.0, 2.0, 0.5, std::sqrt(2.0), std::sqrt(0.5), 1.0 + 1e-15, 1.0 - 1e-16,
                   0x1p-1022, 0x1.fffffffffffffp+1023, 3.0, 0.75})
    x.push_back(v);
  std::vector<double> got(x.size());
  avx2->log2(x, got);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double want = std::log2(x[i]);
    CHECK_THAT(got[i], WithinAbs(want, 4e-16 * std::max(1.0, std::abs(want))));
  }
}

TEST_CASE("AVX2 G moments match the scalar kernel") {
  const auto* avx2 = kernels::avx2_table();
  if (!avx2) SKIP("AVX2 kernels unavailable");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
  for (double lambda : {0.0, 0.3, 0.9, 1.0}) {
    for (std::size_t n : {1u, 3u, 4u, 17u, 1000u}) {
      for (int kmax : {0, 1, 5}) {
        std::vector<double> c, s;
        for (std::size_t i = 0; i < n; ++i) {
          const double phi = i == 0 ? std::numbers::pi : u(rng);  // include the gapless node
          c.push_back(std::cos(phi));
          s.push_back(std::sin(phi));
        }
        const std::size_t m = 2 * static_cast<std::size_t>(kmax + 1);
        std::vector<double> ref(m, 0.25), got(m, 0.25);
        kernels::scalar_table().g_moments(lambda, kmax, c, s, ref);
        avx2->g_moments(lambda, kmax, c, s, got);
        for (std::size_t j = 0; j < m; ++j)
          CHECK_THAT(got[j], WithinAbs(ref[j], 1e-13 * std::max<double>(1.0, static_cast<double>(n))));
      }
    }
  }
}

TEST_CASE("AVX2 conditional entropy matches the scalar kernel") {
  const auto* avx2 = kernels::avx2_table();
  if (!avx2) SKIP("AVX2 kernels unavailable");
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto bloch = bloch_coefficients(DensityMatrix4::from_xstate(random_xstate(rng)));
    const Directions d = random_directions(rng, 37);
    std::vector<double> ref(d.x.size()), got(d.x.size());
    kernels::scalar_table().conditional_entropy(bloch, d.x, d.y, d.z, ref);
    avx2->conditional_entropy(bloch, d.x, d.y, d.z, got);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK_THAT(got[i], WithinAbs(ref[i], 1e-13));
  }
  // Pure product state |00>: conditional entropy is exactly 0 in every direction.
  const auto pure = bloch_coefficients(DensityMatrix4::from_xstate(XState{0, 0, 1, 0, 0}));
  const Directions d = random_directions(rng, 8);
  std::vector<double> got(d.x.size());
  avx2->conditional_entropy(pure, d.x, d.y, d.z, got);
  for (double v : got) CHECK_THAT(v, WithinAbs(0.0, 1e-14));
}
