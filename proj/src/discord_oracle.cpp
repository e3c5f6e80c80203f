// Brute-force discord: maximize the classical correlation over projective
// measurements on B. Uses only the generic density matrix (Pauli
// coefficients and a numerical eigensolver) so that it stays independent of
// the closed-form branch formulas in correlations.cpp.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "timqd/correlations.hpp"
#include "timqd/kernels.hpp"

namespace timqd {

kernels::BlochCoefficients bloch_coefficients(const DensityMatrix4& rho) {
  // Paulis in the computational basis {|0>, |1>}.
  const Complex I(0.0, 1.0);
  const std::array<Matrix2c, 4> pauli = [&] {
    std::array<Matrix2c, 4> p;
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -I, I, 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();

  // Tr(rho (P_a (x) P_b)), with rho's rows labelled by computational levels.
  auto expectation = [&](int a, int b) {
    Complex acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const Complex op = pauli[static_cast<std::size_t>(a)](qubit_a_level(j), qubit_a_level(i)) *
                           pauli[static_cast<std::size_t>(b)](qubit_b_level(j), qubit_b_level(i));
        acc += rho(i, j) * op;
      }
    }
    return acc.real();
  };

  kernels::BlochCoefficients out;
  for (int k = 0; k < 3; ++k) {
    out.r[k] = expectation(k + 1, 0);
    out.s[k] = expectation(0, k + 1);
    for (int l = 0; l < 3; ++l) out.t[k][l] = expectation(k + 1, l + 1);
  }
  return out;
}

namespace correlations {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kZoomRounds = 40;
constexpr int kZoomPoints = 9;
constexpr std::size_t kZoomSeeds = 4;

double norm3(const double v[3]) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

double binary_entropy_of_length(double len) {
  len = std::min(len, 1.0);
  const std::array<double, 2> p{0.5 * (1.0 + len), 0.5 * (1.0 - len)};
  return shannon_entropy_bits(p);
}

class DirectionBatch {
 public:
  void clear() {
    theta_.clear();
    phi_.clear();
    nx_.clear();
    ny_.clear();
    nz_.clear();
  }
  void push(double theta, double phi) {
    theta_.push_back(theta);
    phi_.push_back(phi);
    nx_.push_back(std::sin(theta) * std::cos(phi));
    ny_.push_back(std::sin(theta) * std::sin(phi));
    nz_.push_back(std::cos(theta));
  }
  std::size_t size() const { return theta_.size(); }
  double theta(std::size_t i) const { return theta_[i]; }
  double phi(std::size_t i) const { return phi_[i]; }

  const std::vector<double>& evaluate(const kernels::KernelTable& k,
                                      const kernels::BlochCoefficients& bloch) {
    values_.resize(size());
    k.conditional_entropy(bloch, nx_, ny_, nz_, values_);
    return values_;
  }

 private:
  std::vector<double> theta_, phi_, nx_, ny_, nz_, values_;
};

}  // namespace

double discord_oracle(const DensityMatrix4& rho, int angular_grid) {
  if (angular_grid < 64) throw std::invalid_argument("discord_oracle: angular_grid must be >= 64");

  const kernels::BlochCoefficients bloch = bloch_coefficients(rho);
  const auto& kernel = kernels::active();

  const auto ev = rho.eigenvalues();
  const double s_ab = shannon_entropy_bits(ev);
  const double s_b = binary_entropy_of_length(norm3(bloch.s));

  const int n = angular_grid;
  const double d_theta = kPi / (n - 1);
  const double d_phi = kPi / n;

  DirectionBatch batch;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) batch.push(i * d_theta, j * d_phi);
  const std::vector<double> coarse = batch.evaluate(kernel, bloch);

  std::vector<std::size_t> order(coarse.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t seeds = std::min(kZoomSeeds, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(seeds), order.end(),
                    [&](std::size_t l, std::size_t r) { return coarse[l] < coarse[r]; });

  double best = coarse[order[0]];
  for (std::size_t seed = 0; seed < seeds; ++seed) {
    double theta0 = batch.theta(order[seed]);
    double phi0 = batch.phi(order[seed]);
    double value0 = coarse[order[seed]];
    double half_theta = d_theta;
    double half_phi = d_phi;

    DirectionBatch zoom;
    for (int round = 0; round < kZoomRounds; ++round) {
      zoom.clear();
      for (int i = 0; i < kZoomPoints; ++i) {
        const double th = std::clamp(
            theta0 + half_theta * (2.0 * i / (kZoomPoints - 1) - 1.0), 0.0, kPi);
        for (int j = 0; j < kZoomPoints; ++j)
          zoom.push(th, phi0 + half_phi * (2.0 * j / (kZoomPoints - 1) - 1.0));
      }
      const auto& values = zoom.evaluate(kernel, bloch);
      const auto it = std::min_element(values.begin(), values.end());
      if (*it < value0) {
        const auto k = static_cast<std::size_t>(it - values.begin());
        value0 = *it;
        theta0 = zoom.theta(k);
        phi0 = zoom.phi(k);
      }
      half_theta *= 0.5;
      half_phi *= 0.5;
    }
    best = std::min(best, value0);
  }

  // Q = I - max J = (S_A + S_B - S_AB) - (S_A - min S(A|B)).
  return s_b - s_ab + best;
}

double discord_oracle(const XState& s, int angular_grid) {
  s.validate();
  return discord_oracle(DensityMatrix4::from_xstate(s), angular_grid);
}

}  // namespace correlations

}  // namespace timqd
