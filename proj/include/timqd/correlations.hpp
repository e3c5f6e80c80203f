#pragma once

// Total, classical and quantum correlations (in bits) of two-qubit X states.
// discord() is the closed-form min{Q1, Q2}; discord_oracle() maximizes the
// classical correlation numerically over projective measurements on B and is
// kept independent of the closed form so the two can cross-check.

#include <span>

#include "timqd/density_matrix.hpp"
#include "timqd/xstate.hpp"

namespace timqd::correlations {

enum class Branch { Q1, Q2 };

const char* to_string(Branch b) noexcept;

struct CorrelationBreakdown {
  double mutual = 0.0;
  double classical = 0.0;
  double quantum = 0.0;
  Branch branch = Branch::Q2;
  double q1 = 0.0;
  double q2 = 0.0;
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double gamma_sq = 0.0;
};

CoefficientVector coefficients(const XState& s);

Spectrum spectrum(const XState& s);

// -sum p log2 p. Entries in [-1e-9, 0) are treated as 0; anything more
// negative throws InvalidStateError.
double shannon_entropy_bits(std::span<const double> p);

// Binary entropy of (1 +- c4) / 2; both marginals share it.
double single_qubit_entropy(const XState& s);

double mutual_information(const XState& s);

// Ties Q1 == Q2 report Branch::Q2.
CorrelationBreakdown discord(const XState& s);

inline constexpr int kDefaultOracleGrid = 128;

// I - max_n J(n) by grid search over Bloch directions n(theta, phi),
// theta in [0, pi], phi in [0, pi), followed by local zooming.
// Requires angular_grid >= 64.
double discord_oracle(const XState& s, int angular_grid = kDefaultOracleGrid);

// Same search for an arbitrary two-qubit state (no X-form assumption).
double discord_oracle(const DensityMatrix4& rho, int angular_grid = kDefaultOracleGrid);

}  // namespace timqd::correlations
