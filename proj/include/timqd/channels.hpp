#pragma once

// Local Markovian decoherence channels in Kraus form. Each qubit couples to
// its own environment; both see the same channel and the same p.

#include <optional>
#include <string_view>
#include <vector>

#include "timqd/density_matrix.hpp"
#include "timqd/xstate.hpp"

namespace timqd::channels {

// Phase damping has no entry: as a quantum operation it coincides with the
// phase flip, and parse_channel() maps its name there.
enum class ChannelKind { AmplitudeDamping, PhaseFlip, BitFlip, BitPhaseFlip };

inline constexpr ChannelKind kAllChannels[] = {ChannelKind::AmplitudeDamping,
                                               ChannelKind::PhaseFlip, ChannelKind::BitFlip,
                                               ChannelKind::BitPhaseFlip};

std::string_view to_string(ChannelKind kind) noexcept;
std::optional<ChannelKind> parse_channel(std::string_view name);

// Single-qubit Kraus operators in the computational basis {|0>, |1>}.
struct KrausSet {
  std::vector<Matrix2c> operators;
  double p = 0.0;

  // Largest entry of |sum_k E_k^dagger E_k - I|.
  double completeness_defect() const;
};

// p = 1 - exp(-gamma t).
double parametrized_time(double gamma, double t);

KrausSet kraus_set(ChannelKind kind, double p);

// rho -> sum_{mu,nu} (E_mu (x) E_nu) rho (E_mu (x) E_nu)^dagger. No checks.
DensityMatrix4 apply_local_channel(const DensityMatrix4& rho, const KrausSet& kraus);
DensityMatrix4 apply_local_channel(const DensityMatrix4& rho, ChannelKind kind, double p);

// Evolves an X state and verifies the output is physical.
DensityMatrix4 evolve_pair(const XState& initial, ChannelKind kind, double p);

// Narrows a 4x4 matrix back to the X parametrization. Throws
// PatternViolationError on any entry outside the X pattern, any imaginary
// part, or unequal inner diagonal entries above tol.
XState project_xstate(const DensityMatrix4& m, double tol = 1e-10);

}  // namespace timqd::channels
