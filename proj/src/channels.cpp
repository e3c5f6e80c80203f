#include "timqd/channels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "timqd/errors.hpp"

namespace timqd::channels {

std::string_view to_string(ChannelKind kind) noexcept {
  switch (kind) {
    case ChannelKind::AmplitudeDamping: return "amplitude-damping";
    case ChannelKind::PhaseFlip: return "phase-flip";
    case ChannelKind::BitFlip: return "bit-flip";
    case ChannelKind::BitPhaseFlip: return "bit-phase-flip";
  }
  return "unknown";
}

std::optional<ChannelKind> parse_channel(std::string_view name) {
  if (name == "amplitude-damping" || name == "ad") return ChannelKind::AmplitudeDamping;
  if (name == "phase-flip" || name == "pf" || name == "phase-damping" || name == "dephasing")
    return ChannelKind::PhaseFlip;
  if (name == "bit-flip" || name == "bf") return ChannelKind::BitFlip;
  if (name == "bit-phase-flip" || name == "bpf") return ChannelKind::BitPhaseFlip;
  return std::nullopt;
}

double KrausSet::completeness_defect() const {
  Matrix2c sum = Matrix2c::Zero();
  for (const auto& e : operators) sum += e.adjoint() * e;
  return (sum - Matrix2c::Identity()).cwiseAbs().maxCoeff();
}

double parametrized_time(double gamma, double t) {
  if (!(gamma >= 0.0) || !(t >= 0.0))
    throw std::invalid_argument("parametrized_time: gamma and t must be >= 0");
  return -std::expm1(-gamma * t);
}

KrausSet kraus_set(ChannelKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "kraus_set: p = " << p << " outside [0, 1]";
    throw std::invalid_argument(os.str());
  }
  const Complex I(0.0, 1.0);
  KrausSet set;
  set.p = p;
  Matrix2c e0, e1;
  if (kind == ChannelKind::AmplitudeDamping) {
    const double q = 1.0 - p;
    e0 << 1.0, 0.0, 0.0, std::sqrt(q);
    e1 << 0.0, std::sqrt(p), 0.0, 0.0;
  } else {
    const double keep = std::sqrt(1.0 - 0.5 * p);
    const double flip = std::sqrt(0.5 * p);
    e0 << keep, 0.0, 0.0, keep;
    switch (kind) {
      case ChannelKind::BitFlip: e1 << 0.0, flip, flip, 0.0; break;
      case ChannelKind::PhaseFlip: e1 << flip, 0.0, 0.0, -flip; break;
      case ChannelKind::BitPhaseFlip: e1 << 0.0, -I * flip, I * flip, 0.0; break;
      case ChannelKind::AmplitudeDamping: break;
    }
  }
  set.operators = {e0, e1};
  return set;
}

namespace {

// E_A (x) E_B expressed in the DensityMatrix4 ordering.
Matrix4c local_product(const Matrix2c& ea, const Matrix2c& eb) {
  Matrix4c out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out(i, j) = ea(qubit_a_level(i), qubit_a_level(j)) * eb(qubit_b_level(i), qubit_b_level(j));
  return out;
}

}  // namespace

DensityMatrix4 apply_local_channel(const DensityMatrix4& rho, const KrausSet& kraus) {
  Matrix4c out = Matrix4c::Zero();
  for (const auto& ea : kraus.operators) {
    for (const auto& eb : kraus.operators) {
      const Matrix4c e = local_product(ea, eb);
      out.noalias() += e * rho.matrix() * e.adjoint();
    }
  }
  return DensityMatrix4(out);
}

DensityMatrix4 apply_local_channel(const DensityMatrix4& rho, ChannelKind kind, double p) {
  return apply_local_channel(rho, kraus_set(kind, p));
}

DensityMatrix4 evolve_pair(const XState& initial, ChannelKind kind, double p) {
  initial.validate();
  DensityMatrix4 out = apply_local_channel(DensityMatrix4::from_xstate(initial), kind, p);
  out.check_physical();
  return out;
}

XState project_xstate(const DensityMatrix4& m, double tol) {
  auto fail = [](const std::string& what, int i, int j, double mag) {
    std::ostringstream os;
    os.precision(17);
    os << "matrix is not of X form: " << what << " at (" << i + 1 << "," << j + 1
       << "), magnitude " << mag;
    throw PatternViolationError(os.str(), i + 1, j + 1, mag);
  };
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool in_pattern = (i == j) || (i + j == 3);
      const Complex v = m(i, j);
      if (!in_pattern && std::abs(v) >= tol) fail("entry outside the X pattern", i, j, std::abs(v));
      if (in_pattern && std::abs(v.imag()) >= tol)
        fail("imaginary part", i, j, std::abs(v.imag()));
    }
  }
  if (const double gap = std::abs(m(1, 1).real() - m(2, 2).real()); gap >= tol)
    fail("unequal inner diagonal entries", 1, 1, gap);
  if (const double gap = std::abs(m(1, 2).real() - m(2, 1).real()); gap >= tol)
    fail("asymmetric inner anti-diagonal", 1, 2, gap);
  if (const double gap = std::abs(m(0, 3).real() - m(3, 0).real()); gap >= tol)
    fail("asymmetric outer anti-diagonal", 0, 3, gap);

  XState s;
  s.a = m(0, 0).real();
  s.b = 0.5 * (m(1, 1).real() + m(2, 2).real());
  s.d = m(3, 3).real();
  s.z = m(1, 2).real();
  s.f = m(0, 3).real();
  return s;
}

}  // namespace timqd::channels
