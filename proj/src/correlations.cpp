#include "timqd/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "timqd/errors.hpp"

namespace timqd::correlations {

namespace {

constexpr double kNegativeDust = 1e-9;

double xlog2_ratio(double x, double y) {
  x = std::max(x, 0.0);
  if (x == 0.0) return 0.0;
  return x * std::log2(x / y);
}

double binary_entropy(double c) {
  const std::array<double, 2> p{0.5 * (1.0 + c), 0.5 * (1.0 - c)};
  return shannon_entropy_bits(p);
}

}  // namespace

const char* to_string(Branch b) noexcept { return b == Branch::Q1 ? "Q1" : "Q2"; }

CoefficientVector coefficients(const XState& s) {
  return {2.0 * s.z + 2.0 * s.f, 2.0 * s.z - 2.0 * s.f, s.a + s.d - 2.0 * s.b, s.a - s.d};
}

Spectrum spectrum(const XState& s) {
  const CoefficientVector c = coefficients(s);
  const double root = std::sqrt(4.0 * c.c4 * c.c4 + (c.c1 - c.c2) * (c.c1 - c.c2));
  Spectrum out;
  out.values[0] = 0.25 * ((1.0 + c.c3) + root);
  out.values[1] = 0.25 * ((1.0 + c.c3) - root);
  out.values[2] = 0.25 * (1.0 - c.c3 + c.c1 + c.c2);
  out.values[3] = 0.25 * (1.0 - c.c3 - c.c1 - c.c2);
  return out;
}

double shannon_entropy_bits(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x < -kNegativeDust) {
      std::ostringstream os;
      os.precision(17);
      os << "entropy of a distribution with negative weight " << x;
      throw InvalidStateError(os.str());
    }
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double single_qubit_entropy(const XState& s) { return binary_entropy(coefficients(s).c4); }

double mutual_information(const XState& s) {
  const Spectrum sp = spectrum(s);
  return 2.0 * single_qubit_entropy(s) - shannon_entropy_bits(sp.values);
}

CorrelationBreakdown discord(const XState& s) {
  s.validate();
  const double s_b = single_qubit_entropy(s);
  const double s_ab = shannon_entropy_bits(spectrum(s).values);

  CorrelationBreakdown out;
  out.mutual = 2.0 * s_b - s_ab;

  // Measurement of B along z.
  const double a = std::max(s.a, 0.0);
  const double b = std::max(s.b, 0.0);
  const double d = std::max(s.d, 0.0);
  out.q1 = s_b - s_ab - xlog2_ratio(a, a + b) - xlog2_ratio(b, a + b) - xlog2_ratio(d, d + b) -
           xlog2_ratio(b, d + b);

  // Measurement of B in the xy plane.
  const double zf = std::abs(s.z) + std::abs(s.f);
  out.gamma_sq = (s.a - s.d) * (s.a - s.d) + 4.0 * zf * zf;
  const double gamma = std::sqrt(out.gamma_sq);
  out.delta_plus = 0.5 * (1.0 + gamma);
  out.delta_minus = 0.5 * (1.0 - gamma);
  const std::array<double, 2> deltas{out.delta_plus, out.delta_minus};
  out.q2 = s_b - s_ab + shannon_entropy_bits(deltas);

  if (out.q1 < out.q2) {
    out.branch = Branch::Q1;
    out.quantum = out.q1;
  } else {
    out.branch = Branch::Q2;
    out.quantum = out.q2;
  }
  out.classical = out.mutual - out.quantum;
  return out;
}

}  // namespace timqd::correlations
