#include "timqd/ground_state.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "timqd/errors.hpp"
#include "timqd/kernels.hpp"

namespace timqd::tim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPositivityTol = 1e-9;

}  // namespace

void ModelParams::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("ModelParams: lambda must be finite and >= 0");
  if (pair_distance < 1) throw std::invalid_argument("ModelParams: pair_distance must be >= 1");
}

GTable::GTable(int kmax, std::vector<double> values) : kmax_(kmax), values_(std::move(values)) {
  if (kmax < 0 || values_.size() != static_cast<std::size_t>(2 * kmax + 1))
    throw std::invalid_argument("GTable: need 2 kmax + 1 values");
}

double GTable::operator[](int k) const {
  if (k < -kmax_ || k > kmax_) throw std::out_of_range("GTable: index outside [-kmax, kmax]");
  return values_[static_cast<std::size_t>(k + kmax_)];
}

double dispersion(double lambda, double phi) {
  const double im = lambda * std::sin(phi);
  const double re = 1.0 + lambda * std::cos(phi);
  return std::sqrt(im * im + re * re);
}

double magnetization(double lambda, const numerics::QuadratureSpec& spec) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("magnetization: lambda must be >= 0");
  auto integrand = [lambda](double phi) {
    const double omega = dispersion(lambda, phi);
    // (1 + cos phi) / |2 cos(phi/2)| -> 0 as phi -> pi at lambda = 1.
    if (omega == 0.0) return 0.0;
    return (1.0 + lambda * std::cos(phi)) / omega;
  };
  return -numerics::integrate(integrand, 0.0, kPi, spec) / kPi;
}

GTable g_coefficients(double lambda, int kmax, const numerics::QuadratureSpec& spec) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("g_coefficients: lambda must be >= 0");
  if (kmax < 0) throw std::invalid_argument("g_coefficients: kmax must be >= 0");

  // No coupling: A = 1, B = 0 and the integrals are exactly delta_k0.
  if (lambda == 0.0) {
    std::vector<double> delta(static_cast<std::size_t>(2 * kmax + 1), 0.0);
    delta[static_cast<std::size_t>(kmax)] = 1.0;
    return GTable(kmax, std::move(delta));
  }

  const auto& table = kernels::active();
  std::vector<double> cos_buf;
  std::vector<double> sin_buf;
  auto integrand = [&](std::span<const double> nodes, std::span<double> sums) {
    cos_buf.resize(nodes.size());
    sin_buf.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      cos_buf[i] = std::cos(nodes[i]);
      sin_buf[i] = std::sin(nodes[i]);
    }
    table.g_moments(lambda, kmax, cos_buf, sin_buf, sums);
  };

  const auto components = 2 * static_cast<std::size_t>(kmax + 1);
  const auto moments = numerics::integrate_batch(integrand, components, 0.0, kPi, spec);

  // moments[2k] = int cos(k phi) A, moments[2k+1] = int sin(k phi) B, so
  //   G_k = (moments[2k] - moments[2k+1]) / pi,
  //   G_-k = (moments[2k] + moments[2k+1]) / pi.
  std::vector<double> values(static_cast<std::size_t>(2 * kmax + 1));
  for (int k = 0; k <= kmax; ++k) {
    const double cos_part = moments[static_cast<std::size_t>(2 * k)];
    const double sin_part = moments[static_cast<std::size_t>(2 * k + 1)];
    values[static_cast<std::size_t>(kmax + k)] = (cos_part - sin_part) / kPi;
    values[static_cast<std::size_t>(kmax - k)] = (cos_part + sin_part) / kPi;
  }
  return GTable(kmax, std::move(values));
}

double g_coefficient(double lambda, int r, const numerics::QuadratureSpec& spec) {
  const int kmax = r < 0 ? -r : r;
  return g_coefficients(lambda, kmax, spec)[r];
}

numerics::SquareMatrix toeplitz_xx(const GTable& g, int r) {
  numerics::SquareMatrix m(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = g[i - j - 1];
  return m;
}

numerics::SquareMatrix toeplitz_yy(const GTable& g, int r) {
  numerics::SquareMatrix m(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = g[i - j + 1];
  return m;
}

GroundStateCorrelators correlators(const ModelParams& params, const numerics::QuadratureSpec& spec) {
  params.validate();
  const int r = params.pair_distance;
  const GTable g = g_coefficients(params.lambda, r, spec);

  GroundStateCorrelators c;
  c.sz = -g[0];
  c.cxx = numerics::determinant(toeplitz_xx(g, r));
  c.cyy = numerics::determinant(toeplitz_yy(g, r));
  c.czz = c.sz * c.sz - g[r] * g[-r];
  return c;
}

XState reduced_density(const GroundStateCorrelators& c) {
  XState s;
  s.a = 0.25 + 0.5 * c.sz + 0.25 * c.czz;
  s.d = 0.25 - 0.5 * c.sz + 0.25 * c.czz;
  s.b = 0.25 * (1.0 - c.czz);
  s.z = 0.25 * (c.cxx + c.cyy);
  s.f = 0.25 * (c.cxx - c.cyy);

  const bool ok = s.a >= -kPositivityTol && s.b >= -kPositivityTol && s.d >= -kPositivityTol &&
                  s.f * s.f <= s.a * s.d + kPositivityTol && std::abs(s.z) <= s.b + kPositivityTol;
  if (!ok) {
    std::ostringstream os;
    os.precision(17);
    os << "reduced density matrix is not positive: a=" << s.a << " b=" << s.b << " d=" << s.d
       << " z=" << s.z << " f=" << s.f;
    throw InvalidStateError(os.str());
  }
  return s;
}

XState reduced_density(const ModelParams& params, const numerics::QuadratureSpec& spec) {
  return reduced_density(correlators(params, spec));
}

}  // namespace timqd::tim
