#pragma once

// Ground state of the 1d transverse Ising chain
//   H = -lambda sum_j sigma^x_j sigma^x_{j+1} - sum_j sigma^z_j
// in the thermodynamic limit, and the two-site reduced density matrix built
// from its magnetization and two-point correlators.

#include <vector>

#include "timqd/numerics.hpp"
#include "timqd/xstate.hpp"

namespace timqd::tim {

struct ModelParams {
  double lambda = 0.5;
  int pair_distance = 1;

  void validate() const;
};

struct GroundStateCorrelators {
  double sz = 0.0;   // <sigma^z>
  double cxx = 0.0;  // <sigma^x_i sigma^x_{i+r}>
  double cyy = 0.0;  // <sigma^y_i sigma^y_{i+r}>
  double czz = 0.0;  // <sigma^z_i sigma^z_{i+r}>
};

// G_k for k = -kmax..kmax, indexable by signed k.
class GTable {
 public:
  GTable(int kmax, std::vector<double> values);

  int kmax() const noexcept { return kmax_; }
  double operator[](int k) const;

 private:
  int kmax_;
  std::vector<double> values_;
};

// Quasiparticle energy omega_phi.
double dispersion(double lambda, double phi);

// <sigma^z> = -(1/pi) int_0^pi (1 + lambda cos phi) / omega_phi dphi.
// Sign as in the closed-form expression, so <sigma^z> = -1 at lambda = 0.
double magnetization(double lambda, const numerics::QuadratureSpec& spec = {});

double g_coefficient(double lambda, int r, const numerics::QuadratureSpec& spec = {});

// All G_k with |k| <= kmax from a single quadrature pass.
GTable g_coefficients(double lambda, int kmax, const numerics::QuadratureSpec& spec = {});

// r x r Toeplitz matrices whose determinants give <xx> and <yy>.
numerics::SquareMatrix toeplitz_xx(const GTable& g, int r);
numerics::SquareMatrix toeplitz_yy(const GTable& g, int r);

GroundStateCorrelators correlators(const ModelParams& params,
                                   const numerics::QuadratureSpec& spec = {});

// Assembles the X state from the correlators. Throws InvalidStateError if
// the result is not a density matrix within 1e-9.
XState reduced_density(const GroundStateCorrelators& c);
XState reduced_density(const ModelParams& params, const numerics::QuadratureSpec& spec = {});

}  // namespace timqd::tim
