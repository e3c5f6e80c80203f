#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

#include "timqd/kernels.hpp"
#include "timqd/xstate.hpp"

namespace timqd {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

// General two-qubit density matrix, same basis ordering as XState:
// row/column 0..3 <-> |11>, |10>, |01>, |00> (first ket is qubit A).
class DensityMatrix4 {
 public:
  DensityMatrix4() : m_(Matrix4c::Zero()) {}
  explicit DensityMatrix4(const Matrix4c& m) : m_(m) {}

  static DensityMatrix4 from_xstate(const XState& s);

  const Matrix4c& matrix() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  Complex trace() const { return m_.trace(); }

  // Largest |m - m^dagger| entry.
  double hermiticity_defect() const;

  // Eigenvalues of the Hermitian part, ascending.
  std::array<double, 4> eigenvalues() const;

  // Throws InvalidStateError unless Hermitian within herm_tol, unit trace
  // within trace_tol and all eigenvalues >= -eig_tol.
  void check_physical(double herm_tol = 1e-12, double trace_tol = 1e-10,
                      double eig_tol = 1e-9) const;

 private:
  Matrix4c m_;
};

// Pauli-basis coefficients r_i = Tr(rho sigma_i (x) I), s_j, t_ij.
kernels::BlochCoefficients bloch_coefficients(const DensityMatrix4& rho);

// Computational-basis value (0 = ground |0>, 1 = excited |1>) of qubit A
// and qubit B for a row/column index of DensityMatrix4.
constexpr int qubit_a_level(int index) noexcept { return 1 - (index >> 1); }
constexpr int qubit_b_level(int index) noexcept { return 1 - (index & 1); }

}  // namespace timqd
