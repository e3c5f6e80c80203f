#include "timqd/density_matrix.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "timqd/errors.hpp"

namespace timqd {

DensityMatrix4 DensityMatrix4::from_xstate(const XState& s) {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = s.a;
  m(1, 1) = s.b;
  m(2, 2) = s.b;
  m(3, 3) = s.d;
  m(1, 2) = m(2, 1) = s.z;
  m(0, 3) = m(3, 0) = s.f;
  return DensityMatrix4(m);
}

double DensityMatrix4::hermiticity_defect() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

std::array<double, 4> DensityMatrix4::eigenvalues() const {
  const Matrix4c herm = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(herm, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(1), ev(2), ev(3)};
}

void DensityMatrix4::check_physical(double herm_tol, double trace_tol, double eig_tol) const {
  std::ostringstream os;
  os.precision(17);
  if (!m_.allFinite()) throw InvalidStateError("density matrix has non-finite entries");
  if (const double defect = hermiticity_defect(); defect > herm_tol) {
    os << "density matrix not Hermitian: max |rho - rho^dagger| = " << defect;
    throw InvalidStateError(os.str());
  }
  const Complex tr = trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > trace_tol) {
    os << "density matrix trace = " << tr.real() << (tr.imag() < 0 ? " - " : " + ")
       << std::abs(tr.imag()) << "i";
    throw InvalidStateError(os.str());
  }
  const auto ev = eigenvalues();
  if (ev[0] < -eig_tol) {
    os << "density matrix has negative eigenvalue " << ev[0];
    throw InvalidStateError(os.str());
  }
}

}  // namespace timqd
