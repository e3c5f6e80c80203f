#pragma once

// Small numerical kernels shared by the physics modules: composite Simpson
// quadrature with interval doubling, dense determinants, bracketed
// bisection, and central differences. Everything here is a pure function.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace timqd::numerics {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  int max_refinements = 24;

  void validate() const;
};

struct RootBracket {
  double lo = 0.0;
  double hi = 1.0;
  double tol = 1e-8;

  void validate() const;
};

using ScalarFunction = std::function<double(double)>;

// Adds sum_i f(nodes[i]) componentwise into `sums`. Lets an integrand
// evaluate a whole refinement level at once (and several integrals sharing
// the same nodes in one pass).
using BatchIntegrand = std::function<void(std::span<const double> nodes, std::span<double> sums)>;

// Integral of f over [a, b]. Throws NonConvergenceError when the Richardson
// error estimate is still above spec.abs_tol after spec.max_refinements
// doublings.
double integrate(const ScalarFunction& f, double a, double b, const QuadratureSpec& spec = {});

// Vector-valued variant: integrates `components` functions over [a, b] on
// shared nodes. Converges when every component's error estimate is below
// abs_tol.
std::vector<double> integrate_batch(const BatchIntegrand& f, std::size_t components, double a,
                                    double b, const QuadratureSpec& spec = {});

/// Row-major square matrix of doubles.
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  static SquareMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  friend SquareMatrix operator*(const SquareMatrix& lhs, const SquareMatrix& rhs);

 private:
  std::size_t n_;
  std::vector<double> data_;
};

// Gaussian elimination with partial pivoting. Singular input gives 0.
double determinant(const SquareMatrix& m);

// Plain bisection. Throws InvalidBracketError unless f(lo) and f(hi) have
// opposite signs (an exact zero at an endpoint is returned directly).
double find_root(const ScalarFunction& f, const RootBracket& bracket);

// Walks [lo, hi] in steps of `step` (the last cell is shortened to end at
// hi) and returns the first cell on which f changes sign.
std::optional<RootBracket> first_sign_change(const ScalarFunction& f, double lo, double hi,
                                             double step, double tol);

double central_difference(const ScalarFunction& f, double x, double h);

}  // namespace timqd::numerics
