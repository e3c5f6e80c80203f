#include "timqd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "timqd/errors.hpp"

namespace timqd {

InvalidBracketError::InvalidBracketError(double lo, double hi, double f_lo, double f_hi)
    : std::invalid_argument([&] {
        std::ostringstream os;
        os.precision(17);
        os << "no sign change on bracket [" << lo << ", " << hi << "]: f(" << lo << ") = " << f_lo
           << ", f(" << hi << ") = " << f_hi;
        return os.str();
      }()),
      lo_(lo),
      hi_(hi),
      f_lo_(f_lo),
      f_hi_(f_hi) {}

}  // namespace timqd

namespace timqd::numerics {

namespace {

// Accepting convergence before this many doublings risks aliasing: e.g.
// sin(2 phi) vanishes on every node of a 2-interval grid over [0, pi].
constexpr int kMinRefinements = 4;

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be > 0");
  if (max_refinements < 1) throw std::invalid_argument("QuadratureSpec: max_refinements must be >= 1");
}

void RootBracket::validate() const {
  if (!(lo < hi)) throw std::invalid_argument("RootBracket: lo must be < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("RootBracket: tol must be > 0");
}

std::vector<double> integrate_batch(const BatchIntegrand& f, std::size_t components, double a,
                                    double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!(a < b)) throw std::invalid_argument("integrate: need a < b");
  if (components == 0) return {};

  // Composite Simpson on n intervals, h = (b - a) / n:
  //   S_n = h/3 (f(a) + f(b) + 4 * odd + 2 * even)
  // Doubling n turns every old node into an even one and adds n new odd ones.
  std::vector<double> ends(components, 0.0);
  const double end_nodes[2] = {a, b};
  f(end_nodes, ends);

  std::vector<double> even(components, 0.0);
  std::vector<double> odd(components, 0.0);
  std::vector<double> nodes;

  std::size_t n = 1;
  double h = b - a;
  std::vector<double> previous;
  std::vector<double> current(components);
  std::vector<double> error(components, 0.0);

  for (int level = 0; level <= spec.max_refinements; ++level) {
    // New midpoints of the current n intervals.
    for (std::size_t c = 0; c < components; ++c) even[c] += odd[c];
    std::fill(odd.begin(), odd.end(), 0.0);
    nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) nodes[i] = a + (static_cast<double>(i) + 0.5) * h;
    f(nodes, odd);
    n *= 2;
    h *= 0.5;

    for (std::size_t c = 0; c < components; ++c)
      current[c] = h / 3.0 * (ends[c] + 4.0 * odd[c] + 2.0 * even[c]);

    if (!previous.empty()) {
      double worst = 0.0;
      bool finite = true;
      for (std::size_t c = 0; c < components; ++c) {
        error[c] = std::abs(current[c] - previous[c]) / 15.0;
        finite = finite && std::isfinite(error[c]);
        worst = std::max(worst, error[c]);
      }
      if (!finite) {
        throw NonConvergenceError("integrate: integrand produced a non-finite value", current[0],
                                  worst);
      }
      if (level >= kMinRefinements && worst < spec.abs_tol) {
        std::vector<double> result(components);
        for (std::size_t c = 0; c < components; ++c)
          result[c] = current[c] + (current[c] - previous[c]) / 15.0;
        return result;
      }
    }
    previous = current;
  }

  const auto worst_it = std::max_element(error.begin(), error.end());
  const std::size_t worst_c = static_cast<std::size_t>(worst_it - error.begin());
  std::ostringstream os;
  os << "integrate: no convergence after " << spec.max_refinements
     << " refinements (error estimate " << *worst_it << ", tolerance " << spec.abs_tol << ")";
  throw NonConvergenceError(os.str(), current[worst_c], *worst_it);
}

double integrate(const ScalarFunction& f, double a, double b, const QuadratureSpec& spec) {
  auto batch = [&f](std::span<const double> nodes, std::span<double> sums) {
    double acc = 0.0;
    for (double x : nodes) acc += f(x);
    sums[0] += acc;
  };
  return integrate_batch(batch, 1, a, b, spec).front();
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix operator*(const SquareMatrix& lhs, const SquareMatrix& rhs) {
  if (lhs.size() != rhs.size()) throw std::invalid_argument("SquareMatrix: size mismatch");
  const std::size_t n = lhs.size();
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += lhs(i, k) * rhs(k, j);
  return out;
}

double determinant(const SquareMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("determinant: empty matrix");
  SquareMatrix lu = m;
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (std::abs(lu(row, col)) > std::abs(lu(pivot, col))) pivot = row;
    if (lu(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(pivot, j), lu(col, j));
      det = -det;
    }
    const double diag = lu(col, col);
    det *= diag;
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = lu(row, col) / diag;
      if (factor == 0.0) continue;
      for (std::size_t j = col + 1; j < n; ++j) lu(row, j) -= factor * lu(col, j);
    }
  }
  return det;
}

double find_root(const ScalarFunction& f, const RootBracket& bracket) {
  bracket.validate();
  double lo = bracket.lo;
  double hi = bracket.hi;
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (!(f_lo * f_hi < 0.0)) throw InvalidBracketError(lo, hi, f_lo, f_hi);

  while (hi - lo > bracket.tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at double resolution
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<RootBracket> first_sign_change(const ScalarFunction& f, double lo, double hi,
                                             double step, double tol) {
  if (!(lo < hi)) return std::nullopt;
  if (!(step > 0.0)) throw std::invalid_argument("first_sign_change: step must be > 0");

  const auto cells = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-9));
  auto node = [&](std::size_t k) { return k >= cells ? hi : lo + static_cast<double>(k) * step; };

  double x_prev = lo;
  double f_prev = f(lo);
  // Last node with a nonzero value, so an exact zero sitting on a grid node
  // is still found when the sign differs across it.
  std::optional<std::pair<double, double>> last_nonzero;
  if (f_prev != 0.0) last_nonzero = {x_prev, f_prev};

  for (std::size_t k = 1; k <= cells; ++k) {
    const double x = node(k);
    const double fx = f(x);
    if (f_prev * fx < 0.0) return RootBracket{x_prev, x, tol};
    if (fx != 0.0) {
      if (f_prev == 0.0 && last_nonzero && last_nonzero->second * fx < 0.0)
        return RootBracket{last_nonzero->first, x, tol};
      last_nonzero = {x, fx};
    }
    x_prev = x;
    f_prev = fx;
  }
  return std::nullopt;
}

double central_difference(const ScalarFunction& f, double x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("central_difference: h must be > 0");
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace timqd::numerics
