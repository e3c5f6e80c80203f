#pragma once

#include <array>

namespace timqd {

// Real two-qubit X state in the basis {|11>, |10>, |01>, |00>}:
//
//   | a 0 0 f |
//   | 0 b z 0 |
//   | 0 z b 0 |
//   | f 0 0 d |
struct XState {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;
  double z = 0.0;
  double f = 0.0;

  double trace() const noexcept { return a + d + 2.0 * b; }

  // Throws InvalidStateError if any positivity/normalization constraint is
  // violated beyond the tolerances below.
  void validate() const;

  static constexpr double kDiagonalTol = 1e-12;
  static constexpr double kTraceTol = 1e-9;
  static constexpr double kBlockTol = 1e-12;
};

struct CoefficientVector {
  double c1 = 0.0;  // 2z + 2f
  double c2 = 0.0;  // 2z - 2f
  double c3 = 0.0;  // a + d - 2b
  double c4 = 0.0;  // a - d
};

struct Spectrum {
  std::array<double, 4> values{};

  double sum() const noexcept { return values[0] + values[1] + values[2] + values[3]; }
};

}  // namespace timqd
