#include "timqd/xstate.hpp"

#include <cmath>
#include <sstream>

#include "timqd/errors.hpp"

namespace timqd {

void XState::validate() const {
  auto fail = [this](const char* what) {
    std::ostringstream os;
    os.precision(17);
    os << "invalid X state (" << what << "): a=" << a << " b=" << b << " d=" << d << " z=" << z
       << " f=" << f;
    throw InvalidStateError(os.str());
  };
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(d) || !std::isfinite(z) ||
      !std::isfinite(f))
    fail("non-finite entry");
  if (a < -kDiagonalTol || b < -kDiagonalTol || d < -kDiagonalTol) fail("negative diagonal");
  if (std::abs(trace() - 1.0) > kTraceTol) fail("trace != 1");
  if (f * f > a * d + kBlockTol) fail("f^2 > a d");
  if (std::abs(z) > b + kBlockTol) fail("|z| > b");
}

}  // namespace timqd
