#include <cmath>
#include <optional>
#include <string>

#include "catch_amalgamated.hpp"

#include "timqd/criticality.hpp"
#include "timqd/ground_state.hpp"

using namespace timqd;
using namespace timqd::criticality;
using Catch::Matchers::WithinAbs;

namespace {

// Earliest sign change of g on a uniform grid, refined by linear interpolation.
template <class G>
std::optional<double> scan_root(G g, double lo, double hi, int n) {
  double x0 = lo, g0 = g(lo);
  for (int i = 1; i <= n; ++i) {
    const double x1 = lo + (hi - lo) * i / n;
    const double g1 = g(x1);
    if ((g0 < 0) != (g1 < 0)) return x0 + (x1 - x0) * g0 / (g0 - g1);
    x0 = x1;
    g0 = g1;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("quantity captions") {
  CHECK(std::string(to_string(Quantity::PSc)) == "p_sc");
  CHECK(std::string(to_string(Quantity::PCr1)) == "p_cr1");
  CHECK(std::string(to_string(Quantity::PCr2)) == "p_cr2");
  CHECK(std::string(to_string(Quantity::DeltaPCr)) == "delta_p_cr");

  CriticalSignature sig;
  sig.p_sc = 0.1;
  sig.p_cr2 = 0.2;
  CHECK(value_of(sig, Quantity::PSc) == 0.1);
  CHECK_FALSE(value_of(sig, Quantity::PCr1));
  CHECK(value_of(sig, Quantity::PCr2) == 0.2);
}

TEST_CASE("trajectory starts at the ground state") {
  const Trajectory t(0.5, ChannelKind::PhaseFlip);
  const XState g = tim::reduced_density(tim::ModelParams{0.5, 1});
  CHECK(t.state_at(0.0).a == g.a);
  CHECK(t.state_at(0.0).f == g.f);
  CHECK_THROWS_AS(t.state_at(1.5), std::invalid_argument);
}

TEST_CASE("phase-flip events agree with a dense scan") {
  const Trajectory t(0.5, ChannelKind::PhaseFlip);
  const auto p_sc = find_p_sc(t, 1e-10);
  REQUIRE(p_sc);
  const auto switch_at =
      scan_root([&](double p) { auto b = t.at(p); return b.q1 - b.q2; }, 0.0, 1.0, 20000);
  REQUIRE(switch_at);
  CHECK_THAT(*p_sc, WithinAbs(*switch_at, 1e-6));

  const auto [cr1, cr2] = find_crossings(t, 1e-10);
  REQUIRE(cr1);
  REQUIRE(cr2);
  const auto ref1 =
      scan_root([&](double p) { auto b = t.at(p); return b.q2 - b.mutual / 2; }, 0.0, *p_sc, 20000);
  const auto ref2 =
      scan_root([&](double p) { auto b = t.at(p); return b.q1 - b.mutual / 2; }, *p_sc, 1.0, 20000);
  REQUIRE(ref1);
  REQUIRE(ref2);
  CHECK_THAT(*cr1, WithinAbs(*ref1, 1e-6));
  CHECK_THAT(*cr2, WithinAbs(*ref2, 1e-6));
  CHECK(*cr1 < *p_sc);
  CHECK(*p_sc < *cr2);
}

TEST_CASE("phase-flip signature at lambda = 0.5") {
  const auto sig = signature(0.5, ChannelKind::PhaseFlip);
  CHECK(sig.diagnostic.empty());
  REQUIRE(sig.p_sc);
  REQUIRE(sig.p_cr1);
  REQUIRE(sig.p_cr2);
  REQUIRE(sig.delta_p_cr);
  CHECK_THAT(*sig.p_cr1, WithinAbs(0.0931, 5e-4));
  CHECK_THAT(*sig.p_sc, WithinAbs(0.1345, 5e-4));
  CHECK_THAT(*sig.p_cr2, WithinAbs(0.1646, 5e-4));
  CHECK_THAT(*sig.delta_p_cr, WithinAbs(*sig.p_cr2 - *sig.p_cr1, 1e-15));
}

TEST_CASE("discord is continuous and classical correlation kinks at p_sc") {
  const Trajectory t(0.5, ChannelKind::PhaseFlip);
  const double p_sc = *find_p_sc(t, 1e-12);
  const double h = 1e-5;
  const auto left = t.at(p_sc - h), mid = t.at(p_sc), right = t.at(p_sc + h);
  CHECK(std::abs(right.quantum - left.quantum) < 1e-3);
  const double slope_left = (mid.classical - left.classical) / h;
  const double slope_right = (right.classical - mid.classical) / h;
  CHECK(std::abs(slope_right) < 1e-6);
  CHECK(std::abs(slope_left) > 1e-2);
}

TEST_CASE("classical correlation is frozen after p_sc") {
  for (double lambda : {0.25, 0.5, 0.75, 0.9}) {
    const Trajectory t(lambda, ChannelKind::PhaseFlip);
    const double p_sc = *find_p_sc(t, 1e-12);
    const double c0 = t.at(p_sc + 1e-6).classical;
    for (int i = 1; i <= 20; ++i) {
      const double p = p_sc + (1.0 - p_sc) * i / 20.0;
      INFO("lambda=" << lambda << " p=" << p);
      CHECK_THAT(t.at(p).classical, WithinAbs(c0, 1e-12));
    }
    CHECK_THAT(t.at(1.0).classical, WithinAbs(t.at(1.0).mutual, 1e-12));
  }
}

TEST_CASE("bit-phase flip: C touches Q at p_sc") {
  const Trajectory t(0.5, ChannelKind::BitPhaseFlip);
  const auto p_sc = find_p_sc(t, 1e-12);
  REQUIRE(p_sc);
  const auto at = t.at(*p_sc);
  CHECK_THAT(at.classical, WithinAbs(at.quantum, 1e-8));
  for (double dp : {-0.02, -0.005, 0.005, 0.02}) CHECK(t.at(*p_sc + dp).classical > t.at(*p_sc + dp).quantum);
}

TEST_CASE("amplitude damping decays monotonically") {
  const auto rows = sweep_p(0.5, ChannelKind::AmplitudeDamping, [] {
    std::vector<double> g;
    for (int i = 0; i <= 200; ++i) g.push_back(i / 200.0);
    return g;
  }());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].mutual <= rows[i - 1].mutual + 1e-15);
    CHECK(rows[i].classical <= rows[i - 1].classical + 1e-15);
    CHECK(rows[i].quantum <= rows[i - 1].quantum + 1e-15);
    if (rows[i].p <= 0.85) CHECK(rows[i].classical >= rows[i].quantum);
  }
  // The curves do cross near p ~ 0.91, by a tiny amount.
  bool crossed = false;
  for (const auto& r : rows) {
    if (r.p > 0.9 && r.classical < r.quantum) {
      crossed = true;
      CHECK(r.quantum - r.classical < 1e-4);
    }
  }
  CHECK(crossed);
  CHECK_THAT(rows.back().mutual, WithinAbs(0.0, 1e-14));
}

TEST_CASE("amplitude damping and bit flip have no sudden change") {
  for (double lambda : {0.25, 0.5, 0.9}) {
    CHECK_FALSE(find_p_sc(lambda, ChannelKind::AmplitudeDamping, 1e-8));
    CHECK_FALSE(find_p_sc(lambda, ChannelKind::BitFlip, 1e-8));
    const auto sig = signature(lambda, ChannelKind::BitFlip);
    CHECK_FALSE(sig.p_sc);
    CHECK_FALSE(sig.p_cr1);
    CHECK_FALSE(sig.delta_p_cr);
  }
}

TEST_CASE("crossings are only defined for phase flip") {
  const Trajectory t(0.5, ChannelKind::BitPhaseFlip);
  CHECK_THROWS_AS(find_crossings(t, 1e-8), std::invalid_argument);
}

TEST_CASE("sweep rows follow the grid and the bookkeeping") {
  const std::vector<double> grid{0.0, 0.1, 0.5, 1.0};
  const auto rows = sweep_p(0.75, ChannelKind::PhaseFlip, grid);
  REQUIRE(rows.size() == grid.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].p == grid[i]);
    CHECK_THAT(rows[i].mutual, WithinAbs(rows[i].classical + rows[i].quantum, 1e-14));
  }
  CHECK_THROWS_AS(sweep_p(0.75, ChannelKind::PhaseFlip, {0.5, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(sweep_p(0.75, ChannelKind::PhaseFlip, {0.0, 1.1}), std::invalid_argument);
}

TEST_CASE("clamped step stays inside (0, 1)") {
  CHECK(clamped_step(0.5, 1e-3) == 1e-3);
  CHECK_THAT(clamped_step(0.999, 1e-2), WithinAbs(5e-4, 1e-16));
  CHECK_THAT(clamped_step(0.001, 1e-2), WithinAbs(5e-4, 1e-16));
  CHECK_THROWS_AS(clamped_step(1.0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(clamped_step(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("lambda sweeps do not depend on the thread count") {
  const std::vector<double> grid{0.2, 0.4, 0.6, 0.8, 0.95};
  Options one, four;
  four.threads = 4;
  const auto a = sweep_lambda(grid, ChannelKind::PhaseFlip, one);
  const auto b = sweep_lambda(grid, ChannelKind::PhaseFlip, four);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lambda == grid[i]);
    CHECK(a[i].lambda == b[i].lambda);
    CHECK(a[i].p_sc == b[i].p_sc);
    CHECK(a[i].p_cr1 == b[i].p_cr1);
    CHECK(a[i].p_cr2 == b[i].p_cr2);
  }
  CHECK_THROWS_AS(sweep_lambda({0.5, 1.0}, ChannelKind::PhaseFlip), std::invalid_argument);
}

TEST_CASE("derivative estimates are stable under step halving") {
  Options opt;
  opt.root_tol = 1e-12;
  opt.quadrature.abs_tol = 1e-12;
  for (const auto q : kAllQuantities) {
    const auto coarse = derivative_scan(q, {0.5}, 2e-3, ChannelKind::PhaseFlip, opt);
    const auto fine = derivative_scan(q, {0.5}, 1e-3, ChannelKind::PhaseFlip, opt);
    REQUIRE(coarse.size() == 1);
    REQUIRE(coarse[0].value);
    REQUIRE(fine[0].value);
    INFO(to_string(q));
    CHECK(coarse[0].step == 2e-3);
    CHECK_THAT(*fine[0].value, WithinAbs(*coarse[0].value, 1e-3));
  }
}

TEST_CASE("critical table reports derivatives only where values exist") {
  const auto rows = critical_table({0.5}, ChannelKind::BitFlip, 1e-3);
  REQUIRE(rows.size() == 1);
  for (const auto& d : rows[0].derivatives) CHECK_FALSE(d);

  const auto pf = critical_table({0.5}, ChannelKind::PhaseFlip, 1e-3);
  for (const auto& d : pf[0].derivatives) CHECK(d);
  CHECK(pf[0].step == 1e-3);
}
