#include "timqd/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "timqd/ground_state.hpp"

namespace timqd::criticality {

const char* to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::PSc: return "p_sc";
    case Quantity::PCr1: return "p_cr1";
    case Quantity::PCr2: return "p_cr2";
    case Quantity::DeltaPCr: return "delta_p_cr";
  }
  return "unknown";
}

std::optional<double> value_of(const CriticalSignature& sig, Quantity q) noexcept {
  switch (q) {
    case Quantity::PSc: return sig.p_sc;
    case Quantity::PCr1: return sig.p_cr1;
    case Quantity::PCr2: return sig.p_cr2;
    case Quantity::DeltaPCr: return sig.delta_p_cr;
  }
  return std::nullopt;
}

Trajectory::Trajectory(double lambda, ChannelKind kind, const Options& options)
    : initial_(tim::reduced_density(tim::ModelParams{lambda, options.pair_distance},
                                    options.quadrature)),
      kind_(kind) {}

XState Trajectory::state_at(double p) const {
  if (p == 0.0) return initial_;
  return channels::project_xstate(channels::evolve_pair(initial_, kind_, p));
}

CorrelationBreakdown Trajectory::at(double p) const { return correlations::discord(state_at(p)); }

std::vector<PSweepRow> sweep_p(const Trajectory& trajectory, const std::vector<double>& p_grid) {
  if (!std::is_sorted(p_grid.begin(), p_grid.end()))
    throw std::invalid_argument("sweep_p: p grid must be sorted");
  std::vector<PSweepRow> rows;
  rows.reserve(p_grid.size());
  for (double p : p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sweep_p: p outside [0, 1]");
    const CorrelationBreakdown c = trajectory.at(p);
    rows.push_back({p, c.mutual, c.classical, c.quantum, c.branch});
  }
  return rows;
}

std::vector<PSweepRow> sweep_p(double lambda, ChannelKind kind, const std::vector<double>& p_grid,
                               const Options& options) {
  return sweep_p(Trajectory(lambda, kind, options), p_grid);
}

namespace {

bool has_sudden_change(ChannelKind kind) {
  return kind == ChannelKind::PhaseFlip || kind == ChannelKind::BitPhaseFlip;
}

// Smallest root among the candidates, each located by scan + bisection.
std::optional<double> earliest_root(const std::vector<numerics::ScalarFunction>& candidates,
                                    double lo, double hi, double step, double tol) {
  std::optional<double> best;
  for (const auto& g : candidates) {
    const double upper = best ? *best : hi;
    const auto bracket = numerics::first_sign_change(g, lo, upper, step, tol);
    if (!bracket) continue;
    const double root = numerics::find_root(g, *bracket);
    if (!best || root < *best) best = root;
  }
  return best;
}

}  // namespace

std::optional<double> find_p_sc(const Trajectory& trajectory, double tol, double scan_step) {
  if (!has_sudden_change(trajectory.kind())) return std::nullopt;

  // Q = min{Q1, Q2} kinks where the branches swap, and where z or f passes
  // through zero while Q2 is the minimum (|z| + |f| enters Gamma).
  auto branch_gap = [&](double p) {
    const auto c = trajectory.at(p);
    return c.q1 - c.q2;
  };
  auto z_of = [&](double p) { return trajectory.state_at(p).z; };
  auto f_of = [&](double p) { return trajectory.state_at(p).f; };

  std::optional<double> best = earliest_root({branch_gap}, 0.0, 1.0, scan_step, tol);
  // Up to the first swap the branch is that of the initial state.
  if (trajectory.at(0.0).branch == Branch::Q2) {
    const double upper = best ? *best : 1.0;
    if (const auto r = earliest_root({z_of, f_of}, 0.0, upper, scan_step, tol);
        r && (!best || *r < *best))
      best = r;
  }
  return best;
}

std::optional<double> find_p_sc(double lambda, ChannelKind kind, double tol,
                                const Options& options) {
  return find_p_sc(Trajectory(lambda, kind, options), tol, options.scan_step);
}

std::pair<std::optional<double>, std::optional<double>> find_crossings(const Trajectory& trajectory,
                                                                       double tol,
                                                                       double scan_step) {
  if (trajectory.kind() != ChannelKind::PhaseFlip)
    throw std::invalid_argument("find_crossings: defined for the phase-flip channel only");

  const auto p_sc = find_p_sc(trajectory, tol, scan_step);
  const double split = p_sc ? *p_sc : 1.0;

  auto q2_gap = [&](double p) {
    const auto c = trajectory.at(p);
    return c.q2 - 0.5 * c.mutual;
  };
  auto q1_gap = [&](double p) {
    const auto c = trajectory.at(p);
    return c.q1 - 0.5 * c.mutual;
  };

  std::optional<double> first;
  std::optional<double> second;
  if (auto br = numerics::first_sign_change(q2_gap, 0.0, split, scan_step, tol))
    first = numerics::find_root(q2_gap, *br);
  if (p_sc) {
    if (auto br = numerics::first_sign_change(q1_gap, split, 1.0, scan_step, tol))
      second = numerics::find_root(q1_gap, *br);
  }
  return {first, second};
}

std::pair<std::optional<double>, std::optional<double>> find_crossings(double lambda, double tol,
                                                                       const Options& options) {
  return find_crossings(Trajectory(lambda, ChannelKind::PhaseFlip, options), tol,
                        options.scan_step);
}

CriticalSignature signature(double lambda, ChannelKind kind, const Options& options) {
  CriticalSignature sig;
  sig.lambda = lambda;
  try {
    const Trajectory trajectory(lambda, kind, options);
    sig.p_sc = find_p_sc(trajectory, options.root_tol, options.scan_step);
    if (kind == ChannelKind::PhaseFlip) {
      const auto [p1, p2] = find_crossings(trajectory, options.root_tol, options.scan_step);
      sig.p_cr1 = p1;
      sig.p_cr2 = p2;
      if (p1 && p2) sig.delta_p_cr = *p2 - *p1;
    }
  } catch (const std::exception& e) {
    sig.p_sc.reset();
    sig.p_cr1.reset();
    sig.p_cr2.reset();
    sig.delta_p_cr.reset();
    sig.diagnostic = e.what();
  }
  return sig;
}

namespace {

// Runs job(i) for i in [0, count) on up to `threads` workers.
template <typename Job>
void parallel_for(std::size_t count, unsigned threads, Job job) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) job(i);
    });
  }
}

}  // namespace

std::vector<CriticalSignature> sweep_lambda(const std::vector<double>& lambda_grid, ChannelKind kind,
                                            const Options& options) {
  for (double l : lambda_grid)
    if (!(l > 0.0 && l < 1.0)) throw std::invalid_argument("sweep_lambda: lambda outside (0, 1)");
  std::vector<CriticalSignature> out(lambda_grid.size());
  parallel_for(lambda_grid.size(), options.threads,
               [&](std::size_t i) { out[i] = signature(lambda_grid[i], kind, options); });
  return out;
}

double clamped_step(double lambda, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("derivative step must be > 0");
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("derivative point lambda must lie in (0, 1)");
  return std::min({h, 0.5 * (1.0 - lambda), 0.5 * lambda});
}

std::vector<CriticalRow> critical_table(const std::vector<double>& lambda_grid, ChannelKind kind,
                                        double h, const Options& options) {
  for (double l : lambda_grid) clamped_step(l, h);  // validates the grid
  std::vector<CriticalRow> rows(lambda_grid.size());
  parallel_for(lambda_grid.size(), options.threads, [&](std::size_t i) {
    const double lambda = lambda_grid[i];
    const double step = clamped_step(lambda, h);
    CriticalRow& row = rows[i];
    row.step = step;
    row.signature = signature(lambda, kind, options);
    const CriticalSignature below = signature(lambda - step, kind, options);
    const CriticalSignature above = signature(lambda + step, kind, options);
    for (std::size_t q = 0; q < std::size(kAllQuantities); ++q) {
      const auto lo = value_of(below, kAllQuantities[q]);
      const auto hi = value_of(above, kAllQuantities[q]);
      if (lo && hi) row.derivatives[q] = (*hi - *lo) / (2.0 * step);
    }
  });
  return rows;
}

std::vector<DerivativeEstimate> derivative_scan(Quantity quantity,
                                                const std::vector<double>& lambda_grid, double h,
                                                ChannelKind kind, const Options& options) {
  const auto rows = critical_table(lambda_grid, kind, h, options);
  std::vector<DerivativeEstimate> out;
  out.reserve(rows.size());
  const auto q = static_cast<std::size_t>(
      std::find(std::begin(kAllQuantities), std::end(kAllQuantities), quantity) -
      std::begin(kAllQuantities));
  for (const auto& row : rows)
    out.push_back({row.signature.lambda, quantity, row.derivatives[q], row.step});
  return out;
}

}  // namespace timqd::criticality
