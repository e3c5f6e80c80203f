#pragma once

// Decay curves of I, C, Q versus parametrized time p, location of the
// sudden-change point p_sc and of the C = Q crossings p_cr1 < p_cr2, and
// their lambda-derivatives near the critical point lambda_c = 1.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "timqd/channels.hpp"
#include "timqd/correlations.hpp"
#include "timqd/numerics.hpp"
#include "timqd/xstate.hpp"

namespace timqd::criticality {

using channels::ChannelKind;
using correlations::Branch;
using correlations::CorrelationBreakdown;

struct PSweepRow {
  double p = 0.0;
  double mutual = 0.0;
  double classical = 0.0;
  double quantum = 0.0;
  Branch branch = Branch::Q2;
};

struct CriticalSignature {
  double lambda = 0.0;
  std::optional<double> p_sc;
  std::optional<double> p_cr1;
  std::optional<double> p_cr2;
  std::optional<double> delta_p_cr;
  // Non-empty when the computation for this lambda failed.
  std::string diagnostic;
};

enum class Quantity { PSc, PCr1, PCr2, DeltaPCr };

inline constexpr Quantity kAllQuantities[] = {Quantity::PSc, Quantity::PCr1, Quantity::PCr2,
                                              Quantity::DeltaPCr};

const char* to_string(Quantity q) noexcept;
std::optional<double> value_of(const CriticalSignature& sig, Quantity q) noexcept;

struct DerivativeEstimate {
  double lambda = 0.0;
  Quantity quantity = Quantity::PSc;
  std::optional<double> value;
  double step = 0.0;
};

struct Options {
  int pair_distance = 1;
  numerics::QuadratureSpec quadrature{};
  double root_tol = 1e-8;
  double scan_step = 1e-3;
  // Worker threads for lambda sweeps; results always come back in grid order.
  unsigned threads = 1;
};

// Ground state for one lambda evolved through one channel. The initial
// state is computed once and shared by every p.
class Trajectory {
 public:
  Trajectory(const XState& initial, ChannelKind kind) : initial_(initial), kind_(kind) {}
  Trajectory(double lambda, ChannelKind kind, const Options& options = {});

  const XState& initial() const noexcept { return initial_; }
  ChannelKind kind() const noexcept { return kind_; }

  XState state_at(double p) const;
  CorrelationBreakdown at(double p) const;

 private:
  XState initial_;
  ChannelKind kind_;
};

std::vector<PSweepRow> sweep_p(const Trajectory& trajectory, const std::vector<double>& p_grid);
std::vector<PSweepRow> sweep_p(double lambda, ChannelKind kind, const std::vector<double>& p_grid,
                               const Options& options = {});

// First point in (0, 1) where Q(p) is not analytic: a switch between the
// Q1 and Q2 branches, or a zero of z or f while Q2 is the active branch
// (Q2 depends on |z| + |f|). Only phase flip and bit-phase flip are
// scanned; other kinds return nullopt.
std::optional<double> find_p_sc(const Trajectory& trajectory, double tol, double scan_step = 1e-3);
std::optional<double> find_p_sc(double lambda, ChannelKind kind, double tol,
                                const Options& options = {});

// Phase-flip crossings: p_cr1 solves Q2 = I/2 on (0, p_sc), p_cr2 solves
// Q1 = I/2 on (p_sc, 1).
std::pair<std::optional<double>, std::optional<double>> find_crossings(
    const Trajectory& trajectory, double tol, double scan_step = 1e-3);
std::pair<std::optional<double>, std::optional<double>> find_crossings(
    double lambda, double tol, const Options& options = {});

CriticalSignature signature(double lambda, ChannelKind kind, const Options& options = {});

std::vector<CriticalSignature> sweep_lambda(const std::vector<double>& lambda_grid, ChannelKind kind,
                                            const Options& options = {});

// Step actually used at lambda: h shrunk so that lambda +- h stays inside (0, 1).
double clamped_step(double lambda, double h);

std::vector<DerivativeEstimate> derivative_scan(Quantity quantity,
                                                const std::vector<double>& lambda_grid, double h,
                                                ChannelKind kind, const Options& options = {});

// Signature plus all four derivatives for one lambda; what the `critical`
// command prints.
struct CriticalRow {
  CriticalSignature signature;
  std::array<std::optional<double>, 4> derivatives;  // indexed like kAllQuantities
  double step = 0.0;
};

std::vector<CriticalRow> critical_table(const std::vector<double>& lambda_grid, ChannelKind kind,
                                        double h, const Options& options = {});

}  // namespace timqd::criticality
