#pragma once

// Command implementations behind the `timqd` executable. Each command reads
// a validated RunConfig and writes a CSV or JSON table to an ostream; flag
// parsing lives in tools/.

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "timqd/channels.hpp"
#include "timqd/criticality.hpp"
#include "timqd/xstate.hpp"

namespace timqd::cli {

enum class OutputFormat { Csv, Json };

// Thrown for bad configuration values; the executable maps it to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  double lambda = 0.5;
  std::string channel = "phase-flip";
  int pair_distance = 1;
  double quad_tol = 1e-10;
  double root_tol = 1e-8;
  double p_start = 0.0;
  double p_stop = 1.0;
  int p_count = 101;
  std::string lambda_grid = "0.05:0.995:20";
  double derivative_step = 1e-3;
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::string> output_path;
  unsigned threads = 1;

  // discord-check
  int random_states = 200;
  std::uint64_t seed = 1;
  int oracle_grid = 128;
  double oracle_tol = 1e-6;

  // Throws UsageError.
  void validate() const;

  channels::ChannelKind channel_kind() const;
  std::vector<double> p_values() const;
  std::vector<double> lambda_values() const;
  criticality::Options options() const;
};

// "a,b,c" or "start:stop:count" (count >= 1, endpoints included).
std::vector<double> parse_grid(const std::string& text);

std::vector<double> linspace(double start, double stop, int count);

// 12 significant digits, shortest form ("%.12g").
std::string format_number(double x);

// Value that format_number(x) denotes, so JSON output holds exactly the
// printed numbers.
double rounded(double x);

// Valid random X state: diagonal from a flat Dirichlet draw, z and f
// uniform within their positivity bounds.
XState random_xstate(std::mt19937_64& rng);

inline constexpr const char* kSweepHeader = "p,I,C,Q,branch";
inline constexpr const char* kCriticalHeader =
    "lambda,p_sc,p_cr1,p_cr2,delta_p_cr,d_p_sc,d_p_cr1,d_p_cr2,d_delta";

void cmd_ground_state(const RunConfig& config, std::ostream& out);
void cmd_sweep_p(const RunConfig& config, std::ostream& out);
void cmd_critical(const RunConfig& config, std::ostream& out);

// Compares the closed-form discord with the measurement oracle on random
// states and on evolved ground states. Returns true when every difference
// is within config.oracle_tol.
bool cmd_discord_check(const RunConfig& config, std::ostream& out);

}  // namespace timqd::cli
