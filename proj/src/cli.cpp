#include "timqd/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "timqd/correlations.hpp"
#include "timqd/ground_state.hpp"

namespace timqd::cli {

using nlohmann::ordered_json;

namespace {

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw UsageError("not a number: '" + s + "'");
  return v;
}

}  // namespace

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw UsageError("grid count must be >= 1");
  if (count == 1) return {start};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + i * step;
  out.back() = stop;
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  if (text.empty()) throw UsageError("empty grid");
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("grid range must be start:stop:count");
    const double count = parse_double(parts[2]);
    if (count < 1 || count != std::floor(count) || count > 1e7)
      throw UsageError("grid count must be a positive integer");
    return linspace(parse_double(parts[0]), parse_double(parts[1]), static_cast<int>(count));
  }
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_double(item));
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double rounded(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

void RunConfig::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw UsageError("--lambda must lie in [0, 1]");
  if (!channels::parse_channel(channel)) throw UsageError("unknown channel '" + channel + "'");
  if (pair_distance < 1) throw UsageError("--r must be >= 1");
  if (!(quad_tol > 0.0)) throw UsageError("--quad-tol must be > 0");
  if (!(root_tol > 0.0)) throw UsageError("--root-tol must be > 0");
  if (!(derivative_step > 0.0)) throw UsageError("--h must be > 0");
  if (p_count < 1) throw UsageError("--p-count must be >= 1");
  if (!(p_start >= 0.0 && p_stop <= 1.0 && p_start <= p_stop))
    throw UsageError("p grid must satisfy 0 <= p-start <= p-stop <= 1");
  if (p_count > 1 && p_start == p_stop) throw UsageError("p grid has repeated points");
  if (lambda_values().empty()) throw UsageError("empty lambda grid");
  if (threads < 1) throw UsageError("--threads must be >= 1");
  if (random_states < 0) throw UsageError("--random must be >= 0");
  if (oracle_grid < 64) throw UsageError("--oracle-grid must be >= 64");
  if (!(oracle_tol > 0.0)) throw UsageError("--oracle-tol must be > 0");
}

channels::ChannelKind RunConfig::channel_kind() const {
  const auto kind = channels::parse_channel(channel);
  if (!kind) throw UsageError("unknown channel '" + channel + "'");
  return *kind;
}

std::vector<double> RunConfig::p_values() const { return linspace(p_start, p_stop, p_count); }

std::vector<double> RunConfig::lambda_values() const { return parse_grid(lambda_grid); }

criticality::Options RunConfig::options() const {
  criticality::Options o;
  o.pair_distance = pair_distance;
  o.quadrature.abs_tol = quad_tol;
  o.root_tol = root_tol;
  o.threads = threads;
  return o;
}

XState random_xstate(std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double wa = expo(rng);
  const double wb = expo(rng);
  const double wd = expo(rng);
  const double total = wa + wb + wd;
  XState s;
  s.a = wa / total;
  s.b = 0.5 * wb / total;
  s.d = wd / total;
  s.z = s.b * unit(rng);
  s.f = std::sqrt(s.a * s.d) * unit(rng);
  return s;
}

namespace {

ordered_json num(double x) { return rounded(x); }

ordered_json opt_num(const std::optional<double>& x) {
  return x ? ordered_json(rounded(*x)) : ordered_json(nullptr);
}

std::string opt_field(const std::optional<double>& x) { return x ? format_number(*x) : ""; }

void write_json(const ordered_json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

}  // namespace

void cmd_ground_state(const RunConfig& config, std::ostream& out) {
  config.validate();
  const tim::ModelParams params{config.lambda, config.pair_distance};
  numerics::QuadratureSpec spec;
  spec.abs_tol = config.quad_tol;
  const tim::GroundStateCorrelators c = tim::correlators(params, spec);
  const XState s = tim::reduced_density(c);
  const Spectrum sp = correlations::spectrum(s);

  if (config.format == OutputFormat::Json) {
    ordered_json j;
    j["lambda"] = num(config.lambda);
    j["r"] = config.pair_distance;
    j["state"] = {{"a", num(s.a)}, {"b", num(s.b)}, {"d", num(s.d)},
                  {"z", num(s.z)}, {"f", num(s.f)}};
    j["correlators"] = {{"sz", num(c.sz)}, {"cxx", num(c.cxx)}, {"cyy", num(c.cyy)},
                        {"czz", num(c.czz)}};
    ordered_json eig = ordered_json::array();
    for (double v : sp.values) eig.push_back(num(v));
    j["spectrum"] = eig;
    write_json(j, out);
    return;
  }
  out << "lambda,r,a,b,d,z,f,sz,cxx,cyy,czz,lambda0,lambda1,lambda2,lambda3\n";
  out << format_number(config.lambda) << ',' << config.pair_distance;
  for (double v : {s.a, s.b, s.d, s.z, s.f, c.sz, c.cxx, c.cyy, c.czz}) out << ',' << format_number(v);
  for (double v : sp.values) out << ',' << format_number(v);
  out << '\n';
}

void cmd_sweep_p(const RunConfig& config, std::ostream& out) {
  config.validate();
  const auto kind = config.channel_kind();
  const auto rows = criticality::sweep_p(config.lambda, kind, config.p_values(), config.options());

  if (config.format == OutputFormat::Json) {
    ordered_json j;
    j["lambda"] = num(config.lambda);
    j["r"] = config.pair_distance;
    j["channel"] = std::string(channels::to_string(kind));
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      arr.push_back({{"p", num(r.p)},
                     {"I", num(r.mutual)},
                     {"C", num(r.classical)},
                     {"Q", num(r.quantum)},
                     {"branch", correlations::to_string(r.branch)}});
    }
    j["rows"] = arr;
    write_json(j, out);
    return;
  }
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.p) << ',' << format_number(r.mutual) << ','
        << format_number(r.classical) << ',' << format_number(r.quantum) << ','
        << correlations::to_string(r.branch) << '\n';
  }
}

void cmd_critical(const RunConfig& config, std::ostream& out) {
  config.validate();
  const auto kind = config.channel_kind();
  std::vector<criticality::CriticalRow> rows;
  try {
    rows = criticality::critical_table(config.lambda_values(), kind, config.derivative_step,
                                       config.options());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  if (config.format == OutputFormat::Json) {
    ordered_json j;
    j["channel"] = std::string(channels::to_string(kind));
    j["r"] = config.pair_distance;
    j["h"] = num(config.derivative_step);
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      const auto& s = r.signature;
      ordered_json row = {{"lambda", num(s.lambda)},
                          {"p_sc", opt_num(s.p_sc)},
                          {"p_cr1", opt_num(s.p_cr1)},
                          {"p_cr2", opt_num(s.p_cr2)},
                          {"delta_p_cr", opt_num(s.delta_p_cr)},
                          {"d_p_sc", opt_num(r.derivatives[0])},
                          {"d_p_cr1", opt_num(r.derivatives[1])},
                          {"d_p_cr2", opt_num(r.derivatives[2])},
                          {"d_delta", opt_num(r.derivatives[3])},
                          {"step", num(r.step)}};
      if (!s.diagnostic.empty()) row["diagnostic"] = s.diagnostic;
      arr.push_back(std::move(row));
    }
    j["rows"] = arr;
    write_json(j, out);
    return;
  }
  out << kCriticalHeader << '\n';
  for (const auto& r : rows) {
    const auto& s = r.signature;
    out << format_number(s.lambda) << ',' << opt_field(s.p_sc) << ',' << opt_field(s.p_cr1) << ','
        << opt_field(s.p_cr2) << ',' << opt_field(s.delta_p_cr);
    for (const auto& d : r.derivatives) out << ',' << opt_field(d);
    out << '\n';
  }
}

namespace {

struct CheckSummary {
  std::string set;
  int states = 0;
  double max_abs_diff = 0.0;
};

}  // namespace

bool cmd_discord_check(const RunConfig& config, std::ostream& out) {
  config.validate();
  std::vector<CheckSummary> sets;

  CheckSummary random{"random", 0, 0.0};
  std::mt19937_64 rng(config.seed);
  for (int i = 0; i < config.random_states; ++i) {
    const XState s = random_xstate(rng);
    const double diff =
        std::abs(correlations::discord(s).quantum - correlations::discord_oracle(s, config.oracle_grid));
    random.max_abs_diff = std::max(random.max_abs_diff, diff);
    ++random.states;
  }
  sets.push_back(random);

  const auto opts = config.options();
  const auto p_grid = linspace(0.0, 1.0, 21);
  for (const auto kind : channels::kAllChannels) {
    CheckSummary grid{"tim-" + std::string(channels::to_string(kind)), 0, 0.0};
    for (double lambda : {0.25, 0.5, 0.75, 0.9, 0.99}) {
      const criticality::Trajectory traj(lambda, kind, opts);
      for (double p : p_grid) {
        const XState s = traj.state_at(p);
        const double diff = std::abs(correlations::discord(s).quantum -
                                     correlations::discord_oracle(s, config.oracle_grid));
        grid.max_abs_diff = std::max(grid.max_abs_diff, diff);
        ++grid.states;
      }
    }
    sets.push_back(grid);
  }

  bool ok = true;
  for (const auto& s : sets) ok = ok && s.max_abs_diff <= config.oracle_tol;

  if (config.format == OutputFormat::Json) {
    ordered_json j;
    j["tolerance"] = num(config.oracle_tol);
    j["oracle_grid"] = config.oracle_grid;
    j["seed"] = config.seed;
    ordered_json arr = ordered_json::array();
    for (const auto& s : sets) {
      arr.push_back({{"set", s.set},
                     {"states", s.states},
                     {"max_abs_diff", num(s.max_abs_diff)},
                     {"pass", s.max_abs_diff <= config.oracle_tol}});
    }
    j["sets"] = arr;
    j["pass"] = ok;
    write_json(j, out);
    return ok;
  }
  out << "set,states,max_abs_diff,pass\n";
  for (const auto& s : sets) {
    out << s.set << ',' << s.states << ',' << format_number(s.max_abs_diff) << ','
        << (s.max_abs_diff <= config.oracle_tol ? "true" : "false") << '\n';
  }
  return ok;
}

}  // namespace timqd::cli
