#pragma once

// Sweep driver, CSV emission and the invariant checker behind `verify`.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "config.hpp"
#include "tradeoff.hpp"

namespace nuqrt {

/// Grid in the config's own units. Linear: min + k (max - min)/(n - 1);
/// log: the same in log space.
inline std::vector<double> sweep_grid(const SweepConfig& c) {
  std::vector<double> g(c.points);
  const double last = static_cast<double>(c.points - 1);
  if (c.spacing == Spacing::linear) {
    const double step = (c.loe_max - c.loe_min) / last;
    for (std::size_t k = 0; k < c.points; ++k) g[k] = c.loe_min + static_cast<double>(k) * step;
  } else {
    const double lo = std::log(c.loe_min);
    const double step = (std::log(c.loe_max) - lo) / last;
    for (std::size_t k = 0; k < c.points; ++k) g[k] = std::exp(lo + static_cast<double>(k) * step);
  }
  return g;
}

/// Runs `fn(k)` for k in [0, n) over `workers` threads (0: hardware).
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n / 64, 1)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t k = w; k < n; k += workers) fn(k);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// One report per grid point, in grid order.
inline std::vector<TradeoffReport> run_sweep(const SweepConfig& c, unsigned workers = 0) {
  validate(c);
  const auto grid = sweep_grid(c);
  std::vector<TradeoffReport> rows(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t k) {
    rows[k] = evaluate_point(c.flavor, BaselinePoint{grid[k], c.units}, c.params);
  });
  return rows;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr const char* kCsvSchemaLine = "# nuqrt-tradeoff-csv v1";

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "loe_km_per_GeV",   "flavor",           "p_e",              "p_mu",
      "p_tau",            "chsh_paper_ab",    "chsh_paper_ac",    "chsh_paper_bc",
      "chsh_paper_sum",   "chsh_horo_sq_ab",  "chsh_horo_sq_ac",  "chsh_horo_sq_bc",
      "chsh_horo_sq_sum", "d_sq",             "ci_sq_two_thirds", "identity_residual",
      "coh_ab",           "coh_ac",           "coh_abc",          "q"};
  return cols;
}

/// 12 significant digits; negative zero prints as 0.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_csv_row(std::ostream& out, const TradeoffReport& r) {
  const double values[] = {
      r.probabilities[0],     r.probabilities[1],      r.probabilities[2],
      r.chsh.paper[0],        r.chsh.paper[1],         r.chsh.paper[2],
      r.chsh.paper_sum,       r.chsh.horodecki[0],     r.chsh.horodecki[1],
      r.chsh.horodecki[2],    r.chsh.horodecki_sum,    r.d_squared,
      r.two_thirds_ci_squared, r.identity_residual,    r.coherence.ab,
      r.coherence.ac,         r.coherence.abc,         r.coherence_q};
  out << format_number(r.loe.in_km_per_gev()) << ',' << to_string(r.flavor);
  for (double v : values) out << ',' << format_number(v);
  out << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<TradeoffReport>& rows) {
  out << kCsvSchemaLine << '\n';
  const auto& cols = csv_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
  out << '\n';
  for (const auto& r : rows) write_csv_row(out, r);
}

inline std::string to_csv(const std::vector<TradeoffReport>& rows) {
  std::ostringstream ss;
  write_csv(ss, rows);
  return ss.str();
}

inline void write_csv_file(const std::string& path, const std::vector<TradeoffReport>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("output", "cannot open '" + path + "' for writing");
  write_csv(out, rows);
  out.flush();
  if (!out) throw ConfigError("output", "write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Verification

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kCrossPathTol = 1e-9;

struct VerifyFailure {
  std::size_t row = 0;
  double loe_km_per_gev = 0.0;
  std::string quantity;
  double residual = 0.0;
};

struct VerifyResult {
  std::size_t points_checked = 0;
  std::optional<VerifyFailure> failure;
  // Largest observed value of each checked quantity.
  double max_probability_error = 0.0;
  double max_cross_path_error = 0.0;
  double max_identity_residual = 0.0;
  double max_chsh_horodecki_sum = 0.0;
  double max_chsh_paper_sum = 0.0;
  double max_q = -INFINITY;

  bool ok() const { return !failure.has_value(); }
};

namespace detail {

// First violated invariant at one point, with its residual. Residuals are
// signed so that anything > 0 is a violation.
inline std::optional<std::pair<std::string, double>> check_point(const SweepConfig& c, double loe,
                                                                 VerifyResult& acc) {
  const BaselinePoint point{loe, c.units};
  TradeoffReport r;
  std::array<double, 3> concurrence_gap{};
  try {
    r = evaluate_point(c.flavor, point, c.params);
    const DensityMatrix rho = tripartite_state(amplitudes(c.flavor, point, c.params));
    for (std::size_t k = 0; k < 3; ++k) {
      const DensityMatrix pair = pair_state(rho, kAllPairs[k]);
      concurrence_gap[k] = std::abs(intrinsic_concurrence(pair) - concurrence(pair));
    }
  } catch (const std::exception& e) {
    return std::make_pair(std::string("state_validity (") + e.what() + ")", 1.0);
  }

  const auto& p = r.probabilities;
  const double unitarity = std::abs(p[0] + p[1] + p[2] - 1.0);
  acc.max_probability_error = std::max(acc.max_probability_error, unitarity);
  if (unitarity >= kUnitarityTol) return std::make_pair(std::string("probability_sum"), unitarity);

  for (Flavor to : {Flavor::e, Flavor::mu, Flavor::tau}) {
    const double d = std::abs(probability_direct(c.flavor, to, point, c.params) - p[index(to)]);
    acc.max_cross_path_error = std::max(acc.max_cross_path_error, d);
    if (d > kCrossPathTol)
      return std::make_pair("probability_direct_" + std::string(to_string(to)), d);
  }

  acc.max_identity_residual = std::max(acc.max_identity_residual, std::abs(r.identity_residual));
  if (std::abs(r.identity_residual) > kBoundTol)
    return std::make_pair(std::string("identity_residual"), r.identity_residual);

  acc.max_chsh_horodecki_sum = std::max(acc.max_chsh_horodecki_sum, r.chsh.horodecki_sum);
  acc.max_chsh_paper_sum = std::max(acc.max_chsh_paper_sum, r.chsh.paper_sum);
  if (r.chsh.horodecki_sum > kChshSquaredBound + kBoundTol)
    return std::make_pair(std::string("chsh_horo_sq_sum"), r.chsh.horodecki_sum - kChshSquaredBound);
  if (r.chsh.paper_sum > kChshSquaredBound + kBoundTol)
    return std::make_pair(std::string("chsh_paper_sum"), r.chsh.paper_sum - kChshSquaredBound);
  for (std::size_t k = 0; k < 3; ++k) {
    const double bridge = std::abs(r.chsh.horodecki[k] - 2.0 * r.chsh.paper[k]);
    if (bridge > kCrossPathTol)
      return std::make_pair("chsh_convention_bridge_" + std::string(to_string(kAllPairs[k])), bridge);
  }

  for (std::size_t k = 0; k < 3; ++k)
    if (concurrence_gap[k] > kCrossPathTol)
      return std::make_pair("concurrence_vs_intrinsic_" + std::string(to_string(kAllPairs[k])),
                            concurrence_gap[k]);

  acc.max_q = std::max(acc.max_q, r.coherence_q);
  if (r.coherence_q > kBoundTol) return std::make_pair(std::string("q"), r.coherence_q);

  return std::nullopt;
}

}  // namespace detail

/// Checks every invariant at every grid point and stops at the first
/// failure.
inline VerifyResult verify(const SweepConfig& c) {
  validate(c);
  VerifyResult out;
  const auto grid = sweep_grid(c);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    ++out.points_checked;
    if (auto bad = detail::check_point(c, grid[k], out)) {
      out.failure = VerifyFailure{k, BaselinePoint{grid[k], c.units}.in_km_per_gev(), bad->first,
                                  bad->second};
      break;
    }
  }
  return out;
}

inline std::string summarize(const SweepConfig& c, const VerifyResult& r) {
  std::ostringstream ss;
  if (r.failure) {
    const auto& f = *r.failure;
    ss << "FAIL flavor=" << to_string(c.flavor) << " row=" << f.row
       << " loe_km_per_GeV=" << format_number(f.loe_km_per_gev) << " quantity=" << f.quantity
       << " residual=" << format_number(f.residual) << '\n';
    return ss.str();
  }
  ss << "OK flavor=" << to_string(c.flavor) << " points=" << r.points_checked << '\n'
     << "  max |sum P - 1|          " << format_number(r.max_probability_error) << '\n'
     << "  max |P_direct - P_amp|   " << format_number(r.max_cross_path_error) << '\n'
     << "  max |identity residual|  " << format_number(r.max_identity_residual) << '\n'
     << "  max chsh_horo_sq_sum     " << format_number(r.max_chsh_horodecki_sum) << '\n'
     << "  max chsh_paper_sum       " << format_number(r.max_chsh_paper_sum) << '\n'
     << "  max q                    " << format_number(r.max_q) << '\n';
  return ss.str();
}

}  // namespace nuqrt
