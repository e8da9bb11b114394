// nuqrt: L/E sweeps of quantum-resource trade-offs in three-flavor
// neutrino oscillations.
//
//   nuqrt sweep  [options]   write the trade-off table as CSV
//   nuqrt verify [options]   check every invariant at every point
//   nuqrt params [options]   print the effective oscillation parameters
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nuqrt/nuqrt.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct CommandOptions {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
  CLI::Option* config_option = nullptr;
};

void add_sweep_options(CLI::App& cmd, CommandOptions& o) {
  const std::map<std::string, std::string> help{
      {"flavor", "initial flavor: e or mu"},
      {"loe_min", "lower end of the L/E range"},
      {"loe_max", "upper end of the L/E range"},
      {"points", "number of grid points (>= 2)"},
      {"spacing", "linear or log"},
      {"units", "km_per_GeV or km_per_MeV"},
      {"output", "CSV output path"},
  };
  auto add = [&](const std::string& key, const std::string& text) {
    o.options[key] = cmd.add_option(nuqrt::ConfigError::flag_name(key), o.values[key], text);
  };
  for (const auto& key : nuqrt::sweep_keys()) add(key, help.at(key));
  for (const auto& key : nuqrt::param_keys()) add(key, "override " + key);
  o.config_option = cmd.add_option("--config", o.config_path, "key = value settings file");
}

nuqrt::SweepConfig resolve(const CommandOptions& o) {
  std::vector<nuqrt::Settings> layers;
  if (const char* env = std::getenv("NU_QRT_PARAMS"); env && *env)
    layers.push_back(nuqrt::read_settings_file(env, /*params_only=*/true));
  if (o.config_option->count() > 0) layers.push_back(nuqrt::read_settings_file(o.config_path));
  nuqrt::Settings flags;
  for (const auto& [key, opt] : o.options)
    if (opt->count() > 0) flags[key] = o.values.at(key);
  layers.push_back(std::move(flags));
  return nuqrt::parse_config(layers);
}

int do_sweep(const nuqrt::SweepConfig& config) {
  const auto rows = nuqrt::run_sweep(config);
  if (config.output_path.empty()) {
    nuqrt::write_csv(std::cout, rows);
  } else {
    nuqrt::write_csv_file(config.output_path, rows);
    std::cerr << "wrote " << rows.size() << " rows to " << config.output_path << '\n';
  }
  return kExitOk;
}

int do_verify(const nuqrt::SweepConfig& config) {
  const auto result = nuqrt::verify(config);
  std::cout << nuqrt::summarize(config, result);
  return result.ok() ? kExitOk : kExitVerifyFailed;
}

int do_params(const nuqrt::SweepConfig& config) {
  std::cout << "# effective oscillation parameters (degrees, eV^2)\n"
            << nuqrt::format_params(config.params);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-resource trade-offs in three-flavor neutrino oscillations"};
  app.require_subcommand(1);

  CommandOptions sweep_opts, verify_opts, params_opts;
  auto* sweep = app.add_subcommand("sweep", "write the per-point trade-off table as CSV");
  auto* verify = app.add_subcommand("verify", "check all invariants and bounds over a sweep");
  auto* params = app.add_subcommand("params", "print the effective oscillation parameters");
  add_sweep_options(*sweep, sweep_opts);
  add_sweep_options(*verify, verify_opts);
  add_sweep_options(*params, params_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sweep->parsed()) return do_sweep(resolve(sweep_opts));
    if (verify->parsed()) return do_verify(resolve(verify_opts));
    if (params->parsed()) return do_params(resolve(params_opts));
  } catch (const nuqrt::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
