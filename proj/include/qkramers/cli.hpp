#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qkramers/bath.hpp"
#include "qkramers/matsubara.hpp"

namespace qkr::cli {

// Batch-run configuration assembled from a flat key=value file plus
// command-line overrides (overrides win).
struct RunConfig {
  std::string model_kind = "ohmic";  // "ohmic" | "drude"
  double gamma = 0.0;
  std::optional<double> omega_d;
  std::vector<double> thetas;        // one or more inverse temperatures
  double epsilon = 0.1;
  double v_b = 10.0;
  double omega_w = 1.0;
  long n_matsubara = 10000;
  double tol_series = 1e-8;
  double tol_quadrature = 1e-9;
  double tol_root = 1e-6;
  double omega0 = 1.0;               // dimensional scale applied to rates
  std::string format = "json";       // "json" | "csv" where applicable
  std::string out_path;              // empty = stdout

  DampingModel model() const;
  double single_theta() const;       // rejects theta lists
};

// Parses "key = value" lines; '#' starts a comment. Unknown keys are errors.
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value);

// Theta specifications: scalar, comma list, or start:stop:step range.
std::vector<double> parse_theta_spec(const std::string& spec);

// Command bodies; each returns the full document emitted on stdout or to the
// output file.
std::string cmd_rate(const RunConfig& cfg);
std::string cmd_flux_profile(const RunConfig& cfg, double q_min, double q_max,
                             double q_step);
std::string cmd_critical_theta(const RunConfig& cfg);
std::string cmd_validity(const RunConfig& cfg);
std::string cmd_timeseries(const RunConfig& cfg, double wt_min, double wt_max,
                           double wt_step, double x_f, double r_f);

// Writes to cfg.out_path or stdout.
void emit(const RunConfig& cfg, const std::string& document);

// Exit codes: 0 ok, 1 usage, 2 parameter-regime violation, 3 numerical
// failure.
int exit_code_for_current_exception();

}  // namespace qkr::cli
