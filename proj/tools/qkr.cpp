// qkr: batch front end for the quantum Kramers rate toolkit.

#include <clocale>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "qkramers/cli.hpp"

namespace {

void add_common(CLI::App* cmd, qkr::cli::RunConfig& cfg, std::string& config_path,
                std::string& theta_spec) {
  cmd->add_option("--config", config_path, "flat key=value config file");
  cmd->add_option("--model", cfg.model_kind, "damping model: ohmic | drude");
  cmd->add_option("--gamma", cfg.gamma, "damping strength (units of omega_0)");
  cmd->add_option("--omega-d", [&cfg](const CLI::results_t& r) {
    cfg.omega_d = std::stod(r[0]);
    return true;
  }, "Drude cutoff frequency")->expected(1);
  cmd->add_option("--theta", theta_spec, "inverse temperature: value, list, or a:b:step");
  cmd->add_option("--epsilon", cfg.epsilon, "anharmonicity parameter");
  cmd->add_option("--v-b", cfg.v_b, "barrier height (units of hbar omega_0)");
  cmd->add_option("--omega-w", cfg.omega_w, "well frequency (units of omega_0)");
  cmd->add_option("-N,--n-matsubara", cfg.n_matsubara, "Matsubara truncation index");
  cmd->add_option("--omega0", cfg.omega0, "dimensional omega_0 multiplying rates");
  cmd->add_option("--out", cfg.out_path, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"quantum Kramers rate toolkit"};
  app.require_subcommand(1);

  qkr::cli::RunConfig cfg;
  std::string config_path, theta_spec;

  auto* rate = app.add_subcommand("rate", "decay rate with quantum prefactor");
  add_common(rate, cfg, config_path, theta_spec);

  auto* profile = app.add_subcommand("flux-profile",
                                     "diagonal flux-state form factor vs coordinate");
  double q_min = -6.0, q_max = 6.0, q_step = 0.05;
  add_common(profile, cfg, config_path, theta_spec);
  profile->add_option("--q-min", q_min, "grid start");
  profile->add_option("--q-max", q_max, "grid end");
  profile->add_option("--q-step", q_step, "grid step");

  auto* crit = app.add_subcommand("critical-theta",
                                  "inverse temperature where Lambda vanishes");
  add_common(crit, cfg, config_path, theta_spec);

  auto* validity = app.add_subcommand("validity", "flux-state validity diagnostics");
  add_common(validity, cfg, config_path, theta_spec);

  auto* series = app.add_subcommand("timeseries",
                                    "A(t), S(t), form factor over a time grid");
  double wt_min = 10.0, wt_max = 25.0, wt_step = 0.5, xf = 0.0, rf = 1.0;
  add_common(series, cfg, config_path, theta_spec);
  series->add_option("--wt-min", wt_min, "grid start in units of omega_r t");
  series->add_option("--wt-max", wt_max, "grid end in units of omega_r t");
  series->add_option("--wt-step", wt_step, "grid step in units of omega_r t");
  series->add_option("--xf", xf, "difference coordinate of the form factor");
  series->add_option("--rf", rf, "sum coordinate of the form factor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  // Configuration assembly: failures here are usage errors.
  try {
    // Config file forms the base; a second parse replays the flags on top
    // so they win.
    if (!config_path.empty()) {
      qkr::cli::RunConfig file_cfg;
      qkr::cli::apply_config_file(file_cfg, config_path);
      cfg = file_cfg;
      theta_spec.clear();
      app.clear();
      app.parse(argc, argv);
    }
    if (!theta_spec.empty()) cfg.thetas = qkr::cli::parse_theta_spec(theta_spec);
    if (cfg.thetas.empty())
      throw qkr::DomainError("no theta given (use --theta or a config file)");
    (void)cfg.model();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  }

  try {
    std::string doc;
    if (rate->parsed()) doc = qkr::cli::cmd_rate(cfg);
    else if (profile->parsed()) doc = qkr::cli::cmd_flux_profile(cfg, q_min, q_max, q_step);
    else if (crit->parsed()) doc = qkr::cli::cmd_critical_theta(cfg);
    else if (validity->parsed()) doc = qkr::cli::cmd_validity(cfg);
    else doc = qkr::cli::cmd_timeseries(cfg, wt_min, wt_max, wt_step, xf, rf);
    qkr::cli::emit(cfg, doc);
    return 0;
  } catch (...) {
    return qkr::cli::exit_code_for_current_exception();
  }
}
