#include "qkramers/cli.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qkramers/dynamics.hpp"
#include "qkramers/fluxstate.hpp"
#include "qkramers/rate.hpp"
#include "qkramers/version.hpp"

namespace qkr::cli {

using nlohmann::json;

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json provenance(const RunConfig& cfg) {
  return json{{"n_matsubara", cfg.n_matsubara},
              {"tolerances",
               {{"series", cfg.tol_series},
                {"quadrature", cfg.tol_quadrature},
                {"root", cfg.tol_root}}},
              {"version", kVersion}};
}

json model_block(const RunConfig& cfg) {
  json m{{"kind", cfg.model_kind}, {"gamma", cfg.gamma}};
  if (cfg.omega_d) m["omega_d"] = *cfg.omega_d;
  return m;
}

const char* matching_status_name(MatchingStatus s) {
  switch (s) {
    case MatchingStatus::ok: return "ok";
    case MatchingStatus::exceeded: return "exceeded";
    case MatchingStatus::impossible: return "impossible";
    default: return "unavailable";
  }
}

json validity_block(const RateReport& rep) {
  json v;
  v["matching_status"] = matching_status_name(rep.matching.status);
  v["matching_ok"] = rep.matching.ok;
  if (std::isfinite(rep.matching.ratio)) v["matching_ratio"] = rep.matching.ratio;
  v["matching_threshold"] = rep.matching.threshold;
  v["plateau_t_min"] = rep.plateau.t_min;
  v["plateau_t_max"] = rep.plateau.t_max;
  v["plateau_ok"] = rep.plateau.ok;
  v["theta_ok"] = rep.theta_ok;
  v["theta_ratio"] = rep.theta / rep.theta_c;
  return v;
}

}  // namespace

DampingModel RunConfig::model() const {
  if (model_kind == "ohmic") return DampingModel::Ohmic(gamma);
  if (model_kind == "drude") {
    if (!omega_d) throw DomainError("drude model requires omega_d");
    return DampingModel::Drude(gamma, *omega_d);
  }
  throw DomainError("unknown model kind '" + model_kind + "'");
}

double RunConfig::single_theta() const {
  if (thetas.size() != 1)
    throw DomainError("this command requires exactly one theta value");
  return thetas[0];
}

std::vector<double> parse_theta_spec(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double a, b, step;
    char c1, c2;
    std::istringstream in(spec);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0)
      throw DomainError("bad theta range spec '" + spec + "' (want start:stop:step)");
    for (double t = a; t <= b + 1e-12 * step; t += step) out.push_back(t);
    return out;
  }
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw DomainError("empty theta spec");
  return out;
}

void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "model") cfg.model_kind = value;
  else if (key == "gamma") cfg.gamma = std::stod(value);
  else if (key == "omega_d") cfg.omega_d = std::stod(value);
  else if (key == "theta") cfg.thetas = parse_theta_spec(value);
  else if (key == "epsilon") cfg.epsilon = std::stod(value);
  else if (key == "v_b") cfg.v_b = std::stod(value);
  else if (key == "omega_w") cfg.omega_w = std::stod(value);
  else if (key == "n_matsubara") cfg.n_matsubara = std::stol(value);
  else if (key == "tol_series") cfg.tol_series = std::stod(value);
  else if (key == "tol_quadrature") cfg.tol_quadrature = std::stod(value);
  else if (key == "tol_root") cfg.tol_root = std::stod(value);
  else if (key == "omega0") cfg.omega0 = std::stod(value);
  else if (key == "format") cfg.format = value;
  else if (key == "out") cfg.out_path = value;
  else throw DomainError("unknown config key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw DomainError("config line without '=': " + line);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
    };
    apply_key_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::string cmd_rate(const RunConfig& cfg) {
  const DampingModel m = cfg.model();
  const double theta = cfg.single_theta();
  const SystemParams params{theta, cfg.epsilon, cfg.v_b, cfg.omega_w, 1.0};
  const MatsubaraTable table = build_table(m, theta, cfg.n_matsubara);
  const RateReport rep = decay_rate(table, params);

  json doc;
  doc["command"] = "rate";
  doc["model"] = model_block(cfg);
  doc["params"] = {{"theta", theta},
                   {"epsilon", cfg.epsilon},
                   {"v_b", cfg.v_b},
                   {"omega_w", cfg.omega_w},
                   {"omega0", cfg.omega0}};
  doc["gamma_rate"] = rep.gamma_rate * cfg.omega0;
  doc["arrhenius"] = rep.arrhenius;
  doc["prefactor_classical"] = rep.prefactor_classical;
  doc["quantum_factor"] = rep.quantum_factor;
  doc["omega_r"] = rep.omega_r;
  doc["theta_c"] = rep.theta_c;
  doc["validity"] = validity_block(rep);
  doc["provenance"] = provenance(cfg);
  return doc.dump(2) + "\n";
}

std::string cmd_flux_profile(const RunConfig& cfg, double q_min, double q_max,
                             double q_step) {
  if (!(q_step > 0.0) || !(q_max >= q_min))
    throw DomainError("flux-profile: need q_min <= q_max and q_step > 0");
  const DampingModel m = cfg.model();
  std::vector<double> grid;
  for (double q = q_min; q <= q_max + 1e-12 * q_step; q += q_step) grid.push_back(q);

  std::string out = "q,theta,g_diag\n";
  for (const double theta : cfg.thetas) {
    const FluxState st = make_flux_state(m, theta, NormMode::relative, cfg.n_matsubara);
    for (const auto& row : flux_profile(st, grid))
      out += fmt(row.q) + "," + fmt(theta) + "," + fmt(row.g_diag) + "\n";
  }
  return out;
}

std::string cmd_critical_theta(const RunConfig& cfg) {
  const DampingModel m = cfg.model();
  json doc;
  doc["command"] = "critical-theta";
  doc["model"] = model_block(cfg);
  doc["theta_c"] = theta_critical(m, cfg.tol_root, cfg.n_matsubara);
  doc["omega_r"] = grote_hynes(m);
  doc["provenance"] = provenance(cfg);
  return doc.dump(2) + "\n";
}

std::string cmd_validity(const RunConfig& cfg) {
  const DampingModel m = cfg.model();
  const double theta = cfg.single_theta();
  const SystemParams params{theta, cfg.epsilon, cfg.v_b, cfg.omega_w, 1.0};
  const MatsubaraTable table = build_table(m, theta, cfg.n_matsubara);

  const double theta_c = theta_critical(m, cfg.tol_root, cfg.n_matsubara);
  const double lambda = lambda_cap(table).value;
  const double omega_r = grote_hynes(m);
  std::optional<double> omega;
  if (m.has_smooth_kernel()) omega = omega_cap(table).value;

  const MatchingReport match = matching_condition(lambda, omega, omega_r, params);
  const PlateauWindow window = plateau_window(lambda, omega_r, params);

  json doc;
  doc["command"] = "validity";
  doc["model"] = model_block(cfg);
  doc["params"] = {{"theta", theta},
                   {"epsilon", cfg.epsilon},
                   {"v_b", cfg.v_b},
                   {"omega_w", cfg.omega_w}};
  doc["lambda"] = lambda;
  doc["omega_r"] = omega_r;
  if (omega) doc["omega"] = *omega;
  doc["theta_c"] = theta_c;
  doc["theta_ratio"] = theta / theta_c;
  doc["matching_status"] = matching_status_name(match.status);
  doc["matching_ok"] = match.ok;
  if (std::isfinite(match.ratio)) doc["matching_ratio"] = match.ratio;
  doc["plateau_t_min"] = window.t_min;
  doc["plateau_t_max"] = window.t_max;
  doc["plateau_window_nonempty"] = window.ok;
  if (m.is_drude() && theta < std::numbers::pi)
    doc["drude_min_gamma"] = drude_min_gamma(m, theta, params, cfg.n_matsubara);
  doc["provenance"] = provenance(cfg);
  return doc.dump(2) + "\n";
}

std::string cmd_timeseries(const RunConfig& cfg, double wt_min, double wt_max,
                           double wt_step, double x_f, double r_f) {
  if (!(wt_step > 0.0) || !(wt_max >= wt_min))
    throw DomainError("timeseries: need wt_min <= wt_max and wt_step > 0");
  const DampingModel m = cfg.model();
  const double theta = cfg.single_theta();
  const FluxState st = make_flux_state(m, theta, NormMode::relative, cfg.n_matsubara);
  const BarrierDynamics dyn = make_barrier_dynamics(m, theta, cfg.n_matsubara);
  const bool exact_s = m.has_smooth_kernel();

  std::string out = "t,a,s,g_re,g_im\n";
  for (double wt = wt_min; wt <= wt_max + 1e-12 * wt_step; wt += wt_step) {
    const double t = wt / st.omega_r;
    const double a = a_of_t(dyn.decomposition, t);
    const double s = exact_s ? s_of_t(dyn, t) : s_asymptotic(dyn, t);
    const cdouble g = form_factor_t(st, x_f, r_f, t);
    out += fmt(t) + "," + fmt(a) + "," + fmt(s) + "," + fmt(g.real()) + "," +
           fmt(g.imag()) + "\n";
  }
  return out;
}

void emit(const RunConfig& cfg, const std::string& document) {
  if (cfg.out_path.empty()) {
    std::cout << document;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw DomainError("cannot open output path '" + cfg.out_path + "'");
  out << document;
}

int exit_code_for_current_exception() {
  try {
    throw;
  } catch (const RegimeError& e) {
    std::cerr << "error (regime): " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    std::cerr << "error (unsupported): " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qkr::cli
