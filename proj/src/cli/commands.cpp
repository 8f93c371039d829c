#include "ptgp/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "ptgp/errors.hpp"
#include "ptgp/gaugemap.hpp"
#include "ptgp/phase_engine.hpp"
#include "ptgp/thermal.hpp"

namespace ptgp::cli {

namespace {

PTSystem system_for(const RunConfig& cfg) { return make_model(cfg.model.name, cfg.model.params); }

LoopPath oracle_path(const RunConfig& cfg) {
  return LoopPath::latitude(cfg.oracle.theta, cfg.oracle.samples, cfg.path.tau);
}

ScanOptions scan_options(const RunConfig& cfg) {
  ScanOptions opts;
  opts.threads = cfg.threads;
  opts.tol = cfg.tolerances;
  return opts;
}

void add_oracle_row(Table& t, const OracleResult& r) {
  t.add_row({r.ramp_factor, r.error, r.leaked, static_cast<long long>(r.breakdown), r.phi_total.real(),
             r.phi_total.imag(), r.predicted.real(), r.predicted.imag()});
}

Table oracle_table() {
  return Table({"ramp_factor", "error", "leaked", "breakdown", "re_phi_total", "im_phi_total", "re_predicted",
                "im_predicted"});
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::Config, "cannot write '" + path + "'");
  f << text;
}

}  // namespace

CommandOutput cmd_check(const RunConfig& cfg) {
  const auto sys = system_for(cfg);
  const auto path = build_path(cfg);
  const auto& tol = cfg.tolerances;

  const auto spectra = spectrum_along(sys, path, tol);
  double pseudo = 0.0, bio = 0.0, complete = 0.0, pairing = 0.0;
  for (std::size_t k = 0; k < spectra.size(); ++k) {
    pseudo = std::max(pseudo, check_pseudo_hermiticity(sys, path.points()[k], tol));
    const auto r = spectrum_residuals(sys, spectra[k]);
    bio = std::max(bio, r.biorthonormality);
    complete = std::max(complete, r.completeness);
    pairing = std::max(pairing, r.metric_pairing);
  }
  const auto pmap = proper_map_along(sys, path, tol);
  double leak = 0.0;
  for (std::size_t n = 0; n < spectra.front().size(); ++n) {
    leak = std::max(leak, std::abs(theta2_loop(spectra, pmap, n, tol).imaginary_residual));
  }

  Table t({"check", "value", "tolerance", "status"});
  CommandOutput out;
  auto row = [&](const char* name, double value, double limit) {
    const bool ok = value <= limit;
    if (!ok) out.exit_code = kExitPhysics;
    t.add_row({std::string(name), value, limit, std::string(ok ? "ok" : "fail")});
  };
  row("pseudo_hermiticity", pseudo, tol.eig_residual);
  row("biorthonormality", bio, tol.eig_residual);
  row("completeness", complete, tol.eig_residual);
  row("metric_pairing", pairing, tol.eig_residual);
  row("properness", pmap.residual, tol.proper_residual);
  row("theta2_imaginary", leak, tol.imaginary_leak);
  out.text = render(t, cfg.output.format, "check");
  return out;
}

CommandOutput cmd_phases(const RunConfig& cfg) {
  const auto reports = phase_reports(system_for(cfg), build_path(cfg), cfg.tolerances);
  Table t({"level", "re_theta1", "im_theta1", "theta2", "theta_berry", "branch", "residual_eq24", "residual_eq25"});
  for (const auto& r : reports) {
    t.add_row({static_cast<long long>(r.level), r.theta1.real(), r.theta1.imag(), r.theta2, r.theta_berry,
               static_cast<long long>(r.branch), r.residual_eq24, r.residual_eq25});
  }
  return {render(t, cfg.output.format, "phases"), "", kExitOk};
}

CommandOutput cmd_igp_scan(const RunConfig& cfg) {
  const auto sys = system_for(cfg);
  const auto thetas = theta_grid(cfg.scan);
  const auto betas = beta_grid(cfg.scan);
  const auto opts = scan_options(cfg);
  const auto fp = family_phases(sys, latitude_family(cfg), thetas, opts);

  Table t({"theta", "beta", "theta_g", "amplitude_abs", "regime", "eff_weight_ratio"});
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const auto& e = fp.energies[i];
    const auto hi = static_cast<std::size_t>(std::max_element(e.begin(), e.end()) - e.begin());
    const auto lo = static_cast<std::size_t>(std::min_element(e.begin(), e.end()) - e.begin());
    for (double beta : betas) {
      const auto r = igp_from_phases(e, fp.theta1[i], beta, cfg.tolerances);
      t.add_row({thetas[i], beta, r.theta_g, std::abs(r.amplitude), std::string(to_string(r.regime)),
                 r.effective_weights[hi] / r.effective_weights[lo]});
    }
  }

  CommandOutput out;
  out.text = render(t, cfg.output.format, "igp-scan");
  if (thetas.size() >= 2 && betas.size() >= 2) out.critical = cmd_critical(cfg).text;
  return out;
}

CommandOutput cmd_critical(const RunConfig& cfg) {
  const auto sys = system_for(cfg);
  const auto points =
      critical_scan(sys, latitude_family(cfg), beta_grid(cfg.scan), theta_grid(cfg.scan), scan_options(cfg));
  std::vector<std::string> cols{"theta", "beta", "jump", "amplitude"};
  for (int n = 0; n < sys.dim(); ++n) cols.push_back(fmt::format("re_theta1_{}", n));
  Table t(cols);
  for (const auto& p : points) {
    std::vector<Cell> row{p.param, p.beta, p.jump, p.amplitude};
    for (double v : p.level_phases) row.emplace_back(v);
    t.add_row(std::move(row));
  }
  return {render(t, cfg.output.format, "critical"), "", kExitOk};
}

CommandOutput cmd_oracle(const RunConfig& cfg) {
  const auto sys = system_for(cfg);
  const auto path = oracle_path(cfg);
  OracleOptions opts;
  opts.throw_on_breakdown = false;
  Table t = oracle_table();
  for (double ramp : cfg.oracle.ramp_factors) {
    add_oracle_row(t, evolve_oracle(sys, path, cfg.oracle.level, ramp, cfg.tolerances, opts));
  }
  return {render(t, cfg.output.format, "oracle"), "", kExitOk};
}

CommandOutput cmd_evolve(const RunConfig& cfg) {
  const auto sys = system_for(cfg);
  OracleOptions opts;
  opts.throw_on_breakdown = false;
  const auto r = evolve_oracle(sys, oracle_path(cfg), cfg.oracle.level, cfg.oracle.ramp, cfg.tolerances, opts);
  Table t = oracle_table();
  add_oracle_row(t, r);
  return {render(t, cfg.output.format, "evolve"), "", r.breakdown ? kExitPhysics : kExitOk};
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"check", "phases", "igp-scan", "critical", "oracle", "evolve"};
  return names;
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    if (err->code() == ErrorCode::Config || err->code() == ErrorCode::InvalidArgument) return kExitConfig;
    return kExitPhysics;
  }
  return kExitFailed;
}

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    CommandOutput result;
    if (name == "check") result = cmd_check(cfg);
    else if (name == "phases") result = cmd_phases(cfg);
    else if (name == "igp-scan") result = cmd_igp_scan(cfg);
    else if (name == "critical") result = cmd_critical(cfg);
    else if (name == "oracle") result = cmd_oracle(cfg);
    else if (name == "evolve") result = cmd_evolve(cfg);
    else throw Error(ErrorCode::Config, "unknown command '" + name + "'");

    if (cfg.output.path.empty()) {
      out << result.text;
      if (!result.critical.empty()) err << "critical points:\n" << result.critical;
    } else {
      write_file(cfg.output.path, result.text);
      if (!result.critical.empty()) write_file(cfg.output.path + ".critical." + cfg.output.format, result.critical);
    }
    return result.exit_code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace ptgp::cli
