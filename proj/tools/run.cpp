#include "run.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ptmag/entanglement.hpp"
#include "ptmag/model.hpp"

namespace ptmag::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const EffectiveModel& base_model(const RunConfig& rc) { return rc.model.effective; }

EffectiveModel model_at(const RunConfig& rc, double x) {
  const EffectiveModel& m = base_model(rc);
  const double omega1 = rc.detuning.name == "Delta" ? m.omega2() + x : x;
  return EffectiveModel::pt(omega1, m.omega2(), m.Gamma, m.prefactor);
}

std::vector<double> axis_values(const Axis& axis) {
  try {
    return axis.values();
  } catch (const std::exception& e) {
    throw StructuralError(e.what());
  }
}

std::string flag_cell(std::uint32_t flags) { return std::to_string(flags); }

SweepSpec sweep_spec(const RunConfig& rc) {
  SweepSpec spec;
  const EffectiveModel& m = base_model(rc);
  spec.Gamma = m.Gamma;
  spec.omega2 = m.omega2();
  spec.prefactor = m.prefactor;
  spec.detuning = rc.detuning;
  spec.time = rc.time;
  spec.temperatures = rc.temperatures;
  if (rc.input.kind == InitialCondition::Kind::Thermal) spec.temperatures = {rc.input.temperature};
  if (rc.input.kind == InitialCondition::Kind::Fock) {
    throw StructuralError("sweep-precision supports vacuum or thermal input only");
  }
  spec.options = rc.metrology;
  try {
    spec.validate();
  } catch (const std::exception& e) {
    throw StructuralError(e.what());
  }
  return spec;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

// gnuplot script plotting one curve per contiguous block of `block` rows.
std::string plot_script(const std::string& data, std::size_t blocks, std::size_t block, int xcol, int ycol,
                        const std::string& xlabel, const std::string& ylabel, bool logy,
                        const std::vector<std::string>& titles) {
  std::ostringstream s;
  s << "# gnuplot\n";
  s << "set datafile separator ','\n";
  if (logy) s << "set logscale y\n";
  s << "set xlabel " << quoted(xlabel) << "\n";
  s << "set ylabel " << quoted(ylabel) << "\n";
  s << "plot";
  for (std::size_t b = 0; b < blocks; ++b) {
    s << (b ? ", \\\n    " : " ") << quoted(data) << " skip 2 every ::" << b * block << "::" << (b + 1) * block - 1
      << " using " << xcol << ":" << ycol << " with lines title " << quoted(titles[b]);
  }
  s << "\n";
  return s.str();
}

void maybe_plot(const RunConfig& rc, const std::string& data_stem, const std::string& script) {
  if (!rc.plot_script || rc.format != OutputFormat::Csv) return;
  write_text(rc.out_dir / (data_stem + ".gp"), script);
}

double moment_distance(const MomentState& a, const MomentState& b) {
  double scale = 0.0;
  scale = std::max({scale, b.N.cwiseAbs().maxCoeff(), b.M.cwiseAbs().maxCoeff(), b.mean.cwiseAbs().maxCoeff()});
  const double diff = std::max({(a.N - b.N).cwiseAbs().maxCoeff(), (a.M - b.M).cwiseAbs().maxCoeff(),
                                (a.mean - b.mean).cwiseAbs().maxCoeff()});
  return scale > 0.0 ? diff / scale : diff;
}

int run_photon_number(const RunConfig& rc, std::ostream& log) {
  const Table table = photon_number_table(rc);
  const auto path = write_table(table, rc, rc.stem());
  maybe_plot(rc, rc.stem(),
             plot_script(rc.stem() + ".csv", 1, table.rows.size(), 1, 2, "t", "N_c", false, {"N_c"}));
  log << "wrote " << path.string() << " (" << table.rows.size() << " rows)\n";
  return kExitOk;
}

int run_sweep(const RunConfig& rc, std::ostream& log) {
  const SweepResult result = sweep_precision(sweep_spec(rc));
  const Table table = sweep_table(rc, result);
  const Table minima = argmin_table(rc, result);
  const auto path = write_table(table, rc, rc.stem());
  const auto min_path = write_table(minima, rc, rc.stem() + "_argmin");

  const std::size_t slices = result.minima.size();
  std::vector<std::string> titles;
  for (const auto& s : result.minima) {
    titles.push_back(result.vacuum ? "t=" + format_number(s.t)
                                   : "t=" + format_number(s.t) + " T=" + format_number(s.temperature));
  }
  maybe_plot(rc, rc.stem(),
             plot_script(rc.stem() + ".csv", slices, result.rows.size() / slices, 1, 7, result.axis_name,
                         "delta^2 omega_1", true, titles));

  std::size_t flagged = 0;
  for (const auto& row : result.rows) flagged += row.result.ok() ? 0 : 1;
  log << "wrote " << path.string() << " (" << result.rows.size() << " rows, " << flagged << " flagged)\n";
  log << "wrote " << min_path.string() << "\n";
  return kExitOk;
}

int run_qfi(const RunConfig& rc, std::ostream& log) {
  const Table table = qfi_table(rc);
  const auto path = write_table(table, rc, rc.stem());
  log << "wrote " << path.string() << " (" << table.rows.size() << " rows)\n";
  return kExitOk;
}

int run_entanglement(const RunConfig& rc, std::ostream& log) {
  const Table table = entanglement_table(rc);
  const auto path = write_table(table, rc, rc.stem());
  const auto deltas = axis_values(rc.detuning);
  std::vector<std::string> titles;
  for (double x : deltas) titles.push_back(rc.detuning.name + "=" + format_number(x));
  maybe_plot(rc, rc.stem(),
             plot_script(rc.stem() + ".csv", deltas.size(), table.rows.size() / deltas.size(), 2, 3, "t", "nu_-",
                         false, titles));
  log << "wrote " << path.string() << " (" << table.rows.size() << " rows)\n";
  return kExitOk;
}

int run_sensitivity(const RunConfig& rc, std::ostream& log) {
  const std::string report = sensitivity_report(rc);
  std::filesystem::path path;
  if (rc.format == OutputFormat::Csv) {
    path = rc.out_dir / (rc.stem() + ".txt");
    write_text(path, report);
  } else {
    // Same key/value pairs as the text report, as a JSON object per block.
    nlohmann::ordered_json doc;
    doc["schema"] = "ptmag-json v1";
    doc["command"] = "sensitivity";
    doc["config_hash"] = config_hash(rc);
    std::istringstream in(report);
    std::string line, block = "primary";
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (line.front() == '[') {
        block = line.substr(1, line.size() - 2);
        continue;
      }
      const auto eq = line.find(" = ");
      doc[block][line.substr(0, eq)] = line.substr(eq + 3);
    }
    path = rc.out_dir / (rc.stem() + ".json");
    write_text(path, doc.dump(2) + "\n");
  }
  log << report;
  log << "wrote " << path.string() << "\n";
  return kExitOk;
}

int run_validate(const RunConfig& rc, std::ostream& log) {
  const auto checks = validation_checks(rc.tolerance);
  Table table;
  table.columns = {"check", "value", "tolerance", "pass"};
  bool all = true;
  for (const auto& c : checks) {
    table.add({c.name, c.value, c.tolerance, std::string(c.pass ? "pass" : "FAIL")});
    all = all && c.pass;
    log << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << format_number(c.value)
        << " tol=" << format_number(c.tolerance) << "\n";
  }
  const auto path = write_table(table, rc, rc.stem());
  log << "wrote " << path.string() << "\n";
  return all ? kExitOk : kExitCheckFailed;
}

void report_block(std::ostringstream& s, const FieldPrecision& r) {
  s << "convention = " << to_string(r.convention) << "\n";
  s << "rate_scale = " << format_number(r.rate_scale) << "\n";
  s << "gamma0 = " << format_number(r.gamma0) << "\n";
  s << "Gamma = " << format_number(r.Gamma) << "\n";
  s << "Delta = " << format_number(r.Delta) << "\n";
  s << "kappa = " << format_number(r.kappa) << "\n";
  s << "prefactor = " << format_number(r.prefactor) << "\n";
  s << "phase = " << to_string(r.phase) << "\n";
  s << "adiabatic_valid = " << (r.adiabatic_valid ? "true" : "false") << "\n";
  s << "t = " << format_number(r.t) << "\n";
  s << "Gamma_t = " << format_number(r.Gamma_t) << "\n";
  s << "N_c = " << format_number(r.photons) << "\n";
  s << "var_N_c = " << format_number(r.variance_Nc) << "\n";
  s << "dN_c_domega1 = " << format_number(r.dNc_domega1) << "\n";
  s << "delta2_omega1 = " << format_number(r.delta2_omega1) << "\n";
  s << "delta_omega1 = " << format_number(r.delta_omega1) << "\n";
  s << "deltaB = " << format_number(r.deltaB) << "\n";
  s << "S = " << format_number(sensitivity(r.deltaB, r.t)) << "\n";
  s << "deltaB_per_sqrt_t = " << format_number(r.deltaB / std::sqrt(r.t)) << "\n";
  s << "flags = " << describe_flags(r.flags) << "\n";
}

}  // namespace

Table photon_number_table(const RunConfig& rc) {
  const EffectiveModel& m = base_model(rc);
  const auto times = axis_values(rc.time);
  Table t;
  t.columns = {"t", "N_c", "N_c_closed", "N_aa", "N_bb", "re_N_ab", "im_N_ab",
               "re_M_aa", "im_M_aa", "re_M_ab", "im_M_ab", "re_M_bb", "im_M_bb"};
  const bool closed = rc.input.kind != InitialCondition::Kind::Fock;
  for (double time : times) {
    try {
      const MomentState ms = m.is_pt() ? evolve_moments(m, rc.input, time)
                                       : oracle_integrate_effective(m, rc.input, time, rc.tolerance);
      const double nc_closed = closed && m.is_pt()
                                   ? photon_number_closed_form(m, rc.input, time, rc.metrology.thermal.form)
                                   : kNaN;
      t.add({time, photon_number(ms, m.prefactor), nc_closed, ms.N(0, 0).real(), ms.N(1, 1).real(),
             ms.N(0, 1).real(), ms.N(0, 1).imag(), ms.M(0, 0).real(), ms.M(0, 0).imag(), ms.M(0, 1).real(),
             ms.M(0, 1).imag(), ms.M(1, 1).real(), ms.M(1, 1).imag()});
    } catch (const std::invalid_argument& e) {
      throw StructuralError(e.what());
    }
  }
  return t;
}

Table sweep_table(const RunConfig& rc, const SweepResult& result) {
  (void)rc;
  Table t;
  t.columns = {result.axis_name, "t", "T", "N_c", "var_N_c", "dN_c_domega1", "delta2_omega1", "qfi", "flags"};
  for (const auto& row : result.rows) {
    const auto& r = row.result;
    t.add({row.x, r.t, row.temperature, r.photons, r.variance_Nc, r.dNc_domega1, r.delta2_omega1, r.qfi,
           flag_cell(r.flags)});
  }
  return t;
}

Table argmin_table(const RunConfig& rc, const SweepResult& result) {
  (void)rc;
  const bool by_delta = result.axis_name == "Delta";
  Table t;
  t.columns = {"t", "T", "argmin_" + result.axis_name};
  if (!by_delta) t.columns.push_back("argmin_Delta");
  for (const char* c : {"delta2_omega1_min", "at_lower_edge", "at_upper_edge"}) t.columns.push_back(c);
  for (const auto& s : result.minima) {
    std::vector<Cell> row{s.t, s.temperature, s.found ? s.x : kNaN};
    if (!by_delta) row.push_back(s.found ? s.Delta : kNaN);
    row.push_back(s.found ? s.delta2_omega1 : kNaN);
    row.push_back(std::string(!s.found ? "nan" : s.at_lower_edge ? "1" : "0"));
    row.push_back(std::string(!s.found ? "nan" : s.at_upper_edge ? "1" : "0"));
    t.add(std::move(row));
  }
  return t;
}

Table qfi_table(const RunConfig& rc) {
  if (rc.input.kind != InitialCondition::Kind::Vacuum || !rc.temperatures.empty()) {
    throw StructuralError("qfi is defined for vacuum input only");
  }
  const auto xs = axis_values(rc.detuning);
  const auto times = axis_values(rc.time);
  Table t;
  t.columns = {rc.detuning.name, "t", "N_c", "dN_c_domega1", "qfi_gaussian", "qfi_reduced", "inv_delta2_omega1",
               "flags"};
  for (double time : times) {
    for (double x : xs) {
      try {
        const EffectiveModel m = model_at(rc, x);
        const auto routes = qfi_routes(m, InitialCondition::vacuum(), time);
        const auto p = precision_error_propagation(m, InitialCondition::vacuum(), time, rc.metrology);
        t.add({x, time, routes.photons, routes.derivative, routes.general, routes.reduced, 1.0 / p.delta2_omega1,
               flag_cell(p.flags)});
      } catch (const std::exception&) {
        t.add({x, time, kNaN, kNaN, kNaN, kNaN, kNaN, flag_cell(kFlagEvaluationFailed)});
      }
    }
  }
  return t;
}

Table entanglement_table(const RunConfig& rc) {
  const auto xs = axis_values(rc.detuning);
  const auto times = axis_values(rc.time);
  Table t;
  t.columns = {"Delta", "t", "nu_minus", "log_negativity", "hz_witness"};
  for (double x : xs) {
    const EffectiveModel m = model_at(rc, x);
    for (double time : times) {
      try {
        const auto rows = entanglement_sweep(m, rc.input, std::span<const double>(&time, 1));
        const auto& r = rows.front();
        t.add({m.Delta, time, r.nu_minus, r.log_negativity, r.hz_witness});
      } catch (const std::invalid_argument& e) {
        throw StructuralError(e.what());
      } catch (const std::exception&) {
        t.add({m.Delta, time, kNaN, kNaN, kNaN});
      }
    }
  }
  return t;
}

std::string sensitivity_report(const RunConfig& rc) {
  std::ostringstream s;
  s << "# ptmag sensitivity report v1 config_hash=" << config_hash(rc) << "\n";
  s << "device = " << (rc.sensing_device_from_model ? "config" : "reference") << "\n";
  FieldPrecision primary;
  try {
    primary = field_precision(rc.sensing);
  } catch (const std::invalid_argument& e) {
    throw StructuralError(e.what());
  }
  report_block(s, primary);
  MagnetometerSpec other = rc.sensing;
  other.convention = rc.sensing.convention == FrequencyConvention::Angular ? FrequencyConvention::CyclicAsRate
                                                                            : FrequencyConvention::Angular;
  s << "[comparison]\n";
  report_block(s, field_precision(other));
  return s.str();
}

std::vector<ValidationCheck> validation_checks(const StepControl& control) {
  std::vector<ValidationCheck> checks;
  const auto add = [&checks](std::string name, double value, double tol) {
    checks.push_back({std::move(name), value, tol, std::isfinite(value) && value <= tol});
  };
  const std::vector<double> deltas{0.0, 1.0, 2.0, 3.0, 4.0};
  const std::vector<double> times{0.5, 1.0, 2.5, 5.0};

  double det_err = 0.0;
  for (double d : deltas) {
    for (double t : times) {
      const auto m = EffectiveModel::pt(1.0 + d, 1.0, 1.0, 0.01);
      const auto w = propagator(m, t);
      det_err = std::max(det_err, std::abs(w.det() - std::exp(std::complex<double>(0.0, -m.Omega * t))));
    }
  }
  add("propagator determinant", det_err, 1e-10);

  double vac_err = 0.0, th_err = 0.0, ode_err = 0.0, var_err = 0.0, crb_err = 0.0;
  const std::vector<InitialCondition> inputs{InitialCondition::vacuum(), InitialCondition::thermal(1.0),
                                             InitialCondition::fock(0, 1)};
  for (double d : deltas) {
    const auto m = EffectiveModel::pt(1.0 + d, 1.0, 1.0, 0.01);
    for (const auto& init : inputs) {
      const auto oracle = oracle_trajectory_effective(m, init, times, control);
      for (std::size_t k = 0; k < times.size(); ++k) {
        ode_err = std::max(ode_err, moment_distance(evolve_moments(m, init, times[k]), oracle[k]));
      }
    }
    for (double t : times) {
      const auto vac = evolve_moments(m, InitialCondition::vacuum(), t);
      const double nc = photon_number(vac, m.prefactor);
      vac_err = std::max(vac_err, std::abs(photon_number_closed_form(m, InitialCondition::vacuum(), t) - nc) / nc);
      var_err = std::max(var_err, std::abs(photon_variance(vac, m.prefactor) - nc * (1.0 + nc)) / (nc * (1.0 + nc)));
      const auto th = evolve_moments(m, InitialCondition::thermal(1.0), t);
      const double nt = photon_number(th, m.prefactor);
      th_err = std::max(
          th_err,
          std::abs(photon_number_closed_form(m, InitialCondition::thermal(1.0), t, ThermalForm::MomentExact) - nt) / nt);
      const auto p = precision_error_propagation(m, InitialCondition::vacuum(), t);
      if (p.ok()) crb_err = std::max(crb_err, std::abs(p.crb - p.delta2_omega1) / p.delta2_omega1);
    }
  }
  add("closed form vs moments (vacuum)", vac_err, 1e-8);
  add("moment-exact closed form vs moments (thermal)", th_err, 1e-8);
  add("analytic vs effective ODE oracle", ode_err, 1e-6);
  add("vacuum variance identity", var_err, 1e-10);
  add("Cramer-Rao saturation", crb_err, 1e-10);

  // Three-mode model at kappa = 100 Gamma, g = 10, omega3 = 0, symmetric detunings.
  double full_err = 0.0;
  const std::vector<double> full_times{0.5, 1.0, 2.0, 3.0, 4.0, 5.0};
  for (double d : {0.0, 1.0, 2.0, 3.0}) {
    PhysicalParams p;
    p.omega1 = 0.5 * d;
    p.omega2 = -0.5 * d;
    p.g13 = p.g23 = 10.0;
    p.kappa = 100.0;
    p.gamma1 = p.gamma2 = 1.0;
    const auto m = reduce(p);
    const auto full = oracle_trajectory_full(p, InitialCondition::vacuum(), full_times, control);
    for (std::size_t k = 0; k < full_times.size(); ++k) {
      const double nc = photon_number_closed_form(m, InitialCondition::vacuum(), full_times[k]);
      full_err = std::max(full_err, std::abs(full[k].cavity_photons() - nc) / nc);
    }
  }
  add("three-mode vs closed form (kappa=100 Gamma; Gamma t 0.5 to 5)", full_err, 0.05);
  return checks;
}

int run(const RunConfig& config, std::ostream& log) {
  try {
    switch (config.command) {
      case Command::PhotonNumber: return run_photon_number(config, log);
      case Command::SweepPrecision: return run_sweep(config, log);
      case Command::Qfi: return run_qfi(config, log);
      case Command::Entanglement: return run_entanglement(config, log);
      case Command::Sensitivity: return run_sensitivity(config, log);
      case Command::Validate: return run_validate(config, log);
    }
  } catch (const StructuralError& e) {
    log << "error: " << e.what() << "\n";
    return kExitStructural;
  } catch (const std::runtime_error& e) {
    log << "error: " << e.what() << "\n";
    return kExitStructural;
  }
  return kExitStructural;
}

}  // namespace ptmag::cli
