#include "run_config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <toml.hpp>

namespace ptmag::cli {
namespace {

int line_of(const toml::node& node) { return static_cast<int>(node.source().begin.line); }

const toml::table kEmptyTable{};

// Typed access to one TOML table with located errors.
class Section {
 public:
  Section(std::string source, const toml::table* table, std::string name)
      : source_(std::move(source)), table_(table ? table : &kEmptyTable), name_(std::move(name)) {}

  bool present() const { return table_ != &kEmptyTable; }
  bool has(std::string_view key) const { return table_->contains(key); }
  std::string field(std::string_view key) const { return name_ + "." + std::string(key); }

  [[noreturn]] void fail(std::string_view key, const std::string& message) const {
    const toml::node* node = table_->get(key);
    throw ConfigError(source_, node ? line_of(*node) : 0, field(key), message);
  }

  std::optional<double> number(std::string_view key) const {
    const toml::node* node = table_->get(key);
    if (!node) return std::nullopt;
    return as_number(*node, field(key));
  }

  double number_or(std::string_view key, double fallback) const { return number(key).value_or(fallback); }

  std::optional<std::int64_t> integer(std::string_view key) const {
    const toml::node* node = table_->get(key);
    if (!node) return std::nullopt;
    if (!node->is_integer()) fail(key, "expected an integer");
    return node->value<std::int64_t>();
  }

  std::optional<bool> boolean(std::string_view key) const {
    const toml::node* node = table_->get(key);
    if (!node) return std::nullopt;
    if (!node->is_boolean()) fail(key, "expected true or false");
    return node->value<bool>();
  }

  std::optional<std::string> string(std::string_view key) const {
    const toml::node* node = table_->get(key);
    if (!node) return std::nullopt;
    if (!node->is_string()) fail(key, "expected a string");
    return node->value<std::string>();
  }

  std::optional<std::vector<double>> numbers(std::string_view key) const {
    const toml::node* node = table_->get(key);
    if (!node) return std::nullopt;
    const toml::array* arr = node->as_array();
    if (!arr) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const toml::node& item : *arr) out.push_back(as_number(item, field(key)));
    return out;
  }

  Section sub(std::string_view key) const {
    const toml::node* node = table_->get(key);
    if (node && !node->is_table()) fail(key, "expected a table");
    return Section(source_, node ? node->as_table() : nullptr, name_.empty() ? std::string(key) : field(key));
  }

  void reject_unknown(std::initializer_list<std::string_view> known) const {
    for (auto&& [key, node] : *table_) {
      bool ok = false;
      for (auto k : known) ok = ok || key.str() == k;
      if (!ok) throw ConfigError(source_, line_of(node), field(key.str()), "unknown key");
    }
  }

 private:
  double as_number(const toml::node& node, const std::string& where) const {
    if (!node.is_integer() && !node.is_floating_point()) {
      throw ConfigError(source_, line_of(node), where, "expected a number");
    }
    const double v = *node.value<double>();
    if (!std::isfinite(v)) throw ConfigError(source_, line_of(node), where, "must be finite");
    return v;
  }

  std::string source_;
  const toml::table* table_;
  std::string name_;
};

Axis parse_axis(const Section& s, std::string default_name, const Axis& fallback) {
  if (!s.present()) return fallback;
  s.reject_unknown({"name", "min", "max", "count", "scale", "values"});
  const std::string name = s.string("name").value_or(default_name);
  Axis axis;
  if (auto values = s.numbers("values")) {
    if (s.has("min") || s.has("max") || s.has("count")) s.fail("values", "give either values or min/max/count");
    axis = Axis::list(name, std::move(*values));
    if (axis.explicit_values.empty()) s.fail("values", "axis is empty");
  } else {
    const auto count = s.integer("count");
    if (!count) s.fail("count", "missing");
    if (*count <= 0) s.fail("count", "axis is empty");
    const auto min = s.number("min");
    const auto max = s.number("max");
    if (!min) s.fail("min", "missing");
    if (!max) s.fail("max", "missing");
    const std::string scale = s.string("scale").value_or("linear");
    if (scale == "linear") {
      axis = Axis::linear(name, *min, *max, static_cast<std::size_t>(*count));
    } else if (scale == "log") {
      axis = Axis::logarithmic(name, *min, *max, static_cast<std::size_t>(*count));
    } else {
      s.fail("scale", "expected \"linear\" or \"log\"");
    }
  }
  try {
    (void)axis.values();
  } catch (const std::exception& e) {
    s.fail(s.has("values") ? "values" : "count", e.what());
  }
  return axis;
}

void parse_grid(const Section& grid, RunConfig& rc) {
  grid.reject_unknown({"detuning", "time", "temperatures"});
  rc.detuning = parse_axis(grid.sub("detuning"), "Delta", rc.detuning);
  if (rc.detuning.name != "Delta" && rc.detuning.name != "omega1") {
    grid.sub("detuning").fail("name", "expected \"Delta\" or \"omega1\"");
  }
  rc.time = parse_axis(grid.sub("time"), "t", rc.time);
  if (rc.time.values().front() < 0.0) grid.sub("time").fail("min", "times must be non-negative");
  if (auto temps = grid.numbers("temperatures")) {
    for (double temp : *temps) {
      if (!(temp > 0.0)) grid.fail("temperatures", "temperatures must be positive");
    }
    rc.temperatures = std::move(*temps);
  }
}

void parse_input(const Section& s, RunConfig& rc) {
  s.reject_unknown({"kind", "temperature", "n_a", "n_b"});
  const std::string kind = s.string("kind").value_or("vacuum");
  if (kind == "vacuum") {
    rc.input = InitialCondition::vacuum();
  } else if (kind == "thermal") {
    const auto temp = s.number("temperature");
    if (!temp) s.fail("temperature", "missing for thermal input");
    if (*temp < 0.0) s.fail("temperature", "must be non-negative");
    rc.input = InitialCondition::thermal(*temp);
  } else if (kind == "fock") {
    const auto na = s.integer("n_a").value_or(0);
    const auto nb = s.integer("n_b").value_or(0);
    if (na < 0) s.fail("n_a", "must be non-negative");
    if (nb < 0) s.fail("n_b", "must be non-negative");
    rc.input = InitialCondition::fock(static_cast<int>(na), static_cast<int>(nb));
  } else {
    s.fail("kind", "expected \"vacuum\", \"thermal\" or \"fock\"");
  }
}

void parse_metrology(const Section& s, RunConfig& rc) {
  s.reject_unknown({"thermal_form", "freeze_occupations", "derivative", "fd_step"});
  if (auto form = s.string("thermal_form")) {
    if (*form == "printed") {
      rc.metrology.thermal.form = ThermalForm::Printed;
    } else if (*form == "moment-exact") {
      rc.metrology.thermal.form = ThermalForm::MomentExact;
    } else {
      s.fail("thermal_form", "expected \"printed\" or \"moment-exact\"");
    }
  }
  rc.metrology.thermal.freeze_occupations = s.boolean("freeze_occupations").value_or(false);
  const std::string method = s.string("derivative").value_or("analytic");
  if (method == "analytic") {
    if (s.has("fd_step")) s.fail("fd_step", "only used with derivative = \"finite-difference\"");
    rc.metrology.derivative = DerivativeMethod::analytic();
  } else if (method == "finite-difference") {
    const double h = s.number_or("fd_step", 1e-5);
    if (!(h > 0.0)) s.fail("fd_step", "must be positive");
    rc.metrology.derivative = DerivativeMethod::finite_difference(h);
  } else {
    s.fail("derivative", "expected \"analytic\" or \"finite-difference\"");
  }
}

void parse_tolerance(const Section& s, RunConfig& rc) {
  s.reject_unknown({"rel", "abs"});
  rc.tolerance.rel_tol = s.number_or("rel", rc.tolerance.rel_tol);
  rc.tolerance.abs_tol = s.number_or("abs", rc.tolerance.abs_tol);
  if (!(rc.tolerance.rel_tol > 0.0)) s.fail("rel", "must be positive");
  if (!(rc.tolerance.abs_tol > 0.0)) s.fail("abs", "must be positive");
}

void parse_output(const Section& s, RunConfig& rc) {
  s.reject_unknown({"name", "format", "plot_script"});
  if (auto name = s.string("name")) {
    if (name->empty() || name->find_first_of("/\\") != std::string::npos) s.fail("name", "must be a plain file stem");
    rc.name = *name;
  }
  if (auto format = s.string("format")) {
    if (*format == "csv") {
      rc.format = OutputFormat::Csv;
    } else if (*format == "json") {
      rc.format = OutputFormat::Json;
    } else {
      s.fail("format", "expected \"csv\" or \"json\"");
    }
  }
  rc.plot_script = s.boolean("plot_script").value_or(false);
}

void parse_sensing(const Section& s, RunConfig& rc) {
  s.reject_unknown({"gamma0", "omega_m0", "integration_time", "convention"});
  rc.sensing.gamma0 = s.number_or("gamma0", rc.sensing.gamma0);
  rc.sensing.omega_m0 = s.number_or("omega_m0", rc.sensing.omega_m0);
  rc.sensing.integration_time = s.number_or("integration_time", rc.sensing.integration_time);
  if (auto c = s.string("convention")) {
    if (*c == "angular") {
      rc.sensing.convention = FrequencyConvention::Angular;
    } else if (*c == "cyclic-as-rate") {
      rc.sensing.convention = FrequencyConvention::CyclicAsRate;
    } else {
      s.fail("convention", "expected \"angular\" or \"cyclic-as-rate\"");
    }
  }
  if (!(rc.sensing.gamma0 > 0.0)) s.fail("gamma0", "must be positive");
  if (!(rc.sensing.integration_time > 0.0)) s.fail("integration_time", "must be positive");
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::PhotonNumber: return "photon-number";
    case Command::SweepPrecision: return "sweep-precision";
    case Command::Qfi: return "qfi";
    case Command::Entanglement: return "entanglement";
    case Command::Sensitivity: return "sensitivity";
    case Command::Validate: return "validate";
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view text) {
  for (Command c : {Command::PhotonNumber, Command::SweepPrecision, Command::Qfi, Command::Entanglement,
                    Command::Sensitivity, Command::Validate}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

std::string RunConfig::stem() const { return name.empty() ? std::string(to_string(command)) : name; }

RunConfig parse_run_config(Command command, std::string_view text, std::string_view source,
                           const Overrides& overrides) {
  RunConfig rc;
  rc.command = command;
  rc.source = std::string(source);
  rc.text = std::string(text);

  toml::table doc;
  try {
    doc = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    throw ConfigError(rc.source, static_cast<int>(e.source().begin.line), "", std::string(e.description()));
  }
  const Section root(rc.source, &doc, "");
  for (auto&& [key, node] : doc) {
    const std::string_view k = key.str();
    if (k != "units" && k != "model" && k != "grid" && k != "input" && k != "metrology" && k != "tolerance" &&
        k != "output" && k != "sensing") {
      throw ConfigError(rc.source, line_of(node), std::string(k), "unknown section");
    }
  }

  rc.model = parse_model_config(text, source);
  if (overrides.units) {
    if (doc.contains("units") && *overrides.units != rc.model.units) {
      throw ConfigError(rc.source, line_of(*doc.get("units")), "units",
                        "config is tagged " + std::string(to_string(rc.model.units)) + " but --units asks for " +
                            std::string(to_string(*overrides.units)));
    }
    rc.model.units = *overrides.units;
  }

  parse_grid(root.sub("grid"), rc);
  parse_input(root.sub("input"), rc);
  parse_metrology(root.sub("metrology"), rc);
  parse_tolerance(root.sub("tolerance"), rc);
  parse_output(root.sub("output"), rc);
  parse_sensing(root.sub("sensing"), rc);

  if (rc.model.three_mode && rc.model.units == UnitTag::RadPerSecond) {
    rc.sensing.device = rc.model.device;
    rc.sensing_device_from_model = true;
  }
  if (rc.input.kind == InitialCondition::Kind::Thermal && !rc.temperatures.empty()) {
    throw ConfigError(rc.source, 0, "grid.temperatures", "give either [input] thermal or a temperature grid");
  }

  if (overrides.out_dir) rc.out_dir = *overrides.out_dir;
  if (overrides.format) rc.format = *overrides.format;
  if (overrides.plot_script) rc.plot_script = true;
  return rc;
}

RunConfig load_run_config(Command command, const std::optional<std::filesystem::path>& path,
                          const Overrides& overrides) {
  if (!path) return parse_run_config(command, "", "<defaults>", overrides);
  std::ifstream in(*path);
  if (!in) throw ConfigError(path->string(), 0, "", "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(command, buf.str(), path->string(), overrides);
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  const auto feed = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  feed(to_string(config.command));
  feed("\n");
  feed(to_string(config.model.units));
  feed("\n");
  feed(config.text);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ptmag::cli
