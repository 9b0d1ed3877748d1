#include "ptmag/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <toml.hpp>

namespace ptmag {
namespace {

int line_of(const toml::node& node) { return static_cast<int>(node.source().begin.line); }

std::string joined(std::string_view section, std::string_view key) {
  return section.empty() ? std::string(key) : std::string(section) + "." + std::string(key);
}

class Reader {
 public:
  Reader(std::string source, const toml::table& table, std::string section)
      : source_(std::move(source)), table_(table), section_(std::move(section)) {}

  bool has(std::string_view key) const { return table_.contains(key); }

  std::optional<double> number(std::string_view key) const {
    const toml::node* node = table_.get(key);
    if (!node) return std::nullopt;
    const auto v = node->value<double>();
    if (!v || (!node->is_integer() && !node->is_floating_point())) {
      throw ConfigError(source_, line_of(*node), joined(section_, key), "expected a number");
    }
    if (!std::isfinite(*v)) throw ConfigError(source_, line_of(*node), joined(section_, key), "must be finite");
    return v;
  }

  double number_or(std::string_view key, double fallback) const { return number(key).value_or(fallback); }

  void reject_unknown(std::initializer_list<std::string_view> known) const {
    for (auto&& [key, node] : table_) {
      bool ok = false;
      for (auto k : known) ok = ok || key.str() == k;
      if (!ok) throw ConfigError(source_, line_of(node), joined(section_, key.str()), "unknown key");
    }
  }

  [[noreturn]] void fail(std::string_view key, const std::string& message) const {
    const toml::node* node = table_.get(key);
    throw ConfigError(source_, node ? line_of(*node) : 0, joined(section_, key), message);
  }

 private:
  std::string source_;
  const toml::table& table_;
  std::string section_;
};

}  // namespace

std::string_view to_string(UnitTag tag) {
  return tag == UnitTag::RadPerSecond ? "rad_per_s" : "units_of_Gamma";
}

std::optional<UnitTag> parse_unit_tag(std::string_view text) {
  if (text == "rad_per_s") return UnitTag::RadPerSecond;
  if (text == "units_of_Gamma") return UnitTag::UnitsOfGamma;
  return std::nullopt;
}

ConfigError::ConfigError(std::string source, int line, std::string field, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                         (field.empty() ? std::string() : ": " + field) + ": " + message),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

ModelConfig parse_model_config(std::string_view text, std::string_view source) {
  const std::string src(source);
  toml::table doc;
  try {
    doc = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    throw ConfigError(src, static_cast<int>(e.source().begin.line), "", std::string(e.description()));
  }

  ModelConfig out;
  if (const toml::node* units = doc.get("units")) {
    const auto s = units->value<std::string>();
    const auto tag = s ? parse_unit_tag(*s) : std::nullopt;
    if (!tag) throw ConfigError(src, line_of(*units), "units", "expected \"rad_per_s\" or \"units_of_Gamma\"");
    out.units = *tag;
  }

  const toml::table empty;
  const toml::node* model_node = doc.get("model");
  if (model_node && !model_node->is_table()) throw ConfigError(src, line_of(*model_node), "model", "expected a table");
  const Reader r(src, model_node ? *model_node->as_table() : empty, "model");

  if (r.has("kappa")) {
    r.reject_unknown({"omega1", "omega2", "omega3", "g", "g13", "g23", "kappa", "gamma", "gamma1", "gamma2"});
    if (r.has("g") && (r.has("g13") || r.has("g23"))) r.fail("g", "give either g or g13/g23");
    if (r.has("gamma") && (r.has("gamma1") || r.has("gamma2"))) r.fail("gamma", "give either gamma or gamma1/gamma2");
    PhysicalParams& p = out.device;
    p.omega1 = r.number_or("omega1", 0.0);
    p.omega2 = r.number_or("omega2", 0.0);
    p.omega3 = r.number_or("omega3", 0.0);
    const auto g = r.number("g");
    p.g13 = g ? *g : r.number_or("g13", 0.0);
    p.g23 = g ? *g : r.number_or("g23", 0.0);
    p.kappa = *r.number("kappa");
    const double balanced = p.kappa > 0.0 ? p.g13 * p.g23 / p.kappa : 0.0;
    const auto gamma = r.number("gamma");
    p.gamma1 = gamma ? *gamma : r.number_or("gamma1", balanced);
    p.gamma2 = gamma ? *gamma : r.number_or("gamma2", balanced);
    out.three_mode = true;
    try {
      out.effective = reduce(p);
    } catch (const std::exception& e) {
      r.fail("kappa", e.what());
    }
    return out;
  }

  r.reject_unknown({"Gamma", "omega1", "omega2", "Delta", "prefactor"});
  if (r.has("omega1") && r.has("Delta")) r.fail("Delta", "give either omega1 or Delta");
  const double gamma_c = r.number_or("Gamma", 1.0);
  if (gamma_c < 0.0) r.fail("Gamma", "must be non-negative");
  const double prefactor = r.number_or("prefactor", 0.01);
  if (prefactor < 0.0) r.fail("prefactor", "must be non-negative");
  const double omega2 = r.number_or("omega2", 1.0);
  const double omega1 = r.has("Delta") ? omega2 + *r.number("Delta") : r.number_or("omega1", omega2 + 2.0);
  out.effective = EffectiveModel::pt(omega1, omega2, gamma_c, prefactor);
  return out;
}

ModelConfig load_model_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "", "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_config(buf.str(), path.string());
}

}  // namespace ptmag
