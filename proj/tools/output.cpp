#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ptmag::cli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width does not match header");
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string csv_banner(const RunConfig& config) {
  return "# ptmag-csv v1 command=" + std::string(to_string(config.command)) +
         " units=" + std::string(to_string(config.model.units)) + " config_hash=" + config_hash(config);
}

std::string render_csv(const Table& table, const RunConfig& config) {
  std::string out = csv_banner(config) + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out += (i ? "," : "") + table.columns[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      if (const double* d = std::get_if<double>(&row[i])) {
        out += format_number(*d);
      } else {
        out += std::get<std::string>(row[i]);
      }
    }
    out += "\n";
  }
  return out;
}

std::string render_json(const Table& table, const RunConfig& config) {
  nlohmann::ordered_json doc;
  doc["schema"] = "ptmag-json v1";
  doc["command"] = std::string(to_string(config.command));
  doc["units"] = std::string(to_string(config.model.units));
  doc["config_hash"] = config_hash(config);
  doc["columns"] = table.columns;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    nlohmann::ordered_json col = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      if (const double* d = std::get_if<double>(&row[c])) {
        if (std::isfinite(*d)) {
          col.push_back(*d);
        } else {
          col.push_back(nullptr);
        }
      } else {
        col.push_back(std::get<std::string>(row[c]));
      }
    }
    data[table.columns[c]] = std::move(col);
  }
  doc["data"] = std::move(data);
  return doc.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::filesystem::path write_table(const Table& table, const RunConfig& config, const std::string& stem) {
  const bool csv = config.format == OutputFormat::Csv;
  const auto path = config.out_dir / (stem + (csv ? ".csv" : ".json"));
  write_text(path, csv ? render_csv(table, config) : render_json(table, config));
  return path;
}

}  // namespace ptmag::cli
