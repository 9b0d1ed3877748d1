#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "run_config.hpp"

namespace ptmag::cli {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

// Shortest-ish stable rendering: %.15g, with inf/-inf/nan spelled out.
std::string format_number(double x);

// Header comment line shared by every CSV: schema version, command, units and config hash.
std::string csv_banner(const RunConfig& config);

std::string render_csv(const Table& table, const RunConfig& config);
// {"schema", "command", "units", "config_hash", "columns": [...], "data": {column: [...]}}.
// Non-finite numbers become null.
std::string render_json(const Table& table, const RunConfig& config);

// Writes <out_dir>/<stem>.csv or .json and returns the path.
std::filesystem::path write_table(const Table& table, const RunConfig& config, const std::string& stem);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace ptmag::cli
