#pragma once

// Experiment reports. A report is rendered to JSON (one document) and CSV
// (one file per table plus an assertions file). Rendering is a pure function
// of the report, so identical runs give byte-identical files.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "levinlab/config.hpp"

namespace levinlab {

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

struct Report {
  std::string recipe;
  std::string version = LEVINLAB_VERSION;
  nlohmann::ordered_json config;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<Assertion> assertions;
  std::vector<Table> tables;

  /// Records an assertion and returns its outcome.
  bool check(std::string name, bool pass, std::string detail = {});
  bool passed() const;
  std::size_t failures() const;

  std::string render_json() const;
  /// "name,pass,detail" rows.
  std::string render_assertions_csv() const;
};

/// RFC 4180 cell: quoted only when it contains a comma, quote or newline.
std::string csv_cell(const std::string& value);
std::string render_csv(const Table& table);

/// Writes <dir>/<recipe>.json and/or the CSV set (<recipe>.meta.csv,
/// <recipe>.assertions.csv, <recipe>.<table>.csv) and
/// returns their paths in write order. Throws std::filesystem::filesystem_error
/// or std::runtime_error on IO failure.
std::vector<std::filesystem::path> emit_report(const Report& report,
                                               const std::filesystem::path& dir,
                                               ReportFormat format);

}  // namespace levinlab
