#include "levinlab/report.hpp"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace levinlab {

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table " + name + ": row has " + std::to_string(row.size()) +
                           " cells, expected " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

bool Report::check(std::string name, bool pass, std::string detail) {
  assertions.push_back({std::move(name), pass, std::move(detail)});
  return pass;
}

bool Report::passed() const { return failures() == 0; }

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(
      assertions.begin(), assertions.end(), [](const Assertion& a) { return !a.pass; }));
}

std::string Report::render_json() const {
  nlohmann::ordered_json j;
  j["recipe"] = recipe;
  j["version"] = version;
  j["config"] = config;
  j["passed"] = passed();
  j["assertions"] = nlohmann::ordered_json::array();
  for (const auto& a : assertions) {
    j["assertions"].push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
  }
  j["results"] = results;
  j["tables"] = nlohmann::ordered_json::object();
  for (const auto& t : tables) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
      nlohmann::ordered_json row;
      for (std::size_t i = 0; i < t.columns.size(); ++i) row[t.columns[i]] = r[i];
      rows.push_back(std::move(row));
    }
    j["tables"][t.name] = std::move(rows);
  }
  return j.dump(2) + "\n";
}

std::string csv_cell(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string out = "\"";
  for (char ch : value) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string render_csv(const Table& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(cells[i]);
    }
    out += '\n';
  };
  line(table.columns);
  for (const auto& r : table.rows) line(r);
  return out;
}

std::string Report::render_assertions_csv() const {
  Table t{"assertions", {"name", "pass", "detail"}, {}};
  for (const auto& a : assertions) t.add_row({a.name, a.pass ? "1" : "0", a.detail});
  return render_csv(t);
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing: " +
                             std::strerror(errno));
  }
  out << content;
  out.close();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace

std::vector<std::filesystem::path> emit_report(const Report& report,
                                               const std::filesystem::path& dir,
                                               ReportFormat format) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  if (format != ReportFormat::kCsv) {
    auto p = dir / (report.recipe + ".json");
    write_file(p, report.render_json());
    written.push_back(p);
  }
  if (format != ReportFormat::kJson) {
    Table meta{"meta", {"key", "value"}, {}};
    meta.add_row({"recipe", report.recipe});
    meta.add_row({"version", report.version});
    for (const auto& [key, value] : report.config.items()) {
      meta.add_row({"config." + key, value.is_string() ? value.get<std::string>() : value.dump()});
    }
    auto mp = dir / (report.recipe + ".meta.csv");
    write_file(mp, render_csv(meta));
    written.push_back(mp);
    auto p = dir / (report.recipe + ".assertions.csv");
    write_file(p, report.render_assertions_csv());
    written.push_back(p);
    for (const auto& t : report.tables) {
      auto tp = dir / (report.recipe + "." + t.name + ".csv");
      write_file(tp, render_csv(t));
      written.push_back(tp);
    }
  }
  return written;
}

}  // namespace levinlab
