#include "levinlab/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace levinlab {

std::string_view to_string(ReportFormat format) noexcept {
  switch (format) {
    case ReportFormat::kJson: return "json";
    case ReportFormat::kCsv: return "csv";
    case ReportFormat::kBoth: return "both";
  }
  return "?";
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "both") return ReportFormat::kBoth;
  throw ConfigError("unknown report format '" + std::string(text) +
                    "' (expected json, csv or both)");
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct Field {
  const char* key;
  std::function<std::string(const WorkbenchConfig&)> get;
  std::function<void(WorkbenchConfig&, const std::string&)> set;
};

Field rational_field(const char* key, Rational UnitSystem::*member) {
  return {key,
          [member](const WorkbenchConfig& c) { return to_string(c.units.*member); },
          [key, member](WorkbenchConfig& c, const std::string& v) {
            try {
              c.units.*member = parse_rational(v);
            } catch (const std::invalid_argument& e) {
              throw ConfigError(std::string(key) + ": " + e.what());
            }
          }};
}

template <typename T>
Field uint_field(const char* key, T WorkbenchConfig::*member) {
  return {key,
          [member](const WorkbenchConfig& c) { return std::to_string(c.*member); },
          [key, member](WorkbenchConfig& c, const std::string& v) {
            c.*member = static_cast<T>(parse_uint(key, v));
          }};
}

Field double_field(const char* key, double WorkbenchConfig::*member) {
  return {key,
          [member](const WorkbenchConfig& c) { return format_double(c.*member); },
          [key, member](WorkbenchConfig& c, const std::string& v) {
            c.*member = parse_double(key, v);
          }};
}

// Serialization order is this table's order.
const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(rational_field("units.v_u", &UnitSystem::v_u));
    f.push_back(rational_field("units.e_u", &UnitSystem::e_u));
    f.push_back(rational_field("units.s_u", &UnitSystem::s_u));
    f.push_back(rational_field("units.m_u", &UnitSystem::m_u));
    f.push_back(rational_field("units.c", &UnitSystem::c));
    f.push_back(rational_field("units.k", &UnitSystem::k));
    f.push_back(rational_field("units.h", &UnitSystem::h));
    f.push_back({"enumeration.max_bits",
                 [](const WorkbenchConfig& c) {
                   return std::to_string(c.enumeration.max_program_bits);
                 },
                 [](WorkbenchConfig& c, const std::string& v) {
                   c.enumeration.max_program_bits =
                       static_cast<std::uint32_t>(parse_uint("enumeration.max_bits", v));
                 }});
    f.push_back({"enumeration.steps",
                 [](const WorkbenchConfig& c) { return std::to_string(c.enumeration.step_budget); },
                 [](WorkbenchConfig& c, const std::string& v) {
                   c.enumeration.step_budget = parse_uint("enumeration.steps", v);
                 }});
    f.push_back({"enumeration.schedule",
                 [](const WorkbenchConfig& c) {
                   return std::string(c.enumeration.schedule == Schedule::kFixed ? "fixed"
                                                                                 : "dovetail");
                 },
                 [](WorkbenchConfig& c, const std::string& v) {
                   if (v == "fixed") {
                     c.enumeration.schedule = Schedule::kFixed;
                   } else if (v == "dovetail") {
                     c.enumeration.schedule = Schedule::kDovetail;
                   } else {
                     throw ConfigError("enumeration.schedule: expected fixed or dovetail");
                   }
                 }});
    f.push_back({"enumeration.phase",
                 [](const WorkbenchConfig& c) { return std::to_string(c.enumeration.phase); },
                 [](WorkbenchConfig& c, const std::string& v) {
                   c.enumeration.phase =
                       static_cast<std::uint32_t>(parse_uint("enumeration.phase", v));
                 }});
    f.push_back({"output.dir", [](const WorkbenchConfig& c) { return c.output_dir; },
                 [](WorkbenchConfig& c, const std::string& v) {
                   if (v.empty()) throw ConfigError("output.dir must not be empty");
                   c.output_dir = v;
                 }});
    f.push_back({"output.format",
                 [](const WorkbenchConfig& c) { return std::string(to_string(c.output_format)); },
                 [](WorkbenchConfig& c, const std::string& v) {
                   c.output_format = parse_report_format(v);
                 }});
    f.push_back(uint_field("seed", &WorkbenchConfig::seed));
    f.push_back(uint_field("workers", &WorkbenchConfig::workers));
    f.push_back(uint_field("kraft.max_bits", &WorkbenchConfig::kraft_max_bits));
    f.push_back(uint_field("prefix.max_bits", &WorkbenchConfig::prefix_max_bits));
    f.push_back(uint_field("triangle.max_t", &WorkbenchConfig::triangle_max_t));
    f.push_back(uint_field("search.max_phase", &WorkbenchConfig::search_max_phase));
    f.push_back(uint_field("lemma2.max_bits", &WorkbenchConfig::lemma2_max_bits));
    f.push_back(uint_field("convergence.max_bits", &WorkbenchConfig::convergence_max_bits));
    f.push_back(uint_field("convergence.n", &WorkbenchConfig::convergence_n));
    f.push_back(uint_field("operator.max_bits", &WorkbenchConfig::operator_max_bits));
    f.push_back(uint_field("operator.repeats", &WorkbenchConfig::operator_repeats));
    f.push_back(uint_field("entropy.max_bits", &WorkbenchConfig::entropy_max_bits));
    f.push_back(uint_field("entropy.max_length", &WorkbenchConfig::entropy_max_length));
    f.push_back(double_field("limits.temperature", &WorkbenchConfig::limits_temperature));
    f.push_back(double_field("limits.energy", &WorkbenchConfig::limits_energy));
    return f;
  }();
  return table;
}

}  // namespace

WorkbenchConfig WorkbenchConfig::parse(std::string_view text) {
  WorkbenchConfig c;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    bool known = false;
    for (const auto& f : fields()) {
      if (key == f.key) {
        f.set(c, value);
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  c.units.check();
  try {
    c.enumeration.check();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (c.workers == 0) c.workers = 1;
  return c;
}

WorkbenchConfig WorkbenchConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string WorkbenchConfig::serialize() const {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.get(*this);
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json WorkbenchConfig::to_json() const {
  nlohmann::ordered_json j;
  for (const auto& f : fields()) j[f.key] = f.get(*this);
  return j;
}

}  // namespace levinlab
