#pragma once

// Workbench configuration: a flat "key = value" text file.
//
//   # comment
//   units.e_u = 1
//   units.k = 1380649/100000000000000000000000000000
//   enumeration.max_bits = 16
//   output.format = both
//
// Unknown keys are an error; missing keys keep their defaults. Rationals
// accept "a/b", decimals and exponents and are always written back as
// reduced fractions, so serialize(parse(serialize(c))) == serialize(c).

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "levinlab/costgraph.hpp"
#include "levinlab/mixture.hpp"

namespace levinlab {

enum class ReportFormat { kJson, kCsv, kBoth };

std::string_view to_string(ReportFormat format) noexcept;
ReportFormat parse_report_format(std::string_view text);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WorkbenchConfig {
  UnitSystem units = UnitSystem::si();
  EnumerationBudget enumeration = EnumerationBudget::fixed(16, 256);

  std::string output_dir = "reports";
  ReportFormat output_format = ReportFormat::kBoth;
  std::uint64_t seed = 1;
  unsigned workers = 1;

  // Recipe parameters.
  std::uint32_t kraft_max_bits = 24;
  std::uint32_t prefix_max_bits = 24;
  std::uint32_t triangle_max_t = 100;
  std::uint32_t search_max_phase = 48;
  std::uint32_t lemma2_max_bits = 16;
  std::uint32_t convergence_max_bits = 20;
  std::uint32_t convergence_n = 16;
  std::uint32_t operator_max_bits = 24;
  std::uint32_t operator_repeats = 8;
  std::uint32_t entropy_max_bits = 16;
  std::uint32_t entropy_max_length = 2;
  double limits_temperature = 300;
  double limits_energy = 1;

  static WorkbenchConfig parse(std::string_view text);
  static WorkbenchConfig load(const std::string& path);

  std::string serialize() const;
  nlohmann::ordered_json to_json() const;
};

}  // namespace levinlab
