#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "levinlab/config.hpp"
#include "levinlab/report.hpp"

namespace levinlab {

class UnknownRecipe : public std::invalid_argument {
 public:
  explicit UnknownRecipe(const std::string& name)
      : std::invalid_argument("unknown recipe '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// kraft, prefix-free, triangle-volume, levin-sandwich, lemma2, convergence,
/// operator-demo, h-e-table, limits.
const std::vector<std::string>& recipe_names();

/// One-line summary for --help output.
std::string_view recipe_summary(std::string_view name);

/// Runs a recipe and returns its report without touching the filesystem.
Report run_recipe(std::string_view name, const WorkbenchConfig& config);

struct ExperimentResult {
  Report report;
  std::vector<std::filesystem::path> files;
};

/// run_recipe followed by emit_report into config.output_dir.
ExperimentResult run_experiment(std::string_view name, const WorkbenchConfig& config);

}  // namespace levinlab
