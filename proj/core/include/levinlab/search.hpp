#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "levinlab/bits.hpp"
#include "levinlab/costgraph.hpp"
#include "levinlab/rational.hpp"
#include "levinlab/refmachine.hpp"

namespace levinlab {

/// Target probability O(1 | query) for one sample of a cpdf goal.
struct CpdfSample {
  BitString query;
  Rational p1;
};

/// What a program must do to solve a search problem.
class Goal {
 public:
  enum class Kind { kOutputPrefix, kExactOutput, kCpdfAgreement };

  static Goal output_prefix(BitString x);
  static Goal exact_output(BitString x);
  /// Exact agreement (tolerance 0) on every sample.
  static Goal cpdf_agreement(std::vector<CpdfSample> samples);

  /// "prefix:0101", "exact:11", "exact:" (empty output),
  /// "cpdf:0=0,1=1/2" (query=probability pairs).
  static Goal parse(std::string_view spec);

  Kind kind() const noexcept { return kind_; }
  const BitString& target() const noexcept { return target_; }
  const std::vector<CpdfSample>& samples() const noexcept { return samples_; }
  std::string describe() const;

 private:
  Kind kind_ = Kind::kExactOutput;
  BitString target_;
  std::vector<CpdfSample> samples_;
};

/// Outcome of testing one program against a goal under one allowance.
struct Trial {
  bool success = false;
  /// Resources of the deciding run(s); for cpdf goals the largest sample.
  ResourceVector resources;
  /// Metric value in metric units, floored at one unit.
  Rational cost_units = 1;
  /// Instructions actually executed.
  std::uint64_t steps_executed = 0;
};

/// Per-trial safety valve for metrics whose allowance is not a step count.
struct SearchOptions {
  UnitSystem units = UnitSystem::natural();
  std::uint64_t step_ceiling = std::uint64_t{1} << 24;
  /// Largest program pool a phase may hold; the search gives up with
  /// NotFound rather than enumerate more.
  std::uint64_t max_pool = std::uint64_t{1} << 22;
};

/// Runs `program` against `goal` with `allowance` units of `metric`.
Trial run_trial(const Program& program, const Goal& goal, Metric metric,
                const Rational& allowance, const SearchOptions& options);

/// Value of a resource vector in units of the metric (steps, v_u or e_u),
/// floored at one unit: every trial costs at least one unit.
Rational metric_units(const ResourceVector& r, Metric metric,
                      const UnitSystem& units);

/// Size of one metric unit in physical terms (1 step, v_u, or e_u).
Rational unit_scale(Metric metric, const UnitSystem& units);

struct SearchOutcome {
  std::optional<Program> winner;
  ResourceVector winner_resources;
  Metric metric = Metric::kTime;
  Goal goal;
  std::uint32_t phase = 0;
  /// Winner's resource in metric units (floored at 1).
  Rational winner_units = 1;
  /// Elapsed clock of the time-shared schedule up to the winner's
  /// completion, in physical units of the metric.
  Rational measured_cost = 0;
  /// Instructions the interpreter actually executed across all trials.
  std::uint64_t steps_executed = 0;
  std::uint64_t trials = 0;
  /// Conceptual-jump value r(winner) * 2^|winner|.
  Rational cj_value = 0;
  UnitSystem units;

  nlohmann::ordered_json to_json() const;
};

class NotFound : public std::runtime_error {
 public:
  NotFound(const std::string& what, std::uint32_t max_phase)
      : std::runtime_error(what), max_phase_(max_phase) {}
  std::uint32_t max_phase() const noexcept { return max_phase_; }

 private:
  std::uint32_t max_phase_;
};

/// Levin search. Phase k = 1, 2, ... runs every valid program with
/// |p| <= k bits, in (length, lex) order, with an allowance of 2^(k - |p|)
/// metric units; the first success is the winner.
SearchOutcome levin_search(const Goal& goal, Metric metric,
                           std::uint32_t max_phase,
                           const SearchOptions& options = {});

/// r(winner) * 2^|winner| in physical units of the metric.
Rational conceptual_jump(const Program& winner,
                         const ResourceVector& winner_resources, Metric metric,
                         const UnitSystem& units);

struct SandwichReport {
  Rational cj;
  Rational measured_cost;
  double ratio = 0;
  bool pass = false;             // cj <= cost <= 4 cj
  static constexpr int kProvableFactor = 4;
  static constexpr int kIdealFactor = 2;
  bool within_ideal_factor = false;  // cost <= 2 cj

  nlohmann::ordered_json to_json() const;
};

/// Throws std::invalid_argument if the outcome has no winner.
SandwichReport verify_sandwich(const SearchOutcome& outcome);

}  // namespace levinlab
