#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include <json.hpp>

#include "levinlab/bits.hpp"
#include "levinlab/costgraph.hpp"
#include "levinlab/mixture.hpp"
#include "levinlab/rational.hpp"
#include "levinlab/refmachine.hpp"

namespace levinlab {

/// No enumerated program reproduces the subject under the budget.
class EntropyNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An upper bound on a complexity value, with the program that attains it.
struct EntropyEstimate {
  double bits = 0;
  Program witness;
  std::uint64_t steps = 0;        // witness running time
  std::uint64_t energy_units = 0; // E_U(witness) / e_u, before flooring

  nlohmann::ordered_json to_json() const;
};

/// Length of the first (length, lex) program that halts with output exactly
/// x within the budget.
EntropyEstimate entropy_upper(const BitString& x, const EnumerationBudget& budget);

/// min |p| + log2 max(E_U(p)/e_u, 1) over exact producers of x. Ties go to
/// the earlier program in (length, lex) order.
EntropyEstimate energy_bounded_entropy(const BitString& x,
                                       const EnumerationBudget& budget,
                                       const UnitSystem& units);

struct ComplexityReport {
  BitString subject;
  EntropyEstimate h_upper;
  /// -log2 of the budgeted algorithmic probability; absent when it is zero.
  std::optional<double> h_coding;
  Rational alp;
  EntropyEstimate h_e;

  nlohmann::ordered_json to_json() const;
};

ComplexityReport complexity_report(const BitString& x,
                                   const EnumerationBudget& budget,
                                   const UnitSystem& units);

struct LogicalProfile {
  std::uint64_t depth = 0;
  Rational volume;
  Rational energy;
  Rational space;
  Rational total_energy;
  Program witness;

  nlohmann::ordered_json to_json() const;
};

/// Depth, volume, energy and total energy from one traced run.
/// Throws std::runtime_error unless the run halts within step_budget.
LogicalProfile logical_profile(const Program& winner, const BitString& input,
                               std::uint64_t step_budget, const UnitSystem& units);

/// kT ln 2, joules per erased bit.
double landauer_limit(double kelvin, const UnitSystem& units);

/// 2E/h, elementary operations per second at average energy E.
double margolus_levitin_ops(double joules, const UnitSystem& units);

/// Operations per joule quoted alongside 2E/h in the literature; reported
/// next to our own figure for comparison only.
inline constexpr double kQuotedOpsPerJoule = 3.32e33;

/// log2(op_budget / logical_volume) - 1: the largest algorithmic complexity
/// a source can have and still be learnable within the operation budget.
/// Throws std::domain_error unless op_budget >= logical_volume > 0.
double max_learnable_complexity(double op_budget, double logical_volume);

}  // namespace levinlab
