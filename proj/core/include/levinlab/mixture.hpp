#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "levinlab/bits.hpp"
#include "levinlab/rational.hpp"
#include "levinlab/refmachine.hpp"

namespace levinlab {

enum class Schedule { kFixed, kDovetail };

/// How much of program space an estimate looks at.
///
/// Fixed: every program of at most max_program_bits runs step_budget steps.
/// Dovetail: after `phase` phases, a program of length l <= phase has run
/// 2^(phase - l) steps (capped at step_budget); longer programs have not
/// started and are left out.
struct EnumerationBudget {
  std::uint32_t max_program_bits = 16;
  std::uint64_t step_budget = 256;
  Schedule schedule = Schedule::kFixed;
  std::uint32_t phase = 0;

  static EnumerationBudget fixed(std::uint32_t max_bits, std::uint64_t steps);
  static EnumerationBudget dovetail(std::uint32_t max_bits, std::uint32_t phase,
                                    std::uint64_t step_cap);

  /// Steps granted to a program of the given length; 0 means not started.
  std::uint64_t steps_for(std::size_t length_bits) const;
  bool includes(std::size_t length_bits) const;

  /// Throws std::invalid_argument when a cap is not positive.
  void check() const;

  /// "bits=16,steps=256" or "bits=20,steps=4096,dovetail=24".
  static EnumerationBudget parse(std::string_view spec);
  std::string describe() const;
  nlohmann::ordered_json to_json() const;

  friend bool operator==(const EnumerationBudget&, const EnumerationBudget&) = default;
};

/// Number of valid programs of exactly `groups` 4-bit groups (END included).
std::uint64_t count_programs(std::uint32_t groups);

/// Calls `visit` for every valid program of at most max_bits bits, in
/// (length, lexicographic) order.
void for_each_program(std::uint32_t max_bits,
                      const std::function<void(const Program&)>& visit);

/// Every valid program with |p| <= max_bits in (length, lex) order.
/// Throws std::invalid_argument if max_bits < 4.
std::vector<Program> enumerate_programs(std::uint32_t max_bits);

/// Sum of 2^-|p| over valid programs with |p| <= max_bits (0 below 4 bits).
Rational kraft_sum(std::uint32_t max_bits);

struct Contribution {
  BitString program;
  Rational weight;
  RunStatus status;  // machine state when the verdict was reached
};

struct PriorEstimate {
  Rational value = 0;
  std::vector<Contribution> contributing;
  EnumerationBudget budget;
  std::uint64_t enumerated = 0;
  std::uint64_t unknown = 0;  // excluded for lack of budget

  nlohmann::ordered_json to_json() const;
};

/// Certified lower bound on the algorithmic probability of prefix x.
PriorEstimate alp_lower_bound(const BitString& x, const EnumerationBudget& budget,
                              unsigned workers = 1);

class ZeroMixture : public std::runtime_error {
 public:
  explicit ZeroMixture(const BitString& at)
      : std::runtime_error("both one-bit extensions of '" + at.str() +
                           "' have zero estimated prior; enlarge the budget"),
        at_(at) {}
  const BitString& at() const noexcept { return at_; }

 private:
  BitString at_;
};

/// Result of the normalised next-bit rule.
struct NextBitPrediction {
  Rational p0;          // P'(0 | x)
  Rational p1;          // P'(1 | x)
  Rational norm_x;      // P'(x)
  Rational norm_x0;     // P'(x0)
  Rational norm_x1;     // P'(x1)
  Rational raw_x;       // P(x)
  Rational raw_x0;      // P(x0)
  Rational raw_x1;      // P(x1)
};

struct ExpectedTime {
  Rational value = 0;
  std::uint64_t qualifying = 0;
  std::uint64_t still_running = 0;  // their steps are counted at the budget
  bool lower_bound() const noexcept { return still_running > 0; }
};

/// One full run of a program under an enumeration budget.
struct ProgramRun {
  Program program;
  BitString output;
  RunStatus status;
  std::uint64_t steps;
};

/// Runs every enumerated program once and answers prior queries for any
/// prefix from the stored outputs. Results do not depend on `workers`.
class RunTable {
 public:
  static RunTable build(const EnumerationBudget& budget, unsigned workers = 1);

  const EnumerationBudget& budget() const noexcept { return budget_; }
  std::span<const ProgramRun> runs() const noexcept { return runs_; }

  Rational prior(const BitString& x) const;
  PriorEstimate estimate(const BitString& x) const;
  NextBitPrediction predict_next(const BitString& x) const;
  ExpectedTime expected_time(const BitString& x) const;

 private:
  EnumerationBudget budget_;
  std::vector<ProgramRun> runs_;
};

/// Next-bit conditionals by recursive normalisation from P'(empty) = 1.
/// Throws ZeroMixture when some prefix on the way has no support.
NextBitPrediction predict_next(const BitString& x, const EnumerationBudget& budget,
                               unsigned workers = 1);

/// Sum of t(p) 2^-|p| over programs whose output extends x.
ExpectedTime mixture_expected_time(const BitString& x,
                                   const EnumerationBudget& budget,
                                   unsigned workers = 1);

}  // namespace levinlab
