#include "levinlab/complexity.hpp"

#include <cmath>

namespace levinlab {

nlohmann::ordered_json EntropyEstimate::to_json() const {
  nlohmann::ordered_json j;
  j["bits"] = bits;
  j["witness"] = witness.bits().grouped();
  j["witness_glyphs"] = witness.glyphs();
  j["steps"] = steps;
  j["energy_units"] = energy_units;
  return j;
}

namespace {

const BitString& no_input() {
  static const BitString kEmpty;
  return kEmpty;
}

// Exact producer check with early exit on divergence.
bool produces_exactly(const Program& p, const BitString& x, std::uint64_t budget,
                      Machine& m) {
  for (;;) {
    const BitString& out = m.output();
    if (!out.empty() && (out.size() > x.size() || out[out.size() - 1] != x[out.size() - 1])) {
      return false;
    }
    if (!m.step(budget)) break;
  }
  (void)p;
  return m.status() == RunStatus::kHalted && m.output() == x;
}

}  // namespace

EntropyEstimate entropy_upper(const BitString& x, const EnumerationBudget& budget) {
  budget.check();
  std::optional<EntropyEstimate> best;
  for_each_program(budget.max_program_bits, [&](const Program& p) {
    if (best || !budget.includes(p.length_bits())) return;
    Machine m(p, no_input(), false);
    if (produces_exactly(p, x, budget.steps_for(p.length_bits()), m)) {
      best = EntropyEstimate{static_cast<double>(p.length_bits()), p, m.steps(), 0};
    }
  });
  if (!best) {
    throw EntropyNotFound("no program of at most " +
                          std::to_string(budget.max_program_bits) +
                          " bits outputs '" + x.str() + "' within " +
                          budget.describe());
  }
  return *best;
}

EntropyEstimate energy_bounded_entropy(const BitString& x,
                                       const EnumerationBudget& budget,
                                       const UnitSystem& units) {
  budget.check();
  units.check();
  std::optional<EntropyEstimate> best;
  mpz_class best_score;  // 2^|p| * max(E/e_u, 1): same order as the objective
  for_each_program(budget.max_program_bits, [&](const Program& p) {
    if (!budget.includes(p.length_bits())) return;
    Machine m(p, no_input(), true);
    if (!produces_exactly(p, x, budget.steps_for(p.length_bits()), m)) return;
    const ResourceVector r = measure(tally_trace(m.trace(), 0), units);
    const Rational e_units = r.energy / units.e_u;
    mpz_class e_whole = e_units.get_num() / e_units.get_den();
    const std::uint64_t energy = e_whole.get_ui();
    const std::uint64_t floored = std::max<std::uint64_t>(energy, 1);
    mpz_class score;
    mpz_ui_pow_ui(score.get_mpz_t(), 2, p.length_bits());
    score *= floored;
    if (!best || score < best_score) {
      best_score = score;
      best = EntropyEstimate{static_cast<double>(p.length_bits()) +
                                 std::log2(static_cast<double>(floored)),
                             p, m.steps(), energy};
    }
  });
  if (!best) {
    throw EntropyNotFound("no program of at most " +
                          std::to_string(budget.max_program_bits) +
                          " bits outputs '" + x.str() + "' within " +
                          budget.describe());
  }
  return *best;
}

nlohmann::ordered_json ComplexityReport::to_json() const {
  nlohmann::ordered_json j;
  j["subject"] = subject.str();
  j["H_upper"] = h_upper.to_json();
  j["H_coding"] = h_coding ? nlohmann::ordered_json(*h_coding) : nlohmann::ordered_json(nullptr);
  j["alp_lower_bound"] = levinlab::to_json(alp);
  j["H_e"] = h_e.to_json();
  return j;
}

ComplexityReport complexity_report(const BitString& x,
                                   const EnumerationBudget& budget,
                                   const UnitSystem& units) {
  ComplexityReport r;
  r.subject = x;
  r.h_upper = entropy_upper(x, budget);
  r.h_e = energy_bounded_entropy(x, budget, units);
  r.alp = alp_lower_bound(x, budget).value;
  if (sgn(r.alp) > 0) r.h_coding = -log2(r.alp);
  return r;
}

nlohmann::ordered_json LogicalProfile::to_json() const {
  nlohmann::ordered_json j;
  j["witness"] = witness.bits().grouped();
  j["depth"] = depth;
  j["volume"] = levinlab::to_json(volume);
  j["energy"] = levinlab::to_json(energy);
  j["space"] = levinlab::to_json(space);
  j["total_energy"] = levinlab::to_json(total_energy);
  return j;
}

LogicalProfile logical_profile(const Program& winner, const BitString& input,
                               std::uint64_t step_budget, const UnitSystem& units) {
  RunResult run_result = run(winner, input, step_budget);
  if (run_result.status != RunStatus::kHalted) {
    throw std::runtime_error("logical_profile: witness did not halt within " +
                             std::to_string(step_budget) + " steps (" +
                             std::string(to_string(run_result.status)) + ")");
  }
  const ResourceVector r = measure(build_graph(run_result.trace, input.size()), units);
  return LogicalProfile{run_result.steps, r.volume, r.energy, r.space, r.total_energy, winner};
}

double landauer_limit(double kelvin, const UnitSystem& units) {
  if (kelvin < 0) throw std::domain_error("temperature must be non-negative");
  return to_double(units.k) * kelvin * std::log(2.0);
}

double margolus_levitin_ops(double joules, const UnitSystem& units) {
  if (joules < 0) throw std::domain_error("energy must be non-negative");
  return 2.0 * joules / to_double(units.h);
}

double max_learnable_complexity(double op_budget, double logical_volume) {
  if (!(logical_volume > 0) || !(op_budget >= logical_volume)) {
    throw std::domain_error("max_learnable_complexity needs op_budget >= logical_volume > 0");
  }
  return std::log2(op_budget) - std::log2(logical_volume) - 1.0;
}

}  // namespace levinlab
