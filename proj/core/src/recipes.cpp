#include "levinlab/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "levinlab/complexity.hpp"
#include "levinlab/costgraph.hpp"
#include "levinlab/induction.hpp"
#include "levinlab/mixture.hpp"
#include "levinlab/refmachine.hpp"
#include "levinlab/search.hpp"

namespace levinlab {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string str(const Rational& q) { return to_string(q); }

bool within_relative(double value, double target, double rel) {
  return std::fabs(value - target) <= rel * std::fabs(target);
}

// ---------------------------------------------------------------- kraft

void recipe_kraft(const WorkbenchConfig& cfg, Report& rep) {
  Table t{"sums", {"max_bits", "programs", "kraft_sum", "kraft_approx"}, {}};
  Rational previous = 0;
  bool monotone = true;
  bool bounded = true;
  std::uint64_t programs = 0;
  for (std::uint32_t cap = 0; cap <= cfg.kraft_max_bits; ++cap) {
    if (cap % kOpcodeBits == 0 && cap > 0) programs += count_programs(cap / kOpcodeBits);
    const Rational sum = kraft_sum(cap);
    monotone = monotone && sum >= previous;
    bounded = bounded && sum <= 1;
    previous = sum;
    t.add_row({std::to_string(cap), std::to_string(programs), str(sum), num(to_double(sum))});
  }
  rep.results["max_bits"] = cfg.kraft_max_bits;
  rep.results["programs"] = programs;
  rep.results["kraft_sum"] = to_json(previous);
  rep.check("kraft sum <= 1 for every cap", bounded,
            "final sum " + str(previous) + " ~ " + num(to_double(previous)));
  rep.check("kraft sum non-decreasing in the cap", monotone);

  // The closed-form sum must agree with an explicit enumeration.
  Rational explicit_sum = 0;
  for_each_program(cfg.kraft_max_bits,
                   [&](const Program& p) { explicit_sum += dyadic(p.length_bits()); });
  rep.check("kraft sum equals sum over enumerated programs", explicit_sum == previous,
            str(explicit_sum));
  rep.tables.push_back(std::move(t));
}

// ---------------------------------------------------------- prefix-free

void recipe_prefix_free(const WorkbenchConfig& cfg, Report& rep) {
  const std::uint32_t max_bits = cfg.prefix_max_bits;
  if (max_bits > 30) throw std::invalid_argument("prefix.max_bits above 30 is not supported");
  Table t{"lengths", {"length", "strings", "valid", "expected"}, {}};
  std::unordered_set<BitString> valid;
  std::vector<BitString> ordered;  // (length, lex)
  bool counts_ok = true;
  std::uint64_t strings = 0;
  for (std::uint32_t len = 0; len <= max_bits; ++len) {
    const std::uint64_t total = std::uint64_t{1} << len;
    std::uint64_t here = 0;
    for (std::uint64_t v = 0; v < total; ++v) {
      BitString b = BitString::from_uint(v, len);
      if (is_valid_program(b)) {
        ++here;
        valid.insert(b);
        ordered.push_back(std::move(b));
      }
    }
    strings += total;
    const std::uint64_t expected =
        len % kOpcodeBits == 0 && len > 0 ? count_programs(len / kOpcodeBits) : 0;
    counts_ok = counts_ok && here == expected;
    t.add_row({std::to_string(len), std::to_string(total), std::to_string(here),
               std::to_string(expected)});
  }

  std::uint64_t violations = 0;
  std::string first_violation;
  for (const auto& b : ordered) {
    for (std::size_t cut = 0; cut < b.size(); ++cut) {
      if (valid.count(b.prefix(cut))) {
        if (violations++ == 0) first_violation = b.prefix(cut).str() + " < " + b.str();
      }
    }
  }

  const auto generated = enumerate_programs(max_bits);
  bool same_order = generated.size() == ordered.size();
  for (std::size_t i = 0; same_order && i < ordered.size(); ++i) {
    same_order = generated[i].bits() == ordered[i];
  }

  rep.results["max_bits"] = max_bits;
  rep.results["strings_checked"] = strings;
  rep.results["valid_programs"] = ordered.size();
  rep.results["prefix_violations"] = violations;
  rep.check("no valid program is a proper prefix of another", violations == 0,
            violations ? first_violation : "checked " + std::to_string(ordered.size()) +
                                               " programs");
  rep.check("valid counts per length match the counting recurrence", counts_ok);
  rep.check("enumerator yields exactly the valid strings in (length, lex) order", same_order,
            std::to_string(generated.size()) + " generated");
  rep.tables.push_back(std::move(t));
}

// ------------------------------------------------------ triangle-volume

struct IdentityTally {
  std::uint64_t graphs = 0;
  std::uint64_t energy_failures = 0;
  std::uint64_t total_failures = 0;
  std::uint64_t dual_failures = 0;
  std::uint64_t invalid_graphs = 0;
};

void check_unit_identities(const ResourceVector& r, const UnitSystem& u, IdentityTally& tally) {
  ++tally.graphs;
  if (r.energy * u.v_u != r.volume * u.e_u) ++tally.energy_failures;
  if (r.total_energy != u.d_e() * r.volume + r.space * u.d_m() * u.c * u.c) {
    ++tally.total_failures;
  }
}

void recipe_triangle_volume(const WorkbenchConfig& cfg, Report& rep) {
  const UnitSystem& units = cfg.units;

  const std::uint64_t slices[] = {1, 2, 3};
  const CompGraph tri = synthetic_derivation_graph(slices);
  const ResourceVector r = measure(tri, units);
  rep.results["triangle"] = {{"slices", {1, 2, 3}},
                             {"volume_over_v_u", to_json(r.volume / units.v_u)},
                             {"resources", to_json(r)}};
  rep.check("slices [1,2,3] give volume 6 v_u", r.volume == 6 * units.v_u,
            "volume " + str(r.volume) + ", v_u " + str(units.v_u));
  rep.check("slices [1,2,3] give space 3 s_u", r.space == 3 * units.s_u,
            "space " + str(r.space));

  // Second unit system with unrelated scales so the identities are not vacuous.
  UnitSystem odd = units;
  odd.v_u = Rational(3, 7);
  odd.e_u = Rational(5, 11);
  odd.s_u = Rational(2, 3);
  odd.m_u = Rational(13, 5);
  IdentityTally ids;

  Table t{"law", {"t", "volume_over_v_u", "expected"}, {}};
  bool law = true;
  std::vector<std::uint64_t> sizes;
  for (std::uint32_t n = 1; n <= cfg.triangle_max_t; ++n) {
    sizes.push_back(n);
    const CompGraph g = synthetic_derivation_graph(sizes);
    const ResourceVector rv = measure(g, units);
    const Rational ratio = rv.volume / units.v_u;
    const Rational expected(mpz_class(std::uint64_t{n} * (n + 1) / 2));
    law = law && ratio == expected;
    if (!g.validate().empty()) ++ids.invalid_graphs;
    check_unit_identities(rv, units, ids);
    check_unit_identities(measure(g, odd), odd, ids);
    t.add_row({std::to_string(n), str(ratio), str(expected)});
  }
  rep.check("volume = t(t+1)/2 v_u for t = 1.." + std::to_string(cfg.triangle_max_t), law);

  // Every traced run of every program in the enumeration budget.
  const EnumerationBudget& b = cfg.enumeration;
  static const BitString kNoInput;
  for_each_program(b.max_program_bits, [&](const Program& p) {
    if (!b.includes(p.length_bits())) return;
    const RunResult run_result = run(p, kNoInput, b.steps_for(p.length_bits()));
    const CompGraph g = build_graph(run_result.trace, 0);
    if (!g.validate().empty()) ++ids.invalid_graphs;
    const GraphTally direct = tally(g);
    const GraphTally streamed = tally_trace(run_result.trace, 0);
    if (direct.vertices != streamed.vertices || direct.edges != streamed.edges ||
        direct.max_slice != streamed.max_slice || direct.boundary != streamed.boundary ||
        direct.ops != streamed.ops) {
      ++ids.dual_failures;
    }
    check_unit_identities(measure(direct, units), units, ids);
    check_unit_identities(measure(direct, odd), odd, ids);
  });

  rep.results["identity_graphs"] = ids.graphs;
  rep.check("energy * v_u = volume * e_u on every measured graph", ids.energy_failures == 0,
            std::to_string(ids.graphs) + " graphs, " + std::to_string(ids.energy_failures) +
                " failures");
  rep.check("total_energy = d_e volume + space d_m c^2 on every measured graph",
            ids.total_failures == 0,
            std::to_string(ids.total_failures) + " failures");
  rep.check("streamed tally equals tally of the materialized graph", ids.dual_failures == 0,
            std::to_string(ids.dual_failures) + " failures");
  rep.check("all graphs are well formed", ids.invalid_graphs == 0);
  rep.tables.push_back(std::move(t));
}

// ------------------------------------------------------- levin-sandwich

void recipe_levin_sandwich(const WorkbenchConfig& cfg, Report& rep) {
  SearchOptions options;
  options.units = cfg.units;
  // With m_u in kilograms the c^2 term pushes total-energy winners past
  // phase 60; pricing a memory unit's rest energy at one e_u keeps the
  // search at desk scale.
  SearchOptions rest_options = options;
  rest_options.units.m_u = cfg.units.e_u / (cfg.units.c * cfg.units.c);
  const Source half = half_copy_source();
  std::vector<CpdfSample> samples;
  for (const char* q : {"0", "1"}) samples.push_back({BitString(q), half.exact_law(BitString(q))});
  const std::vector<Goal> goals = {Goal::exact_output(BitString("0")),
                                   Goal::exact_output(BitString("11")),
                                   Goal::cpdf_agreement(samples)};
  const Metric metrics[] = {Metric::kTime, Metric::kVolume, Metric::kEnergy,
                            Metric::kTotalEnergy};

  Table t{"outcomes",
          {"goal", "metric", "winner", "winner_bits", "phase", "cj", "measured_cost", "ratio",
           "within_4", "within_2"},
          {}};
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const auto& goal : goals) {
    for (Metric metric : metrics) {
      const std::string label = goal.describe() + " / " + std::string(to_string(metric));
      try {
        const SearchOutcome out =
            levin_search(goal, metric, cfg.search_max_phase,
                         metric == Metric::kTotalEnergy ? rest_options : options);
        const SandwichReport s = verify_sandwich(out);
        rep.check("cj <= cost <= 4 cj: " + label, s.pass,
                  "ratio " + num(s.ratio) + ", winner " + out.winner->glyphs());
        t.add_row({goal.describe(), std::string(to_string(metric)), out.winner->bits().str(),
                   std::to_string(out.winner->length_bits()), std::to_string(out.phase),
                   str(s.cj), str(s.measured_cost), num(s.ratio), s.pass ? "1" : "0",
                   s.within_ideal_factor ? "1" : "0"});
        runs.push_back({{"outcome", out.to_json()}, {"sandwich", s.to_json()}});
      } catch (const NotFound& e) {
        rep.check("cj <= cost <= 4 cj: " + label, false, e.what());
      }
    }
  }
  rep.results["provable_factor"] = SandwichReport::kProvableFactor;
  rep.results["ideal_factor"] = SandwichReport::kIdealFactor;
  rep.results["total_energy_units"] = to_json(rest_options.units);
  rep.results["runs"] = std::move(runs);
  rep.tables.push_back(std::move(t));
}

// --------------------------------------------------------------- lemma2

void recipe_lemma2(const WorkbenchConfig& cfg, Report& rep) {
  SearchOptions options;
  options.units = cfg.units;
  const EnumerationBudget budget =
      EnumerationBudget::fixed(cfg.lemma2_max_bits, cfg.enumeration.step_budget);
  const RunTable table = RunTable::build(budget, cfg.workers);
  Table t{"terms", {"x", "winner", "winner_bits", "steps", "term", "expected_time",
                    "qualifying", "still_running"}, {}};
  for (const char* text : {"0", "1", "11"}) {
    const BitString x(text);
    const SearchOutcome out =
        levin_search(Goal::output_prefix(x), Metric::kTime, cfg.search_max_phase, options);
    const Program& w = *out.winner;
    const Rational term =
        Rational(mpz_class(out.winner_resources.time)) / pow2(w.length_bits());
    const ExpectedTime et = table.expected_time(x);
    rep.check("winner fits the enumeration budget for x=" + x.str(),
              w.length_bits() <= budget.max_program_bits, w.bits().grouped());
    rep.check("t(pi*) 2^-|pi*| <= expected time for x=" + x.str(), term <= et.value,
              str(term) + " <= " + str(et.value));
    t.add_row({x.str(), w.bits().str(), std::to_string(w.length_bits()),
               std::to_string(out.winner_resources.time), str(term), str(et.value),
               std::to_string(et.qualifying), std::to_string(et.still_running)});
  }
  rep.results["budget"] = budget.to_json();
  rep.tables.push_back(std::move(t));
}

// ---------------------------------------------------------- convergence

void recipe_convergence(const WorkbenchConfig& cfg, Report& rep) {
  nlohmann::ordered_json trials = nlohmann::ordered_json::array();
  std::uint64_t identities = 0;
  std::uint64_t identity_failures = 0;
  for (const Source& src : {all_ones_source(), alternating_source()}) {
    // The alternating generator is 24 bits long; a smaller cap has no
    // program that emits the sequence and the mixture vanishes.
    const auto bits = std::max<std::uint32_t>(
        cfg.convergence_max_bits, static_cast<std::uint32_t>(src.generator.length_bits()));
    const EnumerationBudget budget = EnumerationBudget::fixed(bits, cfg.enumeration.step_budget);
    const SequenceTrialReport r = sequence_trial(src, cfg.convergence_n, budget, cfg.workers);
    for (const auto& id : r.identities) {
      if (id.prefix.size() > 10) continue;
      ++identities;
      if (!id.holds()) ++identity_failures;
    }
    rep.check("cumulative squared error <= -1/2 ln 2^-|witness| for " + src.name,
              r.witness && r.within_bound,
              "total " + num(to_double(r.total)) + ", bound " + num(r.bound));
    Table t{src.name, {"step", "prediction", "truth", "sq_error", "cumulative", "bound"}, {}};
    for (const auto& s : r.steps) {
      t.add_row({std::to_string(s.step), str(s.prediction), s.truth ? "1" : "0",
                 str(s.sq_error), str(s.cumulative), num(r.bound)});
    }
    rep.tables.push_back(std::move(t));
    nlohmann::ordered_json j = r.to_json();
    j["budget"] = budget.to_json();
    trials.push_back(std::move(j));
  }
  rep.check("P'(x0) + P'(x1) = P'(x) exactly for every prefix of length <= 10",
            identity_failures == 0,
            std::to_string(identities) + " prefixes, " + std::to_string(identity_failures) +
                " failures");
  rep.results["trials"] = std::move(trials);
}

// -------------------------------------------------------- operator-demo

void recipe_operator_demo(const WorkbenchConfig& cfg, Report& rep) {
  std::vector<QaPair> pairs;
  for (std::uint32_t i = 0; i < cfg.operator_repeats; ++i) {
    pairs.push_back({BitString("0"), false});
    pairs.push_back({BitString("1"), true});
  }
  const EnumerationBudget budget =
      EnumerationBudget::fixed(cfg.operator_max_bits, cfg.enumeration.step_budget);
  const OperatorFit fit = operator_fit(pairs, budget, cfg.workers);
  const OperatorPrediction p1 = operator_predict(fit.models, BitString("1"), budget.step_budget);
  const OperatorPrediction p0 = operator_predict(fit.models, BitString("0"), budget.step_budget);

  std::uint64_t psi_mismatch = 0;
  Rational independent = 0;
  for (const auto& m : fit.models) {
    if (m.recompute_psi() != m.psi) ++psi_mismatch;
    Rational psi = dyadic(m.program.length_bits());
    for (const auto& pair : pairs) {
      auto v = eval_cpdf(m.program, pair.question, budget.steps_for(m.program.length_bits()));
      psi *= v ? (pair.answer ? *v : Rational(1 - *v)) : Rational(0);
    }
    independent += psi;
  }

  const Rational half(1, 2);
  rep.check("P(1|q=1) > 1/2 > P(1|q=0)", p1.normalized > half && half > p0.normalized,
            "P(1|1) " + num(to_double(p1.normalized)) + ", P(1|0) " +
                num(to_double(p0.normalized)));
  rep.check("every psi equals its product-form recomputation", psi_mismatch == 0,
            std::to_string(fit.models.size()) + " models");
  rep.check("Psi equals an independent summation", independent == fit.Psi, str(independent));

  Table t{"models", {"rank", "program", "glyphs", "length_bits", "psi", "log2_psi"}, {}};
  for (std::size_t i = 0; i < fit.models.size() && i < 32; ++i) {
    const auto& m = fit.models[i];
    t.add_row({std::to_string(i + 1), m.program.bits().str(), m.program.glyphs(),
               std::to_string(m.length_bits), str(m.psi), num(log2(m.psi))});
  }
  rep.results["pairs"] = pairs.size();
  rep.results["budget"] = budget.to_json();
  rep.results["models"] = fit.models.size();
  rep.results["enumerated"] = fit.enumerated;
  rep.results["Psi"] = to_json(fit.Psi);
  rep.results["prediction_q1"] = {{"normalized", to_json(p1.normalized)},
                                  {"raw", to_json(p1.raw)},
                                  {"approx", to_double(p1.normalized)},
                                  {"undefined_models", p1.undefined_models}};
  rep.results["prediction_q0"] = {{"normalized", to_json(p0.normalized)},
                                  {"raw", to_json(p0.raw)},
                                  {"approx", to_double(p0.normalized)},
                                  {"undefined_models", p0.undefined_models}};
  rep.tables.push_back(std::move(t));
}

// ------------------------------------------------------------ h-e-table

struct Minimum {
  std::optional<Program> program;
  mpz_class score;
  double bits = 0;
};

// Straight re-derivation from full traced runs, sharing no search code.
void brute_force_entropies(const BitString& x, const EnumerationBudget& b,
                           const UnitSystem& units, Minimum& shortest, Minimum& energy) {
  static const BitString kNoInput;
  for (const Program& p : enumerate_programs(b.max_program_bits)) {
    if (!b.includes(p.length_bits())) continue;
    const RunResult r = run(p, kNoInput, b.steps_for(p.length_bits()));
    if (r.status != RunStatus::kHalted || r.output != x) continue;
    if (!shortest.program) {
      shortest.program = p;
      shortest.bits = static_cast<double>(p.length_bits());
    }
    const Rational e = measure(build_graph(r.trace, 0), units).energy / units.e_u;
    mpz_class whole = e.get_num() / e.get_den();
    if (whole < 1) whole = 1;
    mpz_class score = whole << static_cast<mp_bitcnt_t>(p.length_bits());
    if (!energy.program || score < energy.score) {
      energy.program = p;
      energy.score = score;
      energy.bits = static_cast<double>(p.length_bits()) + std::log2(whole.get_d());
    }
  }
}

void recipe_h_e_table(const WorkbenchConfig& cfg, Report& rep) {
  const EnumerationBudget base =
      EnumerationBudget::fixed(cfg.entropy_max_bits, cfg.enumeration.step_budget);
  UnitSystem unit_e = cfg.units;
  unit_e.e_u = 1;
  Table t{"entropies", {"x", "max_bits", "H_upper", "H_coding", "H_e", "H_e_witness", "depth",
                        "volume", "energy", "total_energy"}, {}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::uint32_t len = 0; len <= cfg.entropy_max_length; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const BitString x = BitString::from_uint(v, len);
      const std::string label = "'" + x.str() + "'";

      // Strings without a producer under the base cap are re-examined with
      // wider caps; both sides must agree that nothing was found first.
      EnumerationBudget budget = base;
      std::optional<ComplexityReport> found;
      for (;;) {
        try {
          found = complexity_report(x, budget, cfg.units);
          break;
        } catch (const EntropyNotFound&) {
          Minimum none_s, none_e;
          brute_force_entropies(x, budget, cfg.units, none_s, none_e);
          rep.check("no producer of " + label + " within " + std::to_string(budget.max_program_bits) +
                        " bits, confirmed by brute force",
                    !none_s.program && !none_e.program);
          if (budget.max_program_bits + kOpcodeBits > 24) break;
          budget.max_program_bits += kOpcodeBits;
        }
      }
      if (!found) {
        rep.check("a producer of " + label + " exists within 24 bits", false);
        continue;
      }
      const ComplexityReport& c = *found;
      const EntropyEstimate he1 = energy_bounded_entropy(x, budget, unit_e);

      Minimum shortest, energy;
      brute_force_entropies(x, budget, cfg.units, shortest, energy);
      rep.check("H_upper matches brute force for " + label,
                shortest.program && *shortest.program == c.h_upper.witness &&
                    shortest.bits == c.h_upper.bits,
                num(c.h_upper.bits));
      rep.check("H_e matches brute force for " + label,
                energy.program && *energy.program == c.h_e.witness && energy.bits == c.h_e.bits,
                num(c.h_e.bits));
      rep.check("H_e >= H_upper with e_u = 1 for " + label, he1.bits >= c.h_upper.bits,
                num(he1.bits) + " >= " + num(c.h_upper.bits));

      static const BitString kNoInput;
      const RunResult again = run_untraced(c.h_upper.witness, kNoInput, budget.step_budget);
      const RunResult again_e = run_untraced(c.h_e.witness, kNoInput, budget.step_budget);
      rep.check("witnesses reproduce " + label,
                again.status == RunStatus::kHalted && again.output == x &&
                    again_e.status == RunStatus::kHalted && again_e.output == x);

      const LogicalProfile prof =
          logical_profile(c.h_upper.witness, kNoInput, budget.step_budget, cfg.units);
      t.add_row({x.str(), std::to_string(budget.max_program_bits), num(c.h_upper.bits), c.h_coding ? num(*c.h_coding) : "",
                 num(c.h_e.bits), c.h_e.witness.bits().str(), std::to_string(prof.depth),
                 str(prof.volume), str(prof.energy), str(prof.total_energy)});
      nlohmann::ordered_json row = c.to_json();
      row["budget"] = budget.to_json();
      row["H_e_unit_energy"] = he1.to_json();
      row["profile"] = prof.to_json();
      rows.push_back(std::move(row));
    }
  }
  rep.results["budget"] = base.to_json();
  rep.results["subjects"] = std::move(rows);
  rep.tables.push_back(std::move(t));
}

// --------------------------------------------------------------- limits

void recipe_limits(const WorkbenchConfig& cfg, Report& rep) {
  const double landauer = landauer_limit(cfg.limits_temperature, cfg.units);
  const double ml = margolus_levitin_ops(cfg.limits_energy, cfg.units);
  rep.results["temperature_K"] = cfg.limits_temperature;
  rep.results["landauer_J_per_bit"] = landauer;
  rep.results["energy_J"] = cfg.limits_energy;
  rep.results["margolus_levitin_ops_per_s"] = ml;
  rep.results["quoted_ops_per_joule"] = kQuotedOpsPerJoule;
  rep.results["quoted_over_computed"] = kQuotedOpsPerJoule / margolus_levitin_ops(1, cfg.units);

  if (cfg.limits_temperature == 300) {
    rep.check("landauer_limit(300 K) = 2.871e-21 J within 0.1%",
              within_relative(landauer, 2.871e-21, 1e-3), num(landauer));
  }
  if (cfg.limits_energy == 1) {
    rep.check("margolus_levitin_ops(1 J) = 3.019e33 within 0.1%",
              within_relative(ml, 3.019e33, 1e-3), num(ml));
  }

  Table t{"corollary", {"op_budget", "logical_volume", "max_complexity_bits"}, {}};
  const double c120 = max_learnable_complexity(1e120, 1);
  const double c51 = max_learnable_complexity(1e51, 1);
  t.add_row({"1e120", "1", num(c120)});
  t.add_row({"1e51", "1", num(c51)});
  rep.check("max_learnable_complexity(1e120, 1) = 397.63 +- 0.01",
            std::fabs(c120 - 397.63) <= 0.01, num(c120));
  rep.check("max_learnable_complexity(1e51, 1) = 168.4 +- 0.1", std::fabs(c51 - 168.4) <= 0.1,
            num(c51));
  rep.results["corollary"] = {{"1e120", c120}, {"1e51", c51}};
  rep.tables.push_back(std::move(t));
}

struct Recipe {
  const char* name;
  const char* summary;
  void (*run)(const WorkbenchConfig&, Report&);
};

const Recipe kRecipes[] = {
    {"kraft", "Kraft sums of the program set by length cap", recipe_kraft},
    {"prefix-free", "exhaustive prefix-freeness check over all bit strings", recipe_prefix_free},
    {"triangle-volume", "volume of triangular derivations and unit identities",
     recipe_triangle_volume},
    {"levin-sandwich", "Levin search cost against the conceptual jump size",
     recipe_levin_sandwich},
    {"lemma2", "winner's time-weighted prior against mixture expected time", recipe_lemma2},
    {"convergence", "sequence prediction error against the prior bound", recipe_convergence},
    {"operator-demo", "operator induction on identity question/answer pairs",
     recipe_operator_demo},
    {"h-e-table", "entropy and energy-bounded entropy of short strings", recipe_h_e_table},
    {"limits", "Landauer, Margolus-Levitin and learnable-complexity figures", recipe_limits},
};

const Recipe* find_recipe(std::string_view name) {
  for (const auto& r : kRecipes) {
    if (name == r.name) return &r;
  }
  return nullptr;
}

}  // namespace

const std::vector<std::string>& recipe_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& r : kRecipes) n.emplace_back(r.name);
    return n;
  }();
  return names;
}

std::string_view recipe_summary(std::string_view name) {
  const Recipe* r = find_recipe(name);
  if (!r) throw UnknownRecipe(std::string(name));
  return r->summary;
}

Report run_recipe(std::string_view name, const WorkbenchConfig& config) {
  const Recipe* r = find_recipe(name);
  if (!r) throw UnknownRecipe(std::string(name));
  config.units.check();
  Report rep;
  rep.recipe = r->name;
  rep.config = config.to_json();
  r->run(config, rep);
  return rep;
}

ExperimentResult run_experiment(std::string_view name, const WorkbenchConfig& config) {
  ExperimentResult out{run_recipe(name, config), {}};
  out.files = emit_report(out.report, config.output_dir, config.output_format);
  return out;
}

}  // namespace levinlab
