#include "levinlab/search.hpp"

#include <sstream>

#include "levinlab/mixture.hpp"

namespace levinlab {

Goal Goal::output_prefix(BitString x) {
  Goal g;
  g.kind_ = Kind::kOutputPrefix;
  g.target_ = std::move(x);
  return g;
}

Goal Goal::exact_output(BitString x) {
  Goal g;
  g.kind_ = Kind::kExactOutput;
  g.target_ = std::move(x);
  return g;
}

Goal Goal::cpdf_agreement(std::vector<CpdfSample> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("cpdf goal needs at least one sample");
  }
  for (const auto& s : samples) {
    if (s.p1 < 0 || s.p1 > 1) {
      throw std::invalid_argument("cpdf sample probability outside [0,1]");
    }
  }
  Goal g;
  g.kind_ = Kind::kCpdfAgreement;
  g.samples_ = std::move(samples);
  return g;
}

Goal Goal::parse(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("goal must look like kind:argument");
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view arg = spec.substr(colon + 1);
  if (kind == "prefix") return output_prefix(BitString(arg));
  if (kind == "exact") return exact_output(BitString(arg));
  if (kind == "cpdf") {
    std::vector<CpdfSample> samples;
    std::stringstream ss{std::string(arg)};
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("cpdf sample '" + item + "' is not q=p");
      }
      samples.push_back({BitString(item.substr(0, eq)),
                         parse_rational(item.substr(eq + 1))});
    }
    return cpdf_agreement(std::move(samples));
  }
  throw std::invalid_argument("unknown goal kind '" + std::string(kind) + "'");
}

std::string Goal::describe() const {
  switch (kind_) {
    case Kind::kOutputPrefix: return "prefix:" + target_.str();
    case Kind::kExactOutput: return "exact:" + target_.str();
    case Kind::kCpdfAgreement: {
      std::string s = "cpdf:";
      for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (i) s += ",";
        s += samples_[i].query.str() + "=" + to_string(samples_[i].p1);
      }
      return s;
    }
  }
  return "?";
}

Rational unit_scale(Metric metric, const UnitSystem& units) {
  switch (metric) {
    case Metric::kTime: return 1;
    case Metric::kVolume: return units.v_u;
    case Metric::kEnergy:
    case Metric::kTotalEnergy: return units.e_u;
  }
  return 1;
}

Rational metric_units(const ResourceVector& r, Metric metric,
                      const UnitSystem& units) {
  Rational v;
  switch (metric) {
    case Metric::kTime: v = Rational(mpz_class(r.time)); break;
    case Metric::kVolume: v = r.volume / units.v_u; break;
    case Metric::kEnergy: v = r.energy / units.e_u; break;
    case Metric::kTotalEnergy: v = r.total_energy / units.e_u; break;
  }
  return v < 1 ? Rational(1) : v;
}

namespace {

// Largest step count that can fit in `allowance` metric units. Every metric
// charges at least one unit per executed instruction.
std::uint64_t step_cap(const Rational& allowance, Metric metric,
                       const SearchOptions& options) {
  mpz_class whole = allowance.get_num() / allowance.get_den();
  std::uint64_t cap = whole.fits_ulong_p() ? whole.get_ui() : UINT64_MAX;
  if (metric != Metric::kTime) cap = std::min(cap, options.step_ceiling);
  return cap;
}

struct SingleRun {
  bool satisfied = false;
  ResourceVector resources;
  Rational units = 1;
  std::uint64_t steps = 0;
};

ResourceVector resources_of(const Machine& m, std::size_t input_length,
                            const UnitSystem& units) {
  return measure(tally_trace(m.trace(), input_length), units);
}

// Full resource vector of a successful run, re-run with a trace; trials
// themselves only count steps.
ResourceVector full_resources(const Program& program, std::uint64_t steps,
                              const SearchOptions& options,
                              const CpdfSample* sample) {
  const BitString input = sample ? encode_query(sample->query) : BitString();
  Machine m(program, input, true);
  m.run_to(steps);
  return resources_of(m, input.size(), options.units);
}

SingleRun sequence_run(const Program& program, const Goal& goal, Metric metric,
                       std::uint64_t cap, const SearchOptions& options) {
  static const BitString kNoInput;
  const BitString& x = goal.target();
  const bool exact = goal.kind() == Goal::Kind::kExactOutput;
  Machine m(program, kNoInput, false);
  bool decided = false;
  bool ok = false;
  for (;;) {
    const BitString& out = m.output();
    if (!out.empty() && (out.size() > x.size() || out[out.size() - 1] != x[out.size() - 1])) {
      decided = true;  // diverged or overshot
      break;
    }
    if (!exact && out.size() == x.size()) {
      decided = ok = true;
      break;
    }
    if (!m.step(cap)) break;
  }
  if (!decided) {
    ok = exact ? (m.status() == RunStatus::kHalted && m.output() == x)
               : m.output().starts_with(x);
  }
  SingleRun r;
  r.steps = m.steps();
  if (!ok) return r;
  r.satisfied = true;
  if (metric == Metric::kTime) {
    r.resources.time = m.steps();
  } else {
    r.resources = full_resources(program, m.steps(), options, nullptr);
  }
  r.units = metric_units(r.resources, metric, options.units);
  return r;
}

SingleRun cpdf_run(const Program& program, const CpdfSample& sample,
                   Metric metric, std::uint64_t cap, const SearchOptions& options) {
  const BitString input = encode_query(sample.query);
  Machine m(program, input, false);
  m.run_to(cap);
  SingleRun r;
  r.steps = m.steps();
  if (m.status() != RunStatus::kHalted || m.output().empty() ||
      dyadic_fraction(m.output()) != sample.p1) {
    return r;
  }
  r.satisfied = true;
  if (metric == Metric::kTime) {
    r.resources.time = m.steps();
  } else {
    r.resources = full_resources(program, m.steps(), options, &sample);
  }
  r.units = metric_units(r.resources, metric, options.units);
  return r;
}

}  // namespace

Trial run_trial(const Program& program, const Goal& goal, Metric metric,
                const Rational& allowance, const SearchOptions& options) {
  Trial t;
  const std::uint64_t cap = step_cap(allowance, metric, options);
  if (goal.kind() != Goal::Kind::kCpdfAgreement) {
    SingleRun r = sequence_run(program, goal, metric, cap, options);
    t.steps_executed = r.steps;
    if (!r.satisfied || r.units > allowance) return t;
    t.success = true;
    t.cost_units = r.units;
    t.resources = metric == Metric::kTime
                      ? full_resources(program, r.steps, options, nullptr)
                      : r.resources;
    return t;
  }
  Rational worst = 0;
  const CpdfSample* worst_sample = nullptr;
  ResourceVector worst_resources;
  std::uint64_t worst_steps = 0;
  for (const auto& sample : goal.samples()) {
    SingleRun r = cpdf_run(program, sample, metric, cap, options);
    t.steps_executed += r.steps;
    if (!r.satisfied || r.units > allowance) return t;
    if (worst_sample == nullptr || r.units > worst) {
      worst = r.units;
      worst_sample = &sample;
      worst_resources = r.resources;
      worst_steps = r.steps;
    }
  }
  t.success = true;
  t.cost_units = worst;
  t.resources = metric == Metric::kTime
                    ? full_resources(program, worst_steps, options, worst_sample)
                    : worst_resources;
  return t;
}

Rational conceptual_jump(const Program& winner,
                         const ResourceVector& winner_resources, Metric metric,
                         const UnitSystem& units) {
  return metric_units(winner_resources, metric, units) * unit_scale(metric, units) *
         pow2(winner.length_bits());
}

SearchOutcome levin_search(const Goal& goal, Metric metric,
                           std::uint32_t max_phase, const SearchOptions& options) {
  if (max_phase < 1) throw std::invalid_argument("levin_search needs max_phase >= 1");
  options.units.check();

  SearchOutcome out;
  out.goal = goal;
  out.metric = metric;
  out.units = options.units;

  std::vector<Program> pool;  // valid programs of length <= current phase
  std::uint32_t enumerated_bits = 0;

  for (std::uint32_t k = 1; k <= max_phase; ++k) {
    if (k >= enumerated_bits + kOpcodeBits) {
      const auto groups = static_cast<std::uint32_t>(k / kOpcodeBits);
      std::uint64_t needed = 0;
      for (std::uint32_t g = 1; g <= groups; ++g) needed += count_programs(g);
      if (needed > options.max_pool) {
        throw NotFound("goal " + goal.describe() + " not met by phase " +
                           std::to_string(k - 1) + "; phase " + std::to_string(k) +
                           " needs " + std::to_string(needed) + " programs (max_pool " +
                           std::to_string(options.max_pool) + ")",
                       k - 1);
      }
      pool.clear();
      for_each_program(groups * kOpcodeBits, [&](const Program& p) { pool.push_back(p); });
      enumerated_bits = groups * kOpcodeBits;
    }
    for (const Program& p : pool) {
      const std::size_t len = p.length_bits();
      const Rational allowance = pow2(k - len);
      Trial trial = run_trial(p, goal, metric, allowance, options);
      ++out.trials;
      out.steps_executed += trial.steps_executed;
      if (!trial.success) continue;

      out.winner = p;
      out.phase = k;
      out.winner_resources = trial.resources;
      out.winner_units = trial.cost_units;
      const Rational scale = unit_scale(metric, options.units);
      // Phases 1..k-1 ran to completion; within phase k the winner holds a
      // 2^-|p| share of the clock until it finishes.
      out.measured_cost = (pow2(k) - 2 + trial.cost_units * pow2(len)) * scale;
      out.cj_value = conceptual_jump(p, trial.resources, metric, options.units);
      return out;
    }
  }
  throw NotFound("goal " + goal.describe() + " not met within " +
                     std::to_string(max_phase) + " phases",
                 max_phase);
}

SandwichReport verify_sandwich(const SearchOutcome& outcome) {
  if (!outcome.winner) {
    throw std::invalid_argument("verify_sandwich needs a successful search");
  }
  SandwichReport r;
  r.cj = outcome.cj_value;
  r.measured_cost = outcome.measured_cost;
  r.ratio = to_double(r.measured_cost / r.cj);
  r.pass = r.cj <= r.measured_cost &&
           r.measured_cost <= SandwichReport::kProvableFactor * r.cj;
  r.within_ideal_factor = r.measured_cost <= SandwichReport::kIdealFactor * r.cj;
  return r;
}

nlohmann::ordered_json SandwichReport::to_json() const {
  nlohmann::ordered_json j;
  j["cj"] = levinlab::to_json(cj);
  j["measured_cost"] = levinlab::to_json(measured_cost);
  j["ratio"] = ratio;
  j["provable_factor"] = kProvableFactor;
  j["ideal_factor"] = kIdealFactor;
  j["within_ideal_factor"] = within_ideal_factor;
  j["pass"] = pass;
  return j;
}

nlohmann::ordered_json SearchOutcome::to_json() const {
  nlohmann::ordered_json j;
  j["goal"] = goal.describe();
  j["metric"] = std::string(to_string(metric));
  if (winner) {
    j["winner"] = winner->bits().grouped();
    j["winner_glyphs"] = winner->glyphs();
    j["winner_bits"] = winner->length_bits();
  } else {
    j["winner"] = nullptr;
  }
  j["phase"] = phase;
  j["winner_resources"] = levinlab::to_json(winner_resources);
  j["winner_units"] = levinlab::to_json(winner_units);
  j["measured_cost"] = levinlab::to_json(measured_cost);
  j["cj_value"] = levinlab::to_json(cj_value);
  j["steps_executed"] = steps_executed;
  j["trials"] = trials;
  j["units"] = levinlab::to_json(units);
  return j;
}

}  // namespace levinlab
