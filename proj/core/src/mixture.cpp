#include "levinlab/mixture.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <thread>

namespace levinlab {

EnumerationBudget EnumerationBudget::fixed(std::uint32_t max_bits,
                                           std::uint64_t steps) {
  EnumerationBudget b;
  b.max_program_bits = max_bits;
  b.step_budget = steps;
  b.schedule = Schedule::kFixed;
  return b;
}

EnumerationBudget EnumerationBudget::dovetail(std::uint32_t max_bits,
                                              std::uint32_t phase,
                                              std::uint64_t step_cap) {
  EnumerationBudget b;
  b.max_program_bits = max_bits;
  b.step_budget = step_cap;
  b.schedule = Schedule::kDovetail;
  b.phase = phase;
  return b;
}

bool EnumerationBudget::includes(std::size_t length_bits) const {
  if (length_bits > max_program_bits) return false;
  return schedule == Schedule::kFixed || length_bits <= phase;
}

std::uint64_t EnumerationBudget::steps_for(std::size_t length_bits) const {
  if (!includes(length_bits)) return 0;
  if (schedule == Schedule::kFixed) return step_budget;
  const std::size_t shift = phase - length_bits;
  if (shift >= 63) return step_budget;
  return std::min<std::uint64_t>(step_budget, std::uint64_t{1} << shift);
}

void EnumerationBudget::check() const {
  if (max_program_bits < kOpcodeBits) {
    throw std::invalid_argument("enumeration needs max_program_bits >= 4");
  }
  if (step_budget == 0) {
    throw std::invalid_argument("enumeration needs a positive step budget");
  }
  if (schedule == Schedule::kDovetail && phase == 0) {
    throw std::invalid_argument("dovetail schedule needs phase >= 1");
  }
}

EnumerationBudget EnumerationBudget::parse(std::string_view spec) {
  EnumerationBudget b;
  std::string text(spec);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("budget item '" + item + "' is not key=value");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    const auto number = std::stoull(value);
    if (key == "bits") {
      b.max_program_bits = static_cast<std::uint32_t>(number);
    } else if (key == "steps") {
      b.step_budget = number;
    } else if (key == "dovetail") {
      b.schedule = Schedule::kDovetail;
      b.phase = static_cast<std::uint32_t>(number);
    } else {
      throw std::invalid_argument("unknown budget key '" + key + "'");
    }
  }
  b.check();
  return b;
}

std::string EnumerationBudget::describe() const {
  std::string s = "bits=" + std::to_string(max_program_bits) +
                  ",steps=" + std::to_string(step_budget);
  if (schedule == Schedule::kDovetail) s += ",dovetail=" + std::to_string(phase);
  return s;
}

nlohmann::ordered_json EnumerationBudget::to_json() const {
  nlohmann::ordered_json j;
  j["max_program_bits"] = max_program_bits;
  j["step_budget"] = step_budget;
  j["schedule"] = schedule == Schedule::kFixed ? "fixed" : "dovetail";
  j["phase"] = phase;
  return j;
}

namespace {

// Instruction opcodes in nibble (= lexicographic) order.
constexpr std::array<Opcode, 8> kBodyOps = {
    Opcode::kRight, Opcode::kLeft, Opcode::kInc,  Opcode::kDec,
    Opcode::kOpen,  Opcode::kClose, Opcode::kRead, Opcode::kPut};

void generate(std::vector<Opcode>& prefix, std::size_t remaining,
              std::size_t depth, const std::function<void(const Program&)>& visit) {
  if (remaining == 0) {
    if (depth == 0) visit(Program::from_opcodes(prefix));
    return;
  }
  for (Opcode op : kBodyOps) {
    std::size_t next_depth = depth;
    if (op == Opcode::kOpen) {
      next_depth = depth + 1;
    } else if (op == Opcode::kClose) {
      if (depth == 0) continue;
      next_depth = depth - 1;
    }
    if (next_depth > remaining - 1) continue;  // cannot close in time
    prefix.push_back(op);
    generate(prefix, remaining - 1, next_depth, visit);
    prefix.pop_back();
  }
}

}  // namespace

std::uint64_t count_programs(std::uint32_t groups) {
  if (groups == 0) return 0;
  const std::uint32_t body = groups - 1;
  // ways[d]: sequences so far ending at loop depth d.
  std::vector<std::uint64_t> ways(body + 2, 0);
  ways[0] = 1;
  for (std::uint32_t i = 0; i < body; ++i) {
    std::vector<std::uint64_t> next(body + 2, 0);
    for (std::uint32_t d = 0; d <= body; ++d) {
      if (ways[d] == 0) continue;
      next[d] += ways[d] * 6;  // non-loop opcodes
      next[d + 1] += ways[d];
      if (d > 0) next[d - 1] += ways[d];
    }
    ways = std::move(next);
  }
  return ways[0];
}

void for_each_program(std::uint32_t max_bits,
                      const std::function<void(const Program&)>& visit) {
  std::vector<Opcode> prefix;
  for (std::uint32_t groups = 1; groups * kOpcodeBits <= max_bits; ++groups) {
    generate(prefix, groups - 1, 0, visit);
  }
}

std::vector<Program> enumerate_programs(std::uint32_t max_bits) {
  if (max_bits < kOpcodeBits) {
    throw std::invalid_argument("enumerate_programs needs max_bits >= 4");
  }
  std::vector<Program> out;
  for_each_program(max_bits, [&](const Program& p) { out.push_back(p); });
  return out;
}

Rational kraft_sum(std::uint32_t max_bits) {
  Rational sum = 0;
  for (std::uint32_t groups = 1; groups * kOpcodeBits <= max_bits; ++groups) {
    sum += dyadic(mpz_class(std::to_string(count_programs(groups))),
                  groups * kOpcodeBits);
  }
  return sum;
}

nlohmann::ordered_json PriorEstimate::to_json() const {
  nlohmann::ordered_json j;
  j["value"] = levinlab::to_json(value);
  j["budget"] = budget.to_json();
  j["enumerated"] = enumerated;
  j["unknown"] = unknown;
  j["contributing"] = nlohmann::ordered_json::array();
  for (const auto& c : contributing) {
    j["contributing"].push_back({{"program", c.program.str()},
                                 {"weight", levinlab::to_json(c.weight)},
                                 {"status", std::string(to_string(c.status))}});
  }
  return j;
}

namespace {

// Splits `count` items across workers by index residue and runs `work(i)`
// for each; results must be written to slot i so order is preserved.
template <typename F>
void parallel_indexed(std::size_t count, unsigned workers, F&& work) {
  workers = std::max(1U, workers);
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) work(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct Probe {
  PrefixVerdict verdict;
  RunStatus status;
};

// outputs_prefix, also reporting where the machine was when it decided.
Probe probe_prefix(const Program& p, const BitString& x, std::uint64_t budget) {
  static const BitString kNoInput;
  Machine m(p, kNoInput, false);
  for (;;) {
    const BitString& out = m.output();
    if (out.size() >= x.size() ||
        (!out.empty() && out[out.size() - 1] != x[out.size() - 1])) {
      break;
    }
    if (!m.step(budget)) break;
  }
  return {classify_prefix(m.output(), m.status(), x), m.status()};
}

}  // namespace

PriorEstimate alp_lower_bound(const BitString& x, const EnumerationBudget& budget,
                              unsigned workers) {
  budget.check();
  PriorEstimate est;
  est.budget = budget;
  std::vector<Program> programs;
  for_each_program(budget.max_program_bits, [&](const Program& p) {
    if (budget.includes(p.length_bits())) programs.push_back(p);
  });
  std::vector<Probe> probes(programs.size(), Probe{PrefixVerdict::kNo, RunStatus::kHalted});
  parallel_indexed(programs.size(), workers, [&](std::size_t i) {
    probes[i] = probe_prefix(programs[i], x,
                             budget.steps_for(programs[i].length_bits()));
  });
  est.enumerated = programs.size();
  for (std::size_t i = 0; i < programs.size(); ++i) {
    if (probes[i].verdict == PrefixVerdict::kYes) {
      Rational w = dyadic(programs[i].length_bits());
      est.value += w;
      est.contributing.push_back({programs[i].bits(), w, probes[i].status});
    } else if (probes[i].verdict == PrefixVerdict::kUnknown) {
      ++est.unknown;
    }
  }
  return est;
}

RunTable RunTable::build(const EnumerationBudget& budget, unsigned workers) {
  budget.check();
  RunTable table;
  table.budget_ = budget;
  std::vector<Program> programs;
  for_each_program(budget.max_program_bits, [&](const Program& p) {
    if (budget.includes(p.length_bits())) programs.push_back(p);
  });
  std::vector<RunResult> results(programs.size());
  static const BitString kNoInput;
  parallel_indexed(programs.size(), workers, [&](std::size_t i) {
    results[i] = run_untraced(programs[i], kNoInput,
                              budget.steps_for(programs[i].length_bits()));
  });
  table.runs_.reserve(programs.size());
  for (std::size_t i = 0; i < programs.size(); ++i) {
    table.runs_.push_back(ProgramRun{std::move(programs[i]),
                                     std::move(results[i].output),
                                     results[i].status, results[i].steps});
  }
  return table;
}

Rational RunTable::prior(const BitString& x) const {
  Rational sum = 0;
  for (const auto& r : runs_) {
    if (r.output.starts_with(x)) sum += dyadic(r.program.length_bits());
  }
  return sum;
}

PriorEstimate RunTable::estimate(const BitString& x) const {
  PriorEstimate est;
  est.budget = budget_;
  est.enumerated = runs_.size();
  for (const auto& r : runs_) {
    switch (classify_prefix(r.output, r.status, x)) {
      case PrefixVerdict::kYes: {
        Rational w = dyadic(r.program.length_bits());
        est.value += w;
        est.contributing.push_back({r.program.bits(), w, r.status});
        break;
      }
      case PrefixVerdict::kUnknown: ++est.unknown; break;
      case PrefixVerdict::kNo: break;
    }
  }
  return est;
}

NextBitPrediction RunTable::predict_next(const BitString& x) const {
  Rational norm = 1;  // P'(empty)
  BitString prefix;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Rational a = prior(prefix.with(false));
    const Rational b = prior(prefix.with(true));
    if (sgn(a + b) == 0) throw ZeroMixture(prefix);
    const bool bit = x[i];
    norm = (bit ? b : a) * norm / (a + b);
    prefix.push_back(bit);
  }
  NextBitPrediction out;
  out.raw_x = prior(x);
  out.raw_x0 = prior(x.with(false));
  out.raw_x1 = prior(x.with(true));
  const Rational total = out.raw_x0 + out.raw_x1;
  if (sgn(total) == 0) throw ZeroMixture(x);
  out.norm_x = norm;
  out.norm_x0 = out.raw_x0 * norm / total;
  out.norm_x1 = out.raw_x1 * norm / total;
  out.p0 = out.raw_x0 / total;
  out.p1 = out.raw_x1 / total;
  return out;
}

ExpectedTime RunTable::expected_time(const BitString& x) const {
  ExpectedTime out;
  for (const auto& r : runs_) {
    if (!r.output.starts_with(x)) continue;
    ++out.qualifying;
    if (r.status == RunStatus::kBudgetExhausted) ++out.still_running;
    out.value += dyadic(mpz_class(std::to_string(r.steps)), r.program.length_bits());
  }
  return out;
}

NextBitPrediction predict_next(const BitString& x, const EnumerationBudget& budget,
                               unsigned workers) {
  return RunTable::build(budget, workers).predict_next(x);
}

ExpectedTime mixture_expected_time(const BitString& x,
                                   const EnumerationBudget& budget,
                                   unsigned workers) {
  return RunTable::build(budget, workers).expected_time(x);
}

}  // namespace levinlab
