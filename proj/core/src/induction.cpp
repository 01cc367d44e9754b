#include "levinlab/induction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace levinlab {

Source all_ones_source() {
  Source s;
  s.name = "all-ones";
  s.kind = Source::Kind::kDeterministicSequence;
  s.generator = Program::decode(BitString("0010 0100 0111 0101 1111"));
  s.exact_law = [](const BitString&) { return Rational(1); };
  return s;
}

Source alternating_source() {
  Source s;
  s.name = "alternating";
  s.kind = Source::Kind::kDeterministicSequence;
  s.generator = Program::decode(BitString("0010 0100 0010 0111 0101 1111"));
  s.exact_law = [](const BitString& history) {
    return Rational(history.size() % 2 == 1 ? 1 : 0);
  };
  return s;
}

Source half_copy_source() {
  Source s;
  s.name = "half-copy";
  s.kind = Source::Kind::kCpdf;
  s.generator = Program::decode(BitString("0110 0110 0110 0111 1111"));
  s.exact_law = [](const BitString& q) {
    return !q.empty() && q[0] ? Rational(1, 2) : Rational(0);
  };
  return s;
}

BitString generate(const Source& source, std::size_t n, std::uint64_t step_budget) {
  static const BitString kNoInput;
  Machine m(source.generator, kNoInput, false);
  while (m.output().size() < n && m.step(step_budget)) {
  }
  if (m.output().size() < n) {
    throw std::runtime_error("source " + source.name + " produced only " +
                             std::to_string(m.output().size()) + " of " +
                             std::to_string(n) + " bits");
  }
  return m.output().prefix(n);
}

bool total_within_bound(const Rational& total, std::size_t witness_bits) {
  // ln 2 = 0.69314718055994530941...; the lower end of the bracket is
  // strictly below it, so passing against it is a proof.
  static const Rational kLn2Below = parse_rational("0.6931471805599453");
  return 2 * total <= Rational(mpz_class(witness_bits)) * kLn2Below;
}

SequenceTrialReport sequence_trial(const Source& source, std::size_t n,
                                   const EnumerationBudget& budget,
                                   unsigned workers) {
  if (source.kind != Source::Kind::kDeterministicSequence) {
    throw std::invalid_argument("sequence_trial needs a deterministic sequence source");
  }
  SequenceTrialReport report;
  report.source = source.name;
  const RunTable table = RunTable::build(budget, workers);
  report.sequence = n == 0 ? BitString() : generate(source, n, std::max<std::uint64_t>(budget.step_budget, 1));

  BitString prefix;
  for (std::size_t m = 0; m < n; ++m) {
    NextBitPrediction p = table.predict_next(prefix);
    report.identities.push_back({prefix, p.norm_x, p.norm_x0, p.norm_x1});
    const Rational truth_p1 = source.exact_law(prefix);
    const bool bit = report.sequence[m];
    Rational diff = p.p1 - truth_p1;
    Rational sq = diff * diff;
    report.total += sq;
    report.steps.push_back({m + 1, p.p1, bit, sq, report.total});
    prefix.push_back(bit);
  }

  for (const auto& run : table.runs()) {
    if (run.output.starts_with(report.sequence)) {
      report.witness = run.program;  // runs are in (length, lex) order
      break;
    }
  }
  if (report.witness) {
    report.bound = 0.5 * std::log(2.0) * static_cast<double>(report.witness->length_bits());
    report.within_bound = total_within_bound(report.total, report.witness->length_bits());
  }
  return report;
}

nlohmann::ordered_json SequenceTrialReport::to_json() const {
  nlohmann::ordered_json j;
  j["source"] = source;
  j["sequence"] = sequence.str();
  j["total"] = levinlab::to_json(total);
  j["total_approx"] = to_double(total);
  j["witness"] = witness ? nlohmann::ordered_json(witness->bits().grouped())
                         : nlohmann::ordered_json(nullptr);
  j["witness_bits"] = witness ? witness->length_bits() : 0;
  j["bound"] = bound;
  j["within_bound"] = within_bound;
  j["steps"] = nlohmann::ordered_json::array();
  for (const auto& s : steps) {
    j["steps"].push_back({{"step", s.step},
                          {"prediction", levinlab::to_json(s.prediction)},
                          {"truth", s.truth ? 1 : 0},
                          {"sq_error", levinlab::to_json(s.sq_error)},
                          {"cumulative", levinlab::to_json(s.cumulative)}});
  }
  return j;
}

std::string SequenceTrialReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "step,prediction,truth,sq_error,cumulative,bound\n";
  for (const auto& s : steps) {
    os << s.step << ',' << to_double(s.prediction) << ',' << (s.truth ? 1 : 0)
       << ',' << to_double(s.sq_error) << ',' << to_double(s.cumulative) << ','
       << bound << '\n';
  }
  return os.str();
}

std::vector<QaPair> parse_pairs(std::string_view text) {
  std::vector<QaPair> pairs;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::invalid_argument("pairs line " + std::to_string(lineno) +
                                  ": expected q_bits<TAB>a_bit");
    }
    BitString q(line.substr(0, tab));
    BitString a(line.substr(tab + 1));
    if (a.size() != 1) {
      throw std::invalid_argument("pairs line " + std::to_string(lineno) +
                                  ": answer must be a single bit");
    }
    pairs.push_back({q, a[0]});
  }
  return pairs;
}

Rational OperatorModel::recompute_psi() const {
  Rational psi = dyadic(length_bits);
  for (const auto& v : per_pair) psi *= v;
  return psi;
}

std::optional<Rational> operator_likelihood(const Program& program,
                                            const QaPair& pair,
                                            std::uint64_t step_budget) {
  auto p1 = eval_cpdf(program, pair.question, step_budget);
  if (!p1) return std::nullopt;
  return pair.answer ? *p1 : Rational(1 - *p1);
}

OperatorFit operator_fit(std::span<const QaPair> pairs,
                         const EnumerationBudget& budget, unsigned workers) {
  if (pairs.empty()) throw std::invalid_argument("operator_fit needs at least one pair");
  budget.check();
  std::vector<Program> programs;
  for_each_program(budget.max_program_bits, [&](const Program& p) {
    if (budget.includes(p.length_bits())) programs.push_back(p);
  });

  std::vector<std::optional<OperatorModel>> slots(programs.size());
  auto evaluate = [&](std::size_t i) {
    const Program& p = programs[i];
    const std::uint64_t steps = budget.steps_for(p.length_bits());
    OperatorModel m{p, p.length_bits(), dyadic(p.length_bits()), {}};
    m.per_pair.reserve(pairs.size());
    for (const auto& pair : pairs) {
      auto v = operator_likelihood(p, pair, steps);
      if (!v || sgn(*v) == 0) return;  // psi = 0
      m.per_pair.push_back(*v);
      m.psi *= *v;
    }
    slots[i] = std::move(m);
  };
  workers = std::max(1U, workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < programs.size(); ++i) evaluate(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < programs.size(); i += workers) evaluate(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  OperatorFit fit;
  fit.enumerated = programs.size();
  for (auto& slot : slots) {
    if (slot) fit.models.push_back(std::move(*slot));
  }
  if (fit.models.empty()) {
    throw NoModels("no enumerated program gives the pairs positive likelihood under " +
                   budget.describe());
  }
  // Stable: equal psi keeps (length, lex) order.
  std::stable_sort(fit.models.begin(), fit.models.end(),
                   [](const OperatorModel& a, const OperatorModel& b) { return a.psi > b.psi; });
  for (const auto& m : fit.models) fit.Psi += m.psi;
  return fit;
}

nlohmann::ordered_json OperatorFit::to_json() const {
  nlohmann::ordered_json j;
  j["Psi"] = levinlab::to_json(Psi);
  j["enumerated"] = enumerated;
  j["models"] = nlohmann::ordered_json::array();
  for (const auto& m : models) {
    j["models"].push_back({{"program", m.program.bits().grouped()},
                           {"glyphs", m.program.glyphs()},
                           {"length_bits", m.length_bits},
                           {"psi", levinlab::to_json(m.psi)},
                           {"log2_psi", log2(m.psi)}});
  }
  return j;
}

OperatorPrediction operator_predict(std::span<const OperatorModel> models,
                                    const BitString& q, std::uint64_t step_budget) {
  OperatorPrediction out;
  Rational mass = 0;
  for (const auto& m : models) {
    auto p1 = eval_cpdf(m.program, q, step_budget);
    if (!p1) {
      ++out.undefined_models;
      p1 = Rational(1, 2);
    }
    out.raw += m.psi * *p1;
    mass += m.psi;
  }
  if (sgn(mass) <= 0) {
    throw std::invalid_argument("operator_predict needs models with positive psi");
  }
  out.normalized = out.raw / mass;
  return out;
}

}  // namespace levinlab
