#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "levinlab/bits.hpp"
#include "levinlab/mixture.hpp"
#include "levinlab/rational.hpp"
#include "levinlab/refmachine.hpp"

namespace levinlab {

/// A computable source with a closed-form law used as ground truth.
struct Source {
  enum class Kind { kDeterministicSequence, kCpdf };

  std::string name;
  Kind kind = Kind::kDeterministicSequence;
  Program generator;
  /// Sequence sources: probability that the next bit is 1 given the history.
  /// Cpdf sources: O(1 | q).
  std::function<Rational(const BitString&)> exact_law;
};

/// "+[.]": emits 1 forever.
Source all_ones_source();
/// "+[+.]": emits 0101... (until the cell wraps after 255 increments).
Source alternating_source();
/// ",,,.": reads a one-bit query and answers with probability q/2 of a 1.
Source half_copy_source();

/// First n output bits of a sequence source. Throws std::runtime_error if
/// the generator does not produce n bits within step_budget.
BitString generate(const Source& source, std::size_t n, std::uint64_t step_budget);

struct TrialStep {
  std::size_t step = 0;   // 1-based index of the predicted bit
  Rational prediction;    // P'(next = 1 | prefix)
  bool truth = false;
  Rational sq_error;
  Rational cumulative;
};

/// Normalised masses around one prefix, for checking the recursion.
struct PrefixIdentity {
  BitString prefix;
  Rational norm_x;
  Rational norm_x0;
  Rational norm_x1;
  bool holds() const { return norm_x0 + norm_x1 == norm_x; }
};

struct SequenceTrialReport {
  std::string source;
  BitString sequence;
  std::vector<TrialStep> steps;
  std::vector<PrefixIdentity> identities;
  Rational total = 0;
  std::optional<Program> witness;  // shortest program whose output extends the sequence
  double bound = 0;                // -1/2 ln 2^-|witness|
  bool within_bound = false;       // decided exactly, see total_within_bound()

  nlohmann::ordered_json to_json() const;
  /// "step,prediction,truth,sq_error,cumulative,bound" rows.
  std::string to_csv() const;
};

/// total <= (bits / 2) ln 2, decided with a rational bracket around ln 2.
bool total_within_bound(const Rational& total, std::size_t witness_bits);

/// Predicts a deterministic source bit by bit with the budgeted mixture.
/// Throws ZeroMixture if some prefix has no support under the budget.
SequenceTrialReport sequence_trial(const Source& source, std::size_t n,
                                   const EnumerationBudget& budget,
                                   unsigned workers = 1);

struct QaPair {
  BitString question;
  bool answer = false;
};

/// Lines "q_bits<TAB>a_bit"; blank lines and '#' comments are skipped.
std::vector<QaPair> parse_pairs(std::string_view text);

struct OperatorModel {
  Program program;
  std::size_t length_bits = 0;
  Rational psi;
  std::vector<Rational> per_pair;  // O(a_i | q_i)

  /// 2^-length * prod(per_pair), recomputed from scratch.
  Rational recompute_psi() const;
};

struct OperatorFit {
  std::vector<OperatorModel> models;  // psi > 0, psi descending, then (length, lex)
  Rational Psi = 0;
  std::uint64_t enumerated = 0;

  nlohmann::ordered_json to_json() const;
};

class NoModels : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// O(a | q) under the dyadic convention, or nullopt if undefined.
std::optional<Rational> operator_likelihood(const Program& program,
                                            const QaPair& pair,
                                            std::uint64_t step_budget);

OperatorFit operator_fit(std::span<const QaPair> pairs,
                         const EnumerationBudget& budget, unsigned workers = 1);

struct OperatorPrediction {
  Rational normalized;  // sum psi O(1|q) / sum psi
  Rational raw;         // sum psi O(1|q)
  std::size_t undefined_models = 0;  // models that counted as 1/2 on q
};

/// Mixture prediction of answer 1 for question q. Models without an answer
/// on q count as 1/2. Throws std::invalid_argument without positive mass.
OperatorPrediction operator_predict(std::span<const OperatorModel> models,
                                    const BitString& q,
                                    std::uint64_t step_budget = 256);

}  // namespace levinlab
