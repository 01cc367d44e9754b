#pragma once

// Reference machine: a prefix-free tape machine with 4-bit opcodes.
//
//   0000 RIGHT   head + 1
//   0001 LEFT    head - 1
//   0010 INC     cell + 1 (mod 256)
//   0011 DEC     cell - 1 (mod 256)
//   0100 OPEN    if cell == 0 jump past the matching CLOSE
//   0101 CLOSE   if cell != 0 jump to the instruction after the matching OPEN
//   0110 READ    next input bit into cell (0 or 1)
//   0111 PUT     emit cell mod 2
//   1111 END     halt (costs no step)
//   1000..1110   invalid
//
// A program is valid iff its groups contain no invalid opcode, its loops are
// balanced, and END occurs exactly once, as the last group. The set of valid
// programs is therefore prefix-free.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "levinlab/bits.hpp"
#include "levinlab/rational.hpp"

namespace levinlab {

enum class Opcode : std::uint8_t {
  kRight = 0x0,
  kLeft = 0x1,
  kInc = 0x2,
  kDec = 0x3,
  kOpen = 0x4,
  kClose = 0x5,
  kRead = 0x6,
  kPut = 0x7,
  kEnd = 0xF,
};

inline constexpr std::size_t kOpcodeBits = 4;

std::string_view mnemonic(Opcode op) noexcept;

/// One-character rendering: > < + - [ ] , . !
char glyph(Opcode op) noexcept;

/// Opcode for a 4-bit group, or nullopt for the invalid range 1000..1110.
std::optional<Opcode> opcode_from_nibble(unsigned nibble) noexcept;

class DecodeError : public std::runtime_error {
 public:
  enum class Kind { kMissingEnd, kInvalidOpcode, kUnbalancedLoop };

  DecodeError(Kind kind, std::size_t bit_offset, const std::string& what)
      : std::runtime_error(what), kind_(kind), bit_offset_(bit_offset) {}

  Kind kind() const noexcept { return kind_; }
  /// Offset of the offending group in the input.
  std::size_t bit_offset() const noexcept { return bit_offset_; }

 private:
  Kind kind_;
  std::size_t bit_offset_;
};

std::string_view to_string(DecodeError::Kind kind) noexcept;

/// A validated, self-delimiting program.
class Program {
 public:
  /// The empty program: END alone.
  Program();

  /// Decodes the bits up to and including the first END group. Trailing bits
  /// after END are not consumed; bits().size() tells how many were.
  static Program decode(const BitString& bits);

  /// Builds a program from opcodes (END appended). Throws DecodeError for
  /// unbalanced loops or an embedded END.
  static Program from_opcodes(std::span<const Opcode> ops);

  const BitString& bits() const noexcept { return bits_; }
  std::size_t length_bits() const noexcept { return bits_.size(); }

  /// Decoded instructions, END excluded.
  std::span<const Opcode> instructions() const noexcept { return ops_; }

  /// For an OPEN/CLOSE at `pc`, the index of its partner.
  std::size_t partner(std::size_t pc) const noexcept { return partner_[pc]; }

  std::string glyphs() const;

  friend bool operator==(const Program& a, const Program& b) {
    return a.bits_ == b.bits_;
  }

 private:
  void link_loops(std::size_t bit_base);

  BitString bits_;
  std::vector<Opcode> ops_;
  std::vector<std::uint32_t> partner_;
};

/// Free-function spelling of Program::decode.
Program decode(const BitString& bits);

/// True iff `bits` is exactly one valid program (no trailing bits).
bool is_valid_program(const BitString& bits) noexcept;

/// Reads a program file: ASCII '0'/'1' with optional whitespace, or hex with
/// an even nibble count (optionally prefixed by "0x").
Program parse_program_text(std::string_view text);

enum class RunStatus { kHalted, kBudgetExhausted, kInputBlocked, kCrashed };

std::string_view to_string(RunStatus status) noexcept;

/// One executed instruction.
///
/// A READ on exhausted input is recorded (it consumed a step and demanded an
/// external bit) with bits_read == 0; it is always the final entry.
struct TraceEntry {
  std::uint64_t step = 0;  // 1-based timestamp
  Opcode op = Opcode::kEnd;
  std::int64_t cell = 0;  // head position when the instruction ran
  std::uint8_t before = 0;
  std::uint8_t after = 0;
  std::uint8_t bits_read = 0;
  std::uint8_t bits_written = 0;

  bool blocked_read() const noexcept {
    return op == Opcode::kRead && bits_read == 0;
  }
  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct RunResult {
  BitString output;
  RunStatus status = RunStatus::kHalted;
  std::uint64_t steps = 0;
  std::vector<TraceEntry> trace;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Resource the search and budget code can meter.
enum class Metric { kTime, kVolume, kEnergy, kTotalEnergy };

std::string_view to_string(Metric metric) noexcept;
Metric parse_metric(std::string_view text);

struct ResourceBudget {
  Metric metric = Metric::kTime;
  Rational limit = 0;  // in units of the metric; never negative
};

/// Incremental interpreter. Exposed so callers can stop as soon as a
/// predicate on the output is decided.
class Machine {
 public:
  Machine(const Program& program, const BitString& input, bool record_trace);

  /// Executes until halt, block, or `budget` total steps. Returns status.
  RunStatus run_to(std::uint64_t budget);

  /// Executes at most one instruction within `budget`; false when the
  /// machine can no longer make progress under that budget.
  bool step(std::uint64_t budget);

  RunStatus status() const noexcept { return status_; }
  bool finished() const noexcept {
    return status_ == RunStatus::kHalted || status_ == RunStatus::kInputBlocked;
  }
  std::uint64_t steps() const noexcept { return steps_; }
  const BitString& output() const noexcept { return output_; }
  const std::vector<TraceEntry>& trace() const noexcept { return trace_; }

  RunResult result() &&;
  RunResult result() const&;

 private:
  std::uint8_t& cell();

  const Program* program_;
  const BitString* input_;
  bool record_trace_;
  std::size_t pc_ = 0;
  std::size_t input_pos_ = 0;
  std::int64_t head_ = 0;
  // Tape cells [origin_ - tape_.size() + ..]: index = head_ + origin_.
  std::vector<std::uint8_t> tape_;
  std::int64_t origin_ = 0;
  std::uint64_t steps_ = 0;
  RunStatus status_ = RunStatus::kBudgetExhausted;
  BitString output_;
  std::vector<TraceEntry> trace_;
};

/// Runs `program` on `input` for at most `budget` steps, recording a trace.
RunResult run(const Program& program, const BitString& input,
              std::uint64_t budget);

/// Same as run() without a trace.
RunResult run_untraced(const Program& program, const BitString& input,
                       std::uint64_t budget);

enum class PrefixVerdict { kYes, kNo, kUnknown };

std::string_view to_string(PrefixVerdict verdict) noexcept;

/// Monotone-output membership test: does the program's output extend x?
PrefixVerdict outputs_prefix(const Program& program, const BitString& x,
                             std::uint64_t budget);

/// Classifies a finished or budget-limited run against x. Agrees with
/// outputs_prefix when `status`/`output` come from a run at the same budget.
PrefixVerdict classify_prefix(const BitString& output, RunStatus status,
                              const BitString& x) noexcept;

/// Self-delimiting query encoding: |q| ones, a zero, then q.
BitString encode_query(const BitString& q);

/// Dyadic value 0.b1 b2 ... bm of a non-empty bit string.
Rational dyadic_fraction(const BitString& bits);

/// Conditional probability O(answer = 1 | q), or nullopt when the program
/// is inapplicable (no halt within budget, empty output, blocked on input).
std::optional<Rational> eval_cpdf(const Program& program, const BitString& q,
                                  std::uint64_t budget);

}  // namespace levinlab
