#include "levinlab/refmachine.hpp"

#include <cctype>
#include <utility>

namespace levinlab {

std::string_view mnemonic(Opcode op) noexcept {
  switch (op) {
    case Opcode::kRight: return "RIGHT";
    case Opcode::kLeft: return "LEFT";
    case Opcode::kInc: return "INC";
    case Opcode::kDec: return "DEC";
    case Opcode::kOpen: return "OPEN";
    case Opcode::kClose: return "CLOSE";
    case Opcode::kRead: return "READ";
    case Opcode::kPut: return "PUT";
    case Opcode::kEnd: return "END";
  }
  return "?";
}

char glyph(Opcode op) noexcept {
  switch (op) {
    case Opcode::kRight: return '>';
    case Opcode::kLeft: return '<';
    case Opcode::kInc: return '+';
    case Opcode::kDec: return '-';
    case Opcode::kOpen: return '[';
    case Opcode::kClose: return ']';
    case Opcode::kRead: return ',';
    case Opcode::kPut: return '.';
    case Opcode::kEnd: return '!';
  }
  return '?';
}

std::optional<Opcode> opcode_from_nibble(unsigned nibble) noexcept {
  if (nibble <= 0x7) return static_cast<Opcode>(nibble);
  if (nibble == 0xF) return Opcode::kEnd;
  return std::nullopt;
}

std::string_view to_string(DecodeError::Kind kind) noexcept {
  switch (kind) {
    case DecodeError::Kind::kMissingEnd: return "MissingEnd";
    case DecodeError::Kind::kInvalidOpcode: return "InvalidOpcode";
    case DecodeError::Kind::kUnbalancedLoop: return "UnbalancedLoop";
  }
  return "?";
}

void Program::link_loops(std::size_t bit_base) {
  partner_.assign(ops_.size(), 0);
  std::vector<std::uint32_t> open;
  for (std::size_t pc = 0; pc < ops_.size(); ++pc) {
    if (ops_[pc] == Opcode::kOpen) {
      open.push_back(static_cast<std::uint32_t>(pc));
    } else if (ops_[pc] == Opcode::kClose) {
      if (open.empty()) {
        throw DecodeError(DecodeError::Kind::kUnbalancedLoop,
                          bit_base + pc * kOpcodeBits,
                          "CLOSE without matching OPEN");
      }
      partner_[pc] = open.back();
      partner_[open.back()] = static_cast<std::uint32_t>(pc);
      open.pop_back();
    }
  }
  if (!open.empty()) {
    throw DecodeError(DecodeError::Kind::kUnbalancedLoop,
                      bit_base + open.back() * kOpcodeBits,
                      "OPEN without matching CLOSE");
  }
}

Program::Program() : bits_(BitString("1111")) {}

Program Program::decode(const BitString& bits) {
  Program p;
  std::size_t pos = 0;
  bool ended = false;
  while (pos + kOpcodeBits <= bits.size()) {
    unsigned nibble = 0;
    for (std::size_t i = 0; i < kOpcodeBits; ++i) {
      nibble = (nibble << 1) | (bits[pos + i] ? 1U : 0U);
    }
    auto op = opcode_from_nibble(nibble);
    if (!op) {
      throw DecodeError(DecodeError::Kind::kInvalidOpcode, pos,
                        "invalid opcode " + bits.str().substr(pos, kOpcodeBits) +
                            " at bit " + std::to_string(pos));
    }
    pos += kOpcodeBits;
    if (*op == Opcode::kEnd) {
      ended = true;
      break;
    }
    p.ops_.push_back(*op);
  }
  if (!ended) {
    throw DecodeError(DecodeError::Kind::kMissingEnd, pos,
                      "no END group in " + std::to_string(bits.size()) + " bits");
  }
  p.link_loops(0);
  p.bits_ = bits.prefix(pos);
  return p;
}

Program Program::from_opcodes(std::span<const Opcode> ops) {
  Program p;
  p.bits_ = BitString();
  for (Opcode op : ops) {
    if (op == Opcode::kEnd) {
      throw DecodeError(DecodeError::Kind::kInvalidOpcode, 0,
                        "END inside instruction list");
    }
    p.ops_.push_back(op);
    p.bits_.append(BitString::from_uint(static_cast<unsigned>(op), kOpcodeBits));
  }
  p.bits_.append(BitString::from_uint(0xF, kOpcodeBits));
  p.link_loops(0);
  return p;
}

std::string Program::glyphs() const {
  std::string out;
  out.reserve(ops_.size());
  for (Opcode op : ops_) out.push_back(glyph(op));
  return out;
}

Program decode(const BitString& bits) { return Program::decode(bits); }

// Same verdict as decode() consuming every bit, without exceptions; the
// exhaustive prefix checks call this tens of millions of times.
bool is_valid_program(const BitString& bits) noexcept {
  const std::size_t n = bits.size();
  if (n == 0 || n % kOpcodeBits != 0) return false;
  std::size_t depth = 0;
  for (std::size_t at = 0; at < n; at += kOpcodeBits) {
    unsigned nibble = 0;
    for (std::size_t i = 0; i < kOpcodeBits; ++i) nibble = (nibble << 1) | (bits[at + i] ? 1U : 0U);
    if (nibble == 0xF) return at + kOpcodeBits == n && depth == 0;
    if (nibble > 0x7) return false;
    if (nibble == 0x4) {
      ++depth;
    } else if (nibble == 0x5) {
      if (depth == 0) return false;
      --depth;
    }
  }
  return false;
}

namespace {

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  return -1;
}

}  // namespace

Program parse_program_text(std::string_view text) {
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  }
  bool binary = !compact.empty() &&
                compact.find_first_not_of("01") == std::string::npos;
  if (binary) {
    BitString bits(compact);
    if (!is_valid_program(bits)) {
      Program p = Program::decode(bits);  // throws the precise error
      throw std::invalid_argument(std::to_string(bits.size() - p.length_bits()) +
                                  " trailing bits after END");
    }
    return Program::decode(bits);
  }
  std::string_view hex = compact;
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty() || hex.size() % 2 != 0) {
    throw std::invalid_argument("hex program text needs an even, non-zero nibble count");
  }
  BitString bits;
  for (char ch : hex) {
    int v = hex_value(ch);
    if (v < 0) {
      throw std::invalid_argument("program text is neither binary nor hex");
    }
    bits.append(BitString::from_uint(static_cast<unsigned>(v), kOpcodeBits));
  }
  // Hex rounds up to whole bytes, so a trailing END-padding nibble is
  // tolerated only when it is itself END.
  Program p = Program::decode(bits);
  std::size_t rest = bits.size() - p.length_bits();
  if (rest != 0 && !(rest == kOpcodeBits &&
                     bits.str().substr(p.length_bits()) == "1111")) {
    throw std::invalid_argument("trailing nibbles after END");
  }
  return p;
}

std::string_view to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::kHalted: return "halted";
    case RunStatus::kBudgetExhausted: return "budget-exhausted";
    case RunStatus::kInputBlocked: return "input-blocked";
    case RunStatus::kCrashed: return "crashed";
  }
  return "?";
}

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::kTime: return "time";
    case Metric::kVolume: return "volume";
    case Metric::kEnergy: return "energy";
    case Metric::kTotalEnergy: return "total-energy";
  }
  return "?";
}

Metric parse_metric(std::string_view text) {
  if (text == "time") return Metric::kTime;
  if (text == "volume") return Metric::kVolume;
  if (text == "energy") return Metric::kEnergy;
  if (text == "total-energy") return Metric::kTotalEnergy;
  throw std::invalid_argument("unknown metric '" + std::string(text) + "'");
}

Machine::Machine(const Program& program, const BitString& input,
                 bool record_trace)
    : program_(&program),
      input_(&input),
      record_trace_(record_trace),
      tape_(1, 0),
      origin_(0) {
  if (program.instructions().empty()) status_ = RunStatus::kHalted;
}

std::uint8_t& Machine::cell() {
  std::int64_t idx = head_ + origin_;
  if (idx < 0) {
    auto grow = static_cast<std::size_t>(-idx);
    tape_.insert(tape_.begin(), grow, 0);
    origin_ += static_cast<std::int64_t>(grow);
    idx = 0;
  } else if (static_cast<std::size_t>(idx) >= tape_.size()) {
    tape_.resize(static_cast<std::size_t>(idx) + 1, 0);
  }
  return tape_[static_cast<std::size_t>(idx)];
}

bool Machine::step(std::uint64_t budget) {
  if (finished()) return false;
  auto ops = program_->instructions();
  if (pc_ >= ops.size()) {
    status_ = RunStatus::kHalted;  // END is free
    return false;
  }
  if (steps_ >= budget) {
    status_ = RunStatus::kBudgetExhausted;
    return false;
  }
  const Opcode op = ops[pc_];
  std::uint8_t& c = cell();
  TraceEntry entry;
  entry.step = steps_ + 1;
  entry.op = op;
  entry.cell = head_;
  entry.before = c;
  std::size_t next = pc_ + 1;
  switch (op) {
    case Opcode::kRight: ++head_; break;
    case Opcode::kLeft: --head_; break;
    case Opcode::kInc: ++c; break;
    case Opcode::kDec: --c; break;
    case Opcode::kOpen:
      if (c == 0) next = program_->partner(pc_) + 1;
      break;
    case Opcode::kClose:
      if (c != 0) next = program_->partner(pc_) + 1;
      break;
    case Opcode::kRead:
      if (input_pos_ < input_->size()) {
        c = (*input_)[input_pos_++] ? 1 : 0;
        entry.bits_read = 1;
      } else {
        status_ = RunStatus::kInputBlocked;
      }
      break;
    case Opcode::kPut:
      output_.push_back((c & 1U) != 0);
      entry.bits_written = 1;
      break;
    case Opcode::kEnd: break;
  }
  entry.after = c;
  ++steps_;
  if (record_trace_) trace_.push_back(entry);
  if (status_ == RunStatus::kInputBlocked) return false;
  pc_ = next;
  if (pc_ >= ops.size()) {
    status_ = RunStatus::kHalted;
    return false;
  }
  // Still running; reported as budget-exhausted if the caller stops here.
  status_ = RunStatus::kBudgetExhausted;
  return true;
}

RunStatus Machine::run_to(std::uint64_t budget) {
  while (step(budget)) {
  }
  return status_;
}

RunResult Machine::result() && {
  return RunResult{std::move(output_), status_, steps_, std::move(trace_)};
}

RunResult Machine::result() const& {
  return RunResult{output_, status_, steps_, trace_};
}

RunResult run(const Program& program, const BitString& input,
              std::uint64_t budget) {
  Machine m(program, input, true);
  m.run_to(budget);
  return std::move(m).result();
}

RunResult run_untraced(const Program& program, const BitString& input,
                       std::uint64_t budget) {
  Machine m(program, input, false);
  m.run_to(budget);
  return std::move(m).result();
}

std::string_view to_string(PrefixVerdict verdict) noexcept {
  switch (verdict) {
    case PrefixVerdict::kYes: return "yes";
    case PrefixVerdict::kNo: return "no";
    case PrefixVerdict::kUnknown: return "unknown";
  }
  return "?";
}

PrefixVerdict classify_prefix(const BitString& output, RunStatus status,
                              const BitString& x) noexcept {
  if (output.starts_with(x)) return PrefixVerdict::kYes;
  if (!x.starts_with(output)) return PrefixVerdict::kNo;  // diverged
  // Output is a proper prefix of x.
  return status == RunStatus::kBudgetExhausted ? PrefixVerdict::kUnknown
                                               : PrefixVerdict::kNo;
}

PrefixVerdict outputs_prefix(const Program& program, const BitString& x,
                             std::uint64_t budget) {
  // Sequence programs receive no input.
  static const BitString kNoInput;
  Machine run_state(program, kNoInput, false);
  for (;;) {
    const BitString& out = run_state.output();
    if (out.size() >= x.size()) {
      return out.starts_with(x) ? PrefixVerdict::kYes : PrefixVerdict::kNo;
    }
    if (!out.empty() && out[out.size() - 1] != x[out.size() - 1]) {
      return PrefixVerdict::kNo;
    }
    if (!run_state.step(budget)) break;
  }
  return classify_prefix(run_state.output(), run_state.status(), x);
}

BitString encode_query(const BitString& q) {
  BitString out = BitString::repeat(true, q.size());
  out.push_back(false);
  out.append(q);
  return out;
}

Rational dyadic_fraction(const BitString& bits) {
  mpz_class num(0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    num = num * 2 + (bits[i] ? 1 : 0);
  }
  return dyadic(num, bits.size());
}

std::optional<Rational> eval_cpdf(const Program& program, const BitString& q,
                                  std::uint64_t budget) {
  const BitString input = encode_query(q);
  RunResult r = run_untraced(program, input, budget);
  if (r.status != RunStatus::kHalted || r.output.empty()) return std::nullopt;
  return dyadic_fraction(r.output);
}

}  // namespace levinlab
