#include <gtest/gtest.h>

#include <random>
#include <unordered_set>

#include "levinlab/mixture.hpp"
#include "levinlab/refmachine.hpp"
#include "oracle.hpp"

using namespace levinlab;

namespace {

oracle::Status to_oracle(RunStatus s) {
  switch (s) {
    case RunStatus::kHalted: return oracle::Status::kHalted;
    case RunStatus::kInputBlocked: return oracle::Status::kBlocked;
    default: return oracle::Status::kOutOfSteps;
  }
}

}  // namespace

TEST(Decode, EndAloneIsTheEmptyProgram) {
  const Program p = decode(BitString("1111"));
  EXPECT_TRUE(p.instructions().empty());
  EXPECT_EQ(p.length_bits(), 4u);
  EXPECT_EQ(Program(), p);
}

TEST(Decode, SinglePut) {
  const Program p = decode(BitString("0111 1111"));
  ASSERT_EQ(p.instructions().size(), 1u);
  EXPECT_EQ(p.instructions()[0], Opcode::kPut);
  EXPECT_EQ(p.glyphs(), ".");
}

TEST(Decode, Errors) {
  auto kind_of = [](const char* bits) {
    try {
      decode(BitString(bits));
    } catch (const DecodeError& e) {
      return e.kind();
    }
    ADD_FAILURE() << bits << " decoded";
    return DecodeError::Kind::kMissingEnd;
  };
  EXPECT_EQ(kind_of("0100 1111"), DecodeError::Kind::kUnbalancedLoop);
  EXPECT_EQ(kind_of("0101 1111"), DecodeError::Kind::kUnbalancedLoop);
  EXPECT_EQ(kind_of("1000 1111"), DecodeError::Kind::kInvalidOpcode);
  EXPECT_EQ(kind_of("0111 0111"), DecodeError::Kind::kMissingEnd);
  EXPECT_EQ(kind_of(""), DecodeError::Kind::kMissingEnd);
}

TEST(Decode, StopsAtFirstEnd) {
  const Program p = decode(BitString("0111 1111 0000"));
  EXPECT_EQ(p.length_bits(), 8u);
  EXPECT_FALSE(is_valid_program(BitString("0111 1111 0000")));
  EXPECT_TRUE(is_valid_program(BitString("0111 1111")));
}

TEST(Decode, FromOpcodes) {
  const Opcode ops[] = {Opcode::kInc, Opcode::kOpen, Opcode::kPut, Opcode::kClose};
  EXPECT_EQ(Program::from_opcodes(ops).bits(), BitString("0010 0100 0111 0101 1111"));
  const Opcode bad[] = {Opcode::kClose};
  EXPECT_THROW(Program::from_opcodes(bad), DecodeError);
}

TEST(Decode, ValidityAgreesWithOracleOnEveryShortString) {
  for (unsigned len = 0; len <= 16; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const BitString b = BitString::from_uint(v, len);
      ASSERT_EQ(is_valid_program(b), oracle::valid(b.str())) << b.str();
    }
  }
}

TEST(Decode, ValidityAgreesWithDecodeOnRandomLongStrings) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    const std::size_t groups = 1 + rng() % 12;
    BitString b;
    for (std::size_t g = 0; g < groups; ++g) {
      // Bias towards valid opcodes so balanced programs occur.
      const unsigned nib = g + 1 == groups ? 15 : static_cast<unsigned>(rng() % 9 == 0 ? 8 + rng() % 8 : rng() % 8);
      b.append(BitString::from_uint(nib, 4));
    }
    bool decoded = false;
    try {
      decoded = decode(b).length_bits() == b.size();
    } catch (const DecodeError&) {
    }
    ASSERT_EQ(is_valid_program(b), decoded) << b.grouped();
    ASSERT_EQ(is_valid_program(b), oracle::valid(b.str())) << b.grouped();
  }
}

TEST(Decode, PrefixFreeUpTo20Bits) {
  const auto programs = oracle::all_programs(20);
  std::unordered_set<std::string> set(programs.begin(), programs.end());
  for (const auto& p : programs) {
    for (std::size_t cut = 0; cut < p.size(); ++cut) {
      ASSERT_FALSE(set.count(p.substr(0, cut))) << p;
    }
  }
}

TEST(ParseProgramText, BinaryAndHex) {
  EXPECT_EQ(parse_program_text("0010 0111 1111").glyphs(), "+.");
  EXPECT_EQ(parse_program_text("0x27ff").glyphs(), "+.");  // trailing pad nibble
  EXPECT_EQ(parse_program_text("7f").glyphs(), ".");
  EXPECT_THROW(parse_program_text("27f"), std::invalid_argument);
  EXPECT_THROW(parse_program_text("0111 1111 0000"), std::invalid_argument);
  EXPECT_ANY_THROW(parse_program_text("27"));
}

TEST(Run, SpecExamples) {
  auto r0 = run(decode(BitString("1111")), BitString(), 10);
  EXPECT_EQ(r0.output, BitString());
  EXPECT_EQ(r0.status, RunStatus::kHalted);
  EXPECT_EQ(r0.steps, 0u);

  auto r1 = run(decode(BitString("0111 1111")), BitString(), 10);
  EXPECT_EQ(r1.output, BitString("0"));
  EXPECT_EQ(r1.status, RunStatus::kHalted);
  EXPECT_EQ(r1.steps, 1u);

  auto r2 = run(decode(BitString("0010 0111 1111")), BitString(), 10);
  EXPECT_EQ(r2.output, BitString("1"));
  EXPECT_EQ(r2.status, RunStatus::kHalted);
  EXPECT_EQ(r2.steps, 2u);
}

TEST(Run, BlockedReadIsFinalStep) {
  auto r = run(decode(BitString("0110 0111 1111")), BitString(), 10);
  EXPECT_EQ(r.status, RunStatus::kInputBlocked);
  EXPECT_EQ(r.steps, 1u);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_TRUE(r.trace.back().blocked_read());
}

TEST(Run, CellsWrapModulo256) {
  // "-." leaves 255 in the cell; PUT emits the low bit.
  auto r = run(decode(BitString("0011 0111 1111")), BitString(), 10);
  EXPECT_EQ(r.output, BitString("1"));
  EXPECT_EQ(r.trace[0].after, 255);
}

TEST(Run, AgreesWithOracleInterpreter) {
  const char* inputs[] = {"", "1", "10", "0110"};
  const std::uint64_t budgets[] = {0, 1, 3, 64};
  for (const auto& text : oracle::all_programs(16)) {
    const Program p = decode(BitString(text));
    for (const char* in : inputs) {
      for (auto budget : budgets) {
        const RunResult mine = run(p, BitString(in), budget);
        const oracle::Run ref = oracle::run(text, in, budget);
        ASSERT_EQ(mine.output.str(), ref.output) << text << " on " << in;
        ASSERT_EQ(to_oracle(mine.status), ref.status) << text << " on " << in;
        ASSERT_EQ(mine.steps, ref.steps) << text;
        ASSERT_EQ(mine.trace.size(), ref.trace.size());
        for (std::size_t i = 0; i < ref.trace.size(); ++i) {
          ASSERT_EQ(static_cast<int>(mine.trace[i].op), ref.trace[i].op);
          ASSERT_EQ(mine.trace[i].cell, ref.trace[i].cell);
        }
        ASSERT_EQ(run_untraced(p, BitString(in), budget).output, mine.output);
      }
    }
  }
}

TEST(Run, OutputIsMonotoneInTheBudget) {
  for (const auto& p : enumerate_programs(16)) {
    BitString previous;
    for (std::uint64_t b = 0; b <= 40; ++b) {
      const BitString out = run_untraced(p, BitString(), b).output;
      ASSERT_TRUE(out.starts_with(previous)) << p.glyphs();
      previous = out;
    }
  }
}

TEST(OutputsPrefix, SpecExamples) {
  EXPECT_EQ(outputs_prefix(decode(BitString("0111 1111")), BitString("0"), 10),
            PrefixVerdict::kYes);
  EXPECT_EQ(outputs_prefix(decode(BitString("0111 1111")), BitString("1"), 10),
            PrefixVerdict::kNo);
  EXPECT_EQ(outputs_prefix(decode(BitString("0010 0111 1111")), BitString("10"), 1),
            PrefixVerdict::kUnknown);
}

TEST(OutputsPrefix, AgreesWithFullRunClassification) {
  const char* targets[] = {"", "0", "1", "00", "11", "101"};
  for (const auto& p : enumerate_programs(16)) {
    for (std::uint64_t budget : {0, 2, 30}) {
      const RunResult r = run_untraced(p, BitString(), budget);
      for (const char* x : targets) {
        ASSERT_EQ(outputs_prefix(p, BitString(x), budget),
                  classify_prefix(r.output, r.status, BitString(x)))
            << p.glyphs() << " " << x << " " << budget;
      }
    }
  }
}

TEST(Cpdf, SpecExamples) {
  EXPECT_EQ(eval_cpdf(decode(BitString("0010 0111 1111")), BitString("0"), 100),
            std::optional<Rational>(Rational(1, 2)));
  EXPECT_FALSE(eval_cpdf(decode(BitString("1111")), BitString("0"), 100).has_value());
  EXPECT_EQ(eval_cpdf(decode(BitString("0110 0111 1111")), BitString("1"), 100),
            std::optional<Rational>(Rational(1, 2)));
}

TEST(Cpdf, EncodingAndFraction) {
  EXPECT_EQ(encode_query(BitString("01")), BitString("11001"));
  EXPECT_EQ(encode_query(BitString()), BitString("0"));
  EXPECT_EQ(dyadic_fraction(BitString("011")), Rational(3, 8));
  EXPECT_EQ(dyadic_fraction(BitString("0")), Rational(0));
}

TEST(Cpdf, AgreesWithOracle) {
  for (const auto& text : oracle::all_programs(16)) {
    const Program p = decode(BitString(text));
    for (const char* q : {"", "0", "1", "10"}) {
      const auto mine = eval_cpdf(p, BitString(q), 50);
      const auto ref = oracle::cpdf(text, q, 50);
      ASSERT_EQ(mine.has_value(), ref.has_value()) << text;
      if (mine) {
        ASSERT_EQ(*mine, *ref) << text;
      }
    }
  }
}

TEST(Metric, ParseNames) {
  EXPECT_EQ(parse_metric("time"), Metric::kTime);
  EXPECT_EQ(parse_metric("total-energy"), Metric::kTotalEnergy);
  EXPECT_EQ(to_string(Metric::kVolume), "volume");
  EXPECT_THROW(parse_metric("mass"), std::invalid_argument);
}
