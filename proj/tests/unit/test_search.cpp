#include <gtest/gtest.h>

#include "levinlab/search.hpp"
#include "oracle.hpp"

using namespace levinlab;

namespace {

SearchOptions natural() {
  SearchOptions o;
  o.units = UnitSystem::natural();
  return o;
}

// Nothing shorter than `bits` halts with output exactly x (checked at a
// generous budget with the independent interpreter).
bool no_shorter_producer(const std::string& x, std::size_t bits) {
  for (const auto& p : oracle::all_programs(static_cast<unsigned>(bits) - 4)) {
    const oracle::Run r = oracle::run(p, "", 4096);
    if (r.status == oracle::Status::kHalted && r.output == x) return false;
  }
  return true;
}

}  // namespace

TEST(Goal, ParseForms) {
  EXPECT_EQ(Goal::parse("exact:11").kind(), Goal::Kind::kExactOutput);
  EXPECT_EQ(Goal::parse("exact:").target(), BitString());
  EXPECT_EQ(Goal::parse("prefix:0101").kind(), Goal::Kind::kOutputPrefix);
  const Goal c = Goal::parse("cpdf:0=0,1=1/2");
  ASSERT_EQ(c.samples().size(), 2u);
  EXPECT_EQ(c.samples()[1].p1, Rational(1, 2));
  EXPECT_THROW(Goal::parse("guess:1"), std::invalid_argument);
  EXPECT_THROW(Goal::parse("exact:12"), std::invalid_argument);
}

TEST(LevinSearch, ExactZero) {
  const SearchOutcome o = levin_search(Goal::exact_output(BitString("0")), Metric::kTime, 24, natural());
  ASSERT_TRUE(o.winner);
  EXPECT_EQ(o.winner->bits(), BitString("0111 1111"));
  EXPECT_EQ(o.winner_resources.time, 1u);
  EXPECT_TRUE(no_shorter_producer("0", 8));
}

TEST(LevinSearch, ExactOneOne) {
  const SearchOutcome o = levin_search(Goal::exact_output(BitString("11")), Metric::kTime, 24, natural());
  ASSERT_TRUE(o.winner);
  EXPECT_EQ(o.winner->bits(), BitString("0010 0111 0111 1111"));
  EXPECT_EQ(o.winner_resources.time, 3u);
  EXPECT_EQ(o.cj_value, Rational(196608));
  EXPECT_TRUE(no_shorter_producer("11", 16));
  const SandwichReport s = verify_sandwich(o);
  EXPECT_TRUE(s.pass);
  EXPECT_GE(s.ratio, 1.0);
  EXPECT_LE(s.ratio, 4.0);
}

TEST(LevinSearch, EmptyOutputFoundFirst) {
  const SearchOutcome o = levin_search(Goal::exact_output(BitString()), Metric::kTime, 8, natural());
  ASSERT_TRUE(o.winner);
  EXPECT_EQ(o.winner->bits(), BitString("1111"));
  // Bit-indexed phases: the first 4-bit program is tried in phase 4 with one
  // unit; earlier phases hold no program but still tick the clock.
  EXPECT_EQ(o.phase, 4u);
  EXPECT_EQ(o.measured_cost, pow2(4) - 2 + pow2(4));
  EXPECT_TRUE(verify_sandwich(o).pass);
}

TEST(LevinSearch, CostFormulaHoldsForEveryMetric) {
  for (Metric m : {Metric::kTime, Metric::kVolume, Metric::kEnergy, Metric::kTotalEnergy}) {
    SearchOptions opt = natural();
    opt.units.c = 1;
    const SearchOutcome o = levin_search(Goal::exact_output(BitString("0")), m, 40, opt);
    ASSERT_TRUE(o.winner) << to_string(m);
    const Rational scale = unit_scale(m, opt.units);
    EXPECT_EQ(o.measured_cost,
              (pow2(o.phase) - 2 + o.winner_units * pow2(o.winner->length_bits())) * scale);
    EXPECT_EQ(o.cj_value, conceptual_jump(*o.winner, o.winner_resources, m, opt.units));
    EXPECT_TRUE(verify_sandwich(o).pass) << to_string(m);
  }
}

TEST(LevinSearch, CpdfGoal) {
  const Goal g = Goal::parse("cpdf:0=0,1=1/2");
  const SearchOutcome o = levin_search(g, Metric::kTime, 40, natural());
  ASSERT_TRUE(o.winner);
  for (const auto& s : g.samples()) {
    const auto v = eval_cpdf(*o.winner, s.query, 1024);
    ASSERT_TRUE(v);
    EXPECT_EQ(*v, s.p1);
  }
  EXPECT_TRUE(verify_sandwich(o).pass);
}

TEST(LevinSearch, GivesUpCleanly) {
  EXPECT_THROW(levin_search(Goal::exact_output(BitString("0000000")), Metric::kTime, 12, natural()),
               NotFound);
  SearchOptions tiny = natural();
  tiny.max_pool = 100;
  try {
    levin_search(Goal::exact_output(BitString("0000000")), Metric::kTime, 40, tiny);
    FAIL();
  } catch (const NotFound& e) {
    EXPECT_LT(e.max_phase(), 40u);
  }
  EXPECT_THROW(levin_search(Goal::exact_output(BitString()), Metric::kTime, 0), std::invalid_argument);
}

TEST(LevinSearch, Deterministic) {
  const Goal g = Goal::exact_output(BitString("11"));
  const auto a = levin_search(g, Metric::kEnergy, 30, natural()).to_json().dump();
  const auto b = levin_search(g, Metric::kEnergy, 30, natural()).to_json().dump();
  EXPECT_EQ(a, b);
}

TEST(ConceptualJump, Definitions) {
  const Program p = decode(BitString("0010 0111 0111 1111"));
  UnitSystem u = UnitSystem::natural();
  u.v_u = 2;
  u.e_u = 3;
  ResourceVector r;
  r.time = 3;
  r.volume = 10;
  r.energy = 15;
  r.space = 0;
  r.total_energy = u.d_e() * r.volume;
  EXPECT_EQ(conceptual_jump(p, r, Metric::kTime, u), Rational(3 * 65536));
  EXPECT_EQ(conceptual_jump(p, r, Metric::kVolume, u), 10 * pow2(16));
  EXPECT_EQ(conceptual_jump(p, r, Metric::kEnergy, u), 15 * pow2(16));
  // No memory: the total-energy jump reduces to d_e V 2^|p|.
  EXPECT_EQ(conceptual_jump(p, r, Metric::kTotalEnergy, u), u.d_e() * r.volume * pow2(16));
}

TEST(ConceptualJump, UnitsFloorAtOne) {
  ResourceVector zero;
  EXPECT_EQ(metric_units(zero, Metric::kTime, UnitSystem::natural()), 1);
  EXPECT_EQ(metric_units(zero, Metric::kEnergy, UnitSystem::natural()), 1);
}

TEST(RunTrial, RespectsTheAllowance) {
  const Program p = decode(BitString("0010 0111 0111 1111"));
  const Goal g = Goal::exact_output(BitString("11"));
  EXPECT_FALSE(run_trial(p, g, Metric::kTime, 2, natural()).success);
  const Trial t = run_trial(p, g, Metric::kTime, 3, natural());
  EXPECT_TRUE(t.success);
  EXPECT_EQ(t.cost_units, 3);
  EXPECT_FALSE(run_trial(p, Goal::exact_output(BitString("1")), Metric::kTime, 100, natural()).success);
  EXPECT_TRUE(run_trial(p, Goal::output_prefix(BitString("1")), Metric::kTime, 100, natural()).success);
}
