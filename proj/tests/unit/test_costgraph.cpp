#include <gtest/gtest.h>

#include <set>

#include "levinlab/costgraph.hpp"
#include "levinlab/mixture.hpp"
#include "oracle.hpp"

using namespace levinlab;

namespace {

CompGraph graph_of(const char* bits, const char* input = "", std::uint64_t budget = 100) {
  const RunResult r = run(decode(BitString(bits)), BitString(input), budget);
  return build_graph(r.trace, std::string_view(input).size());
}

UnitSystem odd_units() {
  UnitSystem u = UnitSystem::si();
  u.v_u = Rational(3, 7);
  u.e_u = Rational(5, 11);
  u.s_u = Rational(2, 3);
  u.m_u = Rational(13, 5);
  return u;
}

}  // namespace

TEST(BuildGraph, EmptyTrace) {
  const CompGraph g = build_graph({}, 0);
  EXPECT_TRUE(g.vertices().empty());
  EXPECT_TRUE(g.edges().empty());
  EXPECT_EQ(measure(g, UnitSystem::natural()), ResourceVector{});
}

TEST(BuildGraph, SinglePut) {
  const CompGraph g = graph_of("0111 1111");
  EXPECT_EQ(g.vertices().size(), 3u);
  EXPECT_EQ(g.edges().size(), 2u);
  EXPECT_EQ(g.op_count(), 1u);
  EXPECT_EQ(g.outputs().size(), 1u);
  EXPECT_TRUE(g.validate().empty());
}

TEST(BuildGraph, IncThenPut) {
  const CompGraph g = graph_of("0010 0111 1111");
  EXPECT_EQ(g.op_count(), 2u);
  std::size_t cells = 0;
  for (const auto& v : g.vertices()) cells += v.role == MemRole::kCell;
  EXPECT_EQ(cells, 2u);
  EXPECT_EQ(g.outputs().size(), 1u);
  std::size_t control = 0;
  for (const auto& e : g.edges()) control += e.kind == EdgeKind::kControl;
  EXPECT_EQ(control, 1u);
  EXPECT_EQ(g.edges().size(), 5u);
  EXPECT_EQ(g.vertices().size(), 5u);
}

TEST(BuildGraph, EdgesCarryDestinationTimestamp) {
  const CompGraph g = graph_of("0010 0100 0111 0011 0101 1111");
  ASSERT_TRUE(g.validate().empty());
  for (const auto& e : g.edges()) {
    EXPECT_EQ(e.t, g.vertices()[e.dst].t);
  }
}

TEST(BuildGraph, DataEdgesCrossPartitions) {
  for (const auto& p : enumerate_programs(16)) {
    const RunResult r = run(p, BitString("01"), 64);
    const CompGraph g = build_graph(r.trace, 2);
    ASSERT_TRUE(g.validate().empty()) << p.glyphs();
    for (const auto& e : g.edges()) {
      const bool src_op = g.vertices()[e.src].kind == VertexKind::kOp;
      const bool dst_op = g.vertices()[e.dst].kind == VertexKind::kOp;
      if (e.kind == EdgeKind::kControl) {
        ASSERT_TRUE(src_op && dst_op);
      } else {
        ASSERT_NE(src_op, dst_op) << p.glyphs();
      }
    }
  }
}

TEST(BuildGraph, SizeAgreesWithOracleCount) {
  for (const auto& text : oracle::all_programs(16)) {
    for (const char* in : {"", "1", "011"}) {
      const RunResult r = run(decode(BitString(text)), BitString(in), 40);
      const oracle::Run ref = oracle::run(text, in, 40);
      const std::size_t n = std::string_view(in).size();
      const GraphTally direct = tally(build_graph(r.trace, n));
      ASSERT_EQ(direct.size(), oracle::graph_size(ref, n)) << text << " on " << in;
      ASSERT_EQ(direct.max_slice, oracle::max_slice(ref, n)) << text << " on " << in;
    }
  }
}

TEST(TallyTrace, MatchesMaterializedGraph) {
  for (const auto& p : enumerate_programs(16)) {
    for (const char* in : {"", "10"}) {
      const RunResult r = run(p, BitString(in), 50);
      const std::size_t n = std::string_view(in).size();
      const GraphTally a = tally(build_graph(r.trace, n));
      const GraphTally b = tally_trace(r.trace, n);
      ASSERT_EQ(a.ops, b.ops);
      ASSERT_EQ(a.vertices, b.vertices);
      ASSERT_EQ(a.edges, b.edges);
      ASSERT_EQ(a.max_slice, b.max_slice);
      ASSERT_EQ(a.boundary, b.boundary);
      ASSERT_EQ(a.slices, b.slices) << p.glyphs();
    }
  }
}

TEST(Measure, SixVolumeGraph) {
  const std::uint64_t slices[] = {1, 2, 3};
  const CompGraph g = synthetic_derivation_graph(slices);
  EXPECT_EQ(g.vertices().size() + g.edges().size(), 6u);
  const ResourceVector r = measure(g, UnitSystem::natural());
  EXPECT_EQ(r.volume, Rational(6));
  EXPECT_EQ(r.energy, Rational(6));
}

TEST(Measure, EnergyProportionalToVolume) {
  UnitSystem u = UnitSystem::natural();
  u.e_u = 2;
  for (const auto& p : enumerate_programs(12)) {
    const ResourceVector r = measure(graph_of(p.bits().str().c_str()), u);
    EXPECT_EQ(r.energy, 2 * r.volume / u.v_u);
  }
}

TEST(Measure, UnitIdentitiesUnderOddUnits) {
  const UnitSystem u = odd_units();
  for (const auto& p : enumerate_programs(16)) {
    const RunResult run_result = run(p, BitString("1"), 64);
    const ResourceVector r = measure(build_graph(run_result.trace, 1), u);
    ASSERT_EQ(r.energy * u.v_u, r.volume * u.e_u);
    ASSERT_EQ(r.total_energy, u.d_e() * r.volume + r.space * u.d_m() * u.c * u.c);
    ASSERT_EQ(r.energy / u.e_u, Rational(mpz_class(r.graph_size)));
  }
}

TEST(Synthetic, TriangleAndRectangle) {
  const UnitSystem u = odd_units();
  const std::uint64_t one[] = {1};
  ResourceVector r = measure(synthetic_derivation_graph(one), u);
  EXPECT_EQ(r.volume, u.v_u);
  EXPECT_EQ(r.space, u.s_u);

  const std::uint64_t tri[] = {1, 2, 3};
  r = measure(synthetic_derivation_graph(tri), u);
  EXPECT_EQ(r.volume, 6 * u.v_u);
  EXPECT_EQ(r.space, 3 * u.s_u);

  std::vector<std::uint64_t> rect(9, 5);
  r = measure(synthetic_derivation_graph(rect), u);
  EXPECT_EQ(r.volume, 45 * u.v_u);
  EXPECT_EQ(r.space, 5 * u.s_u);

  for (std::uint64_t t = 1; t <= 100; ++t) {
    std::vector<std::uint64_t> s;
    for (std::uint64_t i = 1; i <= t; ++i) s.push_back(i);
    r = measure(synthetic_derivation_graph(s), u);
    ASSERT_EQ(r.volume, Rational(mpz_class(t * (t + 1) / 2)) * u.v_u);
  }
}

TEST(Synthetic, RejectsDegenerateInput) {
  EXPECT_THROW(synthetic_derivation_graph({}), std::invalid_argument);
  const std::uint64_t zero[] = {1, 0};
  EXPECT_THROW(synthetic_derivation_graph(zero), std::invalid_argument);
}

TEST(SelfContainment, Cases) {
  EXPECT_TRUE(is_self_contained(CompGraph{}).contained);
  EXPECT_TRUE(is_self_contained(graph_of("0010 0111 1111")).contained);
  EXPECT_TRUE(is_self_contained(graph_of("0110 0111 1111", "1")).contained);

  const CompGraph blocked = graph_of("0110 0111 1111");
  const SelfContainment sc = is_self_contained(blocked);
  EXPECT_FALSE(sc.contained);
  ASSERT_FALSE(sc.vertices.empty());
  bool names_the_read = false;
  for (auto id : sc.vertices) {
    names_the_read |= blocked.vertices()[id].kind == VertexKind::kOp;
  }
  EXPECT_TRUE(names_the_read);
  EXPECT_FALSE(sc.violations.empty());
}

TEST(Validate, ReportsBrokenGraphs) {
  CompGraph g;
  const auto op = g.add_op(1);
  const auto m = g.add_mem(1);
  g.add_raw_edge({op, m, 5, EdgeKind::kWrite});  // wrong timestamp
  const auto m2 = g.add_mem(1);
  g.add_raw_edge({m, m2, 1, EdgeKind::kRead});   // mem to mem
  g.mark_output(99);                             // outside V
  EXPECT_GE(g.validate().size(), 3u);
}

TEST(UnitSystem, CheckRejectsNonPositive) {
  UnitSystem u = UnitSystem::si();
  EXPECT_NO_THROW(u.check());
  u.s_u = 0;
  EXPECT_THROW(u.check(), std::invalid_argument);
}

TEST(GraphJson, HasAllSections) {
  const auto j = to_json(graph_of("0111 1111"));
  EXPECT_EQ(j["vertices"].size(), 3u);
  EXPECT_EQ(j["edges"].size(), 2u);
  EXPECT_EQ(j["outputs"].size(), 1u);
}
