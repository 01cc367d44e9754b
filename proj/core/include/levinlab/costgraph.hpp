#pragma once

// Causal cost graph of a computation and the physical measures over it.
//
// Construction rules for a trace of T steps over n input bits:
//   * one operation vertex per executed instruction, at its step t;
//   * memory vertex (c, t) holds cell c after step t; an instruction at step t
//     reads (c, t-1) and writes (c, t). A cell owns one vertex for every
//     timestamp between its first and last touched timestamp;
//   * read edges (c, t-1) -> op_t, write edges op_t -> (c, t), control edges
//     op_t -> op_{t+1};
//   * the n input bits are memory vertices in I at timestamp 0; READ adds an
//     edge in_j -> op_t. A READ on exhausted input gets a fresh input vertex
//     at timestamp t, which is what makes the run not self-contained;
//   * each emitted bit is a memory vertex in O at its emission step, written
//     by the PUT that produced it.
// Every edge carries the timestamp of its destination.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "levinlab/rational.hpp"
#include "levinlab/refmachine.hpp"

namespace levinlab {

enum class VertexKind : std::uint8_t { kOp, kMem };

/// What a memory vertex stands for.
enum class MemRole : std::uint8_t { kNone, kCell, kInput, kOutput };

enum class EdgeKind : std::uint8_t { kRead, kWrite, kControl };

struct Vertex {
  std::uint64_t id = 0;
  VertexKind kind = VertexKind::kOp;
  std::int64_t t = 0;
  MemRole role = MemRole::kNone;
  std::int64_t index = 0;  // cell index, input bit index or output bit index
};

struct Edge {
  std::uint64_t src = 0;
  std::uint64_t dst = 0;
  std::int64_t t = 0;
  EdgeKind kind = EdgeKind::kRead;
};

/// Directed bipartite causal graph with input and output boundaries.
///
/// Vertex ids are dense: vertex i has id i. Edges may be added with dangling
/// endpoints; validate() and is_self_contained() report them.
class CompGraph {
 public:
  std::uint64_t add_op(std::int64_t t);
  std::uint64_t add_mem(std::int64_t t, MemRole role = MemRole::kNone,
                        std::int64_t index = 0);
  void add_edge(std::uint64_t src, std::uint64_t dst, EdgeKind kind);
  /// Adds an edge with an explicit timestamp (no destination lookup).
  void add_raw_edge(const Edge& e) { edges_.push_back(e); }
  void mark_input(std::uint64_t id) { inputs_.push_back(id); }
  void mark_output(std::uint64_t id) { outputs_.push_back(id); }

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::uint64_t>& inputs() const noexcept { return inputs_; }
  const std::vector<std::uint64_t>& outputs() const noexcept { return outputs_; }

  bool contains(std::uint64_t id) const noexcept { return id < vertices_.size(); }
  std::size_t op_count() const noexcept;
  std::size_t mem_count() const noexcept;

  /// Invariant violations: partition overlap, edge timestamps that differ
  /// from the destination's, data edges within one partition, boundary ids
  /// outside V. Control edges link operation vertices by construction.
  std::vector<std::string> validate() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> inputs_;
  std::vector<std::uint64_t> outputs_;
};

CompGraph build_graph(std::span<const TraceEntry> trace,
                      std::size_t input_length);

/// The ID-per-step model: slice_sizes[i] memory vertices at timestamp i and
/// no edges. Throws std::invalid_argument for an empty sequence or a zero
/// count.
CompGraph synthetic_derivation_graph(std::span<const std::uint64_t> slice_sizes);

/// Physical units of the graph model. Values are exact rationals; derived
/// densities are recomputed on every call.
struct UnitSystem {
  Rational v_u = 1;  // m^3 s
  Rational e_u = 1;  // J
  Rational s_u = 1;  // m^3
  Rational m_u = 1;  // kg
  Rational c = 299792458;                             // m/s
  Rational k = parse_rational("1.380649e-23");        // J/K
  Rational h = parse_rational("6.62607015e-34");      // J s

  Rational d_e() const { return e_u / v_u; }
  Rational d_m() const { return m_u / s_u; }

  /// Throws std::invalid_argument unless every field is positive.
  void check() const;

  /// SI constants with unit cell sizes (the default).
  static UnitSystem si();
  /// Every field equal to one: quantities read directly as graph counts.
  static UnitSystem natural();
};

/// Integer counts a measurement is built from.
struct GraphTally {
  std::uint64_t ops = 0;
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  std::uint64_t max_slice = 0;
  std::uint64_t boundary = 0;  // |I ∩ V_M|
  std::vector<std::uint64_t> slices;  // slice size per timestamp, from min t

  std::uint64_t size() const noexcept { return vertices + edges; }
};

GraphTally tally(const CompGraph& graph);

/// Same counts as tally(build_graph(trace, n)) without materializing the
/// graph.
GraphTally tally_trace(std::span<const TraceEntry> trace,
                       std::size_t input_length);

struct ResourceVector {
  std::uint64_t time = 0;  // operation vertices
  Rational volume = 0;     // m^3 s
  Rational energy = 0;     // J
  Rational space = 0;      // m^3
  Rational total_energy = 0;  // J
  Rational boundary = 0;   // m^3 s
  std::uint64_t graph_size = 0;  // |V| + |E|
  std::uint64_t max_slice = 0;

  friend bool operator==(const ResourceVector&, const ResourceVector&) = default;
};

ResourceVector measure(const GraphTally& counts, const UnitSystem& units);
ResourceVector measure(const CompGraph& graph, const UnitSystem& units);

struct SelfContainment {
  bool contained = true;
  std::vector<std::uint64_t> vertices;  // offending vertex ids
  std::vector<std::size_t> edges;       // offending edge indices
  std::vector<std::string> violations;  // human-readable, one per offence
};

SelfContainment is_self_contained(const CompGraph& graph);

/// {"vertices":[{id,kind,t}], "edges":[{src,dst,t}], "inputs":[..],
///  "outputs":[..]}
nlohmann::ordered_json to_json(const CompGraph& graph);
nlohmann::ordered_json to_json(const ResourceVector& r);
nlohmann::ordered_json to_json(const UnitSystem& u);

}  // namespace levinlab
