#include "levinlab/costgraph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace levinlab {

std::uint64_t CompGraph::add_op(std::int64_t t) {
  vertices_.push_back(Vertex{vertices_.size(), VertexKind::kOp, t, MemRole::kNone, 0});
  return vertices_.back().id;
}

std::uint64_t CompGraph::add_mem(std::int64_t t, MemRole role,
                                 std::int64_t index) {
  vertices_.push_back(Vertex{vertices_.size(), VertexKind::kMem, t, role, index});
  return vertices_.back().id;
}

void CompGraph::add_edge(std::uint64_t src, std::uint64_t dst, EdgeKind kind) {
  if (!contains(dst)) {
    throw std::out_of_range("add_edge: destination " + std::to_string(dst) +
                            " not in graph");
  }
  edges_.push_back(Edge{src, dst, vertices_[dst].t, kind});
}

std::size_t CompGraph::op_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      vertices_.begin(), vertices_.end(),
      [](const Vertex& v) { return v.kind == VertexKind::kOp; }));
}

std::size_t CompGraph::mem_count() const noexcept {
  return vertices_.size() - op_count();
}

std::vector<std::string> CompGraph::validate() const {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id != i) {
      problems.push_back("vertex at position " + std::to_string(i) +
                         " has id " + std::to_string(vertices_[i].id));
    }
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    const std::string tag = "edge " + std::to_string(i);
    if (!contains(e.src) || !contains(e.dst)) {
      problems.push_back(tag + " has an endpoint outside V");
      continue;
    }
    const Vertex& s = vertices_[e.src];
    const Vertex& d = vertices_[e.dst];
    if (e.t != d.t) {
      problems.push_back(tag + " timestamp " + std::to_string(e.t) +
                         " != destination timestamp " + std::to_string(d.t));
    }
    if (e.kind == EdgeKind::kControl) {
      if (s.kind != VertexKind::kOp || d.kind != VertexKind::kOp) {
        problems.push_back(tag + " is a control edge off the operation side");
      }
    } else if (s.kind == d.kind) {
      problems.push_back(tag + " joins two vertices of the same partition");
    }
  }
  for (auto id : inputs_) {
    if (!contains(id)) problems.push_back("input id " + std::to_string(id) + " not in V");
  }
  for (auto id : outputs_) {
    if (!contains(id)) problems.push_back("output id " + std::to_string(id) + " not in V");
  }
  return problems;
}

namespace {

struct Span {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  void touch(std::int64_t t) {
    if (hi < lo) {
      lo = hi = t;
    } else {
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  bool empty() const { return hi < lo; }
};

// Timestamps of cell vertices an instruction at step t touches.
template <typename F>
void for_each_cell_touch(const TraceEntry& e, F&& f) {
  const auto t = static_cast<std::int64_t>(e.step);
  switch (e.op) {
    case Opcode::kInc:
    case Opcode::kDec:
      f(t - 1);
      f(t);
      break;
    case Opcode::kOpen:
    case Opcode::kClose:
    case Opcode::kPut:
      f(t - 1);
      break;
    case Opcode::kRead:
      if (!e.blocked_read()) f(t);
      break;
    default:
      break;
  }
}

std::map<std::int64_t, Span> cell_spans(std::span<const TraceEntry> trace) {
  std::map<std::int64_t, Span> spans;
  for (const TraceEntry& e : trace) {
    for_each_cell_touch(e, [&](std::int64_t ts) { spans[e.cell].touch(ts); });
  }
  return spans;
}

}  // namespace

CompGraph build_graph(std::span<const TraceEntry> trace,
                      std::size_t input_length) {
  CompGraph g;
  std::vector<std::uint64_t> input_ids;
  for (std::size_t j = 0; j < input_length; ++j) {
    auto id = g.add_mem(0, MemRole::kInput, static_cast<std::int64_t>(j));
    g.mark_input(id);
    input_ids.push_back(id);
  }

  const auto spans = cell_spans(trace);
  std::map<std::int64_t, std::uint64_t> cell_base;
  for (const auto& [cell, span] : spans) {
    cell_base[cell] = g.vertices().size();
    for (std::int64_t ts = span.lo; ts <= span.hi; ++ts) {
      g.add_mem(ts, MemRole::kCell, cell);
    }
  }
  auto cell_vertex = [&](std::int64_t cell, std::int64_t ts) {
    return cell_base.at(cell) + static_cast<std::uint64_t>(ts - spans.at(cell).lo);
  };

  std::size_t next_input = 0;
  std::int64_t next_output = 0;
  std::uint64_t prev_op = 0;
  bool have_prev = false;
  for (const TraceEntry& e : trace) {
    const auto t = static_cast<std::int64_t>(e.step);
    const auto op = g.add_op(t);
    if (have_prev) g.add_edge(prev_op, op, EdgeKind::kControl);
    switch (e.op) {
      case Opcode::kInc:
      case Opcode::kDec:
        g.add_edge(cell_vertex(e.cell, t - 1), op, EdgeKind::kRead);
        g.add_edge(op, cell_vertex(e.cell, t), EdgeKind::kWrite);
        break;
      case Opcode::kOpen:
      case Opcode::kClose:
        g.add_edge(cell_vertex(e.cell, t - 1), op, EdgeKind::kRead);
        break;
      case Opcode::kRead:
        if (e.blocked_read()) {
          auto late = g.add_mem(t, MemRole::kInput,
                                static_cast<std::int64_t>(input_length));
          g.mark_input(late);
          g.add_edge(late, op, EdgeKind::kRead);
        } else {
          g.add_edge(input_ids.at(next_input++), op, EdgeKind::kRead);
          g.add_edge(op, cell_vertex(e.cell, t), EdgeKind::kWrite);
        }
        break;
      case Opcode::kPut: {
        g.add_edge(cell_vertex(e.cell, t - 1), op, EdgeKind::kRead);
        auto out = g.add_mem(t, MemRole::kOutput, next_output++);
        g.mark_output(out);
        g.add_edge(op, out, EdgeKind::kWrite);
        break;
      }
      default:
        break;
    }
    prev_op = op;
    have_prev = true;
  }
  return g;
}

CompGraph synthetic_derivation_graph(std::span<const std::uint64_t> slice_sizes) {
  if (slice_sizes.empty()) {
    throw std::invalid_argument("synthetic_derivation_graph: empty slice sequence");
  }
  CompGraph g;
  for (std::size_t i = 0; i < slice_sizes.size(); ++i) {
    if (slice_sizes[i] == 0) {
      throw std::invalid_argument("synthetic_derivation_graph: slice " +
                                  std::to_string(i) + " is empty");
    }
    for (std::uint64_t k = 0; k < slice_sizes[i]; ++k) {
      g.add_mem(static_cast<std::int64_t>(i), MemRole::kCell,
                static_cast<std::int64_t>(k));
    }
  }
  return g;
}

void UnitSystem::check() const {
  const std::pair<const char*, const Rational*> fields[] = {
      {"v_u", &v_u}, {"e_u", &e_u}, {"s_u", &s_u}, {"m_u", &m_u},
      {"c", &c},     {"k", &k},     {"h", &h}};
  for (const auto& [name, value] : fields) {
    if (sgn(*value) <= 0) {
      throw std::invalid_argument(std::string("unit ") + name + " must be positive");
    }
  }
}

UnitSystem UnitSystem::si() { return UnitSystem{}; }

UnitSystem UnitSystem::natural() {
  UnitSystem u;
  u.c = 1;
  u.k = 1;
  u.h = 1;
  return u;
}

GraphTally tally(const CompGraph& graph) {
  GraphTally out;
  out.vertices = graph.vertices().size();
  out.edges = graph.edges().size();
  out.ops = graph.op_count();
  for (auto id : graph.inputs()) {
    if (graph.contains(id) && graph.vertices()[id].kind == VertexKind::kMem) {
      ++out.boundary;
    }
  }
  if (out.vertices + out.edges == 0) return out;

  std::map<std::int64_t, std::uint64_t> per_t;
  for (const Vertex& v : graph.vertices()) ++per_t[v.t];
  for (const Edge& e : graph.edges()) ++per_t[e.t];
  const std::int64_t lo = per_t.begin()->first;
  const std::int64_t hi = per_t.rbegin()->first;
  out.slices.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const auto& [t, n] : per_t) {
    out.slices[static_cast<std::size_t>(t - lo)] = n;
    out.max_slice = std::max(out.max_slice, n);
  }
  return out;
}

GraphTally tally_trace(std::span<const TraceEntry> trace,
                       std::size_t input_length) {
  GraphTally out;
  const std::size_t steps = trace.size();
  // Timestamps 0..steps.
  std::vector<std::int64_t> live_delta(steps + 2, 0);
  std::vector<std::uint64_t> slice(steps + 1, 0);

  slice[0] += input_length;
  out.vertices += input_length;
  out.boundary += input_length;

  for (const auto& [cell, span] : cell_spans(trace)) {
    (void)cell;
    out.vertices += static_cast<std::uint64_t>(span.hi - span.lo + 1);
    live_delta[static_cast<std::size_t>(span.lo)] += 1;
    live_delta[static_cast<std::size_t>(span.hi) + 1] -= 1;
  }

  for (const TraceEntry& e : trace) {
    const auto t = static_cast<std::size_t>(e.step);
    std::uint64_t edges = e.step > 1 ? 1 : 0;  // control
    std::uint64_t extra_vertices = 0;
    switch (e.op) {
      case Opcode::kInc:
      case Opcode::kDec:
        edges += 2;
        break;
      case Opcode::kOpen:
      case Opcode::kClose:
        edges += 1;
        break;
      case Opcode::kRead:
        if (e.blocked_read()) {
          extra_vertices = 1;
          edges += 1;
          ++out.boundary;
        } else {
          edges += 2;
        }
        break;
      case Opcode::kPut:
        extra_vertices = 1;
        edges += 2;
        break;
      default:
        break;
    }
    ++out.ops;
    out.vertices += 1 + extra_vertices;
    out.edges += edges;
    slice[t] += 1 + extra_vertices + edges;
  }

  std::int64_t live = 0;
  for (std::size_t t = 0; t < slice.size(); ++t) {
    live += live_delta[t];
    slice[t] += static_cast<std::uint64_t>(live);
  }
  std::size_t first = 0;
  while (first < slice.size() && slice[first] == 0) ++first;
  if (first < slice.size()) {
    out.slices.assign(slice.begin() + static_cast<std::ptrdiff_t>(first), slice.end());
    out.max_slice = *std::max_element(out.slices.begin(), out.slices.end());
  }
  return out;
}

ResourceVector measure(const GraphTally& counts, const UnitSystem& units) {
  ResourceVector r;
  r.time = counts.ops;
  r.graph_size = counts.size();
  r.max_slice = counts.max_slice;
  const Rational size(mpz_class(std::to_string(counts.size())));
  const Rational slice(mpz_class(std::to_string(counts.max_slice)));
  r.volume = size * units.v_u;
  r.energy = size * units.e_u;
  r.space = slice * units.s_u;
  r.total_energy = units.d_e() * r.volume + r.space * units.d_m() * units.c * units.c;
  r.boundary = Rational(mpz_class(std::to_string(counts.boundary))) * units.v_u;
  return r;
}

ResourceVector measure(const CompGraph& graph, const UnitSystem& units) {
  return measure(tally(graph), units);
}

SelfContainment is_self_contained(const CompGraph& graph) {
  SelfContainment out;
  const auto& vs = graph.vertices();
  for (std::size_t i = 0; i < graph.edges().size(); ++i) {
    const Edge& e = graph.edges()[i];
    if (!graph.contains(e.src) || !graph.contains(e.dst)) {
      out.edges.push_back(i);
      out.violations.push_back("edge " + std::to_string(i) + " (" +
                               std::to_string(e.src) + "->" +
                               std::to_string(e.dst) +
                               ") reaches outside the computation");
    }
  }
  for (auto id : graph.inputs()) {
    if (!graph.contains(id)) {
      out.vertices.push_back(id);
      out.violations.push_back("input " + std::to_string(id) + " is not a vertex");
      continue;
    }
    if (vs[id].t == 0) continue;
    out.vertices.push_back(id);
    std::string consumers;
    for (const Edge& e : graph.edges()) {
      if (e.src == id && graph.contains(e.dst) &&
          vs[e.dst].kind == VertexKind::kOp) {
        out.vertices.push_back(e.dst);
        consumers += " op " + std::to_string(e.dst) + " (t=" +
                     std::to_string(vs[e.dst].t) + ")";
      }
    }
    out.violations.push_back("input vertex " + std::to_string(id) +
                             " arrives at t=" + std::to_string(vs[id].t) +
                             " for" + (consumers.empty() ? " no op" : consumers));
  }
  out.contained = out.violations.empty();
  return out;
}

namespace {

const char* kind_name(VertexKind k) { return k == VertexKind::kOp ? "op" : "mem"; }

}  // namespace

nlohmann::ordered_json to_json(const CompGraph& graph) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const Vertex& v : graph.vertices()) {
    j["vertices"].push_back({{"id", v.id}, {"kind", kind_name(v.kind)}, {"t", v.t}});
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : graph.edges()) {
    j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"t", e.t}});
  }
  j["inputs"] = graph.inputs();
  j["outputs"] = graph.outputs();
  return j;
}

nlohmann::ordered_json to_json(const ResourceVector& r) {
  nlohmann::ordered_json j;
  j["time"] = r.time;
  j["volume"] = to_json(r.volume);
  j["energy"] = to_json(r.energy);
  j["space"] = to_json(r.space);
  j["total_energy"] = to_json(r.total_energy);
  j["boundary"] = to_json(r.boundary);
  j["graph_size"] = r.graph_size;
  j["max_slice"] = r.max_slice;
  return j;
}

nlohmann::ordered_json to_json(const UnitSystem& u) {
  nlohmann::ordered_json j;
  j["v_u"] = to_json(u.v_u);
  j["e_u"] = to_json(u.e_u);
  j["s_u"] = to_json(u.s_u);
  j["m_u"] = to_json(u.m_u);
  j["c"] = to_json(u.c);
  j["k"] = to_json(u.k);
  j["h"] = to_json(u.h);
  return j;
}

}  // namespace levinlab
