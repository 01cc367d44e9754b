#pragma once

// Reference implementations written straight from the machine and graph
// definitions, sharing no logic with the library. Bits are std::string of
// '0'/'1', probabilities are mpq_class.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace oracle {

bool valid(const std::string& bits);

/// Every valid program of at most max_bits bits, by testing all strings.
std::vector<std::string> all_programs(unsigned max_bits);

enum class Status { kHalted, kOutOfSteps, kBlocked };

struct Step {
  int op;  // nibble value
  long cell;
  bool blocked;
};

struct Run {
  std::string output;
  Status status = Status::kHalted;
  std::uint64_t steps = 0;
  std::vector<Step> trace;
};

Run run(const std::string& program, const std::string& input, std::uint64_t budget);

/// |V| + |E| of the cost graph of a run, counted from the rules.
std::uint64_t graph_size(const Run& r, std::size_t input_length);
/// Largest number of vertices and edges sharing a timestamp.
std::uint64_t max_slice(const Run& r, std::size_t input_length);

mpq_class weight(const std::string& program);  // 2^-|p|

mpq_class alp(const std::string& x, unsigned max_bits, std::uint64_t budget);
mpq_class expected_time(const std::string& x, unsigned max_bits, std::uint64_t budget);

/// P'(x) by the normalisation recursion from P'(empty) = 1.
mpq_class normalized(const std::string& x, unsigned max_bits, std::uint64_t budget);

struct Minimum {
  std::string program;
  double bits = 0;
};

std::optional<Minimum> shortest_producer(const std::string& x, unsigned max_bits,
                                         std::uint64_t budget);
/// min |p| + log2 max(graph size * e_u_ratio, 1), ties to the earlier program.
/// Energy in e_u units equals graph size times d_e v_u / e_u = graph size.
std::optional<Minimum> energy_minimizer(const std::string& x, unsigned max_bits,
                                        std::uint64_t budget);

/// O(1 | q), absent when the program does not halt with output.
std::optional<mpq_class> cpdf(const std::string& program, const std::string& q,
                              std::uint64_t budget);

}  // namespace oracle
