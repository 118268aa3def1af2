#pragma once

// Seeded instance generation. Output is a pure function of the arguments and
// does not depend on the standard library's distribution implementations.

#include <cstdint>

#include "kernelforge/core_model.hpp"

namespace kf {

struct SetGenParams {
  std::uint32_t d = 1;
  Element n = 1;
  std::size_t m = 0;
  std::uint64_t k = 0;
  bool dedup = false;  // draw m distinct sets
};

// Each set: size uniform in 1..d, then that many distinct elements uniform
// from 1..n. Throws std::invalid_argument on infeasible parameters.
Instance gen_random_sets(ProblemKind kind, const SetGenParams& params, std::uint64_t seed);

// m distinct edges drawn uniformly (Erdos-Renyi G(n, m)), in draw order.
GraphInstance gen_random_graph(Element n, std::size_t m, std::uint64_t k, std::uint64_t seed);

// Bounded uniform integer draw used by every generator in the project.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);
  std::uint64_t next();
  // Uniform in [0, bound). bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool chance(std::uint64_t numerator, std::uint64_t denominator) { return below(denominator) < numerator; }

 private:
  std::uint64_t state_;
};

}  // namespace kf
