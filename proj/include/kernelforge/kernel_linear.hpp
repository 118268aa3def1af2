#pragma once

// Linear-time kernels: one pass over the (radix-sorted) family, keeping a set
// unless some subset C of it already has base^(d-|C|) kept supersets. Kept
// supersets are counted in a trie over sorted element sequences.

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "kernelforge/core_model.hpp"

namespace kf {

class SupersetTrie {
 public:
  SupersetTrie();

  // Number of stored sets containing C; 0 if C was never incremented.
  std::uint64_t query(std::span<const Element> c);
  // Adds one to every subset of F, the empty set and F included.
  void increment(std::span<const Element> f);

  // Child steps taken by all queries and increments so far.
  std::uint64_t node_visits() const { return visits_; }
  std::size_t node_count() const { return counts_.size(); }

 private:
  std::uint32_t child(std::uint32_t node, Element label, bool create);

  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::uint64_t, std::uint32_t> children_;  // (node << 32 | label) -> node
  std::uint64_t visits_ = 0;
};

// Stable LSD radix sort of the family into lexicographic order; a shorter
// set sorts before its extensions.
Instance sort_family(const Instance& inst);

struct LinearOptions {
  bool sort = true;
  // Re-checks the stored-family bounds after every step; throws
  // std::logic_error on a violation.
  bool audit = false;
  // Called after every step with the step index and the family stored so far.
  std::function<void(std::size_t, const Family&)> on_step;
};

struct LinearResult {
  Instance kernel;
  std::vector<Element> original_ids;  // new id i+1 -> element in the input
  std::uint64_t tape_reads = 0;
  std::uint64_t trie_visits = 0;
};

LinearResult kernelize_hs_linear(const Instance& inst, const LinearOptions& options = {});
// k = 0 returns the input unchanged.
LinearResult kernelize_sp_linear(const Instance& inst, const LinearOptions& options = {});

}  // namespace kf
