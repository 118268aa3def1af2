#pragma once

// Kernels for H-free Vertex Deletion and H-Packing over the implicit family of
// pattern occurrences. The occurrences are never listed: the tape enumerates
// vertex subsets of size 1..d (by size, then lexicographically) and decides
// membership on each read. The layered hitting set / set packing kernel runs
// on that tape, and every input edge induced by some kept occurrence is
// output once, in order of the first kept occurrence inducing it.

#include <cstdint>
#include <optional>

#include "kernelforge/core_model.hpp"
#include "kernelforge/logspace_kernel.hpp"
#include "kernelforge/patterns.hpp"
#include "kernelforge/stream.hpp"

namespace kf {

enum class OccurrenceRule {
  induced,   // G[S] isomorphic to a pattern
  spanning,  // G[S] contains the pattern as a spanning subgraph
};

class OccurrenceTape final : public stream::SetTape {
 public:
  OccurrenceTape(const GraphInstance& g, PatternSet patterns, OccurrenceRule rule);

  std::size_t size() const override { return offsets_.back(); }
  Element universe() const override { return graph_.n; }
  bool distinct_sets() const override { return true; }

  std::uint32_t d() const { return d_; }
  // The vertex subset enumerated at position t, occurrence or not.
  ElementSet candidate(std::size_t t) const;

 protected:
  bool fetch(std::size_t t, ElementSet& out) const override;

 private:
  const GraphInstance& graph_;
  Adjacency adjacency_;
  PatternSet patterns_;
  OccurrenceRule rule_;
  std::uint32_t d_;
  std::vector<std::size_t> offsets_;  // offsets_[s-1] = first position of size s
  std::vector<bool> size_used_;       // some pattern has this many vertices
};

// The t-th occurrence in enumeration order; std::out_of_range past the end.
ElementSet occurrence_at(OccurrenceTape& tape, std::size_t t);

// Every occurrence, in enumeration order.
Family all_occurrences(const GraphInstance& g, const PatternSet& patterns, OccurrenceRule rule);

// Occurrences kept by layer 0 of the layered kernel on the occurrence tape.
Family r0_kept_occurrences(const GraphInstance& g, const PatternSet& patterns, OccurrenceRule rule,
                           ThresholdBase base);

struct OccurrenceKernelResult {
  GraphInstance kernel;
  std::vector<Element> original_ids;  // new vertex i+1 -> input vertex
  std::uint64_t occurrences_kept = 0;
  stream::RunReport report;
};

// Threshold base k+1 over induced occurrences of any pattern.
OccurrenceKernelResult kernelize_hfree_vd(const GraphInstance& g, const PatternSet& patterns,
                                          std::optional<std::uint64_t> bit_budget = {});

// Threshold base d(k-1)+1 over spanning copies of H; k = 0 returns the input.
OccurrenceKernelResult kernelize_hpack(const GraphInstance& g, const Pattern& pattern,
                                       std::optional<std::uint64_t> bit_budget = {});

// d(d-1)/2 * (k+1)^d and d(d-1)/2 * (d(k-1)+1)^d.
std::uint64_t hfree_edge_bound(std::uint32_t d, std::uint64_t k);
std::uint64_t hpack_edge_bound(std::uint32_t d, std::uint64_t k);

// Fewest vertices whose deletion leaves no induced occurrence, truncated at
// cap+1.
std::uint64_t min_hfree_deletion(const GraphInstance& g, const PatternSet& patterns, std::uint64_t cap);

// Most vertex-disjoint copies of H, truncated at cap.
std::uint64_t max_pattern_packing(const GraphInstance& g, const Pattern& pattern, std::uint64_t cap);

}  // namespace kf
