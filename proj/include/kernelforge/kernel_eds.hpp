#pragma once

// Edge Dominating Set kernel built on the d = 2 hitting set kernel run with
// parameter 2k (the vertices of a k-edge dominating set form a 2k-vertex
// cover). All vertex-cover decisions come from nested simulation of that
// kernel; nothing it outputs is stored.

#include <cstdint>
#include <optional>

#include "kernelforge/core_model.hpp"
#include "kernelforge/logspace_kernel.hpp"
#include "kernelforge/stream.hpp"

namespace kf {

// Edges of a graph, in input order, as 2-element sets.
class EdgeTape final : public stream::SetTape {
 public:
  explicit EdgeTape(const GraphInstance& g) : graph_(g) {}

  std::size_t size() const override { return graph_.edges.size(); }
  Element universe() const override { return graph_.n; }
  bool distinct_sets() const override { return true; }

 protected:
  bool fetch(std::size_t t, ElementSet& out) const override;

 private:
  const GraphInstance& graph_;
};

// Threshold base of the vertex cover kernel used here: 2k + 1.
ThresholdBase vc_threshold_base(std::uint64_t k);

// Number of edges incident to v that the vertex cover kernel (d = 2,
// parameter 2k) outputs, truncated at cap.
std::uint64_t vc_output_degree(const GraphInstance& g, Element v, std::uint64_t cap);

// Size cap for a non-trivial kernel: binom(2k,2) + (2k+1)^2 + 2k*2*(2k+1)^2.
std::uint64_t eds_edge_bound(std::uint64_t k);

struct EdsResult {
  GraphInstance kernel;
  std::vector<Element> original_ids;  // new vertex i+1 -> input vertex
  bool no_instance = false;           // kernel is the canonical no-instance
  stream::RunReport report;
};

// (a) If layer 1 of the vertex cover kernel outputs more than (2k+1)^2 edges,
//     the counting conditions certify a (2k+1)-flower with empty core:
//     emit the canonical no-instance.
// (b) If more than 2k vertices have vc_output_degree >= 2k+1: no-instance.
// (c) Otherwise output every input edge whose endpoints both touch an edge
//     the vertex cover kernel outputs, vertices renamed by first occurrence.
EdsResult kernelize_eds(const GraphInstance& g, std::optional<std::uint64_t> bit_budget = {});

}  // namespace kf
