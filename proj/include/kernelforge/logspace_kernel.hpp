#pragma once

// Layered streaming kernels for d-Hitting Set and d-Set Packing.
//
// Layer d outputs one copy of every set. Layer l < d outputs the set F at
// step t iff layer l+1 outputs it and, for every C ⊆ F with |C| = l, fewer
// than base^(d-|C|) supersets of C were output by layer l+1 before step t.
// Layer l never stores what layer l+1 produced; each count is a fresh nested
// simulation, so a run keeps only O(d) counters and sets per layer.
//
// base = k+1 gives the hitting set kernel (at most (k+1)^d sets), base =
// d(k-1)+1 the set packing kernel (at most (d(k-1)+1)^d sets).

#include <cstdint>
#include <optional>
#include <vector>

#include "kernelforge/core_model.hpp"
#include "kernelforge/stream.hpp"

namespace kf {

struct LayerId {
  std::uint32_t value = 0;
};

struct ThresholdBase {
  std::uint64_t value = 1;

  static ThresholdBase hitting_set(std::uint64_t k) { return {k + 1}; }
  // Requires k >= 1.
  static ThresholdBase set_packing(std::uint32_t d, std::uint64_t k);
};

class LayeredKernel {
 public:
  LayeredKernel(stream::SetTape& tape, std::uint32_t d, ThresholdBase base, stream::SpaceMeter& meter);

  std::uint32_t d() const { return d_; }
  // base^(d - core_size), saturating.
  std::uint64_t threshold(std::size_t core_size) const { return thresholds_[core_size]; }

  // Decision of layer `layer` (0..d) on the set at tape position t.
  bool would_output(LayerId layer, std::size_t t);

  // Runs the given layer as the outputting algorithm.
  void run_layer(LayerId layer, stream::OutputSink& sink);

  // Layer d+1: the output of layer 0 with elements renamed 1..n' by first
  // occurrence. Writes (in id order) the original id of each new element to
  // `mapping` as a singleton set.
  void run_relabeled(stream::OutputSink& sink, stream::OutputSink& mapping);

  // Number of sets the layer outputs over the whole tape, stopping early once
  // `limit` is reached.
  std::uint64_t count_outputs(LayerId layer, std::uint64_t limit);

  // Number of sets containing `element` that layer 0 outputs, up to `limit`.
  std::uint64_t count_incident_outputs(Element element, std::uint64_t limit);

 private:
  struct Frame {
    ElementSet current;
    ElementSet scanned;
    ElementSet core;
    std::vector<std::size_t> pick;
  };

  bool would_output_at(std::uint32_t layer, std::size_t t);
  bool has_earlier_copy(std::size_t t, Frame& frame);
  bool core_saturated(std::uint32_t layer, std::size_t t, Frame& frame);
  std::uint64_t count_supersets_before(std::uint32_t next_layer, std::size_t t, Frame& frame, std::uint64_t limit);

  Element relabel_id(std::size_t t, std::size_t position, bool& first_here);
  std::uint64_t count_first_occurrences_before(std::size_t step, std::size_t position);
  bool is_first_occurrence(Element e, std::size_t step);

  stream::SetTape& tape_;
  std::uint32_t d_;
  stream::SpaceMeter& meter_;
  std::vector<std::uint64_t> thresholds_;
  std::vector<Frame> frames_;
  ElementSet relabel_current_, relabel_scan_, relabel_probe_, renamed_;
};

struct LogspaceResult {
  Instance kernel;
  std::vector<Element> original_ids;  // new id i+1 -> element in the input
  stream::RunReport report;
};

// The full kernel: layer 0 through the relabeling layer. k is unchanged and
// the output is never an answer, always an equivalent instance.
LogspaceResult kernelize_hs_logspace(const Instance& inst, std::optional<std::uint64_t> bit_budget = {});

// k = 0 returns the input unchanged (an empty packing always exists).
LogspaceResult kernelize_sp_logspace(const Instance& inst, std::optional<std::uint64_t> bit_budget = {});

// Layer decision with the hitting set threshold on a fresh meter.
bool would_output(const Instance& inst, LayerId layer, std::size_t t);

// Runs layer l alone (no relabeling) and reports its cost.
stream::MeteredRun run_layer_metered(const Instance& inst, ThresholdBase base, LayerId layer);

// Materializes the output of layer l and checks that every C with
// l <= |C| <= d has at most base^(d-|C|) supersets in it.
bool invariant_audit(const Instance& inst, LayerId layer);
bool invariant_audit_sp(const Instance& inst, LayerId layer);
bool invariant_audit_with(const Instance& inst, ThresholdBase base, LayerId layer);

}  // namespace kf
