#include "kernelforge/logspace_kernel.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "kernelforge/oracles.hpp"

namespace kf {

using stream::SpaceMeter;
using Register = stream::SpaceMeter::Register;

ThresholdBase ThresholdBase::set_packing(std::uint32_t d, std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("set packing threshold needs k >= 1");
  return {static_cast<std::uint64_t>(d) * (k - 1) + 1};
}

LayeredKernel::LayeredKernel(stream::SetTape& tape, std::uint32_t d, ThresholdBase base, SpaceMeter& meter)
    : tape_(tape), d_(d), meter_(meter), frames_(d + 1) {
  if (d < 1) throw std::invalid_argument("d must be positive");
  for (std::uint32_t size = 0; size <= d; ++size) thresholds_.push_back(saturating_pow(base.value, d - size));
}

bool LayeredKernel::would_output(LayerId layer, std::size_t t) {
  if (layer.value > d_) throw std::out_of_range("layer beyond d");
  if (t >= tape_.size()) throw std::out_of_range("step beyond end of tape");
  return would_output_at(layer.value, t);
}

bool LayeredKernel::would_output_at(std::uint32_t layer, std::size_t t) {
  Frame& frame = frames_[layer];
  Register step(meter_);
  step.set(t);
  Register held(meter_);
  if (!tape_.read(t, frame.current)) return false;
  held.hold(frame.current);

  if (layer == d_) return tape_.distinct_sets() || !has_earlier_copy(t, frame);

  // Both conditions must hold; the core counts are checked first because
  // once a core saturates they reject without consulting layer+1 at step t.
  if (core_saturated(layer, t, frame)) return false;
  return would_output_at(layer + 1, t);
}

bool LayeredKernel::has_earlier_copy(std::size_t t, Frame& frame) {
  Register scan(meter_);
  Register other(meter_);
  for (std::size_t earlier = 0; earlier < t; ++earlier) {
    scan.set(earlier);
    if (!tape_.read(earlier, frame.scanned)) continue;
    other.hold(frame.scanned);
    if (frame.scanned == frame.current) return true;
  }
  return false;
}

bool LayeredKernel::core_saturated(std::uint32_t layer, std::size_t t, Frame& frame) {
  const std::size_t size = frame.current.size();
  if (size < layer) return false;
  const std::uint64_t limit = threshold(layer);
  Register core(meter_);
  // Index combinations of `layer` positions, lexicographic.
  auto& pick = frame.pick;
  pick.resize(layer);
  for (std::size_t i = 0; i < layer; ++i) pick[i] = i;
  while (true) {
    frame.core.clear();
    for (auto i : pick) frame.core.push_back(frame.current[i]);
    core.hold(frame.core);
    if (count_supersets_before(layer + 1, t, frame, limit) >= limit) return true;

    std::size_t i = layer;
    while (i > 0 && pick[i - 1] == size - layer + (i - 1)) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < layer; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::uint64_t LayeredKernel::count_supersets_before(std::uint32_t next_layer, std::size_t t, Frame& frame,
                                                     std::uint64_t limit) {
  Register scan(meter_);
  Register other(meter_);
  Register count(meter_);
  std::uint64_t found = 0;
  count.set(found);
  for (std::size_t earlier = 0; earlier < t && found < limit; ++earlier) {
    scan.set(earlier);
    if (!tape_.read(earlier, frame.scanned)) continue;
    other.hold(frame.scanned);
    if (!is_subset(frame.core, frame.scanned)) continue;
    if (would_output_at(next_layer, earlier)) count.set(++found);
  }
  return found;
}

void LayeredKernel::run_layer(LayerId layer, stream::OutputSink& sink) {
  Register step(meter_);
  Register held(meter_);
  for (std::size_t t = 0; t < tape_.size(); ++t) {
    step.set(t);
    if (!would_output(layer, t)) continue;
    tape_.read(t, relabel_current_);
    held.hold(relabel_current_);
    sink.emit(relabel_current_);
  }
}

std::uint64_t LayeredKernel::count_outputs(LayerId layer, std::uint64_t limit) {
  Register step(meter_);
  Register count(meter_);
  std::uint64_t found = 0;
  count.set(found);
  for (std::size_t t = 0; t < tape_.size() && found < limit; ++t) {
    step.set(t);
    if (would_output(layer, t)) count.set(++found);
  }
  return found;
}

std::uint64_t LayeredKernel::count_incident_outputs(Element element, std::uint64_t limit) {
  Register step(meter_);
  Register held(meter_);
  Register count(meter_);
  std::uint64_t found = 0;
  count.set(found);
  for (std::size_t t = 0; t < tape_.size() && found < limit; ++t) {
    step.set(t);
    if (!tape_.read(t, relabel_scan_)) continue;
    held.hold(relabel_scan_);
    if (!contains(relabel_scan_, element)) continue;
    if (would_output_at(0, t)) count.set(++found);
  }
  return found;
}

void LayeredKernel::run_relabeled(stream::OutputSink& sink, stream::OutputSink& mapping) {
  Register step(meter_);
  Register held(meter_);
  Register position(meter_);
  Register renamed(meter_);
  for (std::size_t t = 0; t < tape_.size(); ++t) {
    step.set(t);
    if (!would_output_at(0, t)) continue;
    tape_.read(t, relabel_current_);
    held.hold(relabel_current_);
    renamed_.clear();
    for (std::size_t i = 0; i < relabel_current_.size(); ++i) {
      position.set(i);
      bool first_here = false;
      Element id = relabel_id(t, i, first_here);
      if (first_here) {
        Element original = relabel_current_[i];
        mapping.emit(std::span<const Element>(&original, 1));
      }
      renamed_.push_back(id);
      renamed.hold(renamed_);
    }
    std::sort(renamed_.begin(), renamed_.end());
    sink.emit(renamed_);
  }
}

// New id of the element at `position` of the set output at step t: one plus
// the number of distinct elements whose first occurrence in the output stream
// precedes this element's first occurrence.
Element LayeredKernel::relabel_id(std::size_t t, std::size_t position, bool& first_here) {
  const Element e = relabel_current_[position];
  Register step(meter_);
  Register held(meter_);
  Register where(meter_);
  std::size_t first_step = t;
  std::size_t first_position = position;
  for (std::size_t s = 0; s < t; ++s) {
    step.set(s);
    if (!tape_.read(s, relabel_scan_)) continue;
    held.hold(relabel_scan_);
    if (!contains(relabel_scan_, e) || !would_output_at(0, s)) continue;
    first_step = s;
    first_position = static_cast<std::size_t>(
        std::lower_bound(relabel_scan_.begin(), relabel_scan_.end(), e) - relabel_scan_.begin());
    break;
  }
  where.set(first_position);
  first_here = first_step == t;
  return static_cast<Element>(count_first_occurrences_before(first_step, first_position) + 1);
}

std::uint64_t LayeredKernel::count_first_occurrences_before(std::size_t step, std::size_t position) {
  Register scan(meter_);
  Register held(meter_);
  Register index(meter_);
  Register count(meter_);
  std::uint64_t found = 0;
  count.set(found);
  for (std::size_t s = 0; s <= step; ++s) {
    scan.set(s);
    if (!tape_.read(s, relabel_scan_)) continue;
    held.hold(relabel_scan_);
    if (!would_output_at(0, s)) continue;
    std::size_t limit = s == step ? position : relabel_scan_.size();
    for (std::size_t j = 0; j < limit; ++j) {
      index.set(j);
      if (is_first_occurrence(relabel_scan_[j], s)) count.set(++found);
    }
  }
  return found;
}

bool LayeredKernel::is_first_occurrence(Element e, std::size_t step) {
  Register scan(meter_);
  Register held(meter_);
  for (std::size_t s = 0; s < step; ++s) {
    scan.set(s);
    if (!tape_.read(s, relabel_probe_)) continue;
    held.hold(relabel_probe_);
    if (contains(relabel_probe_, e) && would_output_at(0, s)) return false;
  }
  return true;
}

namespace {

LogspaceResult run_full_kernel(const Instance& inst, ThresholdBase base, std::optional<std::uint64_t> bit_budget) {
  stream::FamilyTape tape(inst);
  stream::OutputSink mapping;
  auto run = stream::run_metered(
      [&](stream::SetTape& t, SpaceMeter& meter, stream::OutputSink& sink) {
        LayeredKernel kernel(t, inst.d, base, meter);
        kernel.run_relabeled(sink, mapping);
      },
      tape, bit_budget);

  LogspaceResult result;
  result.kernel = inst;
  result.kernel.family = std::move(run.output);
  for (auto& single : std::move(mapping).take()) result.original_ids.push_back(single.front());
  result.kernel.n = std::max<Element>(1, static_cast<Element>(result.original_ids.size()));
  result.report = run.report;
  return result;
}

}  // namespace

LogspaceResult kernelize_hs_logspace(const Instance& inst, std::optional<std::uint64_t> bit_budget) {
  return run_full_kernel(inst, ThresholdBase::hitting_set(inst.k), bit_budget);
}

LogspaceResult kernelize_sp_logspace(const Instance& inst, std::optional<std::uint64_t> bit_budget) {
  if (inst.k == 0) {
    LogspaceResult result;
    result.kernel = inst;
    for (Element e = 1; e <= inst.n; ++e) result.original_ids.push_back(e);
    result.report.sets_emitted = inst.family.size();
    return result;
  }
  return run_full_kernel(inst, ThresholdBase::set_packing(inst.d, inst.k), bit_budget);
}

bool would_output(const Instance& inst, LayerId layer, std::size_t t) {
  stream::FamilyTape tape(inst);
  SpaceMeter meter;
  LayeredKernel kernel(tape, inst.d, ThresholdBase::hitting_set(inst.k), meter);
  return kernel.would_output(layer, t);
}

stream::MeteredRun run_layer_metered(const Instance& inst, ThresholdBase base, LayerId layer) {
  stream::FamilyTape tape(inst);
  return stream::run_metered(
      [&](stream::SetTape& t, SpaceMeter& meter, stream::OutputSink& sink) {
        LayeredKernel kernel(t, inst.d, base, meter);
        kernel.run_layer(layer, sink);
      },
      tape);
}

bool invariant_audit_with(const Instance& inst, ThresholdBase base, LayerId layer) {
  auto output = run_layer_metered(inst, base, layer).output;
  std::map<ElementSet, std::uint64_t> supersets;
  for (const auto& set : output) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << set.size()); ++mask) {
      ElementSet core;
      for (std::size_t i = 0; i < set.size(); ++i) {
        if (mask >> i & 1) core.push_back(set[i]);
      }
      if (core.size() >= layer.value) ++supersets[core];
    }
  }
  return std::all_of(supersets.begin(), supersets.end(), [&](const auto& entry) {
    return entry.second <= saturating_pow(base.value, inst.d - entry.first.size());
  });
}

bool invariant_audit(const Instance& inst, LayerId layer) {
  return invariant_audit_with(inst, ThresholdBase::hitting_set(inst.k), layer);
}

bool invariant_audit_sp(const Instance& inst, LayerId layer) {
  return invariant_audit_with(inst, ThresholdBase::set_packing(inst.d, inst.k), layer);
}

}  // namespace kf
