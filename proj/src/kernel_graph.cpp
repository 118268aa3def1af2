#include "kernelforge/kernel_graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "kernelforge/oracles.hpp"

namespace kf {

using stream::SpaceMeter;
using Register = stream::SpaceMeter::Register;

namespace {

std::size_t binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::size_t value = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    std::size_t top = n - r + i;
    if (value > std::numeric_limits<std::size_t>::max() / top) throw std::overflow_error("too many vertex subsets");
    value = value * top / i;
  }
  return value;
}

}  // namespace

OccurrenceTape::OccurrenceTape(const GraphInstance& g, PatternSet patterns, OccurrenceRule rule)
    : graph_(g), adjacency_(g), patterns_(std::move(patterns)), rule_(rule), d_(max_pattern_size(patterns_)) {
  if (patterns_.empty()) throw std::invalid_argument("empty pattern set");
  if (rule_ == OccurrenceRule::spanning && patterns_.size() != 1) {
    throw std::invalid_argument("spanning occurrences need exactly one pattern");
  }
  size_used_.assign(d_ + 1, false);
  for (const auto& p : patterns_) size_used_[p.v] = true;
  offsets_.push_back(0);
  for (std::uint32_t s = 1; s <= d_; ++s) {
    std::size_t count = binomial(g.n, s);
    if (offsets_.back() > std::numeric_limits<std::size_t>::max() - count) {
      throw std::overflow_error("too many vertex subsets");
    }
    offsets_.push_back(offsets_.back() + count);
  }
}

ElementSet OccurrenceTape::candidate(std::size_t t) const {
  if (t >= size()) throw std::out_of_range("position beyond end of tape");
  std::size_t s = 1;
  while (t >= offsets_[s]) ++s;
  std::size_t rank = t - offsets_[s - 1];
  ElementSet out;
  Element x = 1;
  for (std::size_t i = 0; i < s; ++i, ++x) {
    while (true) {
      std::size_t with_x = binomial(graph_.n - x, s - i - 1);
      if (rank < with_x) break;
      rank -= with_x;
      ++x;
    }
    out.push_back(x);
  }
  return out;
}

bool OccurrenceTape::fetch(std::size_t t, ElementSet& out) const {
  std::size_t s = 1;
  while (t >= offsets_[s]) ++s;
  if (!size_used_[s]) return false;
  out = candidate(t);
  if (rule_ == OccurrenceRule::induced) return induced_match(adjacency_, out, patterns_);
  return spanning_match(adjacency_, out, patterns_.front());
}

ElementSet occurrence_at(OccurrenceTape& tape, std::size_t t) {
  ElementSet set;
  std::size_t seen = 0;
  for (std::size_t position = 0; position < tape.size(); ++position) {
    if (!tape.read(position, set)) continue;
    if (seen++ == t) return set;
  }
  throw std::out_of_range("index beyond stream end");
}

Family all_occurrences(const GraphInstance& g, const PatternSet& patterns, OccurrenceRule rule) {
  OccurrenceTape tape(g, patterns, rule);
  Family out;
  ElementSet set;
  for (std::size_t t = 0; t < tape.size(); ++t) {
    if (tape.read(t, set)) out.push_back(set);
  }
  return out;
}

Family r0_kept_occurrences(const GraphInstance& g, const PatternSet& patterns, OccurrenceRule rule,
                           ThresholdBase base) {
  OccurrenceTape tape(g, patterns, rule);
  return stream::run_metered(
             [&](stream::SetTape& t, SpaceMeter& meter, stream::OutputSink& sink) {
               LayeredKernel r0(t, tape.d(), base, meter);
               r0.run_layer(LayerId{0}, sink);
             },
             tape)
      .output;
}

namespace {

OccurrenceKernelResult run_edge_kernel(const GraphInstance& g, const PatternSet& patterns, OccurrenceRule rule,
                                       ThresholdBase base, std::optional<std::uint64_t> bit_budget) {
  OccurrenceTape tape(g, patterns, rule);
  const Adjacency adjacency(g);
  std::uint64_t kept = 0;
  auto run = stream::run_metered(
      [&](stream::SetTape& t, SpaceMeter& meter, stream::OutputSink& sink) {
        LayeredKernel r0(t, tape.d(), base, meter);
        Register step(meter);
        Register held(meter);
        Register first(meter);
        Register second(meter);
        Register earlier(meter);
        Register other(meter);
        Register kept_count(meter);
        kept_count.set(kept);
        ElementSet current;
        ElementSet scanned;
        for (std::size_t i = 0; i < t.size(); ++i) {
          step.set(i);
          if (!r0.would_output(LayerId{0}, i)) continue;
          kept_count.set(++kept);
          t.read(i, current);
          held.hold(current);
          for (std::size_t a = 0; a < current.size(); ++a) {
            first.set(a);
            for (std::size_t b = a + 1; b < current.size(); ++b) {
              second.set(b);
              const Element edge[2] = {current[a], current[b]};
              if (!adjacency.adjacent(edge[0], edge[1])) continue;
              bool output_before = false;
              for (std::size_t s = 0; s < i && !output_before; ++s) {
                earlier.set(s);
                if (!t.read(s, scanned)) continue;
                other.hold(scanned);
                output_before = is_subset(edge, scanned) && r0.would_output(LayerId{0}, s);
              }
              if (!output_before) sink.emit(edge);
            }
          }
        }
      },
      tape, bit_budget);

  GraphInstance emitted;
  emitted.n = g.n;
  emitted.k = g.k;
  for (const auto& e : run.output) emitted.edges.push_back({e[0], e[1]});
  auto relabeled = relabel_by_first_occurrence(emitted);
  return {std::move(relabeled.graph), std::move(relabeled.original_ids), kept, run.report};
}

}  // namespace

OccurrenceKernelResult kernelize_hfree_vd(const GraphInstance& g, const PatternSet& patterns,
                                          std::optional<std::uint64_t> bit_budget) {
  return run_edge_kernel(g, patterns, OccurrenceRule::induced, ThresholdBase::hitting_set(g.k), bit_budget);
}

OccurrenceKernelResult kernelize_hpack(const GraphInstance& g, const Pattern& pattern,
                                       std::optional<std::uint64_t> bit_budget) {
  if (g.k == 0) {
    OccurrenceKernelResult result;
    result.kernel = g;
    for (Element v = 1; v <= g.n; ++v) result.original_ids.push_back(v);
    result.report.sets_emitted = g.edges.size();
    return result;
  }
  return run_edge_kernel(g, {pattern}, OccurrenceRule::spanning, ThresholdBase::set_packing(pattern.v, g.k),
                         bit_budget);
}

std::uint64_t hfree_edge_bound(std::uint32_t d, std::uint64_t k) {
  return static_cast<std::uint64_t>(d) * (d - 1) / 2 * saturating_pow(k + 1, d);
}

std::uint64_t hpack_edge_bound(std::uint32_t d, std::uint64_t k) {
  return static_cast<std::uint64_t>(d) * (d - 1) / 2 * saturating_pow(ThresholdBase::set_packing(d, k).value, d);
}

std::uint64_t min_hfree_deletion(const GraphInstance& g, const PatternSet& patterns, std::uint64_t cap) {
  return min_hitting_set_size(all_occurrences(g, patterns, OccurrenceRule::induced), cap);
}

std::uint64_t max_pattern_packing(const GraphInstance& g, const Pattern& pattern, std::uint64_t cap) {
  return max_packing_size(all_occurrences(g, {pattern}, OccurrenceRule::spanning), cap);
}

}  // namespace kf
