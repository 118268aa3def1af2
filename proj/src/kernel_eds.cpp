#include "kernelforge/kernel_eds.hpp"

namespace kf {

using stream::SpaceMeter;
using Register = stream::SpaceMeter::Register;

bool EdgeTape::fetch(std::size_t t, ElementSet& out) const {
  const Edge& e = graph_.edges[t];
  out.assign({e.u, e.v});
  return true;
}

ThresholdBase vc_threshold_base(std::uint64_t k) { return ThresholdBase::hitting_set(2 * k); }

std::uint64_t vc_output_degree(const GraphInstance& g, Element v, std::uint64_t cap) {
  EdgeTape tape(g);
  SpaceMeter meter;
  LayeredKernel vc(tape, 2, vc_threshold_base(g.k), meter);
  return vc.count_incident_outputs(v, cap);
}

std::uint64_t eds_edge_bound(std::uint64_t k) {
  const std::uint64_t high = 2 * k;
  const std::uint64_t vc_edges = (2 * k + 1) * (2 * k + 1);
  return high * (high - (high > 0)) / 2 + vc_edges + high * 2 * vc_edges;
}

EdsResult kernelize_eds(const GraphInstance& g, std::optional<std::uint64_t> bit_budget) {
  EdgeTape tape(g);
  bool no_instance = false;
  auto run = stream::run_metered(
      [&](stream::SetTape& t, SpaceMeter& meter, stream::OutputSink& sink) {
        LayeredKernel vc(t, 2, vc_threshold_base(g.k), meter);
        const std::uint64_t high_degree = 2 * g.k + 1;

        if (vc.count_outputs(LayerId{1}, vc.threshold(0) + 1) > vc.threshold(0)) {
          no_instance = true;
          return;
        }

        Register vertex(meter);
        Register high(meter);
        std::uint64_t c = 0;
        high.set(c);
        for (Element v = 1; v <= g.n; ++v) {
          vertex.set(v);
          if (vc.count_incident_outputs(v, high_degree) >= high_degree) high.set(++c);
          if (c > 2 * g.k) {
            no_instance = true;
            return;
          }
        }

        Register step(meter);
        Register held(meter);
        ElementSet edge;
        for (std::size_t i = 0; i < t.size(); ++i) {
          step.set(i);
          t.read(i, edge);
          held.hold(edge);
          if (vc.count_incident_outputs(edge[0], 1) == 0) continue;
          if (vc.count_incident_outputs(edge[1], 1) == 0) continue;
          sink.emit(edge);
        }
      },
      tape, bit_budget);

  EdsResult result;
  result.report = run.report;
  if (no_instance) {
    result.no_instance = true;
    result.kernel = canonical_no_instance_eds();
    result.original_ids = {};
    return result;
  }
  GraphInstance emitted;
  emitted.n = g.n;
  emitted.k = g.k;
  for (const auto& e : run.output) emitted.edges.push_back({e[0], e[1]});
  auto relabeled = relabel_by_first_occurrence(emitted);
  result.kernel = std::move(relabeled.graph);
  result.original_ids = std::move(relabeled.original_ids);
  return result;
}

}  // namespace kf
