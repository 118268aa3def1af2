#include "kernelforge/kernel_linear.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "kernelforge/logspace_kernel.hpp"
#include "kernelforge/oracles.hpp"
#include "kernelforge/stream.hpp"

namespace kf {

SupersetTrie::SupersetTrie() : counts_(1, 0) {}

std::uint32_t SupersetTrie::child(std::uint32_t node, Element label, bool create) {
  ++visits_;
  const std::uint64_t key = static_cast<std::uint64_t>(node) << 32 | label;
  auto it = children_.find(key);
  if (it != children_.end()) return it->second;
  if (!create) return 0;
  auto fresh = static_cast<std::uint32_t>(counts_.size());
  counts_.push_back(0);
  children_.emplace(key, fresh);
  return fresh;
}

std::uint64_t SupersetTrie::query(std::span<const Element> c) {
  std::uint32_t node = 0;
  for (Element e : c) {
    node = child(node, e, false);
    if (node == 0) return 0;
  }
  return counts_[node];
}

void SupersetTrie::increment(std::span<const Element> f) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.size()); ++mask) {
    std::uint32_t node = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (mask >> i & 1) node = child(node, f[i], true);
    }
    ++counts_[node];
  }
}

Instance sort_family(const Instance& inst) {
  Instance out = inst;
  std::size_t width = 0;
  for (const auto& s : inst.family) width = std::max(width, s.size());
  std::vector<std::size_t> order(inst.family.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::size_t> next(order.size());
  std::vector<std::size_t> bucket(static_cast<std::size_t>(inst.n) + 2);
  for (std::size_t position = width; position-- > 0;) {
    auto key = [&](std::size_t i) -> std::size_t {
      const auto& s = inst.family[i];
      return position < s.size() ? s[position] : 0;
    };
    std::fill(bucket.begin(), bucket.end(), 0);
    for (auto i : order) ++bucket[key(i) + 1];
    for (std::size_t b = 1; b < bucket.size(); ++b) bucket[b] += bucket[b - 1];
    for (auto i : order) next[bucket[key(i)]++] = i;
    order.swap(next);
  }
  for (std::size_t i = 0; i < order.size(); ++i) out.family[i] = inst.family[order[i]];
  return out;
}

namespace {

void audit_stored(const Family& stored, const std::vector<std::uint64_t>& thresholds, std::uint32_t d,
                  std::size_t step) {
  if (stored.size() > thresholds[0]) {
    throw std::logic_error("stored family exceeds its size bound at step " + std::to_string(step));
  }
  std::map<ElementSet, std::uint64_t> supersets;
  for (const auto& set : stored) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << set.size()); ++mask) {
      ElementSet core;
      for (std::size_t i = 0; i < set.size(); ++i) {
        if (mask >> i & 1) core.push_back(set[i]);
      }
      ++supersets[core];
    }
  }
  for (const auto& [core, count] : supersets) {
    if (core.size() < d && count > thresholds[core.size()]) {
      throw std::logic_error("superset bound violated at step " + std::to_string(step));
    }
  }
}

// True when some C ⊆ F, taken by increasing size then lexicographically,
// already has at least thresholds[|C|] stored supersets.
bool saturated(SupersetTrie& trie, const ElementSet& f, const std::vector<std::uint64_t>& thresholds) {
  std::vector<std::size_t> pick;
  ElementSet core;
  for (std::size_t size = 0; size <= f.size(); ++size) {
    pick.resize(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      core.clear();
      for (auto i : pick) core.push_back(f[i]);
      if (trie.query(core) >= thresholds[size]) return true;
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == f.size() - size + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return false;
}

LinearResult run_linear(const Instance& inst, ThresholdBase base, const LinearOptions& options) {
  const Instance ordered = options.sort ? sort_family(inst) : inst;
  std::vector<std::uint64_t> thresholds;
  for (std::uint32_t size = 0; size <= inst.d; ++size) thresholds.push_back(saturating_pow(base.value, inst.d - size));

  stream::FamilyTape tape(ordered);
  SupersetTrie trie;
  Family stored;
  ElementSet f;
  for (std::size_t t = 0; t < tape.size(); ++t) {
    tape.read(t, f);
    if (!saturated(trie, f, thresholds)) {
      trie.increment(f);
      stored.push_back(f);
    }
    if (options.audit) audit_stored(stored, thresholds, inst.d, t);
    if (options.on_step) options.on_step(t, stored);
  }

  LinearResult result;
  result.tape_reads = tape.reads();
  result.trie_visits = trie.node_visits();
  auto relabeled = relabel_by_first_occurrence(stored);
  result.kernel = inst;
  result.kernel.family = std::move(relabeled.family);
  result.original_ids = std::move(relabeled.original_ids);
  result.kernel.n = std::max<Element>(1, static_cast<Element>(result.original_ids.size()));
  return result;
}

}  // namespace

LinearResult kernelize_hs_linear(const Instance& inst, const LinearOptions& options) {
  return run_linear(inst, ThresholdBase::hitting_set(inst.k), options);
}

LinearResult kernelize_sp_linear(const Instance& inst, const LinearOptions& options) {
  if (inst.k == 0) {
    LinearResult result;
    result.kernel = inst;
    for (Element e = 1; e <= inst.n; ++e) result.original_ids.push_back(e);
    return result;
  }
  return run_linear(inst, ThresholdBase::set_packing(inst.d, inst.k), options);
}

}  // namespace kf
