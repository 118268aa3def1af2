#include "kernelforge/oracles.hpp"

#include <algorithm>

namespace kf {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return UINT64_MAX;
    result *= base;
  }
  return result;
}

Family restriction(std::span<const ElementSet> family, std::span<const Element> core) {
  Family out;
  for (const auto& set : family) {
    if (!is_subset(core, set)) continue;
    ElementSet rest;
    std::set_difference(set.begin(), set.end(), core.begin(), core.end(), std::back_inserter(rest));
    out.push_back(std::move(rest));
  }
  return out;
}

bool contains_set(std::span<const ElementSet> family, std::span<const Element> core) {
  return std::any_of(family.begin(), family.end(),
                     [&](const ElementSet& s) { return std::equal(s.begin(), s.end(), core.begin(), core.end()); });
}

namespace {

bool hits_within(std::span<const ElementSet> family, ElementSet& chosen, std::uint64_t budget) {
  auto unhit = std::find_if(family.begin(), family.end(), [&](const ElementSet& s) {
    return std::none_of(s.begin(), s.end(), [&](Element e) {
      return std::find(chosen.begin(), chosen.end(), e) != chosen.end();
    });
  });
  if (unhit == family.end()) return true;
  if (budget == 0) return false;
  for (Element e : *unhit) {
    chosen.push_back(e);
    bool ok = hits_within(family, chosen, budget - 1);
    chosen.pop_back();
    if (ok) return true;
  }
  return false;
}

bool packs_within(std::span<const ElementSet> family, std::size_t start, ElementSet& used, std::uint64_t need) {
  if (need == 0) return true;
  for (std::size_t i = start; i < family.size(); ++i) {
    const auto& s = family[i];
    if (std::any_of(s.begin(), s.end(), [&](Element e) { return contains(used, e); })) continue;
    ElementSet merged;
    std::merge(used.begin(), used.end(), s.begin(), s.end(), std::back_inserter(merged));
    std::swap(used, merged);
    bool ok = packs_within(family, i + 1, used, need - 1);
    std::swap(used, merged);
    if (ok) return true;
  }
  return false;
}

bool dominates(const GraphInstance& g, std::span<const std::size_t> chosen) {
  std::vector<bool> covered(g.n + 1, false);
  for (auto i : chosen) covered[g.edges[i].u] = covered[g.edges[i].v] = true;
  return std::all_of(g.edges.begin(), g.edges.end(), [&](const Edge& e) { return covered[e.u] || covered[e.v]; });
}

bool dominates_within(const GraphInstance& g, std::size_t start, std::vector<std::size_t>& chosen, std::uint64_t need) {
  if (need == 0) return dominates(g, chosen);
  for (std::size_t i = start; i < g.edges.size(); ++i) {
    chosen.push_back(i);
    bool ok = dominates_within(g, i + 1, chosen, need - 1);
    chosen.pop_back();
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::uint64_t min_hitting_set_size(std::span<const ElementSet> family, std::uint64_t cap) {
  if (std::any_of(family.begin(), family.end(), [](const ElementSet& s) { return s.empty(); })) return cap + 1;
  ElementSet chosen;
  for (std::uint64_t size = 0; size <= cap; ++size) {
    if (hits_within(family, chosen, size)) return size;
  }
  return cap + 1;
}

std::uint64_t max_packing_size(std::span<const ElementSet> family, std::uint64_t cap) {
  std::uint64_t best = 0;
  ElementSet used;
  while (best < cap && packs_within(family, 0, used, best + 1)) ++best;
  return best;
}

std::uint64_t min_eds_size(const GraphInstance& g, std::uint64_t cap) {
  std::vector<std::size_t> chosen;
  for (std::uint64_t size = 0; size <= cap && size <= g.edges.size(); ++size) {
    if (dominates_within(g, 0, chosen, size)) return size;
  }
  return cap + 1;
}

}  // namespace kf
