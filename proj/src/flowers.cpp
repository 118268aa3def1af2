#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "kernelforge/oracles.hpp"

namespace kf {

bool is_flower(std::span<const ElementSet> family, std::span<const Element> core, std::uint64_t l) {
  auto petals = restriction(family, core);
  if (std::any_of(petals.begin(), petals.end(), [](const ElementSet& s) { return s.empty(); })) return false;
  if (l == 0) return true;
  return min_hitting_set_size(petals, l - 1) >= l;
}

bool check_counting_conditions(std::span<const ElementSet> family, std::span<const Element> core,
                               std::uint64_t l, std::uint32_t d) {
  if (core.size() >= d) throw std::invalid_argument("counting conditions need |C| < d");
  std::uint64_t supersets = 0;
  std::map<ElementSet, std::uint64_t> larger;  // C' ⊋ C -> number of supersets
  for (const auto& set : family) {
    if (!is_subset(core, set)) continue;
    ++supersets;
    ElementSet rest;
    std::set_difference(set.begin(), set.end(), core.begin(), core.end(), std::back_inserter(rest));
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << rest.size()); ++mask) {
      ElementSet bigger(core.begin(), core.end());
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (mask >> i & 1) bigger.push_back(rest[i]);
      }
      std::sort(bigger.begin(), bigger.end());
      ++larger[bigger];
    }
  }
  if (supersets < saturating_pow(l, d - core.size())) return false;
  return std::all_of(larger.begin(), larger.end(), [&](const auto& entry) {
    return entry.first.size() > d || entry.second <= saturating_pow(l, d - entry.first.size());
  });
}

namespace {

struct Tracked {
  std::size_t index;  // first index of this distinct set in the input family
  ElementSet rest;    // set minus the core accumulated so far
};

std::vector<Tracked> distinct_sets(std::span<const ElementSet> family) {
  std::map<ElementSet, std::size_t> first;
  std::vector<Tracked> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (first.emplace(family[i], i).second) out.push_back({i, family[i]});
  }
  return out;
}

// Smallest element whose occurrence count satisfies `qualifies`.
template <typename Pred>
std::optional<Element> smallest_qualifying(const std::vector<Tracked>& sets, Pred qualifies) {
  std::map<Element, std::uint64_t> counts;
  for (const auto& t : sets) {
    for (Element e : t.rest) ++counts[e];
  }
  for (const auto& [e, c] : counts) {
    if (qualifies(c)) return e;
  }
  return std::nullopt;
}

std::vector<Tracked> descend(const std::vector<Tracked>& sets, Element x) {
  std::vector<Tracked> out;
  for (const auto& t : sets) {
    if (!contains(t.rest, x)) continue;
    Tracked next{t.index, {}};
    std::copy_if(t.rest.begin(), t.rest.end(), std::back_inserter(next.rest), [x](Element e) { return e != x; });
    out.push_back(std::move(next));
  }
  return out;
}

std::uint64_t factorial(std::uint64_t d) {
  std::uint64_t f = 1;
  for (std::uint64_t i = 2; i <= d; ++i) f = f > UINT64_MAX / i ? UINT64_MAX : f * i;
  return f;
}

}  // namespace

FlowerWitness find_flower(std::span<const ElementSet> family, std::uint64_t l, std::uint32_t d) {
  for (const auto& s : family) {
    if (s.size() > d) throw std::invalid_argument("set larger than d");
  }
  auto sets = distinct_sets(family);
  if (l == 0 || sets.size() <= saturating_pow(l - 1, d)) throw std::invalid_argument("family too small");

  CoreSet core;
  for (std::uint32_t depth = d; depth > 0; --depth) {
    std::uint64_t bound = saturating_pow(l - 1, depth - 1);
    auto x = smallest_qualifying(sets, [bound](std::uint64_t c) { return c > bound; });
    if (!x) break;
    core.push_back(*x);
    sets = descend(sets, *x);
  }
  std::sort(core.begin(), core.end());

  FlowerWitness witness;
  witness.core = core;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (is_subset(core, family[i])) witness.member_indices.push_back(i);
  }
  auto petals = restriction(family, core);
  witness.blocking_number = min_hitting_set_size(petals, petals.size());
  return witness;
}

Sunflower find_sunflower(std::span<const ElementSet> family, std::uint64_t l, std::uint32_t d) {
  for (const auto& s : family) {
    if (s.size() != d) throw std::invalid_argument("sunflower search needs a d-uniform family");
  }
  auto sets = distinct_sets(family);
  std::uint64_t bound = factorial(d);
  std::uint64_t power = saturating_pow(l == 0 ? 0 : l - 1, d);
  bound = power != 0 && bound > UINT64_MAX / power ? UINT64_MAX : bound * power;
  const bool guaranteed = l > 0 && sets.size() > bound;
  if (l == 0) throw std::invalid_argument("family too small for the sunflower bound");

  CoreSet core;
  for (std::uint32_t depth = d;; --depth) {
    // Greedy maximal pairwise-disjoint subfamily.
    std::vector<std::size_t> petals;
    ElementSet used;
    for (const auto& t : sets) {
      if (intersects(used, t.rest)) continue;
      petals.push_back(t.index);
      ElementSet merged;
      std::merge(used.begin(), used.end(), t.rest.begin(), t.rest.end(), std::back_inserter(merged));
      used = std::move(merged);
      if (petals.size() == l) break;
    }
    if (petals.size() >= l) {
      std::sort(core.begin(), core.end());
      return {core, petals};
    }
    // The < l disjoint sets cover at most depth*(l-1) elements, all of which
    // together hit every set, so some element is in > |sets|/(depth(l-1)) sets.
    std::uint64_t spread = static_cast<std::uint64_t>(depth) * (l - 1);
    auto total = static_cast<std::uint64_t>(sets.size());
    auto x = smallest_qualifying(sets, [&](std::uint64_t c) { return c * spread > total; });
    if (!x || depth == 1) {
      if (!guaranteed) throw std::invalid_argument("family too small for the sunflower bound");
      throw std::logic_error("sunflower recursion lost its size invariant");
    }
    core.push_back(*x);
    sets = descend(sets, *x);
  }
}

}  // namespace kf
