#pragma once

// Brute-force reference implementations used only by the tests. They share no
// code with the library beyond the data types.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "kernelforge/core_model.hpp"

namespace ref {

using kf::Edge;
using kf::Element;
using kf::ElementSet;
using kf::Family;
using kf::GraphInstance;

inline std::uint64_t power(std::uint64_t base, std::uint64_t exponent) {
  unsigned __int128 value = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    value *= base;
    if (value > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(value);
}

inline std::uint64_t mask_of(const ElementSet& set) {
  std::uint64_t mask = 0;
  for (Element e : set) mask |= std::uint64_t{1} << (e - 1);
  return mask;
}

inline std::vector<std::uint64_t> masks_of(const Family& family) {
  std::vector<std::uint64_t> masks;
  for (const auto& s : family) masks.push_back(mask_of(s));
  return masks;
}

inline bool hits_all(std::uint64_t s, const std::vector<std::uint64_t>& sets) {
  return std::all_of(sets.begin(), sets.end(), [s](std::uint64_t f) { return (f & s) != 0; });
}

// Calls fn(mask) for every subset of {1..n} with at most `size` elements.
inline void for_each_small_subset(unsigned n, unsigned size, const std::function<void(std::uint64_t)>& fn) {
  std::function<void(unsigned, unsigned, std::uint64_t)> rec = [&](unsigned next, unsigned left, std::uint64_t mask) {
    fn(mask);
    if (left == 0) return;
    for (unsigned e = next; e <= n; ++e) rec(e + 1, left - 1, mask | std::uint64_t{1} << (e - 1));
  };
  rec(1, size, 0);
}

// Smallest hitting set over {1..n}, or cap+1.
inline std::uint64_t min_hitting_set(const Family& family, unsigned n, std::uint64_t cap) {
  auto sets = masks_of(family);
  std::uint64_t best = cap + 1;
  for_each_small_subset(n, static_cast<unsigned>(std::min<std::uint64_t>(cap, n)), [&](std::uint64_t s) {
    if (hits_all(s, sets)) best = std::min<std::uint64_t>(best, std::popcount(s));
  });
  return best;
}

inline std::uint64_t max_packing(const Family& family, std::uint64_t cap) {
  auto sets = masks_of(family);
  std::uint64_t best = 0;
  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t used,
                                                                           std::uint64_t taken) {
    best = std::max(best, taken);
    if (best >= cap || i == sets.size()) return;
    if (taken + (sets.size() - i) <= best) return;
    if ((sets[i] & used) == 0) rec(i + 1, used | sets[i], taken + 1);
    rec(i + 1, used, taken);
  };
  rec(0, 0, 0);
  return std::min(best, cap);
}

// Kernel family with ids mapped back to the input.
inline Family unrelabel(const Family& kernel, const std::vector<Element>& original_ids) {
  Family out;
  for (const auto& set : kernel) {
    ElementSet back;
    for (Element e : set) back.push_back(original_ids.at(e - 1));
    std::sort(back.begin(), back.end());
    out.push_back(back);
  }
  return out;
}

inline bool is_subsequence(const Family& small, const Family& big) {
  std::size_t j = 0;
  for (const auto& s : big) {
    if (j < small.size() && small[j] == s) ++j;
  }
  return j == small.size();
}

// For every S over {1..n} with |S| <= k: S hits `a` iff S hits `b`.
inline bool same_small_hitting_sets(const Family& a, const Family& b, unsigned n, std::uint64_t k) {
  auto ma = masks_of(a);
  auto mb = masks_of(b);
  bool same = true;
  for_each_small_subset(n, static_cast<unsigned>(std::min<std::uint64_t>(k, n)), [&](std::uint64_t s) {
    if (hits_all(s, ma) != hits_all(s, mb)) same = false;
  });
  return same;
}

// Positions kept by layer l of the layered kernel, computed by materializing
// every layer from d downwards.
inline std::vector<std::size_t> layer_output(const Family& family, std::uint32_t d, std::uint64_t base,
                                             std::uint32_t l) {
  const std::size_t m = family.size();
  std::vector<bool> keep(m);
  std::set<ElementSet> seen;
  for (std::size_t t = 0; t < m; ++t) keep[t] = seen.insert(family[t]).second;
  auto masks = masks_of(family);
  for (std::uint32_t layer = d; layer-- > l;) {
    std::vector<bool> next(m, false);
    const std::uint64_t limit = power(base, d - layer);
    for (std::size_t t = 0; t < m; ++t) {
      if (!keep[t]) continue;
      bool ok = true;
      for (std::uint64_t c = masks[t];; c = (c - 1) & masks[t]) {
        if (static_cast<std::uint32_t>(std::popcount(c)) == layer) {
          std::uint64_t count = 0;
          for (std::size_t s = 0; s < t; ++s) count += keep[s] && (masks[s] & c) == c;
          if (count >= limit) ok = false;
        }
        if (c == 0) break;
      }
      next[t] = ok;
    }
    keep = next;
  }
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < m; ++t) {
    if (keep[t]) out.push_back(t);
  }
  return out;
}

inline Family pick(const Family& family, const std::vector<std::size_t>& positions) {
  Family out;
  for (auto t : positions) out.push_back(family[t]);
  return out;
}

// Linear kernel by a lexicographic std::stable_sort and a map of counts.
inline Family linear_kernel(Family family, std::uint32_t d, std::uint64_t base, bool sort = true) {
  if (sort) std::stable_sort(family.begin(), family.end());
  std::map<std::uint64_t, std::uint64_t> supersets;
  Family stored;
  for (const auto& f : family) {
    std::uint64_t mask = mask_of(f);
    bool skip = false;
    for (std::uint64_t c = mask;; c = (c - 1) & mask) {
      auto it = supersets.find(c);
      if (it != supersets.end() && it->second >= power(base, d - std::popcount(c))) skip = true;
      if (c == 0) break;
    }
    if (skip) continue;
    stored.push_back(f);
    for (std::uint64_t c = mask;; c = (c - 1) & mask) {
      ++supersets[c];
      if (c == 0) break;
    }
  }
  return stored;
}

inline std::vector<std::vector<bool>> adjacency(const GraphInstance& g) {
  std::vector<std::vector<bool>> adj(g.n + 1, std::vector<bool>(g.n + 1, false));
  for (const auto& e : g.edges) adj[e.u][e.v] = adj[e.v][e.u] = true;
  return adj;
}

inline std::vector<std::uint64_t> triangles(const GraphInstance& g) {
  auto adj = adjacency(g);
  std::vector<std::uint64_t> out;
  for (Element a = 1; a <= g.n; ++a) {
    for (Element b = a + 1; b <= g.n; ++b) {
      for (Element c = b + 1; c <= g.n; ++c) {
        if (adj[a][b] && adj[b][c] && adj[a][c]) out.push_back(mask_of({a, b, c}));
      }
    }
  }
  return out;
}

// Fewest vertices to delete so that no triangle remains, or cap+1.
inline std::uint64_t min_triangle_deletion(const GraphInstance& g, std::uint64_t cap) {
  auto tris = triangles(g);
  std::uint64_t best = cap + 1;
  for_each_small_subset(g.n, static_cast<unsigned>(std::min<std::uint64_t>(cap, g.n)), [&](std::uint64_t s) {
    if (hits_all(s, tris)) best = std::min<std::uint64_t>(best, std::popcount(s));
  });
  return best;
}

inline std::uint64_t max_triangle_packing(const GraphInstance& g, std::uint64_t cap) {
  Family tris;
  for (auto mask : triangles(g)) {
    ElementSet s;
    for (Element e = 1; e <= g.n; ++e) {
      if (mask >> (e - 1) & 1) s.push_back(e);
    }
    tris.push_back(s);
  }
  return max_packing(tris, cap);
}

// Smallest edge dominating set, or cap+1.
inline std::uint64_t min_edge_dominating_set(const GraphInstance& g, std::uint64_t cap) {
  const std::size_t m = g.edges.size();
  if (m == 0) return 0;
  std::vector<std::uint64_t> ends;
  for (const auto& e : g.edges) ends.push_back(mask_of({e.u, e.v}));
  std::uint64_t best = cap + 1;
  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t covered,
                                                                           std::uint64_t used) {
    if (used >= best) return;
    if (hits_all(covered, ends)) {
      best = used;
      return;
    }
    if (used == cap || i == m) return;
    rec(i + 1, covered | ends[i], used + 1);
    rec(i + 1, covered, used);
  };
  rec(0, 0, 0);
  return best;
}

}  // namespace ref
