#include "kernelforge/generate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace kf {

// splitmix64; fully specified, so streams are identical across platforms.
SeededRng::SeededRng(std::uint64_t seed) : state_(seed) {}

std::uint64_t SeededRng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SeededRng::below(std::uint64_t bound) {
  // Rejection sampling removes modulo bias.
  std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

namespace {

// Number of non-empty subsets of size <= d from n elements, saturating.
std::uint64_t count_small_subsets(std::uint64_t n, std::uint32_t d) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;
  for (std::uint64_t s = 1; s <= d && s <= n; ++s) {
    // binom(n, s) = binom(n, s-1) * (n - s + 1) / s
    unsigned __int128 next = static_cast<unsigned __int128>(binom) * (n - s + 1) / s;
    if (next > UINT64_MAX) return UINT64_MAX;
    binom = static_cast<std::uint64_t>(next);
    if (total > UINT64_MAX - binom) return UINT64_MAX;
    total += binom;
  }
  return total;
}

ElementSet draw_set(SeededRng& rng, std::uint32_t d, Element n) {
  auto size = static_cast<std::uint32_t>(rng.between(1, d));
  // Floyd's sampling of `size` distinct values from 1..n.
  std::set<Element> chosen;
  for (std::uint64_t j = n - size + 1; j <= n; ++j) {
    auto t = static_cast<Element>(rng.between(1, j));
    if (!chosen.insert(t).second) chosen.insert(static_cast<Element>(j));
  }
  return ElementSet(chosen.begin(), chosen.end());
}

}  // namespace

Instance gen_random_sets(ProblemKind kind, const SetGenParams& params, std::uint64_t seed) {
  if (params.d < 1 || params.n < 1 || params.d > params.n) {
    throw std::invalid_argument("gen: need 1 <= d <= n");
  }
  if (params.dedup && params.m > count_small_subsets(params.n, params.d)) {
    throw std::invalid_argument("gen: only " + std::to_string(count_small_subsets(params.n, params.d)) +
                                " distinct sets exist");
  }
  SeededRng rng(seed);
  Instance inst;
  inst.kind = kind;
  inst.d = params.d;
  inst.n = params.n;
  inst.k = params.k;
  inst.family.reserve(params.m);
  std::set<ElementSet> seen;
  while (inst.family.size() < params.m) {
    auto set = draw_set(rng, params.d, params.n);
    if (params.dedup && !seen.insert(set).second) continue;
    inst.family.push_back(std::move(set));
  }
  return inst;
}

GraphInstance gen_random_graph(Element n, std::size_t m, std::uint64_t k, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen: n must be positive");
  std::uint64_t possible = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > possible) {
    throw std::invalid_argument("gen: only " + std::to_string(possible) + " possible edges");
  }
  SeededRng rng(seed);
  GraphInstance g;
  g.n = n;
  g.k = k;
  std::set<Edge> seen;
  while (g.edges.size() < m) {
    auto u = static_cast<Element>(rng.between(1, n));
    auto v = static_cast<Element>(rng.between(1, n));
    if (u == v) continue;
    Edge e{std::min(u, v), std::max(u, v)};
    if (seen.insert(e).second) g.edges.push_back(e);
  }
  return g;
}

}  // namespace kf
