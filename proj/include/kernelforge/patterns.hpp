#pragma once

// Small pattern graphs and the occurrence tests used by the implicit graph
// kernels. Pattern file format:
//
//     c comment
//     p pat <v>
//     e <i> <j>
//     ...
//
// Several `p pat` blocks in one file form a pattern set.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kernelforge/core_model.hpp"

namespace kf {

struct Pattern {
  std::string name;
  Element v = 1;            // vertices 1..v
  std::vector<Edge> edges;  // canonical, u < v

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

using PatternSet = std::vector<Pattern>;

// "k3" (triangle) or "p3" (path on three vertices).
Pattern builtin_pattern(std::string_view name);

PatternSet parse_patterns(std::string_view text);
PatternSet read_pattern_file(const std::string& path);

// Resolves a --pattern argument: a built-in name, or @path for a file.
PatternSet resolve_patterns(std::string_view spec);

// Largest pattern order.
std::uint32_t max_pattern_size(const PatternSet& patterns);

// Sorted neighbour lists of a host graph.
class Adjacency {
 public:
  explicit Adjacency(const GraphInstance& g);

  Element vertices() const { return static_cast<Element>(neighbours_.size() - 1); }
  bool adjacent(Element u, Element v) const;

 private:
  std::vector<std::vector<Element>> neighbours_;
};

// G[S] is isomorphic to some pattern.
bool induced_match(const Adjacency& g, std::span<const Element> s, const PatternSet& patterns);
bool induced_match(const GraphInstance& g, std::span<const Element> s, const PatternSet& patterns);

// |S| = |V(H)| and G[S] contains H as a spanning subgraph.
bool spanning_match(const Adjacency& g, std::span<const Element> s, const Pattern& pattern);

}  // namespace kf
