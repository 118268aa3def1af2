#include "kernelforge/patterns.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace kf {

Pattern builtin_pattern(std::string_view name) {
  if (name == "k3") return {"k3", 3, {{1, 2}, {1, 3}, {2, 3}}};
  if (name == "p3") return {"p3", 3, {{1, 2}, {2, 3}}};
  throw std::invalid_argument("unknown pattern '" + std::string(name) + "' (built-ins: k3, p3)");
}

PatternSet parse_patterns(std::string_view text) {
  PatternSet patterns;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string format;
      long long v = 0;
      if (!(fields >> format >> v) || format != "pat" || v < 1) throw InputError(number, "expected 'p pat <v>'");
      patterns.push_back({"pattern" + std::to_string(patterns.size() + 1), static_cast<Element>(v), {}});
    } else if (tag == "e") {
      if (patterns.empty()) throw InputError(number, "edge before 'p pat' header");
      long long a = 0;
      long long b = 0;
      if (!(fields >> a >> b)) throw InputError(number, "malformed edge line");
      Pattern& p = patterns.back();
      if (a < 1 || b < 1 || a > p.v || b > p.v) throw InputError(number, "pattern vertex out of range");
      if (a == b) throw InputError(number, "self-loop in pattern");
      Edge e{static_cast<Element>(std::min(a, b)), static_cast<Element>(std::max(a, b))};
      if (std::find(p.edges.begin(), p.edges.end(), e) != p.edges.end()) {
        throw InputError(number, "duplicate pattern edge");
      }
      p.edges.push_back(e);
    } else {
      throw InputError(number, "unexpected line '" + line + "'");
    }
  }
  if (patterns.empty()) throw InputError(0, "no pattern in input");
  return patterns;
}

PatternSet read_pattern_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(0, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_patterns(buffer.str());
}

PatternSet resolve_patterns(std::string_view spec) {
  if (!spec.empty() && spec.front() == '@') return read_pattern_file(std::string(spec.substr(1)));
  return {builtin_pattern(spec)};
}

std::uint32_t max_pattern_size(const PatternSet& patterns) {
  std::uint32_t d = 0;
  for (const auto& p : patterns) d = std::max<std::uint32_t>(d, p.v);
  return d;
}

Adjacency::Adjacency(const GraphInstance& g) : neighbours_(g.n + 1) {
  for (const auto& e : g.edges) {
    neighbours_[e.u].push_back(e.v);
    neighbours_[e.v].push_back(e.u);
  }
  for (auto& list : neighbours_) std::sort(list.begin(), list.end());
}

bool Adjacency::adjacent(Element u, Element v) const {
  if (u >= neighbours_.size()) return false;
  const auto& list = neighbours_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

namespace {

// Pattern vertex i+1 is mapped to s[image[i]].
bool edges_embed(const Adjacency& g, std::span<const Element> s, const Pattern& p,
                 const std::vector<std::size_t>& image) {
  return std::all_of(p.edges.begin(), p.edges.end(),
                     [&](const Edge& e) { return g.adjacent(s[image[e.u - 1]], s[image[e.v - 1]]); });
}

std::size_t induced_edge_count(const Adjacency& g, std::span<const Element> s) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) count += g.adjacent(s[i], s[j]);
  }
  return count;
}

template <typename Accept>
bool any_bijection(std::size_t size, Accept accept) {
  std::vector<std::size_t> image(size);
  std::iota(image.begin(), image.end(), 0);
  do {
    if (accept(image)) return true;
  } while (std::next_permutation(image.begin(), image.end()));
  return false;
}

}  // namespace

bool induced_match(const Adjacency& g, std::span<const Element> s, const PatternSet& patterns) {
  const std::size_t edges = induced_edge_count(g, s);
  for (const auto& p : patterns) {
    if (p.v != s.size() || p.edges.size() != edges) continue;
    // Equal edge counts: an embedding of the pattern edges is an isomorphism.
    if (any_bijection(s.size(), [&](const auto& image) { return edges_embed(g, s, p, image); })) return true;
  }
  return false;
}

bool induced_match(const GraphInstance& g, std::span<const Element> s, const PatternSet& patterns) {
  return induced_match(Adjacency(g), s, patterns);
}

bool spanning_match(const Adjacency& g, std::span<const Element> s, const Pattern& pattern) {
  if (pattern.v != s.size()) return false;
  return any_bijection(s.size(), [&](const auto& image) { return edges_embed(g, s, pattern, image); });
}

}  // namespace kf
