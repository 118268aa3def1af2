#include "kernelforge/core_model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace kf {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

template <typename T>
T parse_number(std::string_view token, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw InputError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

bool is_comment(const std::vector<std::string_view>& tokens) {
  return !tokens.empty() && tokens.front().front() == 'c';
}

Element parse_element(std::string_view token, Element n, std::size_t line) {
  auto e = parse_number<std::uint64_t>(token, line, "element id");
  if (e < 1 || e > n) {
    throw InputError(line, "element id " + std::string(token) + " out of range 1.." + std::to_string(n));
  }
  return static_cast<Element>(e);
}

Instance parse_set_body(std::istream& in, std::size_t& line_no, const std::vector<std::string_view>& header) {
  if (header.size() != 6) throw InputError(line_no, "malformed header: expected 'p hs|sp <d> <n> <m> <k>'");
  Instance inst;
  inst.kind = header[1] == "hs" ? ProblemKind::hitting_set : ProblemKind::set_packing;
  inst.d = parse_number<std::uint32_t>(header[2], line_no, "d");
  inst.n = parse_number<Element>(header[3], line_no, "n");
  auto m = parse_number<std::size_t>(header[4], line_no, "m");
  inst.k = parse_number<std::uint64_t>(header[5], line_no, "k");
  if (inst.d < 1) throw InputError(line_no, "d must be positive");
  if (inst.n < 1) throw InputError(line_no, "n must be positive");
  inst.family.reserve(m);

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (is_comment(tokens)) continue;
    if (inst.family.size() == m) {
      if (tokens.empty()) continue;
      throw InputError(line_no, "unexpected line after " + std::to_string(m) + " sets");
    }
    if (tokens.empty()) throw InputError(line_no, "empty set");
    if (tokens.size() > inst.d) {
      throw InputError(line_no, "set size " + std::to_string(tokens.size()) + " exceeds d=" + std::to_string(inst.d));
    }
    ElementSet set;
    set.reserve(tokens.size());
    for (auto tok : tokens) set.push_back(parse_element(tok, inst.n, line_no));
    std::sort(set.begin(), set.end());
    if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
      throw InputError(line_no, "duplicate element in set");
    }
    inst.family.push_back(std::move(set));
  }
  if (inst.family.size() != m) {
    throw InputError(line_no, "expected " + std::to_string(m) + " sets, found " + std::to_string(inst.family.size()));
  }
  return inst;
}

GraphInstance parse_graph_body(std::istream& in, std::size_t& line_no, const std::vector<std::string_view>& header) {
  if (header.size() != 5) throw InputError(line_no, "malformed header: expected 'p gr <n> <m> <k>'");
  GraphInstance g;
  g.n = parse_number<Element>(header[2], line_no, "n");
  auto m = parse_number<std::size_t>(header[3], line_no, "m");
  g.k = parse_number<std::uint64_t>(header[4], line_no, "k");
  if (g.n < 1) throw InputError(line_no, "n must be positive");
  g.edges.reserve(m);

  std::set<Edge> seen;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty() || is_comment(tokens)) continue;
    if (g.edges.size() == m) throw InputError(line_no, "unexpected line after " + std::to_string(m) + " edges");
    if (tokens.size() != 3 || tokens[0] != "e") throw InputError(line_no, "malformed edge line, expected 'e <u> <v>'");
    Element u = parse_element(tokens[1], g.n, line_no);
    Element v = parse_element(tokens[2], g.n, line_no);
    if (u == v) throw InputError(line_no, "self-loop at vertex " + std::to_string(u));
    Edge e{std::min(u, v), std::max(u, v)};
    if (!seen.insert(e).second) throw InputError(line_no, "duplicate edge");
    g.edges.push_back(e);
  }
  if (g.edges.size() != m) {
    throw InputError(line_no, "expected " + std::to_string(m) + " edges, found " + std::to_string(g.edges.size()));
  }
  return g;
}

}  // namespace

InputError::InputError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

std::string_view to_string(ProblemKind kind) {
  return kind == ProblemKind::hitting_set ? "hs" : "sp";
}

AnyInstance parse_instance(std::istream& in) {
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty() || is_comment(tokens)) continue;
    if (tokens[0] != "p" || tokens.size() < 2) throw InputError(line_no, "malformed header");
    if (tokens[1] == "hs" || tokens[1] == "sp") return parse_set_body(in, line_no, tokens);
    if (tokens[1] == "gr") return parse_graph_body(in, line_no, tokens);
    throw InputError(line_no, "unknown problem '" + std::string(tokens[1]) + "'");
  }
  throw InputError(line_no, "missing header");
}

AnyInstance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

AnyInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(0, "cannot open '" + path + "'");
  return parse_instance(in);
}

Instance parse_set_instance(std::string_view text) {
  auto any = parse_instance(text);
  if (auto* inst = std::get_if<Instance>(&any)) return std::move(*inst);
  throw InputError(0, "expected a set-family instance");
}

GraphInstance parse_graph_instance(std::string_view text) {
  auto any = parse_instance(text);
  if (auto* g = std::get_if<GraphInstance>(&any)) return std::move(*g);
  throw InputError(0, "expected a graph instance");
}

std::string serialize_instance(const Instance& inst) {
  std::string out = "p " + std::string(to_string(inst.kind)) + " " + std::to_string(inst.d) + " " +
                    std::to_string(inst.n) + " " + std::to_string(inst.family.size()) + " " +
                    std::to_string(inst.k) + "\n";
  for (const auto& set : inst.family) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(set[i]);
    }
    out += '\n';
  }
  return out;
}

std::string serialize_instance(const GraphInstance& g) {
  std::string out = "p gr " + std::to_string(g.n) + " " + std::to_string(g.edges.size()) + " " +
                    std::to_string(g.k) + "\n";
  for (const auto& e : g.edges) out += "e " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

std::string serialize_instance(const AnyInstance& inst) {
  return std::visit([](const auto& x) { return serialize_instance(x); }, inst);
}

void write_instance_file(const std::string& path, const AnyInstance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(0, "cannot write '" + path + "'");
  out << serialize_instance(inst);
}

void validate(const Instance& inst) {
  if (inst.d < 1) throw InputError(0, "d must be positive");
  if (inst.n < 1) throw InputError(0, "n must be positive");
  for (std::size_t i = 0; i < inst.family.size(); ++i) {
    const auto& set = inst.family[i];
    std::string where = "set " + std::to_string(i) + ": ";
    if (set.empty()) throw InputError(0, where + "empty set");
    if (set.size() > inst.d) throw InputError(0, where + "set size exceeds d");
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (set[j] < 1 || set[j] > inst.n) throw InputError(0, where + "element id out of range");
      if (j && set[j - 1] >= set[j]) throw InputError(0, where + "elements not strictly increasing");
    }
  }
}

void validate(const GraphInstance& g) {
  if (g.n < 1) throw InputError(0, "n must be positive");
  std::set<Edge> seen;
  for (const auto& e : g.edges) {
    if (e.u == e.v) throw InputError(0, "self-loop");
    if (e.u > e.v) throw InputError(0, "edge not canonical");
    if (e.u < 1 || e.v > g.n) throw InputError(0, "vertex out of range");
    if (!seen.insert(e).second) throw InputError(0, "duplicate edge");
  }
}

ElementSet canonical_set(std::span<const Element> elements) {
  ElementSet set(elements.begin(), elements.end());
  std::sort(set.begin(), set.end());
  if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
    throw InputError(0, "duplicate element in set");
  }
  return set;
}

Relabeling relabel_by_first_occurrence(const Family& family) {
  Relabeling result;
  std::unordered_map<Element, Element> fresh;
  result.family.reserve(family.size());
  for (const auto& set : family) {
    ElementSet renamed;
    renamed.reserve(set.size());
    for (Element e : set) {
      auto [it, inserted] = fresh.try_emplace(e, static_cast<Element>(fresh.size() + 1));
      if (inserted) result.original_ids.push_back(e);
      renamed.push_back(it->second);
    }
    std::sort(renamed.begin(), renamed.end());
    result.family.push_back(std::move(renamed));
  }
  return result;
}

Instance canonical_relabel(const Instance& inst) {
  auto relabeled = relabel_by_first_occurrence(inst.family);
  Instance out = inst;
  out.family = std::move(relabeled.family);
  out.n = std::max<Element>(1, static_cast<Element>(relabeled.original_ids.size()));
  return out;
}

GraphRelabeling relabel_by_first_occurrence(const GraphInstance& g) {
  GraphRelabeling result;
  std::unordered_map<Element, Element> fresh;
  auto rename = [&](Element v) {
    auto [it, inserted] = fresh.try_emplace(v, static_cast<Element>(fresh.size() + 1));
    if (inserted) result.original_ids.push_back(v);
    return it->second;
  };
  result.graph.k = g.k;
  for (const auto& e : g.edges) {
    Element a = rename(e.u);
    Element b = rename(e.v);
    result.graph.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  result.graph.n = std::max<Element>(1, static_cast<Element>(result.original_ids.size()));
  return result;
}

GraphInstance canonical_relabel(const GraphInstance& g) { return relabel_by_first_occurrence(g).graph; }

Instance canonical_no_instance(ProblemKind kind, std::uint32_t d) {
  Instance inst;
  inst.kind = kind;
  inst.d = d;
  inst.n = 1;
  if (kind == ProblemKind::hitting_set) {
    inst.k = 0;
    inst.family = {{1}};
  } else {
    inst.k = 1;
  }
  return inst;
}

GraphInstance canonical_no_instance_eds() { return GraphInstance{2, {{1, 2}}, 0}; }

bool is_subset(std::span<const Element> small, std::span<const Element> big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool contains(std::span<const Element> set, Element e) {
  return std::binary_search(set.begin(), set.end(), e);
}

bool intersects(std::span<const Element> a, std::span<const Element> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

}  // namespace kf
