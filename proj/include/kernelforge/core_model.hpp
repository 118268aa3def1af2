#pragma once

// Set-family and graph instances, the line-oriented text format, and
// first-occurrence relabeling.
//
// Elements and vertices are 1-based. Family order is significant: every
// streaming kernel is defined relative to the order sets appear in.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kf {

using Element = std::uint32_t;
using ElementSet = std::vector<Element>;  // strictly increasing
using Family = std::vector<ElementSet>;
using CoreSet = ElementSet;

enum class ProblemKind { hitting_set, set_packing };

std::string_view to_string(ProblemKind kind);

struct Instance {
  ProblemKind kind = ProblemKind::hitting_set;
  std::uint32_t d = 1;
  Element n = 1;
  std::uint64_t k = 0;
  Family family;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Edge {
  Element u = 0;
  Element v = 0;  // u < v once canonical

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct GraphInstance {
  Element n = 1;
  std::vector<Edge> edges;
  std::uint64_t k = 0;

  friend bool operator==(const GraphInstance&, const GraphInstance&) = default;
};

using AnyInstance = std::variant<Instance, GraphInstance>;

// Input rejected by the parser or by validation. `line()` is 0 when the
// problem is not tied to a specific line.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

AnyInstance parse_instance(std::istream& in);
AnyInstance parse_instance(std::string_view text);
AnyInstance read_instance_file(const std::string& path);

// Convenience wrappers that also reject the other instance kind.
Instance parse_set_instance(std::string_view text);
GraphInstance parse_graph_instance(std::string_view text);

std::string serialize_instance(const Instance& inst);
std::string serialize_instance(const GraphInstance& g);
std::string serialize_instance(const AnyInstance& inst);
void write_instance_file(const std::string& path, const AnyInstance& inst);

// Throws InputError on any invariant violation.
void validate(const Instance& inst);
void validate(const GraphInstance& g);

// Sort each set in place; throws on duplicates inside a set.
ElementSet canonical_set(std::span<const Element> elements);

// Result of renaming elements to 1..n' by first occurrence.
// original_ids[i] is the old id of new element i+1.
struct Relabeling {
  Family family;
  std::vector<Element> original_ids;
};

Relabeling relabel_by_first_occurrence(const Family& family);

// n' is the number of distinct elements that occur, floored at 1 so the
// header stays well-formed for an empty family.
Instance canonical_relabel(const Instance& inst);

struct GraphRelabeling {
  GraphInstance graph;
  std::vector<Element> original_ids;
};

GraphRelabeling relabel_by_first_occurrence(const GraphInstance& g);
GraphInstance canonical_relabel(const GraphInstance& g);

// Fixed minimal infeasible instances emitted when a kernel proves "no".
Instance canonical_no_instance(ProblemKind kind, std::uint32_t d);
GraphInstance canonical_no_instance_eds();

bool is_subset(std::span<const Element> small, std::span<const Element> big);
bool contains(std::span<const Element> set, Element e);
bool intersects(std::span<const Element> a, std::span<const Element> b);

}  // namespace kf
