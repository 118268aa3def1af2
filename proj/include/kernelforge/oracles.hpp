#pragma once

// Exact brute-force solvers and (sun)flower combinatorics. These are the
// ground truth every kernel is checked against, so they stay deliberately
// simple: exhaustive branching, truncated at a caller-supplied cap.

#include <cstdint>
#include <span>
#include <vector>

#include "kernelforge/core_model.hpp"

namespace kf {

// [F \ C for F in family if F ⊇ C], order preserved. Contains {} when C ∈ family.
Family restriction(std::span<const ElementSet> family, std::span<const Element> core);

// Minimum hitting set size, truncated: returns cap+1 when no hitting set of
// size <= cap exists, including when the family contains the empty set.
std::uint64_t min_hitting_set_size(std::span<const ElementSet> family, std::uint64_t cap);

// Largest number of pairwise disjoint sets, truncated at cap.
std::uint64_t max_packing_size(std::span<const ElementSet> family, std::uint64_t cap);

// Minimum edge dominating set size, truncated at cap+1.
std::uint64_t min_eds_size(const GraphInstance& g, std::uint64_t cap);

// True iff C occurs as a member of the family.
bool contains_set(std::span<const ElementSet> family, std::span<const Element> core);

// Every blocking set of the restriction onto C has at least l elements.
// False when C itself is a member (the restriction contains {} and has no
// blocking set at all); callers test that case with contains_set.
bool is_flower(std::span<const ElementSet> family, std::span<const Element> core, std::uint64_t l);

// Counting conditions that certify "l-flower with core C, or C ∈ F":
//  (1) at least l^(d-|C|) supersets of C, and
//  (2) at most l^(d-|C'|) supersets of every C' ⊋ C with |C'| <= d.
bool check_counting_conditions(std::span<const ElementSet> family, std::span<const Element> core,
                               std::uint64_t l, std::uint32_t d);

struct FlowerWitness {
  CoreSet core;
  std::vector<std::size_t> member_indices;  // all family indices of supersets of core
  std::uint64_t blocking_number = 0;        // min hitting set size of the restriction
};

// Descends into F_x for the smallest x with |F_x| > (l-1)^(d'-1) while one
// exists. Duplicate sets are collapsed first; throws std::invalid_argument
// ("family too small") unless the distinct sets number more than (l-1)^d.
FlowerWitness find_flower(std::span<const ElementSet> family, std::uint64_t l, std::uint32_t d);

struct Sunflower {
  CoreSet core;
  std::vector<std::size_t> member_indices;  // exactly l indices
};

// Requires a d-uniform family. Always succeeds with more than d!(l-1)^d
// distinct sets; smaller families are searched the same way, and
// std::invalid_argument is thrown when that search finds no l petals.
Sunflower find_sunflower(std::span<const ElementSet> family, std::uint64_t l, std::uint32_t d);

// a^b saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exponent);

}  // namespace kf
