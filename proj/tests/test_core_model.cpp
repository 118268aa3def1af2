#include <sstream>
#include <string>

#include "doctest.h"
#include "kernelforge/core_model.hpp"
#include "kernelforge/generate.hpp"
#include "reference.hpp"

using namespace kf;

namespace {

std::string parse_error(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse set instance") {
  auto inst = parse_set_instance("p hs 2 4 3 1\n1 2\n1 3\n1 4\n");
  CHECK(inst.kind == ProblemKind::hitting_set);
  CHECK(inst.d == 2);
  CHECK(inst.n == 4);
  CHECK(inst.k == 1);
  CHECK(inst.family == Family{{1, 2}, {1, 3}, {1, 4}});
}

TEST_CASE("parse canonicalizes set order") {
  auto inst = parse_set_instance("p hs 2 4 1 1\n2 1\n");
  CHECK(inst.family == Family{{1, 2}});
}

TEST_CASE("parse comments and packing header") {
  auto inst = parse_set_instance("c a comment\np sp 3 5 2 2\nc inside\n1 2 3\n4 5\n");
  CHECK(inst.kind == ProblemKind::set_packing);
  CHECK(inst.family == Family{{1, 2, 3}, {4, 5}});
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error("p hs 2 4 1 1\n\n") == "line 2: empty set");
  CHECK(parse_error("p hs 2 4 1 1\n1 2 3\n").find("line 2: set size 3 exceeds d=2") == 0);
  CHECK(parse_error("p hs 2 4 1 1\n1 5\n").find("line 2: element id 5 out of range") == 0);
  CHECK(parse_error("p hs 2 4 1 1\n1 1\n") == "line 2: duplicate element in set");
  CHECK(parse_error("p hs 2 4 2 1\n1 2\n") == "line 2: expected 2 sets, found 1");
  CHECK(parse_error("p hs 2 4\n").find("line 1: malformed header") == 0);
  CHECK(parse_error("p gr 3 1 0\ne 2 2\n") == "line 2: self-loop at vertex 2");
  CHECK(parse_error("p gr 3 2 0\ne 1 2\ne 2 1\n") == "line 3: duplicate edge");
  CHECK(parse_error("").find("missing header") != std::string::npos);
  CHECK(parse_error("p xx 1 1 1 1\n").find("unknown problem") != std::string::npos);
}

TEST_CASE("serialize") {
  Instance inst{ProblemKind::hitting_set, 2, 4, 1, {{1, 2}}};
  CHECK(serialize_instance(inst) == "p hs 2 4 1 1\n1 2\n");
  GraphInstance g{3, {{1, 2}, {2, 3}}, 1};
  CHECK(serialize_instance(g) == "p gr 3 2 1\ne 1 2\ne 2 3\n");
  Instance empty{ProblemKind::hitting_set, 2, 1, 0, {}};
  CHECK(serialize_instance(empty) == "p hs 2 1 0 0\n");
}

TEST_CASE("round trip over generated instances") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto kind = seed % 2 ? ProblemKind::set_packing : ProblemKind::hitting_set;
    SetGenParams params{static_cast<std::uint32_t>(1 + seed % 3), static_cast<Element>(3 + seed % 9), seed % 25,
                        seed % 4, false};
    Instance inst = gen_random_sets(kind, params, seed);
    CHECK_NOTHROW(validate(inst));
    CHECK(std::get<Instance>(parse_instance(serialize_instance(inst))) == inst);

    GraphInstance g = gen_random_graph(static_cast<Element>(2 + seed % 7), seed % 2, seed % 3, seed);
    CHECK_NOTHROW(validate(g));
    CHECK(std::get<GraphInstance>(parse_instance(serialize_instance(g))) == g);
  }
}

TEST_CASE("canonical relabel") {
  Instance inst{ProblemKind::hitting_set, 2, 9, 1, {{5, 9}, {2, 9}}};
  auto out = canonical_relabel(inst);
  CHECK(out.family == Family{{1, 2}, {2, 3}});
  CHECK(out.n == 3);

  inst.family = {};
  CHECK(canonical_relabel(inst).n == 1);

  inst.family = {{3}, {3}};
  out = canonical_relabel(inst);
  CHECK(out.family == Family{{1}, {1}});
  CHECK(out.n == 1);
}

TEST_CASE("relabel preserves small hitting sets") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Instance inst = gen_random_sets(ProblemKind::hitting_set, {3, 12, 15, 2, false}, seed);
    auto relabeled = relabel_by_first_occurrence(inst.family);
    CHECK(ref::unrelabel(relabeled.family, relabeled.original_ids) == inst.family);
    CHECK(ref::same_small_hitting_sets(inst.family, ref::unrelabel(relabeled.family, relabeled.original_ids), 12,
                                       inst.k));
  }
}

TEST_CASE("graph relabel") {
  GraphInstance g{9, {{4, 7}, {2, 7}}, 1};
  auto r = relabel_by_first_occurrence(g);
  CHECK(r.graph.edges == std::vector<Edge>{{1, 2}, {2, 3}});
  CHECK(r.original_ids == std::vector<Element>{4, 7, 2});
  CHECK(r.graph.n == 3);
}

TEST_CASE("canonical no-instances") {
  CHECK(serialize_instance(canonical_no_instance(ProblemKind::hitting_set, 3)) == "p hs 3 1 1 0\n1\n");
  CHECK(serialize_instance(canonical_no_instance(ProblemKind::set_packing, 2)) == "p sp 2 1 0 1\n");
  CHECK(serialize_instance(canonical_no_instance_eds()) == "p gr 2 1 0\ne 1 2\n");
}

TEST_CASE("generator determinism and bounds") {
  auto a = gen_random_sets(ProblemKind::hitting_set, {2, 4, 3, 1, false}, 7);
  auto b = gen_random_sets(ProblemKind::hitting_set, {2, 4, 3, 1, false}, 7);
  CHECK(a == b);
  CHECK(a.family.size() == 3);
  CHECK(gen_random_sets(ProblemKind::hitting_set, {1, 1, 0, 0, false}, 0).family.empty());
  CHECK_THROWS_WITH_AS(gen_random_graph(5, 11, 1, 0), "gen: only 10 possible edges", std::invalid_argument);
  CHECK_THROWS_AS(gen_random_sets(ProblemKind::hitting_set, {1, 3, 4, 0, true}, 0), std::invalid_argument);
  auto distinct = gen_random_sets(ProblemKind::hitting_set, {1, 3, 3, 0, true}, 0);
  CHECK(canonical_relabel(distinct).n == 3);
}

TEST_CASE("rng bounded draws stay in range") {
  SeededRng rng(42);
  for (int i = 0; i < 1000; ++i) {
    auto x = rng.between(3, 9);
    CHECK(x >= 3);
    CHECK(x <= 9);
  }
}
