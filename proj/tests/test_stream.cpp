#include <cstdlib>

#include "doctest.h"
#include "kernelforge/stream.hpp"

using namespace kf;
using namespace kf::stream;

TEST_CASE("register widths") {
  CHECK(SpaceMeter::width(0) == 1);
  CHECK(SpaceMeter::width(1) == 1);
  CHECK(SpaceMeter::width(5) == 3);
  CHECK(SpaceMeter::width(8) == 4);
  CHECK(SpaceMeter::width(ElementSet{}) == 1);
  CHECK(SpaceMeter::width(ElementSet{1, 4}) == 4);
}

TEST_CASE("named registers track the peak") {
  SpaceMeter meter;
  meter.set("t", 5);
  CHECK(meter.peak_bits() == 3);
  meter.set("c", 0);
  CHECK(meter.peak_bits() == 4);
  meter.set("t", 1);
  CHECK(meter.peak_bits() == 4);
  CHECK(meter.current_bits() == 2);
}

TEST_CASE("scoped registers release their bits") {
  SpaceMeter meter;
  {
    SpaceMeter::Register a(meter);
    a.set(255);
    SpaceMeter::Register b(meter);
    b.hold(ElementSet{1, 2, 3});
    CHECK(meter.current_bits() == 8 + 5);
  }
  CHECK(meter.current_bits() == 0);
  CHECK(meter.peak_bits() == 13);
}

TEST_CASE("budget is a hard limit") {
  SpaceMeter meter(std::uint64_t{4});
  meter.set("a", 7);
  CHECK_THROWS_AS(meter.set("b", 3), BudgetExceeded);
}

TEST_CASE("tape reads are counted") {
  Family family{{1, 2}, {3}};
  FamilyTape tape(family, 3);
  CHECK(tape.read_set(1) == ElementSet{3});
  CHECK(tape.reads() == 1);
  Family single{{1, 2}};
  FamilyTape once(single, 2);
  CHECK(once.read_set(0) == once.read_set(0));
  CHECK(once.reads() == 2);
  Family empty;
  FamilyTape none(empty, 1);
  CHECK_THROWS_AS(none.read_set(0), std::out_of_range);
}

TEST_CASE("run_metered reports emitted sets and reads") {
  Family family{{1, 2}, {1, 2}, {3}};
  FamilyTape tape(family, 3);
  auto run = run_metered(
      [](SetTape& t, SpaceMeter& meter, OutputSink& sink) {
        SpaceMeter::Register step(meter);
        ElementSet current, other;
        for (std::size_t i = 0; i < t.size(); ++i) {
          step.set(i);
          t.read(i, current);
          bool copy = false;
          for (std::size_t j = 0; j < i && !copy; ++j) copy = t.read(j, other) && other == current;
          if (!copy) sink.emit(current);
        }
      },
      tape);
  CHECK(run.output == Family{{1, 2}, {3}});
  CHECK(run.report.sets_emitted == 2);
  CHECK(run.report.tape_reads == 3 + 1 + 2);
  CHECK(format_report(run.report) == "peak_bits=2 reads=6 emitted=2");
}

TEST_CASE("encoded size and the peak bound") {
  Instance inst{ProblemKind::hitting_set, 2, 4, 1, {{1, 2}}};
  CHECK(encoded_size(inst) == std::string("p hs 2 4 1 1\n1 2\n").size());
  CHECK(peak_bits_bound(2, 17) == kPeakBitsConstant * 4 * 5);
}

TEST_CASE("budget from the environment") {
  ::unsetenv("KERNELFORGE_BIT_BUDGET");
  CHECK_FALSE(budget_from_environment().has_value());
  ::setenv("KERNELFORGE_BIT_BUDGET", "123", 1);
  CHECK(budget_from_environment() == std::uint64_t{123});
  ::setenv("KERNELFORGE_BIT_BUDGET", "12x", 1);
  CHECK_THROWS_AS(budget_from_environment(), std::invalid_argument);
  ::unsetenv("KERNELFORGE_BIT_BUDGET");
}
