#pragma once

// Read-only input tapes, register-level space metering, and write-only output
// sinks for the streaming kernels.
//
// Space model: every piece of working state a streaming kernel keeps is a
// register on a SpaceMeter. A register holding value v costs
// max(1, ceil(log2(v + 1))) bits; a register holding a set costs the sum over
// its elements (an empty set costs 1 bit). Peak usage is the maximum over time
// of the sum of all live registers.
//
// The layered kernels keep per frame at most: step index, inner scan index,
// one counter, the current set, the scanned set, and a candidate core. With
// frames for layers 0..d plus the relabeling layer and the driver, a run on
// input of encoded size N satisfies
//
//     peak_bits <= kPeakBitsConstant * d^2 * ceil(log2(N + 2)),
//
// which the tests assert.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kernelforge/core_model.hpp"

namespace kf::stream {

inline constexpr std::uint64_t kPeakBitsConstant = 18;

// Raised when a meter with an armed budget exceeds it.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SpaceMeter {
 public:
  SpaceMeter() = default;
  explicit SpaceMeter(std::optional<std::uint64_t> bit_budget) : budget_(bit_budget) {}

  static std::uint64_t width(std::uint64_t value);
  static std::uint64_t width(std::span<const Element> set);

  // Named long-lived register: created on first use, resized on later calls.
  void set(std::string_view name, std::uint64_t value);

  std::uint64_t current_bits() const { return current_; }
  std::uint64_t peak_bits() const { return peak_; }
  std::optional<std::uint64_t> budget() const { return budget_; }

  // Scoped register, released when it goes out of scope.
  class Register {
   public:
    explicit Register(SpaceMeter& meter);
    Register(const Register&) = delete;
    Register& operator=(const Register&) = delete;
    ~Register();

    void set(std::uint64_t value) { meter_.resize(bits_, width(value)); }
    void hold(std::span<const Element> set) { meter_.resize(bits_, width(set)); }

   private:
    SpaceMeter& meter_;
    std::uint64_t bits_ = 0;
  };

 private:
  void resize(std::uint64_t& slot, std::uint64_t bits);

  std::map<std::string, std::uint64_t, std::less<>> named_;
  std::uint64_t current_ = 0;
  std::uint64_t peak_ = 0;
  std::optional<std::uint64_t> budget_;
};

// Read-only input tape over some family of sets. Positions may be empty
// (implicit families enumerate candidates, not all of which are members).
// Every read counts, whether or not the position holds a set.
class SetTape {
 public:
  virtual ~SetTape() = default;

  virtual std::size_t size() const = 0;
  // Largest element id that can appear on the tape.
  virtual Element universe() const = 0;
  // True when no set appears twice, so duplicate scans can be skipped.
  virtual bool distinct_sets() const { return false; }

  // Writes the set at position t into `out`; false when t holds no set.
  // Throws std::out_of_range for t >= size().
  bool read(std::size_t t, ElementSet& out);
  ElementSet read_set(std::size_t t);

  std::uint64_t reads() const { return reads_; }

 protected:
  virtual bool fetch(std::size_t t, ElementSet& out) const = 0;

 private:
  std::uint64_t reads_ = 0;
};

class FamilyTape final : public SetTape {
 public:
  FamilyTape(const Family& family, Element universe) : family_(family), universe_(universe) {}
  explicit FamilyTape(const Instance& inst) : FamilyTape(inst.family, inst.n) {}

  std::size_t size() const override { return family_.size(); }
  Element universe() const override { return universe_; }

 protected:
  bool fetch(std::size_t t, ElementSet& out) const override;

 private:
  const Family& family_;
  Element universe_;
};

// Write-only output. Algorithms can emit and learn how many sets they have
// emitted, never read back what was written.
class OutputSink {
 public:
  void emit(std::span<const Element> set) { written_.emplace_back(set.begin(), set.end()); }
  std::size_t emitted() const { return written_.size(); }

  Family take() && { return std::move(written_); }

 private:
  Family written_;
};

struct RunReport {
  std::uint64_t peak_bits = 0;
  std::uint64_t tape_reads = 0;
  std::uint64_t sets_emitted = 0;
};

std::string format_report(const RunReport& report);

struct MeteredRun {
  Family output;
  RunReport report;
};

// Runs `algorithm(tape, meter, sink)` on fresh meter and sink; the report
// covers every nested simulation the algorithm performs.
template <typename Algorithm>
MeteredRun run_metered(Algorithm&& algorithm, SetTape& tape, std::optional<std::uint64_t> bit_budget = {}) {
  SpaceMeter meter(bit_budget);
  OutputSink sink;
  std::uint64_t reads_before = tape.reads();
  algorithm(tape, meter, sink);
  RunReport report{meter.peak_bits(), tape.reads() - reads_before, sink.emitted()};
  return {std::move(sink).take(), report};
}

// Encoded size of an instance: length of its text serialization.
std::uint64_t encoded_size(const Instance& inst);
std::uint64_t encoded_size(const GraphInstance& g);

// Bound asserted on peak_bits for a run on input of encoded size N.
std::uint64_t peak_bits_bound(std::uint32_t d, std::uint64_t encoded_size);

// Bit budget armed through the environment (KERNELFORGE_BIT_BUDGET), if any.
std::optional<std::uint64_t> budget_from_environment();

}  // namespace kf::stream
