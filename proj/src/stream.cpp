#include "kernelforge/stream.hpp"

#include <bit>
#include <cstdlib>
#include <string>

namespace kf::stream {

std::uint64_t SpaceMeter::width(std::uint64_t value) {
  return std::max<std::uint64_t>(1, std::bit_width(value));
}

std::uint64_t SpaceMeter::width(std::span<const Element> set) {
  if (set.empty()) return 1;
  std::uint64_t bits = 0;
  for (Element e : set) bits += width(e);
  return bits;
}

void SpaceMeter::set(std::string_view name, std::uint64_t value) {
  auto it = named_.find(name);
  if (it == named_.end()) it = named_.emplace(std::string(name), 0).first;
  resize(it->second, width(value));
}

void SpaceMeter::resize(std::uint64_t& slot, std::uint64_t bits) {
  current_ = current_ - slot + bits;
  slot = bits;
  if (current_ > peak_) {
    peak_ = current_;
    if (budget_ && peak_ > *budget_) {
      throw BudgetExceeded("space budget of " + std::to_string(*budget_) + " bits exceeded (" +
                           std::to_string(peak_) + " live)");
    }
  }
}

SpaceMeter::Register::Register(SpaceMeter& meter) : meter_(meter) {}

SpaceMeter::Register::~Register() {
  meter_.current_ -= bits_;
}

bool SetTape::read(std::size_t t, ElementSet& out) {
  if (t >= size()) throw std::out_of_range("tape position " + std::to_string(t) + " beyond end");
  ++reads_;
  return fetch(t, out);
}

ElementSet SetTape::read_set(std::size_t t) {
  ElementSet out;
  read(t, out);
  return out;
}

bool FamilyTape::fetch(std::size_t t, ElementSet& out) const {
  out.assign(family_[t].begin(), family_[t].end());
  return true;
}

std::string format_report(const RunReport& report) {
  return "peak_bits=" + std::to_string(report.peak_bits) + " reads=" + std::to_string(report.tape_reads) +
         " emitted=" + std::to_string(report.sets_emitted);
}

std::uint64_t encoded_size(const Instance& inst) { return serialize_instance(inst).size(); }
std::uint64_t encoded_size(const GraphInstance& g) { return serialize_instance(g).size(); }

std::uint64_t peak_bits_bound(std::uint32_t d, std::uint64_t encoded_size) {
  return kPeakBitsConstant * d * d * std::bit_width(encoded_size + 1);
}

std::optional<std::uint64_t> budget_from_environment() {
  const char* raw = std::getenv("KERNELFORGE_BIT_BUDGET");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  auto value = std::strtoull(raw, &end, 10);
  if (*end != '\0') throw std::invalid_argument("KERNELFORGE_BIT_BUDGET must be an integer");
  return value;
}

}  // namespace kf::stream
