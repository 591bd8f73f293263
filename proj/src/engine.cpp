#include "edsbo/engine.hpp"

#include <cmath>
#include <string>

namespace edsbo {

void EventCalendar::schedule(Event ev) {
  if (!(ev.time >= clock_)) {
    throw SimulationLogicError("event scheduled in the past: t=" + std::to_string(ev.time) +
                               " < clock=" + std::to_string(clock_));
  }
  ev.seq = next_seq_++;
  heap_.push(ev);
}

Event EventCalendar::pop() {
  if (heap_.empty()) throw SimulationLogicError("pop from empty event calendar");
  Event ev = heap_.top();
  heap_.pop();
  clock_ = ev.time;
  return ev;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t replication_seed, std::uint32_t ed,
                                 StreamPurpose purpose) {
  std::uint64_t h = mix64(replication_seed);
  h = mix64(h ^ (static_cast<std::uint64_t>(ed) << 32 | static_cast<std::uint32_t>(purpose)));
  return mix64(h);
}

double RandomStream::uniform01() {
  // 53 random bits, shifted off zero.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RandomStream::unit_exponential() { return -std::log(uniform01()); }

void ReplicationSpec::validate() const {
  if (!(horizon > 0.0)) throw std::invalid_argument("replication horizon must be positive");
  if (!(warmup >= 0.0) || !(warmup < horizon)) {
    throw std::invalid_argument("replication warm-up must satisfy 0 <= warmup < horizon");
  }
}

}  // namespace edsbo
