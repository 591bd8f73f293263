// Discrete-event kernel: clock, event calendar, seeded random substreams.
#pragma once

#include <cstdint>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

namespace edsbo {

/// Simulation time in minutes.
using Minutes = double;

inline constexpr Minutes kSlotMinutes = 480.0;
inline constexpr Minutes kDayMinutes = 1440.0;
inline constexpr int kSlotsPerDay = 3;

/// Index of the 8-hour shift containing time t (0: 00-08, 1: 08-16, 2: 16-24).
inline int slot_of(Minutes t) {
  const auto k = static_cast<std::int64_t>(t / kSlotMinutes);
  return static_cast<int>(k % kSlotsPerDay);
}

enum class EventKind : std::uint8_t {
  Arrival,
  ServiceComplete,
  TransferComplete,
  SlotBoundary,
  EndOfHorizon,
};

struct Event {
  Minutes time = 0.0;
  EventKind kind = EventKind::Arrival;
  std::uint32_t payload = 0;  // patient id, or (ed, tag) code for arrivals
  std::uint64_t seq = 0;      // assigned by the calendar
};

/// Thrown when the kernel is driven into an impossible state.
class SimulationLogicError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Future event list. Dispatch order is (time, insertion sequence).
class EventCalendar {
 public:
  Minutes now() const { return clock_; }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

  void schedule(Event ev);
  Event pop();

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  Minutes clock_ = 0.0;
  std::uint64_t next_seq_ = 0;
};

enum class StreamPurpose : std::uint32_t {
  ArrivalYellow = 1,
  ArrivalRed = 2,
  Los = 3,
  Routing = 4,
};

/// splitmix64 finalizer, used to derive substream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed of the substream identified by (ed, purpose) under a replication seed.
std::uint64_t derive_stream_seed(std::uint64_t replication_seed, std::uint32_t ed,
                                 StreamPurpose purpose);

/// A reproducible random substream. The draw sequence depends only on
/// (replication seed, ed, purpose).
class RandomStream {
 public:
  using engine_type = std::mt19937_64;

  RandomStream(std::uint64_t replication_seed, std::uint32_t ed, StreamPurpose purpose)
      : engine_(derive_stream_seed(replication_seed, ed, purpose)) {}

  /// Uniform on the open interval (0, 1).
  double uniform01();
  /// Exp(1) by inversion.
  double unit_exponential();

  engine_type& engine() { return engine_; }

 private:
  engine_type engine_;
};

struct ReplicationSpec {
  Minutes horizon = 365.0 * kDayMinutes;
  Minutes warmup = 48.0 * 60.0;
  std::uint64_t seed = 1;

  void validate() const;
};

}  // namespace edsbo
