#include "doctest.h"

#include <set>

#include "edsbo/engine.hpp"

using namespace edsbo;

TEST_CASE("calendar dispatches a single scheduled event") {
  EventCalendar cal;
  cal.schedule({5.0, EventKind::Arrival, 7, 0});
  const Event ev = cal.pop();
  CHECK(ev.time == 5.0);
  CHECK(ev.payload == 7);
  CHECK(cal.now() == 5.0);
  CHECK(cal.empty());
}

TEST_CASE("equal timestamps dispatch in insertion order") {
  EventCalendar cal;
  cal.schedule({10.0, EventKind::Arrival, 1, 0});
  cal.schedule({10.0, EventKind::ServiceComplete, 2, 0});
  cal.schedule({3.0, EventKind::SlotBoundary, 3, 0});
  CHECK(cal.pop().payload == 3);
  CHECK(cal.pop().payload == 1);
  CHECK(cal.pop().payload == 2);
}

TEST_CASE("scheduling into the past is a logic error") {
  EventCalendar cal;
  CHECK_THROWS_AS(cal.schedule({-1.0, EventKind::Arrival, 0, 0}), SimulationLogicError);
  cal.schedule({4.0, EventKind::Arrival, 0, 0});
  cal.pop();
  CHECK_THROWS_AS(cal.schedule({3.5, EventKind::Arrival, 0, 0}), SimulationLogicError);
  CHECK_NOTHROW(cal.schedule({4.0, EventKind::Arrival, 0, 0}));
  CHECK_THROWS_AS(EventCalendar{}.pop(), SimulationLogicError);
}

TEST_CASE("calendar order is non-decreasing under random scheduling") {
  EventCalendar cal;
  RandomStream rng(99, 0, StreamPurpose::Routing);
  for (int i = 0; i < 2000; ++i) cal.schedule({std::floor(rng.uniform01() * 50.0), EventKind::Arrival, static_cast<std::uint32_t>(i), 0});
  Event prev = cal.pop();
  while (!cal.empty()) {
    const Event ev = cal.pop();
    CHECK(ev.time >= prev.time);
    if (ev.time == prev.time) CHECK(ev.seq > prev.seq);
    prev = ev;
  }
}

TEST_CASE("slot index follows the 8-hour shifts and repeats daily") {
  CHECK(slot_of(0.0) == 0);
  CHECK(slot_of(479.999) == 0);
  CHECK(slot_of(480.0) == 1);
  CHECK(slot_of(960.0) == 2);
  CHECK(slot_of(1439.0) == 2);
  CHECK(slot_of(1440.0) == 0);
  CHECK(slot_of(1440.0 * 200 + 600.0) == 1);
}

TEST_CASE("substreams depend only on (seed, ed, purpose)") {
  RandomStream a(42, 3, StreamPurpose::Los), b(42, 3, StreamPurpose::Los);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform01() == b.uniform01());

  std::set<std::uint64_t> seeds;
  for (std::uint64_t s : {1ULL, 2ULL, 3ULL})
    for (std::uint32_t ed = 0; ed < 6; ++ed)
      for (auto p : {StreamPurpose::ArrivalYellow, StreamPurpose::ArrivalRed, StreamPurpose::Los, StreamPurpose::Routing})
        seeds.insert(derive_stream_seed(s, ed, p));
  CHECK(seeds.size() == 3 * 6 * 4);
}

TEST_CASE("distinct substreams are uncorrelated") {
  RandomStream a(7, 0, StreamPurpose::ArrivalYellow), b(7, 1, StreamPurpose::ArrivalYellow);
  const int n = 100000;
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform01(), y = b.uniform01();
    CHECK_UNARY(x > 0.0);
    CHECK_UNARY(x < 1.0);
    sa += x; sb += y; sab += x * y; saa += x * x; sbb += y * y;
  }
  const double cov = sab / n - (sa / n) * (sb / n);
  const double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
  CHECK(std::abs(corr) < 0.02);  // ~6 standard errors
}

TEST_CASE("replication spec requires warm-up shorter than horizon") {
  ReplicationSpec spec;
  CHECK(spec.horizon == 525600.0);
  CHECK(spec.warmup == 2880.0);
  CHECK_NOTHROW(spec.validate());
  spec.warmup = spec.horizon;
  CHECK_THROWS(spec.validate());
}
