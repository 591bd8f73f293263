// ED network model: multi-server priority queues, diversion policies,
// interhospital transfers and NVA-time accounting.
#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "edsbo/engine.hpp"
#include "edsbo/model.hpp"

namespace edsbo {

using PatientId = std::uint32_t;

struct Patient {
  Tag tag = Tag::Yellow;
  int origin_ed = 0;
  int serving_ed = 0;
  Minutes t_triage = 0.0;
  Minutes t_arrival_at_serving = 0.0;  ///< triage time, or transfer completion
  Minutes t_service_start = -1.0;
  Minutes t_discharge = -1.0;
  Minutes transfer_minutes = 0.0;
  int redirects = 0;
  bool from_process = false;  ///< generated by an arrival stream (vs injected)

  Minutes nva() const { return t_service_start - t_triage; }
};

/// Runtime state of one ED.
struct EDState {
  int id = 0;
  std::array<int, kSlotsPerDay> capacity_by_slot{};
  int capacity = 0;
  int busy = 0;
  std::optional<int> p3_threshold;
  std::deque<PatientId> red_queue;
  std::deque<PatientId> yellow_queue;
  long redirected_out = 0;
  long redirected_in = 0;

  std::size_t queue_length() const { return red_queue.size() + yellow_queue.size(); }
  bool full() const { return busy >= capacity; }
  /// Occupancy level at which P3 diverts yellow patients, clamped to [1, capacity].
  int partial_threshold() const;
};

enum class RoutingAction { Board, Redirect };

struct RoutingDecision {
  RoutingAction action = RoutingAction::Board;
  int target = -1;

  bool operator==(const RoutingDecision&) const = default;
  static RoutingDecision board() { return {}; }
  static RoutingDecision redirect(int to) { return {RoutingAction::Redirect, to}; }
};

/// Board-or-redirect decision for `patient` arriving at `origin`. A patient
/// that has already been redirected always boards.
RoutingDecision decide_routing(const PolicyConfig& policy, std::span<const EDState> network,
                               const TransferMatrix& transfer, const Patient& patient, int origin);

/// Per-replication flow counters.
struct FlowCounters {
  long created = 0;
  long discharged = 0;
  long in_queue = 0;
  long in_service = 0;
  long in_transfer = 0;
  long seizes = 0;
  long releases = 0;

  bool operator==(const FlowCounters&) const = default;
};

struct EDReplicationStats {
  /// nva[slot][tag]: NVA times of patients served here, by triage slot.
  std::array<std::array<std::vector<double>, kTags>, kSlotsPerDay> nva;
  long redirected_out = 0;
  long redirected_in = 0;

  std::vector<double> nva_by_tag(Tag tag) const;
  /// Mean NVA for the tag; 0 when no patient was recorded.
  double mean_nva(Tag tag) const;
  /// Mean wait for (slot, tag); 0 when no patient was recorded.
  double mean_wait(int slot, Tag tag) const;

  bool operator==(const EDReplicationStats&) const = default;
};

struct ReplicationOutput {
  std::vector<EDReplicationStats> eds;
  FlowCounters flow;

  bool operator==(const ReplicationOutput&) const = default;
};

/// One replication of the network. The public step-level operations are
/// exposed for scripted tests; `run` drives the whole horizon.
class NetworkModel {
 public:
  NetworkModel(const Scenario& scenario, const ResourcePlan& plan, const PolicyConfig& policy,
               const ReplicationSpec& spec);

  /// Runs to the horizon and returns the recorded statistics.
  ReplicationOutput run();

  /// Schedules initial arrivals, slot boundaries and end of horizon.
  void start();
  /// Dispatches one event; returns false once the horizon has been reached.
  bool step();

  /// Creates a patient arriving at `origin` at time `t` (not from a stream).
  PatientId inject_arrival(Minutes t, Tag tag, int origin);

  void admit(int ed, PatientId pid);
  void complete_service(PatientId pid);
  void start_transfer(PatientId pid, int from, int to);
  void slot_boundary(int ed, int new_capacity);

  Minutes now() const { return calendar_.now(); }
  EventCalendar& calendar() { return calendar_; }
  std::span<const EDState> eds() const { return eds_; }
  const std::vector<Patient>& patients() const { return patients_; }
  /// Patient ids in the order their service started.
  const std::vector<PatientId>& service_order() const { return service_order_; }
  const FlowCounters& flow() const { return flow_; }

 private:
  void schedule_next_arrival(int ed, Tag tag, Minutes from);
  void start_service(int ed, PatientId pid);
  void fill_servers(int ed);
  void on_arrival(PatientId pid);
  void record(const Patient& p);
  ReplicationOutput collect() const;

  const Scenario& scenario_;
  PolicyConfig policy_;
  ReplicationSpec spec_;
  EventCalendar calendar_;
  std::vector<EDState> eds_;
  std::vector<std::array<RandomStream, kTags>> arrival_streams_;
  std::vector<RandomStream> los_streams_;
  std::vector<std::array<std::array<double, kSlotsPerDay>, kTags>> profiles_;
  std::vector<Patient> patients_;
  std::vector<PatientId> service_order_;
  std::vector<EDReplicationStats> stats_;
  FlowCounters flow_;
  bool started_ = false;
  bool finished_ = false;
};

/// Runs one replication. Configuration errors are raised before any event runs.
ReplicationOutput run_replication(const Scenario& scenario, const ResourcePlan& plan,
                                  const PolicyConfig& policy, const ReplicationSpec& spec);

}  // namespace edsbo
