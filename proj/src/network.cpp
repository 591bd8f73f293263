#include "edsbo/network.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

namespace edsbo {

int EDState::partial_threshold() const {
  const int cap = std::max(capacity, 1);
  return std::clamp(p3_threshold.value_or(cap), 1, cap);
}

namespace {

/// EDs other than `origin`, nearest first (ties: smaller index).
std::vector<int> by_distance(int origin, const TransferMatrix& transfer, std::size_t n) {
  std::vector<int> out;
  out.reserve(n);
  for (int j = 0; j < static_cast<int>(n); ++j)
    if (j != origin) out.push_back(j);
  std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
    return transfer.at(origin, a) < transfer.at(origin, b);
  });
  return out;
}

RoutingDecision redirect_to_nearest(const PolicyConfig& policy, std::span<const EDState> network,
                                    const TransferMatrix& transfer, int origin,
                                    bool (*on_diversion)(const EDState&)) {
  for (int j : by_distance(origin, transfer, network.size())) {
    if (!on_diversion(network[j])) return RoutingDecision::redirect(j);
    if (!policy.cascade) break;
  }
  return RoutingDecision::board();
}

bool full_diversion(const EDState& e) { return e.full(); }
bool partial_diversion(const EDState& e) { return e.busy >= e.partial_threshold(); }

}  // namespace

RoutingDecision decide_routing(const PolicyConfig& policy, std::span<const EDState> network,
                               const TransferMatrix& transfer, const Patient& patient, int origin) {
  if (patient.redirects >= 1) return RoutingDecision::board();
  const EDState& here = network[origin];
  switch (policy.id) {
    case PolicyId::P1:
      return RoutingDecision::board();
    case PolicyId::P2:
      if (!here.full()) return RoutingDecision::board();
      return redirect_to_nearest(policy, network, transfer, origin, full_diversion);
    case PolicyId::P3:
      if (patient.tag == Tag::Red || !partial_diversion(here)) return RoutingDecision::board();
      return redirect_to_nearest(policy, network, transfer, origin, partial_diversion);
    case PolicyId::P4: {
      if (!here.full()) return RoutingDecision::board();
      int best = origin;
      for (int j = 0; j < static_cast<int>(network.size()); ++j) {
        const auto key = [&](int k) {
          return std::tuple(network[k].busy, transfer.at(origin, k), k);
        };
        if (key(j) < key(best)) best = j;
      }
      return best == origin ? RoutingDecision::board() : RoutingDecision::redirect(best);
    }
  }
  return RoutingDecision::board();
}

std::vector<double> EDReplicationStats::nva_by_tag(Tag tag) const {
  std::vector<double> out;
  for (const auto& slot : nva) {
    const auto& v = slot[static_cast<int>(tag)];
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

double EDReplicationStats::mean_nva(Tag tag) const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& slot : nva) {
    const auto& v = slot[static_cast<int>(tag)];
    sum = std::accumulate(v.begin(), v.end(), sum);
    n += v.size();
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

double EDReplicationStats::mean_wait(int slot, Tag tag) const {
  const auto& v = nva[slot][static_cast<int>(tag)];
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

NetworkModel::NetworkModel(const Scenario& scenario, const ResourcePlan& plan,
                           const PolicyConfig& policy, const ReplicationSpec& spec)
    : scenario_(scenario), policy_(policy), spec_(spec) {
  scenario_.validate();
  scenario_.validate_plan(plan);
  spec_.validate();

  const auto n = scenario_.num_eds();
  eds_.resize(n);
  stats_.resize(n);
  arrival_streams_.reserve(n);
  los_streams_.reserve(n);
  profiles_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const EDConfig& cfg = scenario_.eds[i];
    EDState& ed = eds_[i];
    ed.id = static_cast<int>(i);
    ed.capacity_by_slot = plan.n[i];
    ed.capacity = ed.capacity_by_slot[0];
    ed.p3_threshold = cfg.p3_threshold;
    arrival_streams_.push_back({RandomStream(spec_.seed, cfg.stream_key, StreamPurpose::ArrivalYellow),
                                RandomStream(spec_.seed, cfg.stream_key, StreamPurpose::ArrivalRed)});
    los_streams_.emplace_back(spec_.seed, cfg.stream_key, StreamPurpose::Los);
    profiles_[i] = {cfg.arrivals.profile(Tag::Yellow), cfg.arrivals.profile(Tag::Red)};
  }
}

void NetworkModel::start() {
  if (started_) throw SimulationLogicError("replication already started");
  started_ = true;
  calendar_.schedule({spec_.horizon, EventKind::EndOfHorizon, 0, 0});
  if (kSlotMinutes < spec_.horizon) calendar_.schedule({kSlotMinutes, EventKind::SlotBoundary, 0, 0});
  for (int i = 0; i < static_cast<int>(eds_.size()); ++i) {
    schedule_next_arrival(i, Tag::Yellow, 0.0);
    schedule_next_arrival(i, Tag::Red, 0.0);
  }
}

void NetworkModel::schedule_next_arrival(int ed, Tag tag, Minutes from) {
  const int k = static_cast<int>(tag);
  const auto gap = sample_interarrival(profiles_[ed][k], from, arrival_streams_[ed][k]);
  if (!gap) return;
  const Minutes t = from + *gap;
  if (t >= spec_.horizon) return;
  Patient p;
  p.tag = tag;
  p.origin_ed = ed;
  p.serving_ed = ed;
  p.t_triage = t;
  p.t_arrival_at_serving = t;
  p.from_process = true;
  const auto pid = static_cast<PatientId>(patients_.size());
  patients_.push_back(p);
  calendar_.schedule({t, EventKind::Arrival, pid, 0});
}

PatientId NetworkModel::inject_arrival(Minutes t, Tag tag, int origin) {
  Patient p;
  p.tag = tag;
  p.origin_ed = origin;
  p.serving_ed = origin;
  p.t_triage = t;
  p.t_arrival_at_serving = t;
  const auto pid = static_cast<PatientId>(patients_.size());
  patients_.push_back(p);
  calendar_.schedule({t, EventKind::Arrival, pid, 0});
  return pid;
}

bool NetworkModel::step() {
  if (finished_ || calendar_.empty()) return false;
  const Event ev = calendar_.pop();
  switch (ev.kind) {
    case EventKind::EndOfHorizon:
      finished_ = true;
      return false;
    case EventKind::Arrival:
      on_arrival(ev.payload);
      break;
    case EventKind::ServiceComplete:
      complete_service(ev.payload);
      break;
    case EventKind::TransferComplete: {
      --flow_.in_transfer;
      admit(patients_[ev.payload].serving_ed, ev.payload);
      break;
    }
    case EventKind::SlotBoundary: {
      const int slot = slot_of(ev.time);
      for (auto& ed : eds_) slot_boundary(ed.id, ed.capacity_by_slot[slot]);
      const Minutes next = ev.time + kSlotMinutes;
      if (next < spec_.horizon) calendar_.schedule({next, EventKind::SlotBoundary, 0, 0});
      break;
    }
  }
  return true;
}

void NetworkModel::on_arrival(PatientId pid) {
  ++flow_.created;
  const Patient& p = patients_[pid];
  if (p.from_process) schedule_next_arrival(p.origin_ed, p.tag, calendar_.now());
  const Patient& q = patients_[pid];  // schedule_next_arrival may reallocate
  const auto decision = decide_routing(policy_, eds_, scenario_.transfer, q, q.origin_ed);
  if (decision.action == RoutingAction::Board) {
    admit(q.origin_ed, pid);
  } else {
    start_transfer(pid, q.origin_ed, decision.target);
  }
}

void NetworkModel::admit(int ed, PatientId pid) {
  Patient& p = patients_[pid];
  p.serving_ed = ed;
  p.t_arrival_at_serving = calendar_.now();
  EDState& state = eds_[ed];
  if (state.busy < state.capacity && state.queue_length() == 0) {
    start_service(ed, pid);
    return;
  }
  (p.tag == Tag::Red ? state.red_queue : state.yellow_queue).push_back(pid);
  ++flow_.in_queue;
  fill_servers(ed);
}

void NetworkModel::start_service(int ed, PatientId pid) {
  EDState& state = eds_[ed];
  ++state.busy;
  ++flow_.seizes;
  ++flow_.in_service;
  Patient& p = patients_[pid];
  p.t_service_start = calendar_.now();
  service_order_.push_back(pid);
  const auto& dist =
      scenario_.eds[ed].los[slot_of(p.t_arrival_at_serving)][static_cast<int>(p.tag)];
  const Minutes los = sample_los(dist, los_streams_[ed]);
  calendar_.schedule({calendar_.now() + los, EventKind::ServiceComplete, pid, 0});
}

void NetworkModel::fill_servers(int ed) {
  EDState& state = eds_[ed];
  while (state.busy < state.capacity && state.queue_length() > 0) {
    auto& q = state.red_queue.empty() ? state.yellow_queue : state.red_queue;
    const PatientId next = q.front();
    q.pop_front();
    --flow_.in_queue;
    start_service(ed, next);
  }
}

void NetworkModel::complete_service(PatientId pid) {
  Patient& p = patients_[pid];
  if (p.t_service_start < 0.0 || p.t_discharge >= 0.0) {
    throw SimulationLogicError("service completion for patient " + std::to_string(pid) +
                               " who is not in service");
  }
  EDState& state = eds_[p.serving_ed];
  --state.busy;
  ++flow_.releases;
  --flow_.in_service;
  ++flow_.discharged;
  p.t_discharge = calendar_.now();
  record(p);
  fill_servers(p.serving_ed);
}

void NetworkModel::start_transfer(PatientId pid, int from, int to) {
  if (from == to) throw SimulationLogicError("transfer from an ED to itself");
  Patient& p = patients_[pid];
  const Minutes tau = scenario_.transfer.at(from, to);
  p.transfer_minutes += tau;
  ++p.redirects;
  p.serving_ed = to;
  ++eds_[from].redirected_out;
  ++eds_[to].redirected_in;
  ++flow_.in_transfer;
  calendar_.schedule({calendar_.now() + tau, EventKind::TransferComplete, pid, 0});
}

void NetworkModel::slot_boundary(int ed, int new_capacity) {
  eds_[ed].capacity = new_capacity;
  fill_servers(ed);
}

void NetworkModel::record(const Patient& p) {
  if (p.t_service_start < spec_.warmup) return;
  stats_[p.serving_ed].nva[slot_of(p.t_triage)][static_cast<int>(p.tag)].push_back(p.nva());
}

ReplicationOutput NetworkModel::collect() const {
  ReplicationOutput out;
  out.eds = stats_;
  for (std::size_t i = 0; i < eds_.size(); ++i) {
    out.eds[i].redirected_out = eds_[i].redirected_out;
    out.eds[i].redirected_in = eds_[i].redirected_in;
  }
  out.flow = flow_;
  return out;
}

ReplicationOutput NetworkModel::run() {
  if (!started_) start();
  while (step()) {
  }
  return collect();
}

ReplicationOutput run_replication(const Scenario& scenario, const ResourcePlan& plan,
                                  const PolicyConfig& policy, const ReplicationSpec& spec) {
  NetworkModel model(scenario, plan, policy, spec);
  return model.run();
}

}  // namespace edsbo
