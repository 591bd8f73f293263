#include "edsbo/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace edsbo {

namespace {

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& key, const std::string& msg) const {
    std::ostringstream os;
    os << origin_;
    if (at.IsDefined() && at.Mark().line >= 0) os << ":" << at.Mark().line + 1;
    os << ": key '" << key << "': " << msg;
    throw ScenarioError(os.str());
  }

  void expect_map(const YAML::Node& n, const std::string& key) const {
    if (!n.IsMap()) fail(n, key, "expected a mapping");
  }

  void allow_keys(const YAML::Node& map, const std::string& key,
                  std::initializer_list<const char*> allowed) const {
    expect_map(map, key);
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : map) {
      const auto name = kv.first.as<std::string>();
      if (!ok.count(name)) fail(kv.first, join(key, name), "unknown key");
    }
  }

  YAML::Node require(const YAML::Node& map, const std::string& key, const char* name) const {
    const YAML::Node n = map[name];
    if (!n.IsDefined() || n.IsNull()) fail(map, join(key, name), "missing required field");
    return n;
  }

  double number(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, key, "expected a number");
    try {
      const double v = n.as<double>();
      if (!std::isfinite(v)) fail(n, key, "expected a finite number");
      return v;
    } catch (const YAML::BadConversion&) {
      fail(n, key, "expected a number, got '" + n.Scalar() + "'");
    }
  }

  double non_negative(const YAML::Node& n, const std::string& key) const {
    const double v = number(n, key);
    if (v < 0.0) fail(n, key, "must be >= 0");
    return v;
  }

  double positive(const YAML::Node& n, const std::string& key) const {
    const double v = number(n, key);
    if (!(v > 0.0)) fail(n, key, "must be > 0");
    return v;
  }

  int integer(const YAML::Node& n, const std::string& key) const {
    const double v = number(n, key);
    if (v != std::floor(v) || std::abs(v) > 1e9) fail(n, key, "expected an integer");
    return static_cast<int>(v);
  }

  std::string text(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, key, "expected a string");
    return n.Scalar();
  }

  bool boolean(const YAML::Node& n, const std::string& key) const {
    try {
      return n.as<bool>();
    } catch (const YAML::BadConversion&) {
      fail(n, key, "expected true or false");
    }
  }

  std::vector<YAML::Node> sequence(const YAML::Node& n, const std::string& key, std::size_t len) const {
    if (!n.IsSequence()) fail(n, key, "expected a list");
    if (len != 0 && n.size() != len) {
      fail(n, key, "expected " + std::to_string(len) + " entries, got " + std::to_string(n.size()));
    }
    return {n.begin(), n.end()};
  }

  std::array<double, kSlotsPerDay> slot_values(const YAML::Node& n, const std::string& key) const {
    const auto items = sequence(n, key, kSlotsPerDay);
    std::array<double, kSlotsPerDay> out{};
    for (int j = 0; j < kSlotsPerDay; ++j) out[j] = non_negative(items[j], index(key, j));
    return out;
  }

  static std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }
  static std::string index(const std::string& a, std::size_t i) { return a + "[" + std::to_string(i) + "]"; }

 private:
  std::string origin_;
};

LosDistribution parse_los(const Reader& rd, const YAML::Node& n, const std::string& key) {
  rd.allow_keys(n, key, {"family", "mean", "cv", "mu", "sigma", "shape", "scale", "values", "weights"});
  std::string family = "exponential";
  if (n["family"]) family = rd.text(n["family"], Reader::join(key, "family"));
  auto has = [&](const char* k) { return n[k].IsDefined() && !n[k].IsNull(); };
  auto pos = [&](const char* k) { return rd.positive(rd.require(n, key, k), Reader::join(key, k)); };
  LosDistribution d;
  try {
    if (family == "exponential") {
      d = LosDistribution::exponential(pos("mean"));
    } else if (family == "lognormal") {
      if (has("mean") || has("cv")) {
        d = LosDistribution::lognormal_mean_cv(pos("mean"), pos("cv"));
      } else {
        d = LosDistribution::lognormal(rd.number(rd.require(n, key, "mu"), Reader::join(key, "mu")),
                                       pos("sigma"));
      }
    } else if (family == "gamma") {
      d = has("mean") ? LosDistribution::gamma_mean_cv(pos("mean"), pos("cv"))
                      : LosDistribution::gamma(pos("shape"), pos("scale"));
    } else if (family == "weibull") {
      d = LosDistribution::weibull(pos("shape"), pos("scale"));
    } else if (family == "empirical") {
      std::vector<double> values, weights;
      const std::string vk = Reader::join(key, "values");
      const auto items = rd.sequence(rd.require(n, key, "values"), vk, 0);
      for (std::size_t i = 0; i < items.size(); ++i) values.push_back(rd.positive(items[i], Reader::index(vk, i)));
      if (has("weights")) {
        const std::string wk = Reader::join(key, "weights");
        const auto w = rd.sequence(n["weights"], wk, values.size());
        for (std::size_t i = 0; i < w.size(); ++i) weights.push_back(rd.non_negative(w[i], Reader::index(wk, i)));
      }
      d = LosDistribution::empirical(std::move(values), std::move(weights));
    } else {
      rd.fail(n["family"], Reader::join(key, "family"), "unknown LOS family '" + family + "'");
    }
    d.validate();
  } catch (const ConfigError& e) {
    rd.fail(n, key, e.what());
  }
  return d;
}

/// LOS for one tag: a single distribution for all slots, or a list of three.
std::array<LosDistribution, kSlotsPerDay> parse_los_by_slot(const Reader& rd, const YAML::Node& n,
                                                            const std::string& key) {
  std::array<LosDistribution, kSlotsPerDay> out;
  if (n.IsSequence()) {
    const auto items = rd.sequence(n, key, kSlotsPerDay);
    for (int j = 0; j < kSlotsPerDay; ++j) out[j] = parse_los(rd, items[j], Reader::index(key, j));
  } else {
    const auto d = parse_los(rd, n, key);
    out.fill(d);
  }
  return out;
}

EDConfig parse_ed(const Reader& rd, const YAML::Node& n, const std::string& key, std::size_t index,
                  std::optional<std::array<int, kSlotsPerDay>>& plan_row) {
  rd.allow_keys(n, key, {"name", "arrivals", "los", "p3_threshold", "start_plan", "real_waits"});
  EDConfig ed;
  ed.name = n["name"] ? rd.text(n["name"], Reader::join(key, "name")) : "ED" + std::to_string(index + 1);
  ed.stream_key = static_cast<std::uint32_t>(index);

  const std::string ak = Reader::join(key, "arrivals");
  const YAML::Node arr = rd.require(n, key, "arrivals");
  rd.allow_keys(arr, ak, {"annual_counts", "rates_per_minute"});
  const bool counts = arr["annual_counts"].IsDefined();
  if (counts == arr["rates_per_minute"].IsDefined()) {
    rd.fail(arr, ak, "give exactly one of annual_counts or rates_per_minute");
  }
  const std::string rk = Reader::join(ak, counts ? "annual_counts" : "rates_per_minute");
  const YAML::Node rates = arr[counts ? "annual_counts" : "rates_per_minute"];
  rd.allow_keys(rates, rk, {"yellow", "red"});
  for (Tag tag : {Tag::Yellow, Tag::Red}) {
    const auto v = rd.slot_values(rd.require(rates, rk, tag_name(tag)), Reader::join(rk, tag_name(tag)));
    for (int j = 0; j < kSlotsPerDay; ++j) {
      ed.arrivals.rate[j][static_cast<int>(tag)] = counts ? rate_from_annual_count(v[j]) : v[j];
    }
  }

  const std::string lk = Reader::join(key, "los");
  const YAML::Node los = rd.require(n, key, "los");
  rd.allow_keys(los, lk, {"default", "yellow", "red"});
  for (Tag tag : {Tag::Yellow, Tag::Red}) {
    const bool own = los[tag_name(tag)].IsDefined();
    const YAML::Node src = own ? los[tag_name(tag)] : los["default"];
    const std::string sk = Reader::join(lk, own ? tag_name(tag) : "default");
    if (!src.IsDefined() || src.IsNull()) {
      rd.fail(los, Reader::join(lk, tag_name(tag)), "no LOS distribution given (and no default)");
    }
    const auto by_slot = parse_los_by_slot(rd, src, sk);
    for (int j = 0; j < kSlotsPerDay; ++j) ed.los[j][static_cast<int>(tag)] = by_slot[j];
  }

  if (n["p3_threshold"]) {
    const std::string tk = Reader::join(key, "p3_threshold");
    const int t = rd.integer(n["p3_threshold"], tk);
    if (t < 1) rd.fail(n["p3_threshold"], tk, "must be >= 1");
    ed.p3_threshold = t;
  }
  if (n["start_plan"]) {
    const std::string pk = Reader::join(key, "start_plan");
    const auto items = rd.sequence(n["start_plan"], pk, kSlotsPerDay);
    std::array<int, kSlotsPerDay> row{};
    for (int j = 0; j < kSlotsPerDay; ++j) row[j] = rd.integer(items[j], Reader::index(pk, j));
    plan_row = row;
  }
  if (n["real_waits"]) {
    const std::string wk = Reader::join(key, "real_waits");
    const YAML::Node w = n["real_waits"];
    rd.allow_keys(w, wk, {"yellow", "red"});
    RealWaitTable table;
    for (Tag tag : {Tag::Yellow, Tag::Red}) {
      const auto v = rd.slot_values(rd.require(w, wk, tag_name(tag)), Reader::join(wk, tag_name(tag)));
      for (int j = 0; j < kSlotsPerDay; ++j) table.wait[j][static_cast<int>(tag)] = v[j];
    }
    ed.real_waits = table;
  }
  return ed;
}

Scenario parse_root(const Reader& rd, const YAML::Node& root) {
  rd.allow_keys(root, "", {"name", "mode", "policy", "replication", "objective", "bounds", "transfer_minutes", "eds"});
  Scenario s;
  s.name = root["name"] ? rd.text(root["name"], "name") : "unnamed";
  if (root["mode"]) {
    const auto mode = rd.text(root["mode"], "mode");
    if (mode == "paper") s.paper_mode = true;
    else if (mode != "generic") rd.fail(root["mode"], "mode", "expected 'paper' or 'generic'");
  }

  if (const YAML::Node p = root["policy"]) {
    if (p.IsMap()) {
      rd.allow_keys(p, "policy", {"id", "cascade"});
      if (p["cascade"]) s.policy.cascade = rd.boolean(p["cascade"], "policy.cascade");
    }
    const YAML::Node id = p.IsMap() ? rd.require(p, "policy", "id") : p;
    const std::string key = p.IsMap() ? "policy.id" : "policy";
    try {
      s.policy.id = parse_policy(rd.text(id, key));
    } catch (const std::invalid_argument& e) {
      rd.fail(id, key, e.what());
    }
  }

  if (const YAML::Node r = root["replication"]) {
    rd.allow_keys(r, "replication",
                  {"horizon_days", "horizon_minutes", "warmup_hours", "warmup_minutes", "replications"});
    if (r["horizon_days"]) s.replication.horizon = kDayMinutes * rd.positive(r["horizon_days"], "replication.horizon_days");
    if (r["horizon_minutes"]) s.replication.horizon = rd.positive(r["horizon_minutes"], "replication.horizon_minutes");
    if (r["warmup_hours"]) s.replication.warmup = 60.0 * rd.non_negative(r["warmup_hours"], "replication.warmup_hours");
    if (r["warmup_minutes"]) s.replication.warmup = rd.non_negative(r["warmup_minutes"], "replication.warmup_minutes");
    if (r["replications"]) {
      s.replications = rd.integer(r["replications"], "replication.replications");
      if (s.replications < 2) rd.fail(r["replications"], "replication.replications", "must be >= 2");
    }
    if (!(s.replication.warmup < s.replication.horizon)) rd.fail(r, "replication", "warm-up must be shorter than the horizon");
  }

  if (const YAML::Node o = root["objective"]) {
    rd.allow_keys(o, "objective", {"w1", "w2", "w3", "yellow_threshold", "red_threshold", "constraint_level"});
    if (o["w1"]) s.objective.w1 = rd.non_negative(o["w1"], "objective.w1");
    if (o["w2"]) s.objective.w2 = rd.non_negative(o["w2"], "objective.w2");
    if (o["w3"]) s.objective.w3 = rd.non_negative(o["w3"], "objective.w3");
    if (o["yellow_threshold"]) s.objective.yellow_threshold = rd.positive(o["yellow_threshold"], "objective.yellow_threshold");
    if (o["red_threshold"]) s.objective.red_threshold = rd.positive(o["red_threshold"], "objective.red_threshold");
    if (o["constraint_level"]) {
      const auto lvl = rd.text(o["constraint_level"], "objective.constraint_level");
      if (lvl == "ci_upper") s.objective.constraints_use_ci_upper = true;
      else if (lvl != "mean") rd.fail(o["constraint_level"], "objective.constraint_level", "expected 'mean' or 'ci_upper'");
    }
  }

  if (const YAML::Node b = root["bounds"]) {
    rd.allow_keys(b, "bounds", {"lower", "upper"});
    if (b["lower"]) s.bounds.lower = rd.integer(b["lower"], "bounds.lower");
    if (b["upper"]) s.bounds.upper = rd.integer(b["upper"], "bounds.upper");
    if (s.bounds.lower < 1 || s.bounds.lower > s.bounds.upper) rd.fail(b, "bounds", "need 1 <= lower <= upper");
  }

  const YAML::Node eds = rd.require(root, "", "eds");
  const auto ed_nodes = rd.sequence(eds, "eds", 0);
  if (ed_nodes.empty()) rd.fail(eds, "eds", "at least one ED is required");
  if (s.paper_mode && ed_nodes.size() != 6) {
    rd.fail(eds, "eds", "paper mode needs exactly 6 EDs, got " + std::to_string(ed_nodes.size()));
  }
  std::vector<std::optional<std::array<int, kSlotsPerDay>>> plan_rows(ed_nodes.size());
  for (std::size_t i = 0; i < ed_nodes.size(); ++i) {
    s.eds.push_back(parse_ed(rd, ed_nodes[i], Reader::index("eds", i), i, plan_rows[i]));
  }
  std::size_t with_plan = 0;
  for (const auto& r : plan_rows) with_plan += r.has_value();
  if (with_plan != 0 && with_plan != plan_rows.size()) {
    rd.fail(eds, "eds", "start_plan must be given for every ED or for none");
  }
  if (with_plan != 0) {
    ResourcePlan plan;
    for (std::size_t i = 0; i < plan_rows.size(); ++i) {
      for (int v : *plan_rows[i]) {
        if (v < s.bounds.lower || v > s.bounds.upper) {
          rd.fail(ed_nodes[i]["start_plan"], Reader::join(Reader::index("eds", i), "start_plan"),
                  "entries must lie within the plan bounds");
        }
      }
      plan.n.push_back(*plan_rows[i]);
    }
    s.start_plan = plan;
  }

  const std::size_t n = s.eds.size();
  if (n == 1 && !root["transfer_minutes"]) {
    s.transfer.minutes = {{0.0}};
  } else {
    const YAML::Node t = rd.require(root, "", "transfer_minutes");
    const auto rows = rd.sequence(t, "transfer_minutes", n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string rk = Reader::index("transfer_minutes", i);
      const auto cols = rd.sequence(rows[i], rk, n);
      std::vector<double> row;
      for (std::size_t j = 0; j < n; ++j) {
        const std::string ck = Reader::index(rk, j);
        const double v = rd.number(cols[j], ck);
        if (i == j && v != 0.0) rd.fail(cols[j], ck, "diagonal transfer time must be 0");
        if (i != j && !(v > 0.0)) rd.fail(cols[j], ck, "off-diagonal transfer time must be > 0");
        row.push_back(v);
      }
      s.transfer.minutes.push_back(std::move(row));
    }
  }

  try {
    s.validate();
  } catch (const ConfigError& e) {
    rd.fail(root, "", e.what());
  }
  return s;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
  const Reader rd(origin);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ScenarioError(origin + ":" + std::to_string(e.mark.line + 1) + ": syntax error: " + e.msg);
  }
  if (!root.IsMap()) throw ScenarioError(origin + ": scenario must be a YAML mapping");
  return parse_root(rd, root);
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path.string() + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path.string());
}

}  // namespace edsbo
