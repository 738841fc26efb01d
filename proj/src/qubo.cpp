#include "topomap/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "topomap/error.hpp"

namespace topomap {

void WeightConfig::validate() const {
  if (!(comp_scale > 0) || !(comm_scale > 0) || !(pref > 0))
    throw ConfigError("weight scales and pref must be positive");
  if (!(big_offset_slack > 0)) throw ConfigError("offset slack must be positive");
}

std::vector<int> QuboProblem::tasks() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < var_map.size(); i += units) out.push_back(var_map[i].task);
  return out;
}

std::optional<std::size_t> QuboProblem::var_index(int task, int unit) const {
  for (std::size_t i = 0; i < var_map.size(); i += units)
    if (var_map[i].task == task) {
      if (unit < 0 || static_cast<std::size_t>(unit) >= units) return std::nullopt;
      return i + static_cast<std::size_t>(unit);
    }
  return std::nullopt;
}

double edge_weight(const Edge& e, const Architecture& arch, const WeightConfig& cfg,
                   int src_unit, int dst_unit) {
  switch (e.kind) {
    case EdgeKind::data:
      return cfg.comm_scale * e.weight * arch.hop_cost(src_unit, dst_unit);
    case EdgeKind::continuity:
      return -std::log(arch.f_swap()) * arch.hop_count(src_unit, dst_unit);
    case EdgeKind::gate_pair:
      if (auto f = arch.gate_fidelity(src_unit, dst_unit)) return cfg.pref * -std::log(*f);
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

namespace {

struct CouplerAccumulator {
  std::size_t n;
  std::unordered_map<std::uint64_t, double> soft;
  std::unordered_map<std::uint64_t, bool> hard;

  std::uint64_t key(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::uint64_t>(i) * n + j;
  }
  void add(std::size_t i, std::size_t j, double v) {
    if (v != 0.0) soft[key(i, j)] += v;
  }
  void constrain(std::size_t i, std::size_t j) { hard[key(i, j)] = true; }
};

}  // namespace

QuboProblem build_level_range_qubo(const TaskGraph& graph, const Architecture& arch,
                                   const LevelSchedule& schedule,
                                   const WeightConfig& cfg, std::size_t first_level,
                                   std::size_t last_level,
                                   std::span<const LinearBias> biases) {
  cfg.validate();
  const bool quantum = graph.flavor() == Flavor::quantum;
  if (quantum != (arch.kind() == ArchKind::quantum))
    throw ConfigError("task graph flavour does not match architecture kind");
  if (schedule.task_count() != graph.size())
    throw ConfigError("schedule does not cover the task graph");

  const std::size_t U = arch.unit_count();
  QuboProblem q;
  q.flavor = graph.flavor();
  q.units = U;
  q.pref = cfg.pref;
  if (schedule.level_count() == 0 || first_level > last_level ||
      first_level >= schedule.level_count())
    return q;
  last_level = std::min(last_level, schedule.level_count() - 1);

  std::vector<int> tasks;
  for (auto L = first_level; L <= last_level; ++L) {
    if (schedule.levels[L].size() > U)
      throw CapacityError("level " + std::to_string(L) + " holds " +
                          std::to_string(schedule.levels[L].size()) +
                          " tasks but only " + std::to_string(U) + " units exist");
    tasks.insert(tasks.end(), schedule.levels[L].begin(), schedule.levels[L].end());
  }
  std::unordered_map<int, std::size_t> pos;
  for (std::size_t k = 0; k < tasks.size(); ++k) pos.emplace(tasks[k], k);
  const std::size_t T = tasks.size();
  const std::size_t n = T * U;
  auto var = [U](std::size_t task_pos, std::size_t unit) { return task_pos * U + unit; };

  const double log_swap = quantum ? -std::log(arch.f_swap()) : 0.0;

  // Non-negative per-(task, unit) costs.
  std::vector<double> cost(n, 0.0);
  for (std::size_t k = 0; k < T; ++k) {
    const Task& t = graph.task(tasks[k]);
    for (std::size_t p = 0; p < U; ++p) {
      int unit = static_cast<int>(p);
      if (!quantum)
        cost[var(k, p)] = cfg.comp_scale * arch.computation_cost(t, unit);
      else if (!is_two_qubit_gate(t.gate))
        cost[var(k, p)] = cfg.pref * -std::log(arch.single_qubit_fidelity(unit));
    }
  }
  for (const auto& b : biases) {
    auto it = pos.find(b.task);
    if (it == pos.end())
      throw ReferenceError("bias for task " + std::to_string(b.task) + " outside the sub-problem");
    if (b.per_unit.size() != U) throw DimensionError("bias vector length differs from unit count");
    for (std::size_t p = 0; p < U; ++p) cost[var(it->second, p)] += b.per_unit[p];
  }

  // Upper bound on the cost of any single-placement solution.
  double upper = 0.0;
  for (std::size_t k = 0; k < T; ++k)
    upper += *std::max_element(cost.begin() + static_cast<long>(var(k, 0)),
                               cost.begin() + static_cast<long>(var(k, 0) + U));

  CouplerAccumulator acc{n, {}, {}};
  for (const auto& e : graph.edges()) {
    auto si = pos.find(e.src), di = pos.find(e.dst);
    if (si == pos.end() || di == pos.end()) continue;
    double edge_max = 0.0;
    for (std::size_t p1 = 0; p1 < U; ++p1)
      for (std::size_t p2 = 0; p2 < U; ++p2) {
        auto a = var(si->second, p1), b = var(di->second, p2);
        int u1 = static_cast<int>(p1), u2 = static_cast<int>(p2);
        double w = 0.0;
        switch (e.kind) {
          case EdgeKind::data:
            w = cfg.comm_scale * e.weight * arch.hop_cost(u1, u2);
            break;
          case EdgeKind::continuity:
            w = log_swap * arch.hop_count(u1, u2);
            break;
          case EdgeKind::gate_pair:
            if (auto f = arch.gate_fidelity(u1, u2)) {
              w = cfg.pref * -std::log(*f);
            } else {
              acc.constrain(a, b);
              continue;
            }
            break;
        }
        edge_max = std::max(edge_max, w);
        acc.add(a, b, w);
      }
    upper += edge_max;
  }

  const double K = upper + cfg.big_offset_slack;
  q.linear.resize(n);
  q.var_map.resize(n);
  for (std::size_t k = 0; k < T; ++k)
    for (std::size_t p = 0; p < U; ++p) {
      q.linear[var(k, p)] = cost[var(k, p)] - K;
      q.var_map[var(k, p)] = {tasks[k], static_cast<int>(p)};
    }
  q.offset = static_cast<double>(T) * K;

  // One unit per task.
  for (std::size_t k = 0; k < T; ++k)
    for (std::size_t p1 = 0; p1 < U; ++p1)
      for (std::size_t p2 = p1 + 1; p2 < U; ++p2) acc.constrain(var(k, p1), var(k, p2));
  // One task per unit within a level.
  for (auto L = first_level; L <= last_level; ++L) {
    const auto& level = schedule.levels[L];
    for (std::size_t a = 0; a < level.size(); ++a)
      for (std::size_t b = a + 1; b < level.size(); ++b)
        for (std::size_t p = 0; p < U; ++p)
          acc.constrain(var(pos[level[a]], p), var(pos[level[b]], p));
  }

  auto by_index = [](const Coupler& a, const Coupler& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  };
  std::vector<Coupler> soft;
  soft.reserve(acc.soft.size());
  for (const auto& [key, v] : acc.soft)
    if (!acc.hard.count(key) && v != 0.0) soft.push_back({key / n, key % n, v, false});
  std::sort(soft.begin(), soft.end(), by_index);

  double magnitude = 0.0;
  for (double h : q.linear) magnitude += std::abs(h);
  for (const auto& c : soft) magnitude += std::abs(c.value);
  q.penalty = 1.0 + magnitude;

  q.couplers = std::move(soft);
  q.couplers.reserve(q.couplers.size() + acc.hard.size());
  for (const auto& [key, flag] : acc.hard)
    q.couplers.push_back({key / n, key % n, q.penalty, true});
  std::sort(q.couplers.begin(), q.couplers.end(), by_index);
  return q;
}

QuboProblem build_classical_qubo(const TaskGraph& graph, const Architecture& arch,
                                 const LevelSchedule& schedule, const WeightConfig& cfg) {
  if (graph.flavor() != Flavor::classical)
    throw ConfigError("classical build needs a classical task graph");
  if (schedule.level_count() == 0) {
    QuboProblem q;
    q.units = arch.unit_count();
    q.pref = cfg.pref;
    return q;
  }
  return build_level_range_qubo(graph, arch, schedule, cfg, 0, schedule.level_count() - 1);
}

QuboProblem build_quantum_qubo(const TaskGraph& graph, const Architecture& arch,
                               const LevelSchedule& schedule, const WeightConfig& cfg) {
  if (graph.flavor() != Flavor::quantum || arch.kind() != ArchKind::quantum)
    throw ConfigError("quantum build needs a circuit graph and a qubit architecture");
  arch.f_swap();
  if (schedule.level_count() == 0) {
    QuboProblem q;
    q.flavor = Flavor::quantum;
    q.units = arch.unit_count();
    q.pref = cfg.pref;
    return q;
  }
  return build_level_range_qubo(graph, arch, schedule, cfg, 0, schedule.level_count() - 1);
}

double energy(const QuboProblem& q, std::span<const std::uint8_t> bits) {
  if (bits.size() != q.n_vars())
    throw DimensionError("bit vector has " + std::to_string(bits.size()) +
                         " entries, problem has " + std::to_string(q.n_vars()));
  double e = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) e += q.linear[i];
  for (const auto& c : q.couplers)
    if (bits[c.i] && bits[c.j]) e += c.value;
  return e;
}

QuboProblem normalize_for_hardware(const QuboProblem& q) {
  double max_h = 0.0, max_j = 0.0;
  for (double h : q.linear) max_h = std::max(max_h, std::abs(h));
  for (const auto& c : q.couplers) max_j = std::max(max_j, std::abs(c.value));
  double s = 1.0;
  if (max_h > 0) s = std::min(s, 2.0 / max_h);
  if (max_j > 0) s = std::min(s, 1.0 / max_j);
  QuboProblem out = q;
  if (s == 1.0) return out;
  for (double& h : out.linear) h *= s;
  for (auto& c : out.couplers) c.value *= s;
  out.penalty *= s;
  out.offset *= s;
  out.scale *= s;
  return out;
}

}  // namespace topomap
