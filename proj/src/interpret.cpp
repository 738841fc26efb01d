#include "topomap/interpret.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "topomap/error.hpp"

namespace topomap {

std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::multi_unit: return "multi-unit";
    case ViolationKind::unassigned: return "unassigned";
    case ViolationKind::level_collision: return "level-collision";
    case ViolationKind::illegal_gate_pair: return "illegal-gate-pair";
  }
  return "?";
}

namespace {

// Collisions and gate-pair legality among the placed tasks in `scope`.
void check_placement(Assignment& a, const std::set<int>& scope, const TaskGraph& graph,
                     const Architecture& arch) {
  std::map<std::pair<std::size_t, int>, std::vector<int>> occupancy;
  for (auto [task, unit] : a.placement) {
    if (!scope.count(task)) continue;
    occupancy[{a.schedule.level_of.at(task), unit}].push_back(task);
  }
  for (auto& [slot, tasks] : occupancy)
    if (tasks.size() > 1)
      a.violations.push_back({ViolationKind::level_collision, tasks, {slot.second}});

  if (graph.flavor() != Flavor::quantum) return;
  for (const auto& e : graph.edges()) {
    if (e.kind != EdgeKind::gate_pair || !scope.count(e.src) || !scope.count(e.dst)) continue;
    auto s = a.placement.find(e.src), d = a.placement.find(e.dst);
    if (s == a.placement.end() || d == a.placement.end()) continue;
    if (!arch.gate_fidelity(s->second, d->second))
      a.violations.push_back(
          {ViolationKind::illegal_gate_pair, {e.src, e.dst}, {s->second, d->second}});
  }
}

std::string describe(const std::vector<Violation>& vs) {
  std::ostringstream os;
  os << vs.size() << " violation(s):";
  for (const auto& v : vs) {
    os << ' ' << to_string(v.kind) << '[';
    for (std::size_t i = 0; i < v.tasks.size(); ++i) os << (i ? "," : "") << v.tasks[i];
    os << ']';
  }
  return os.str();
}

void require_complete(const Assignment& a, const TaskGraph& graph) {
  if (!a.valid()) throw InvalidAssignmentError(describe(a.violations));
  for (const auto& t : graph.tasks())
    if (!a.placement.count(t.id))
      throw InvalidAssignmentError("task " + std::to_string(t.id) + " is not placed");
}

}  // namespace

Assignment decode(const QuboProblem& q, std::span<const std::uint8_t> bits,
                  const TaskGraph& graph, const Architecture& arch,
                  const LevelSchedule& schedule) {
  if (bits.size() != q.n_vars())
    throw DimensionError("bit vector has " + std::to_string(bits.size()) +
                         " entries, problem has " + std::to_string(q.n_vars()));
  Assignment a;
  a.schedule = schedule;
  std::map<int, std::vector<int>> chosen;
  std::set<int> scope;
  for (std::size_t i = 0; i < q.var_map.size(); ++i) {
    scope.insert(q.var_map[i].task);
    if (bits[i]) chosen[q.var_map[i].task].push_back(q.var_map[i].unit);
  }
  for (int task : scope) {
    auto it = chosen.find(task);
    if (it == chosen.end())
      a.violations.push_back({ViolationKind::unassigned, {task}, {}});
    else if (it->second.size() > 1)
      a.violations.push_back({ViolationKind::multi_unit, {task}, it->second});
    else
      a.placement[task] = it->second.front();
  }
  check_placement(a, scope, graph, arch);
  return a;
}

Assignment make_assignment(std::map<int, int> placement, const TaskGraph& graph,
                           const Architecture& arch, const LevelSchedule& schedule) {
  Assignment a;
  a.schedule = schedule;
  a.placement = std::move(placement);
  std::set<int> scope;
  for (const auto& t : graph.tasks()) {
    scope.insert(t.id);
    auto it = a.placement.find(t.id);
    if (it == a.placement.end())
      a.violations.push_back({ViolationKind::unassigned, {t.id}, {}});
    else
      arch.check_unit(it->second);
  }
  for (const auto& [task, unit] : a.placement)
    if (!graph.contains(task)) throw ReferenceError("placement names unknown task " + std::to_string(task));
  check_placement(a, scope, graph, arch);
  return a;
}

BitVector encode(const QuboProblem& q, const std::map<int, int>& placement) {
  BitVector bits(q.n_vars(), 0);
  for (std::size_t i = 0; i < q.var_map.size(); ++i) {
    auto it = placement.find(q.var_map[i].task);
    if (it != placement.end() && it->second == q.var_map[i].unit) bits[i] = 1;
  }
  return bits;
}

const std::vector<Violation>& validate(const Assignment& a) { return a.violations; }

CostReport mtom_classical(const Assignment& a, const TaskGraph& graph,
                          const Architecture& arch) {
  require_complete(a, graph);
  CostReport r;
  r.per_level.resize(a.schedule.level_count());
  for (std::size_t L = 0; L < r.per_level.size(); ++L) r.per_level[L].level = L;
  for (const auto& t : graph.tasks()) {
    double c = arch.computation_cost(t, a.placement.at(t.id));
    r.computation += c;
    r.per_level[a.schedule.level_of.at(t.id)].computation += c;
  }
  for (const auto& e : graph.edges()) {
    int s = a.placement.at(e.src), d = a.placement.at(e.dst);
    ++r.edges;
    if (s == d) {
      ++r.local_edges;
      continue;
    }
    double c = e.weight * arch.hop_cost(s, d);
    r.communication += c;
    r.per_level[a.schedule.level_of.at(e.dst)].communication += c;
  }
  r.total = r.computation + r.communication;
  return r;
}

FidelityReport mtom_quantum(const Assignment& a, const TaskGraph& graph,
                            const Architecture& arch) {
  if (graph.flavor() != Flavor::quantum || arch.kind() != ArchKind::quantum)
    throw ConfigError("fidelity report needs a circuit graph and a qubit architecture");
  require_complete(a, graph);
  FidelityReport r;
  for (const auto& t : graph.tasks())
    if (!is_two_qubit_gate(t.gate)) {
      double f = arch.single_qubit_fidelity(a.placement.at(t.id));
      r.fidelity_mapping *= f;
      r.log_fidelity_mapping += std::log(f);
    }
  for (const auto& e : graph.edges()) {
    int s = a.placement.at(e.src), d = a.placement.at(e.dst);
    if (e.kind == EdgeKind::gate_pair) {
      double f = *arch.gate_fidelity(s, d);
      r.fidelity_mapping *= f;
      r.log_fidelity_mapping += std::log(f);
    } else if (e.kind == EdgeKind::continuity) {
      r.n_swaps += arch.hop_count(s, d);
    }
  }
  r.fidelity_swap = arch.f_swap();
  r.fidelity_movement = std::pow(r.fidelity_swap, static_cast<double>(r.n_swaps));
  r.fidelity_total = r.fidelity_mapping * r.fidelity_movement;
  r.log_fidelity_total =
      r.log_fidelity_mapping + static_cast<double>(r.n_swaps) * std::log(r.fidelity_swap);
  return r;
}

}  // namespace topomap
