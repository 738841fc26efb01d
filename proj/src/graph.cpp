#include "topomap/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

#include "text_util.hpp"
#include "topomap/error.hpp"

namespace topomap {

std::string_view to_string(Flavor f) {
  return f == Flavor::classical ? "classical" : "quantum";
}

std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::data: return "data";
    case EdgeKind::gate_pair: return "gate-pair";
    case EdgeKind::continuity: return "continuity";
  }
  return "?";
}

TaskGraph::TaskGraph(Flavor flavor, std::vector<Task> tasks,
                     std::vector<Edge> edges)
    : flavor_(flavor), tasks_(std::move(tasks)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    if (!index_.emplace(tasks_[i].id, i).second)
      throw ReferenceError("duplicate task id " + std::to_string(tasks_[i].id));
    for (double c : tasks_[i].costs)
      if (c < 0)
        throw RangeError("task " + std::to_string(tasks_[i].id) +
                         " has a negative cost");
  }
  out_.resize(tasks_.size());
  in_.resize(tasks_.size());
  std::set<int> edge_ids;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (!edge_ids.insert(edge.id).second)
      throw ReferenceError("duplicate edge id " + std::to_string(edge.id));
    for (int end : {edge.src, edge.dst})
      if (!contains(end))
        throw ReferenceError("edge " + std::to_string(edge.id) +
                             " references missing task " + std::to_string(end));
    if (edge.weight < 0)
      throw RangeError("edge " + std::to_string(edge.id) + " has negative weight");
    bool kind_ok = flavor_ == Flavor::classical ? edge.kind == EdgeKind::data
                                                : edge.kind != EdgeKind::data;
    if (!kind_ok)
      throw ReferenceError("edge " + std::to_string(edge.id) + " of kind " +
                           std::string(to_string(edge.kind)) + " in a " +
                           std::string(to_string(flavor_)) + " graph");
    out_[index_of(edge.src)].push_back(e);
    in_[index_of(edge.dst)].push_back(e);
  }

  // Kahn with smallest task id first.
  std::vector<std::size_t> indegree(tasks_.size());
  for (std::size_t i = 0; i < tasks_.size(); ++i) indegree[i] = in_[i].size();
  auto by_id = [this](std::size_t a, std::size_t b) {
    return tasks_[a].id > tasks_[b].id;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_id)>
      ready(by_id);
  for (std::size_t i = 0; i < tasks_.size(); ++i)
    if (indegree[i] == 0) ready.push(i);
  while (!ready.empty()) {
    auto v = ready.top();
    ready.pop();
    topo_.push_back(v);
    for (auto e : out_[v]) {
      auto d = index_of(edges_[e].dst);
      if (--indegree[d] == 0) ready.push(d);
    }
  }
  if (topo_.size() != tasks_.size()) {
    // Walk backwards through unfinished tasks until one repeats; the edge
    // that closes the walk lies on a cycle.
    std::vector<int> seen(tasks_.size(), -1);
    std::size_t v = 0;
    while (indegree[v] == 0) ++v;
    for (int step = 0;; ++step) {
      seen[v] = step;
      for (auto e : in_[v]) {
        auto s = index_of(edges_[e].src);
        if (indegree[s] == 0) continue;
        if (seen[s] >= 0)
          throw CycleError(edges_[e].id, edges_[e].src, edges_[e].dst);
        v = s;
        break;
      }
    }
  }
}

bool TaskGraph::contains(int task_id) const {
  return index_.find(task_id) != index_.end();
}

std::size_t TaskGraph::index_of(int task_id) const {
  auto it = index_.find(task_id);
  if (it == index_.end())
    throw ReferenceError("no task " + std::to_string(task_id));
  return it->second;
}

bool operator==(const TaskGraph& a, const TaskGraph& b) {
  if (a.flavor_ != b.flavor_ || a.tasks_.size() != b.tasks_.size() ||
      a.edges_.size() != b.edges_.size())
    return false;
  for (std::size_t i = 0; i < a.tasks_.size(); ++i) {
    const auto& x = a.tasks_[i];
    const auto& y = b.tasks_[i];
    if (x.id != y.id || x.costs != y.costs || x.gate != y.gate ||
        x.logical_qubit != y.logical_qubit)
      return false;
  }
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.id != y.id || x.src != y.src || x.dst != y.dst ||
        x.weight != y.weight || x.kind != y.kind)
      return false;
  }
  return true;
}

TaskGraph parse_tcg(std::string_view text) {
  std::vector<Task> tasks;
  std::vector<Edge> edges;
  for (const auto& line : detail::tokenize(text)) {
    const auto& tok = line.tokens;
    if (tok[0] == "t") {
      if (tok.size() < 3)
        throw ParseError(line.number, "task line needs an id and at least one cost");
      Task t;
      t.id = detail::to_int(tok[1], line.number);
      if (t.id < 0) throw ParseError(line.number, "task ids must be non-negative");
      for (std::size_t i = 2; i < tok.size(); ++i)
        t.costs.push_back(detail::to_double(tok[i], line.number));
      tasks.push_back(std::move(t));
    } else if (tok[0] == "e") {
      if (tok.size() != 5)
        throw ParseError(line.number, "edge line is `e <id> <src> <dst> <weight>`");
      edges.push_back({detail::to_int(tok[1], line.number),
                       detail::to_int(tok[2], line.number),
                       detail::to_int(tok[3], line.number),
                       detail::to_double(tok[4], line.number), EdgeKind::data});
    } else {
      throw ParseError(line.number, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  return TaskGraph(Flavor::classical, std::move(tasks), std::move(edges));
}

std::string serialize_tcg(const TaskGraph& graph) {
  std::ostringstream os;
  for (const auto& t : graph.tasks()) {
    os << "t " << t.id;
    for (double c : t.costs) os << ' ' << detail::fmt(c);
    os << '\n';
  }
  for (const auto& e : graph.edges())
    os << "e " << e.id << ' ' << e.src << ' ' << e.dst << ' '
       << detail::fmt(e.weight) << '\n';
  return os.str();
}

namespace {

constexpr std::string_view kOneQubitGates[] = {
    "id", "x",  "y",  "z",  "h",  "s",  "sdg", "t",  "tdg",
    "sx", "rx", "ry", "rz", "u1", "u2", "u3",  "measure"};
constexpr std::string_view kTwoQubitGates[] = {"cx", "cy", "cz", "ch",
                                               "crz", "swap"};

}  // namespace

bool is_two_qubit_gate(std::string_view kind) {
  return std::find(std::begin(kTwoQubitGates), std::end(kTwoQubitGates),
                   kind) != std::end(kTwoQubitGates);
}

bool is_known_gate(std::string_view kind) {
  return is_two_qubit_gate(kind) ||
         std::find(std::begin(kOneQubitGates), std::end(kOneQubitGates),
                   kind) != std::end(kOneQubitGates);
}

TaskGraph parse_circuit(std::string_view text) {
  int qubits = -1;
  std::vector<Task> tasks;
  std::vector<Edge> edges;
  std::vector<int> last_on_qubit;
  std::set<int> gate_ids;
  int next_task = 0;
  int next_edge = 0;

  auto place = [&](int gate_id, std::string_view kind, int q) {
    Task t;
    t.id = next_task++;
    t.gate = std::string(kind);
    t.logical_qubit = q;
    t.gate_id = gate_id;
    if (last_on_qubit[q] >= 0)
      edges.push_back({next_edge++, last_on_qubit[q], t.id, 1.0,
                       EdgeKind::continuity});
    last_on_qubit[q] = t.id;
    tasks.push_back(std::move(t));
    return tasks.back().id;
  };

  for (const auto& line : detail::tokenize(text)) {
    const auto& tok = line.tokens;
    if (tok[0] == "q") {
      if (tok.size() != 2 || qubits >= 0)
        throw ParseError(line.number, "expected a single `q <n>` header");
      qubits = detail::to_int(tok[1], line.number);
      if (qubits <= 0) throw ParseError(line.number, "qubit count must be positive");
      last_on_qubit.assign(static_cast<std::size_t>(qubits), -1);
    } else if (tok[0] == "g") {
      if (qubits < 0) throw ParseError(line.number, "gate before `q <n>` header");
      if (tok.size() < 4)
        throw ParseError(line.number, "gate line is `g <id> <kind> <q0> [<q1>]`");
      int gate_id = detail::to_int(tok[1], line.number);
      if (!gate_ids.insert(gate_id).second)
        throw ParseError(line.number, "duplicate gate id " + std::to_string(gate_id));
      std::string kind(tok[2]);
      std::transform(kind.begin(), kind.end(), kind.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (!is_known_gate(kind))
        throw ParseError(line.number, "unknown gate kind '" + kind + "'");
      std::size_t arity = is_two_qubit_gate(kind) ? 2 : 1;
      if (tok.size() != 3 + arity)
        throw ParseError(line.number, "gate '" + kind + "' takes " +
                                          std::to_string(arity) + " qubit(s)");
      std::vector<int> qs;
      for (std::size_t i = 0; i < arity; ++i) {
        int q = detail::to_int(tok[3 + i], line.number);
        if (q < 0 || q >= qubits)
          throw ReferenceError("line " + std::to_string(line.number) +
                               ": qubit " + std::to_string(q) +
                               " out of range (circuit has " +
                               std::to_string(qubits) + ")");
        qs.push_back(q);
      }
      if (arity == 2 && qs[0] == qs[1])
        throw ParseError(line.number, "two-qubit gate on a single qubit");
      int control = place(gate_id, kind, qs[0]);
      if (arity == 2) {
        int target = place(gate_id, kind, qs[1]);
        edges.push_back({next_edge++, control, target, 1.0, EdgeKind::gate_pair});
      }
    } else {
      throw ParseError(line.number, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  TaskGraph g(Flavor::quantum, std::move(tasks), std::move(edges));
  g.set_logical_qubits(std::max(qubits, 0));
  return g;
}

}  // namespace topomap
