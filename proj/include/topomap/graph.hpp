#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace topomap {

enum class Flavor { classical, quantum };
enum class EdgeKind { data, gate_pair, continuity };

std::string_view to_string(Flavor f);
std::string_view to_string(EdgeKind k);

struct Task {
  int id = 0;
  /// Per cost-type computation costs (classical). Empty for gate tasks.
  std::vector<double> costs;
  /// Gate mnemonic and logical qubit of a gate task; unset for classical tasks.
  std::string gate;
  int logical_qubit = -1;
  /// Index of the circuit gate this task came from, -1 for classical tasks.
  int gate_id = -1;
};

struct Edge {
  int id = 0;
  int src = 0;
  int dst = 0;
  double weight = 0.0;
  EdgeKind kind = EdgeKind::data;
};

/// Weighted DAG of tasks. Classical graphs carry data edges only; quantum
/// graphs carry gate-pair and continuity edges. Immutable once constructed.
class TaskGraph {
 public:
  TaskGraph() = default;
  /// Validates id uniqueness, endpoint references, edge kinds and acyclicity.
  TaskGraph(Flavor flavor, std::vector<Task> tasks, std::vector<Edge> edges);

  Flavor flavor() const noexcept { return flavor_; }
  std::span<const Task> tasks() const noexcept { return tasks_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return tasks_.size(); }

  bool contains(int task_id) const;
  std::size_t index_of(int task_id) const;
  const Task& task(int task_id) const { return tasks_[index_of(task_id)]; }

  /// Edge indices leaving / entering the task at `task_index`.
  std::span<const std::size_t> out_edges(std::size_t task_index) const {
    return out_[task_index];
  }
  std::span<const std::size_t> in_edges(std::size_t task_index) const {
    return in_[task_index];
  }

  /// Task indices in a topological order (Kahn, smallest id first).
  const std::vector<std::size_t>& topological_order() const noexcept {
    return topo_;
  }

  /// Number of circuit qubits for quantum graphs, 0 otherwise.
  int logical_qubits() const noexcept { return logical_qubits_; }
  void set_logical_qubits(int n) { logical_qubits_ = n; }

  friend bool operator==(const TaskGraph& a, const TaskGraph& b);

 private:
  Flavor flavor_ = Flavor::classical;
  std::vector<Task> tasks_;
  std::vector<Edge> edges_;
  std::map<int, std::size_t> index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::size_t> topo_;
  int logical_qubits_ = 0;
};

TaskGraph parse_tcg(std::string_view text);
std::string serialize_tcg(const TaskGraph& graph);

/// Gate-list circuit: `q <n>` then `g <id> <kind> <q0> [<q1>]` in program order.
TaskGraph parse_circuit(std::string_view text);

bool is_two_qubit_gate(std::string_view kind);
bool is_known_gate(std::string_view kind);

enum class ArchKind { classical, quantum };

struct Unit {
  int id = 0;
  /// Classical: per cost-type multipliers. Quantum: {single-qubit fidelity}.
  std::vector<double> attrs;
};

struct Link {
  int src = 0;
  int dst = 0;
  bool directed = false;
  /// Link cost (classical) or two-qubit gate fidelity src -> dst (quantum).
  double attr = 0.0;
};

struct MeshShape {
  int rows = 0;
  int cols = 0;
};

/// Processing-unit or physical-qubit topology with an all-pairs hop table.
class Architecture {
 public:
  Architecture() = default;

  /// Row-major `rows` x `cols` grid with 4-neighbour links. Missing
  /// multiplier rows default to {1}.
  static Architecture mesh(int rows, int cols, double link_cost,
                           std::vector<std::vector<double>> multipliers = {});
  /// `f1[q]` is the single-qubit gate fidelity of qubit q; links are directed
  /// two-qubit couplings carrying their fidelity.
  static Architecture quantum(std::vector<double> f1, std::vector<Link> links,
                              std::optional<double> f_swap = std::nullopt);

  ArchKind kind() const noexcept { return kind_; }
  std::size_t unit_count() const noexcept { return units_.size(); }
  std::span<const Unit> units() const noexcept { return units_; }
  std::span<const Link> links() const noexcept { return links_; }
  std::optional<MeshShape> mesh_shape() const noexcept { return mesh_; }
  double link_cost() const noexcept { return link_cost_; }

  /// Shortest path length ignoring link direction.
  int hop_count(int p1, int p2) const;
  /// hop_count scaled by the link cost (classical) or the bare hop count (quantum).
  double hop_cost(int p1, int p2) const;
  int diameter() const;

  /// Multiplier for one cost type; 1 when the unit lists fewer types.
  double multiplier(int unit, std::size_t cost_type) const;
  /// Sum over cost types of task cost times unit multiplier.
  double computation_cost(const Task& task, int unit) const;

  double single_qubit_fidelity(int unit) const;
  /// Fidelity of a two-qubit gate with control on `ctl` and target on `tgt`,
  /// or nullopt when that directed coupling is not available.
  std::optional<double> gate_fidelity(int ctl, int tgt) const;

  /// Configured SWAP fidelity, else (mean two-qubit fidelity)^3.
  /// Throws ConfigError when neither is available.
  double f_swap() const;
  bool has_f_swap() const noexcept;
  std::optional<double> explicit_f_swap() const noexcept { return f_swap_; }

  void check_unit(int unit) const;

 private:
  void finish();

  ArchKind kind_ = ArchKind::classical;
  std::vector<Unit> units_;
  std::vector<Link> links_;
  std::optional<MeshShape> mesh_;
  double link_cost_ = 1.0;
  std::optional<double> f_swap_;
  std::vector<int> hops_;
  std::map<std::pair<int, int>, double> directed_;
};

/// Auto-detects `.arc` (mesh) or `.arcq` (qubits) syntax.
Architecture parse_arch(std::string_view text);
std::string serialize_arch(const Architecture& arch);

/// Convenience wrapper with argument validation.
double hop_cost(const Architecture& arch, int p1, int p2);

struct LevelSchedule {
  /// Task ids per dependency level, ascending within a level.
  std::vector<std::vector<int>> levels;
  std::map<int, std::size_t> level_of;
  std::size_t capacity = 0;

  std::size_t level_count() const noexcept { return levels.size(); }
  std::size_t task_count() const noexcept { return level_of.size(); }
};

/// ASAP levels followed by capacity adjustment: when a level holds more
/// tasks than `capacity`, the largest ids move to the next level and
/// dependants are pushed down as needed. Gate-pair partners move together.
LevelSchedule compute_levels(const TaskGraph& graph, std::size_t capacity);
LevelSchedule compute_levels(const TaskGraph& graph, const Architecture& arch);

}  // namespace topomap
