#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "text_util.hpp"
#include "topomap/error.hpp"
#include "topomap/graph.hpp"

namespace topomap {

Architecture Architecture::mesh(int rows, int cols, double link_cost,
                                std::vector<std::vector<double>> multipliers) {
  if (rows <= 0 || cols <= 0)
    throw RangeError("mesh dimensions must be positive");
  if (!(link_cost >= 0)) throw RangeError("link cost must be non-negative");
  Architecture a;
  a.kind_ = ArchKind::classical;
  a.mesh_ = MeshShape{rows, cols};
  a.link_cost_ = link_cost;
  int n = rows * cols;
  if (multipliers.size() > static_cast<std::size_t>(n))
    throw ReferenceError("more PU multiplier rows than mesh units");
  multipliers.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& m = multipliers[static_cast<std::size_t>(i)];
    if (m.empty()) m = {1.0};
    for (double v : m)
      if (v < 0) throw RangeError("PU " + std::to_string(i) + " has a negative multiplier");
    a.units_.push_back({i, std::move(m)});
  }
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int u = r * cols + c;
      if (c + 1 < cols) a.links_.push_back({u, u + 1, false, link_cost});
      if (r + 1 < rows) a.links_.push_back({u, u + cols, false, link_cost});
    }
  a.finish();
  return a;
}

Architecture Architecture::quantum(std::vector<double> f1, std::vector<Link> links,
                                   std::optional<double> f_swap) {
  Architecture a;
  a.kind_ = ArchKind::quantum;
  for (std::size_t q = 0; q < f1.size(); ++q) {
    if (!(f1[q] > 0 && f1[q] <= 1))
      throw RangeError("fidelity of qubit " + std::to_string(q) + " outside (0,1]");
    a.units_.push_back({static_cast<int>(q), {f1[q]}});
  }
  for (auto& l : links) {
    a.check_unit(l.src);
    a.check_unit(l.dst);
    if (l.src == l.dst) throw ReferenceError("self-loop on qubit " + std::to_string(l.src));
    if (!(l.attr > 0 && l.attr <= 1))
      throw RangeError("fidelity of edge " + std::to_string(l.src) + "->" +
                       std::to_string(l.dst) + " outside (0,1]");
    l.directed = true;
    if (!a.directed_.emplace(std::pair{l.src, l.dst}, l.attr).second)
      throw ReferenceError("duplicate edge " + std::to_string(l.src) + "->" +
                           std::to_string(l.dst));
  }
  a.links_ = std::move(links);
  if (f_swap && !(*f_swap > 0 && *f_swap <= 1))
    throw RangeError("fswap outside (0,1]");
  a.f_swap_ = f_swap;
  a.finish();
  return a;
}

void Architecture::finish() {
  const auto n = units_.size();
  if (n == 0) throw ConnectivityError("architecture has no units");
  std::vector<std::vector<int>> adj(n);
  for (const auto& l : links_) {
    adj[static_cast<std::size_t>(l.src)].push_back(l.dst);
    adj[static_cast<std::size_t>(l.dst)].push_back(l.src);
  }
  // Unit-weight links, so breadth-first search from every unit gives the
  // shortest paths.
  hops_.assign(n * n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    int* row = &hops_[s * n];
    std::queue<int> frontier;
    row[s] = 0;
    frontier.push(static_cast<int>(s));
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      for (int w : adj[static_cast<std::size_t>(v)])
        if (row[w] < 0) {
          row[w] = row[v] + 1;
          frontier.push(w);
        }
    }
    for (std::size_t t = 0; t < n; ++t)
      if (row[t] < 0)
        throw ConnectivityError("units " + std::to_string(s) + " and " +
                                std::to_string(t) + " are not connected");
  }
}

void Architecture::check_unit(int unit) const {
  if (unit < 0 || static_cast<std::size_t>(unit) >= units_.size())
    throw ReferenceError("no unit " + std::to_string(unit));
}

int Architecture::hop_count(int p1, int p2) const {
  return hops_[static_cast<std::size_t>(p1) * units_.size() +
               static_cast<std::size_t>(p2)];
}

double Architecture::hop_cost(int p1, int p2) const {
  double hops = hop_count(p1, p2);
  return kind_ == ArchKind::classical ? hops * link_cost_ : hops;
}

int Architecture::diameter() const {
  return hops_.empty() ? 0 : *std::max_element(hops_.begin(), hops_.end());
}

double Architecture::multiplier(int unit, std::size_t cost_type) const {
  const auto& attrs = units_[static_cast<std::size_t>(unit)].attrs;
  return cost_type < attrs.size() ? attrs[cost_type] : 1.0;
}

double Architecture::computation_cost(const Task& task, int unit) const {
  double sum = 0;
  for (std::size_t k = 0; k < task.costs.size(); ++k)
    sum += task.costs[k] * multiplier(unit, k);
  return sum;
}

double Architecture::single_qubit_fidelity(int unit) const {
  return units_[static_cast<std::size_t>(unit)].attrs.at(0);
}

std::optional<double> Architecture::gate_fidelity(int ctl, int tgt) const {
  auto it = directed_.find({ctl, tgt});
  if (it == directed_.end()) return std::nullopt;
  return it->second;
}

bool Architecture::has_f_swap() const noexcept {
  return f_swap_.has_value() || !directed_.empty();
}

double Architecture::f_swap() const {
  if (f_swap_) return *f_swap_;
  if (directed_.empty())
    throw ConfigError("no fswap given and no two-qubit edges to derive it from");
  double mean = 0;
  for (const auto& [key, f] : directed_) mean += f;
  mean /= static_cast<double>(directed_.size());
  return mean * mean * mean;
}

double hop_cost(const Architecture& arch, int p1, int p2) {
  arch.check_unit(p1);
  arch.check_unit(p2);
  return arch.hop_cost(p1, p2);
}

namespace {

Architecture parse_mesh(const std::vector<detail::Line>& lines) {
  std::optional<MeshShape> shape;
  double link_cost = 1.0;
  std::vector<std::pair<std::size_t, std::vector<double>>> pus;
  std::vector<int> pu_ids;
  for (const auto& line : lines) {
    const auto& tok = line.tokens;
    if (tok[0] == "mesh") {
      if (tok.size() != 3 || shape)
        throw ParseError(line.number, "expected a single `mesh <rows> <cols>`");
      shape = MeshShape{detail::to_int(tok[1], line.number),
                        detail::to_int(tok[2], line.number)};
      if (shape->rows <= 0 || shape->cols <= 0)
        throw ParseError(line.number, "mesh dimensions must be positive");
    } else if (tok[0] == "linkcost") {
      if (tok.size() != 2) throw ParseError(line.number, "expected `linkcost <c>`");
      link_cost = detail::to_double(tok[1], line.number);
      if (link_cost < 0) throw RangeError("link cost must be non-negative");
    } else if (tok[0] == "pu") {
      if (tok.size() < 3)
        throw ParseError(line.number, "expected `pu <id> <cost0> [...]`");
      std::vector<double> m;
      for (std::size_t i = 2; i < tok.size(); ++i)
        m.push_back(detail::to_double(tok[i], line.number));
      pu_ids.push_back(detail::to_int(tok[1], line.number));
      pus.emplace_back(line.number, std::move(m));
    } else {
      throw ParseError(line.number, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  if (!shape) throw ParseError(0, "missing `mesh <rows> <cols>`");
  int n = shape->rows * shape->cols;
  std::vector<std::vector<double>> multipliers(static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < pus.size(); ++i) {
    int id = pu_ids[i];
    if (id < 0 || id >= n)
      throw ReferenceError("line " + std::to_string(pus[i].first) + ": PU " +
                           std::to_string(id) + " outside the " +
                           std::to_string(n) + "-unit mesh");
    if (seen[static_cast<std::size_t>(id)])
      throw ParseError(pus[i].first, "duplicate PU " + std::to_string(id));
    seen[static_cast<std::size_t>(id)] = true;
    multipliers[static_cast<std::size_t>(id)] = std::move(pus[i].second);
  }
  return Architecture::mesh(shape->rows, shape->cols, link_cost, std::move(multipliers));
}

Architecture parse_qubits(const std::vector<detail::Line>& lines) {
  int n = -1;
  std::vector<std::pair<int, double>> singles;
  std::vector<Link> links;
  std::optional<double> f_swap;
  for (const auto& line : lines) {
    const auto& tok = line.tokens;
    if (tok[0] == "qubits") {
      if (tok.size() != 2 || n >= 0)
        throw ParseError(line.number, "expected a single `qubits <n>`");
      n = detail::to_int(tok[1], line.number);
      if (n <= 0) throw ParseError(line.number, "qubit count must be positive");
    } else if (tok[0] == "q") {
      if (tok.size() != 3) throw ParseError(line.number, "expected `q <id> <f1>`");
      singles.emplace_back(detail::to_int(tok[1], line.number),
                           detail::to_double(tok[2], line.number));
    } else if (tok[0] == "edge") {
      if (tok.size() != 4)
        throw ParseError(line.number, "expected `edge <src> <dst> <f2>`");
      links.push_back({detail::to_int(tok[1], line.number),
                       detail::to_int(tok[2], line.number), true,
                       detail::to_double(tok[3], line.number)});
    } else if (tok[0] == "fswap") {
      if (tok.size() != 2) throw ParseError(line.number, "expected `fswap <f>`");
      f_swap = detail::to_double(tok[1], line.number);
    } else {
      throw ParseError(line.number, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  if (n < 0) throw ParseError(0, "missing `qubits <n>`");
  std::vector<double> f1(static_cast<std::size_t>(n), 1.0);
  for (auto [q, f] : singles) {
    if (q < 0 || q >= n) throw ReferenceError("no qubit " + std::to_string(q));
    f1[static_cast<std::size_t>(q)] = f;
  }
  return Architecture::quantum(std::move(f1), std::move(links), f_swap);
}

}  // namespace

Architecture parse_arch(std::string_view text) {
  auto lines = detail::tokenize(text);
  for (const auto& line : lines) {
    if (line.tokens[0] == "mesh" || line.tokens[0] == "pu" ||
        line.tokens[0] == "linkcost")
      return parse_mesh(lines);
    if (line.tokens[0] == "qubits" || line.tokens[0] == "q" ||
        line.tokens[0] == "edge" || line.tokens[0] == "fswap")
      return parse_qubits(lines);
  }
  throw ParseError(0, "architecture has neither `mesh` nor `qubits` record");
}

std::string serialize_arch(const Architecture& arch) {
  std::ostringstream os;
  if (arch.kind() == ArchKind::classical) {
    auto shape = arch.mesh_shape().value();
    os << "mesh " << shape.rows << ' ' << shape.cols << '\n'
       << "linkcost " << detail::fmt(arch.link_cost()) << '\n';
    for (const auto& u : arch.units()) {
      os << "pu " << u.id;
      for (double m : u.attrs) os << ' ' << detail::fmt(m);
      os << '\n';
    }
  } else {
    os << "qubits " << arch.unit_count() << '\n';
    for (const auto& u : arch.units())
      os << "q " << u.id << ' ' << detail::fmt(u.attrs.at(0)) << '\n';
    for (const auto& l : arch.links())
      os << "edge " << l.src << ' ' << l.dst << ' ' << detail::fmt(l.attr) << '\n';
    if (auto f = arch.explicit_f_swap()) os << "fswap " << detail::fmt(*f) << '\n';
  }
  return os.str();
}

}  // namespace topomap
