#include <algorithm>
#include <limits>
#include <queue>

#include "topomap/error.hpp"
#include "topomap/graph.hpp"

namespace topomap {

namespace {

constexpr std::size_t kUnscheduled = std::numeric_limits<std::size_t>::max();

// Tasks joined by a gate-pair edge are scheduled as one unit.
struct Groups {
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::size_t> of;
  std::vector<std::vector<std::size_t>> preds;
  std::vector<int> min_id;
};

Groups make_groups(const TaskGraph& g) {
  Groups gr;
  gr.of.assign(g.size(), kUnscheduled);
  auto tasks = g.tasks();
  for (const auto& e : g.edges()) {
    if (e.kind != EdgeKind::gate_pair) continue;
    auto a = g.index_of(e.src), b = g.index_of(e.dst);
    if (gr.of[a] != kUnscheduled || gr.of[b] != kUnscheduled)
      throw ReferenceError("task in more than one gate pair (edge " +
                           std::to_string(e.id) + ")");
    gr.of[a] = gr.of[b] = gr.members.size();
    gr.members.push_back({a, b});
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    if (gr.of[i] == kUnscheduled) {
      gr.of[i] = gr.members.size();
      gr.members.push_back({i});
    }
  gr.preds.resize(gr.members.size());
  for (const auto& e : g.edges()) {
    if (e.kind == EdgeKind::gate_pair) continue;
    auto s = gr.of[g.index_of(e.src)], d = gr.of[g.index_of(e.dst)];
    if (s == d) throw CycleError(e.id, e.src, e.dst);
    gr.preds[d].push_back(s);
  }
  for (auto& p : gr.preds) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
  }
  for (const auto& m : gr.members) {
    int lo = std::numeric_limits<int>::max();
    for (auto i : m) lo = std::min(lo, tasks[i].id);
    gr.min_id.push_back(lo);
  }
  return gr;
}

std::vector<std::size_t> asap_levels(const TaskGraph& g, const Groups& gr) {
  const auto n = gr.members.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n);
  for (std::size_t d = 0; d < n; ++d)
    for (auto s : gr.preds[d]) {
      succ[s].push_back(d);
      ++indegree[d];
    }
  std::vector<std::size_t> asap(n, 0);
  std::queue<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::size_t done = 0;
  while (!ready.empty()) {
    auto v = ready.front();
    ready.pop();
    ++done;
    for (auto w : succ[v]) {
      asap[w] = std::max(asap[w], asap[v] + 1);
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (done != n) {
    // Merging gate pairs closed a cycle; report an edge between unfinished groups.
    for (const auto& e : g.edges()) {
      auto s = gr.of[g.index_of(e.src)], d = gr.of[g.index_of(e.dst)];
      if (indegree[s] > 0 && indegree[d] > 0 && s != d)
        throw CycleError(e.id, e.src, e.dst);
    }
    throw CycleError(-1, -1, -1);
  }
  return asap;
}

}  // namespace

LevelSchedule compute_levels(const TaskGraph& graph, std::size_t capacity) {
  LevelSchedule out;
  out.capacity = capacity;
  if (graph.size() == 0) return out;
  if (capacity == 0) throw CapacityError("architecture has no units");

  Groups gr = make_groups(graph);
  auto asap = asap_levels(graph, gr);
  const auto n = gr.members.size();
  std::vector<std::size_t> level(n, kUnscheduled);

  std::vector<std::size_t> pending(n);
  for (std::size_t v = 0; v < n; ++v) pending[v] = v;
  std::sort(pending.begin(), pending.end(), [&](auto a, auto b) {
    return gr.min_id[a] < gr.min_id[b];
  });

  for (std::size_t L = 0; !pending.empty(); ++L) {
    std::vector<std::size_t> taken;
    std::vector<std::size_t> rest;
    std::size_t load = 0;
    bool cut = false;
    for (auto v : pending) {
      bool ready = asap[v] <= L;
      for (auto p : gr.preds[v])
        if (level[p] == kUnscheduled || level[p] >= L) ready = false;
      // Deferred work is cut by id: once one eligible group does not fit,
      // every larger id waits for the next level.
      if (ready && !cut && load + gr.members[v].size() <= capacity) {
        taken.push_back(v);
        load += gr.members[v].size();
      } else {
        if (ready) cut = true;
        rest.push_back(v);
      }
    }
    if (taken.empty())
      throw CapacityError("a gate pair needs two units but capacity is " +
                          std::to_string(capacity));
    std::vector<int> ids;
    for (auto v : taken) {
      level[v] = L;
      for (auto i : gr.members[v]) ids.push_back(graph.tasks()[i].id);
    }
    std::sort(ids.begin(), ids.end());
    for (int id : ids) out.level_of[id] = L;
    out.levels.push_back(std::move(ids));
    pending = std::move(rest);
  }
  return out;
}

LevelSchedule compute_levels(const TaskGraph& graph, const Architecture& arch) {
  return compute_levels(graph, arch.unit_count());
}

}  // namespace topomap
