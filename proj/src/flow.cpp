#include "drtomo/flow.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace drtomo {

namespace {
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
}

FlowGraph::FlowGraph(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {
  if (nodes < 0) throw std::invalid_argument("negative node count");
}

int FlowGraph::add_arc(int from, int to, std::int64_t capacity, std::int64_t cost) {
  if (from < 0 || to < 0 || from >= node_count() || to >= node_count())
    throw std::out_of_range("arc endpoint out of range");
  if (capacity < 0) throw std::invalid_argument("negative capacity");
  const int id = static_cast<int>(arcs_.size() / 2);
  arcs_.push_back({to, head_[static_cast<std::size_t>(from)], capacity, cost});
  head_[static_cast<std::size_t>(from)] = 2 * id;
  arcs_.push_back({from, head_[static_cast<std::size_t>(to)], 0, -cost});
  head_[static_cast<std::size_t>(to)] = 2 * id + 1;
  original_cap_.push_back(capacity);
  return id;
}

std::int64_t FlowGraph::flow(int arc) const {
  return arcs_[static_cast<std::size_t>(2 * arc + 1)].cap;
}

void FlowGraph::reset() {
  for (std::size_t id = 0; id < original_cap_.size(); ++id) {
    arcs_[2 * id].cap = original_cap_[id];
    arcs_[2 * id + 1].cap = 0;
  }
}

bool FlowGraph::bfs_levels(int source, int sink) {
  level_.assign(head_.size(), -1);
  std::queue<int> queue;
  level_[static_cast<std::size_t>(source)] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int e = head_[static_cast<std::size_t>(v)]; e != -1; e = arcs_[static_cast<std::size_t>(e)].next) {
      const Arc& a = arcs_[static_cast<std::size_t>(e)];
      if (a.cap > 0 && level_[static_cast<std::size_t>(a.to)] < 0) {
        level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(v)] + 1;
        queue.push(a.to);
      }
    }
  }
  return level_[static_cast<std::size_t>(sink)] >= 0;
}

std::int64_t FlowGraph::dfs_push(int v, int sink, std::int64_t limit) {
  if (v == sink) return limit;
  for (int& e = iter_[static_cast<std::size_t>(v)]; e != -1; e = arcs_[static_cast<std::size_t>(e)].next) {
    Arc& a = arcs_[static_cast<std::size_t>(e)];
    if (a.cap <= 0 || level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(v)] + 1) continue;
    const std::int64_t pushed = dfs_push(a.to, sink, std::min(limit, a.cap));
    if (pushed > 0) {
      a.cap -= pushed;
      arcs_[static_cast<std::size_t>(e ^ 1)].cap += pushed;
      return pushed;
    }
  }
  return 0;
}

std::int64_t FlowGraph::max_flow(int source, int sink) {
  std::int64_t total = 0;
  if (source == sink) return 0;
  while (bfs_levels(source, sink)) {
    iter_ = head_;
    while (std::int64_t pushed = dfs_push(source, sink, kInf)) total += pushed;
  }
  return total;
}

FlowGraph::CostFlow FlowGraph::min_cost_max_flow(int source, int sink) {
  for (std::size_t e = 0; e < arcs_.size(); e += 2)
    if (arcs_[e].cost < 0) throw std::invalid_argument("min-cost flow requires non-negative costs");

  const std::size_t count = head_.size();
  std::vector<std::int64_t> potential(count, 0);
  std::vector<std::int64_t> dist(count);
  std::vector<int> via(count);
  CostFlow result;
  using Item = std::pair<std::int64_t, int>;

  while (true) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(via.begin(), via.end(), -1);
    dist[static_cast<std::size_t>(source)] = 0;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.push({0, source});
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d != dist[static_cast<std::size_t>(v)]) continue;
      for (int e = head_[static_cast<std::size_t>(v)]; e != -1; e = arcs_[static_cast<std::size_t>(e)].next) {
        const Arc& a = arcs_[static_cast<std::size_t>(e)];
        if (a.cap <= 0) continue;
        const std::int64_t nd = d + a.cost + potential[static_cast<std::size_t>(v)] -
                                potential[static_cast<std::size_t>(a.to)];
        if (nd < dist[static_cast<std::size_t>(a.to)]) {
          dist[static_cast<std::size_t>(a.to)] = nd;
          via[static_cast<std::size_t>(a.to)] = e;
          heap.push({nd, a.to});
        }
      }
    }
    if (dist[static_cast<std::size_t>(sink)] >= kInf) break;
    for (std::size_t v = 0; v < count; ++v)
      if (dist[v] < kInf) potential[v] += dist[v];

    std::int64_t push = kInf;
    for (int v = sink; v != source;) {
      const int e = via[static_cast<std::size_t>(v)];
      push = std::min(push, arcs_[static_cast<std::size_t>(e)].cap);
      v = arcs_[static_cast<std::size_t>(e ^ 1)].to;
    }
    for (int v = sink; v != source;) {
      const int e = via[static_cast<std::size_t>(v)];
      arcs_[static_cast<std::size_t>(e)].cap -= push;
      arcs_[static_cast<std::size_t>(e ^ 1)].cap += push;
      result.cost += push * arcs_[static_cast<std::size_t>(e)].cost;
      v = arcs_[static_cast<std::size_t>(e ^ 1)].to;
    }
    result.flow += push;
  }
  return result;
}

}  // namespace drtomo
