#pragma once

#include <cstdint>
#include <vector>

namespace drtomo {

/// Directed graph with integral capacities and costs. Supports a Dinic max
/// flow and a successive-shortest-path min-cost max flow; both run on the
/// residual network stored in place.
class FlowGraph {
 public:
  explicit FlowGraph(int nodes);

  int node_count() const noexcept { return static_cast<int>(head_.size()); }

  /// Returns the arc id; flow(id) reads the flow after a solve.
  int add_arc(int from, int to, std::int64_t capacity, std::int64_t cost = 0);

  std::int64_t flow(int arc) const;
  int arc_from(int arc) const { return arcs_[static_cast<std::size_t>(2 * arc + 1)].to; }
  int arc_to(int arc) const { return arcs_[static_cast<std::size_t>(2 * arc)].to; }

  std::int64_t max_flow(int source, int sink);

  struct CostFlow {
    std::int64_t flow = 0;
    std::int64_t cost = 0;
  };
  /// Maximum flow of minimum cost. Costs must be non-negative.
  CostFlow min_cost_max_flow(int source, int sink);

  /// Zero every arc flow.
  void reset();

 private:
  struct Arc {
    int to;
    int next;
    std::int64_t cap;  // residual capacity
    std::int64_t cost;
  };

  bool bfs_levels(int source, int sink);
  std::int64_t dfs_push(int v, int sink, std::int64_t limit);

  std::vector<int> head_;
  std::vector<Arc> arcs_;
  std::vector<std::int64_t> original_cap_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace drtomo
