#pragma once

// Integer max-flow (Dinic) and feasibility of flows with arc lower bounds.
//
// Arcs are scanned in insertion order everywhere, so results are a
// deterministic function of the order in which the caller adds arcs.

#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "rholatin/core.hpp"

namespace rholatin {

class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adjacency_(nodes), level_(nodes), cursor_(nodes) {}

  int node_count() const noexcept { return static_cast<int>(adjacency_.size()); }

  int add_node() {
    adjacency_.emplace_back();
    level_.push_back(0);
    cursor_.push_back(0);
    return node_count() - 1;
  }

  /// Adds from -> to with the given capacity; returns an arc handle.
  int add_arc(int from, int to, long long capacity) {
    detail::require(capacity >= 0, "flow: negative capacity");
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, capacity});
    arcs_.push_back({from, 0});
    adjacency_.at(from).push_back(id);
    adjacency_.at(to).push_back(id + 1);
    return id;
  }

  long long flow_on(int arc) const { return arcs_.at(arc ^ 1).capacity; }

  long long solve(int source, int sink) {
    long long total = 0;
    while (build_levels(source, sink)) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      while (long long pushed = augment(source, sink, kInfinity)) total += pushed;
    }
    return total;
  }

  /// Nodes reachable from `source` in the residual graph of the current flow.
  std::vector<bool> residual_reachable(int source) const {
    std::vector<bool> seen(adjacency_.size(), false);
    std::vector<int> stack{source};
    seen[source] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int id : adjacency_[u]) {
        const auto& arc = arcs_[id];
        if (arc.capacity > 0 && !seen[arc.to]) {
          seen[arc.to] = true;
          stack.push_back(arc.to);
        }
      }
    }
    return seen;
  }

  static constexpr long long kInfinity = std::numeric_limits<long long>::max() / 4;

 private:
  struct Arc {
    int to;
    long long capacity;  // residual
  };

  bool build_levels(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int id : adjacency_[u]) {
        const auto& arc = arcs_[id];
        if (arc.capacity > 0 && level_[arc.to] < 0) {
          level_[arc.to] = level_[u] + 1;
          queue.push(arc.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  long long augment(int u, int sink, long long limit) {
    if (u == sink) return limit;
    for (auto& i = cursor_[u]; i < adjacency_[u].size(); ++i) {
      const int id = adjacency_[u][i];
      auto& arc = arcs_[id];
      if (arc.capacity <= 0 || level_[arc.to] != level_[u] + 1) continue;
      if (long long pushed = augment(arc.to, sink, std::min(limit, arc.capacity))) {
        arc.capacity -= pushed;
        arcs_[id ^ 1].capacity += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

/// A network whose arcs carry [lower, upper] bounds. `solve` decides whether
/// some source-to-sink flow of any value respects every bound, by the standard
/// reduction to a max-flow between an auxiliary source and sink.
class BoundedFlow {
 public:
  explicit BoundedFlow(int nodes) : nodes_(nodes), excess_(nodes, 0) {}

  int add_arc(int from, int to, int lower, int upper) {
    detail::require(from >= 0 && from < nodes_ && to >= 0 && to < nodes_, "flow: bad node");
    detail::require(0 <= lower && lower <= upper,
                    detail::concat("flow: arc bounds [", lower, ", ", upper, "] are invalid"));
    arcs_.push_back({from, to, lower, upper});
    excess_[to] += lower;
    excess_[from] -= lower;
    return static_cast<int>(arcs_.size()) - 1;
  }

  struct Result {
    bool feasible = false;
    std::vector<long long> flow;       ///< per arc, in insertion order
    std::vector<bool> auxiliary_side;  ///< node on the auxiliary-source side of a minimum cut
  };

  Result solve(int source, int sink) const {
    MaxFlow net(nodes_ + 2);
    const int super_source = nodes_;
    const int super_sink = nodes_ + 1;
    std::vector<int> handles;
    handles.reserve(arcs_.size());
    for (const auto& a : arcs_) handles.push_back(net.add_arc(a.from, a.to, a.upper - a.lower));
    net.add_arc(sink, source, MaxFlow::kInfinity);
    long long demand = 0;
    for (int v = 0; v < nodes_; ++v) {
      if (excess_[v] > 0) {
        net.add_arc(super_source, v, excess_[v]);
        demand += excess_[v];
      } else if (excess_[v] < 0) {
        net.add_arc(v, super_sink, -excess_[v]);
      }
    }
    Result result;
    result.feasible = net.solve(super_source, super_sink) == demand;
    result.flow.reserve(arcs_.size());
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      result.flow.push_back(arcs_[i].lower + net.flow_on(handles[i]));
    }
    auto reach = net.residual_reachable(super_source);
    result.auxiliary_side.assign(reach.begin(), reach.begin() + nodes_);
    return result;
  }

 private:
  struct Arc {
    int from, to, lower, upper;
  };

  int nodes_;
  std::vector<long long> excess_;
  std::vector<Arc> arcs_;
};

}  // namespace rholatin
