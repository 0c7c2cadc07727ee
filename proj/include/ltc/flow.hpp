#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <vector>

#include "ltc/partition.hpp"

namespace ltc {

/// Dinic max flow on a small dense-ish network.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

  /// Returns an edge id usable with flow_on().
  int add_edge(int from, int to, int cap) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({to, cap});
    adj_[static_cast<std::size_t>(from)].push_back(id);
    edges_.push_back({from, 0});
    adj_[static_cast<std::size_t>(to)].push_back(id + 1);
    return id;
  }

  int run(int source, int sink) {
    int total = 0;
    while (bfs(source, sink)) {
      it_.assign(adj_.size(), 0);
      while (int pushed = dfs(source, sink, std::numeric_limits<int>::max())) total += pushed;
    }
    return total;
  }

  int flow_on(int id) const { return edges_[static_cast<std::size_t>(id) + 1].cap; }

 private:
  struct Edge {
    int to;
    int cap;
  };

  bool bfs(int s, int t) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int id : adj_[static_cast<std::size_t>(u)]) {
        const Edge& e = edges_[static_cast<std::size_t>(id)];
        if (e.cap > 0 && level_[static_cast<std::size_t>(e.to)] < 0) {
          level_[static_cast<std::size_t>(e.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  int dfs(int u, int t, int limit) {
    if (u == t) return limit;
    auto& ids = adj_[static_cast<std::size_t>(u)];
    for (auto& i = it_[static_cast<std::size_t>(u)]; i < ids.size(); ++i) {
      const int id = ids[i];
      Edge& e = edges_[static_cast<std::size_t>(id)];
      if (e.cap <= 0 || level_[static_cast<std::size_t>(e.to)] != level_[static_cast<std::size_t>(u)] + 1)
        continue;
      if (int got = dfs(e.to, t, std::min(limit, e.cap))) {
        e.cap -= got;
        edges_[static_cast<std::size_t>(id ^ 1)].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

/// Compact row/column numbering for a box set viewed as a bipartite graph
/// (rows on one side, columns on the other, boxes as edges).
struct BipartiteIndex {
  std::map<int, int> row_id;
  std::map<int, int> col_id;

  explicit BipartiteIndex(const std::vector<Box>& boxes) {
    for (const Box& b : boxes) {
      row_id.emplace(b.row, static_cast<int>(row_id.size()));
      col_id.emplace(b.col, static_cast<int>(col_id.size()));
    }
  }
  int rows() const { return static_cast<int>(row_id.size()); }
  int cols() const { return static_cast<int>(col_id.size()); }
};

/// A maximum subset of `boxes` in which no row and no column holds more than
/// `cap` boxes. By König's edge-coloring theorem such a subset is exactly a
/// union of `cap` disjoint stable sets.
inline std::vector<Box> degree_bounded_subgraph(const std::vector<Box>& boxes, int cap) {
  if (cap <= 0 || boxes.empty()) return {};
  BipartiteIndex idx(boxes);
  const int source = 0;
  const int sink = 1;
  const int row_base = 2;
  const int col_base = 2 + idx.rows();
  MaxFlow flow(col_base + idx.cols());
  for (int r = 0; r < idx.rows(); ++r) flow.add_edge(source, row_base + r, cap);
  for (int c = 0; c < idx.cols(); ++c) flow.add_edge(col_base + c, sink, cap);
  std::vector<int> edge_ids;
  edge_ids.reserve(boxes.size());
  for (const Box& b : boxes)
    edge_ids.push_back(flow.add_edge(row_base + idx.row_id.at(b.row), col_base + idx.col_id.at(b.col), 1));
  flow.run(source, sink);
  std::vector<Box> chosen;
  for (std::size_t i = 0; i < boxes.size(); ++i)
    if (flow.flow_on(edge_ids[i]) > 0) chosen.push_back(boxes[i]);
  return chosen;
}

inline std::vector<Box> maximum_stable_set(const std::vector<Box>& boxes) {
  return degree_bounded_subgraph(boxes, 1);
}

/// Splits a box set whose rows and columns each hold at most `colors` boxes
/// into `colors` stable sets (proper edge coloring of a bipartite graph by
/// alternating-path flips).
inline std::vector<std::vector<Box>> edge_color_bipartite(const std::vector<Box>& boxes, int colors) {
  BipartiteIndex idx(boxes);
  const auto R = static_cast<std::size_t>(idx.rows());
  const auto C = static_cast<std::size_t>(idx.cols());
  const auto K = static_cast<std::size_t>(std::max(colors, 0));
  std::vector<std::vector<int>> at_row(R, std::vector<int>(K, -1));
  std::vector<std::vector<int>> at_col(C, std::vector<int>(K, -1));

  for (const Box& b : boxes) {
    const int u = idx.row_id.at(b.row);
    const int v = idx.col_id.at(b.col);
    auto& ru = at_row[static_cast<std::size_t>(u)];
    auto& cv = at_col[static_cast<std::size_t>(v)];
    auto a_it = std::find(ru.begin(), ru.end(), -1);
    auto b_it = std::find(cv.begin(), cv.end(), -1);
    if (a_it == ru.end() || b_it == cv.end())
      throw std::invalid_argument("edge_color_bipartite: a row or column exceeds the color budget");
    const int a = static_cast<int>(a_it - ru.begin());
    const int bcol = static_cast<int>(b_it - cv.begin());
    if (cv[static_cast<std::size_t>(a)] != -1) {
      // Swap a/bcol along the alternating path that starts at column v with color a.
      struct PathEdge {
        int row, col, color;
      };
      std::vector<PathEdge> path;
      int x = v;
      bool at_column = true;
      int cur = a;
      for (;;) {
        if (at_column) {
          int y = at_col[static_cast<std::size_t>(x)][static_cast<std::size_t>(cur)];
          if (y < 0) break;
          path.push_back({y, x, cur});
          x = y;
        } else {
          int y = at_row[static_cast<std::size_t>(x)][static_cast<std::size_t>(cur)];
          if (y < 0) break;
          path.push_back({x, y, cur});
          x = y;
        }
        at_column = !at_column;
        cur = (cur == a) ? bcol : a;
      }
      for (const auto& e : path) {
        at_row[static_cast<std::size_t>(e.row)][static_cast<std::size_t>(e.color)] = -1;
        at_col[static_cast<std::size_t>(e.col)][static_cast<std::size_t>(e.color)] = -1;
      }
      for (const auto& e : path) {
        const int nc = (e.color == a) ? bcol : a;
        at_row[static_cast<std::size_t>(e.row)][static_cast<std::size_t>(nc)] = e.col;
        at_col[static_cast<std::size_t>(e.col)][static_cast<std::size_t>(nc)] = e.row;
      }
    }
    ru[static_cast<std::size_t>(a)] = v;
    cv[static_cast<std::size_t>(a)] = u;
  }

  std::vector<int> row_of(R);
  std::vector<int> col_of(C);
  for (const auto& [r, id] : idx.row_id) row_of[static_cast<std::size_t>(id)] = r;
  for (const auto& [c, id] : idx.col_id) col_of[static_cast<std::size_t>(id)] = c;
  std::vector<std::vector<Box>> classes(K);
  for (std::size_t u = 0; u < R; ++u)
    for (std::size_t k = 0; k < K; ++k)
      if (int v = at_row[u][k]; v >= 0) classes[k].push_back({row_of[u], col_of[static_cast<std::size_t>(v)]});
  for (auto& c : classes) std::sort(c.begin(), c.end());
  return classes;
}

}  // namespace ltc
