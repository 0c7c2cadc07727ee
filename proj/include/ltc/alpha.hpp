#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "ltc/diagram.hpp"
#include "ltc/flow.hpp"

namespace ltc {

/// Maximum total size of r disjoint stable sets of the rook graph of D.
///
/// Computed as a maximum flow: source -> row (capacity r), row -> column per
/// box (capacity 1), column -> sink (capacity r). Valid for any box set.
inline std::int64_t alpha_r_flow(const Diagram& d, int r) {
  if (r < 1) throw std::invalid_argument("alpha_r_flow: r must be positive");
  return static_cast<std::int64_t>(degree_bounded_subgraph(d.boxes(), r).size());
}

inline constexpr std::size_t kBruteforceDefaultCap = 20;

struct DiagramTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Exhaustive-search value of alpha_r: every box gets one of r colors or
/// none, colors are opened in order, and branches are cut by a per-row
/// capacity bound. Kept deliberately independent of the flow routine.
inline std::int64_t alpha_r_bruteforce(const Diagram& d, int r, std::size_t cap = kBruteforceDefaultCap) {
  if (r < 1) throw std::invalid_argument("alpha_r_bruteforce: r must be positive");
  if (d.size() > cap)
    throw DiagramTooLarge("alpha_r_bruteforce: diagram has " + std::to_string(d.size()) +
                          " boxes, cap is " + std::to_string(cap));
  if (d.empty()) return 0;
  if (r > 30) r = 30;

  std::map<int, int> row_id;
  std::map<int, int> col_id;
  for (const Box& b : d.boxes()) {
    row_id.emplace(b.row, static_cast<int>(row_id.size()));
    col_id.emplace(b.col, static_cast<int>(col_id.size()));
  }
  const int n = static_cast<int>(d.size());
  std::vector<int> row(static_cast<std::size_t>(n));
  std::vector<int> col(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    row[static_cast<std::size_t>(i)] = row_id.at(d.boxes()[static_cast<std::size_t>(i)].row);
    col[static_cast<std::size_t>(i)] = col_id.at(d.boxes()[static_cast<std::size_t>(i)].col);
  }
  const int rows = static_cast<int>(row_id.size());
  std::vector<int> row_size(static_cast<std::size_t>(rows), 0);
  for (int i = 0; i < n; ++i) ++row_size[static_cast<std::size_t>(row[static_cast<std::size_t>(i)])];
  // after[t]: capacity bound contributed by rows strictly below row t
  std::vector<int> after(static_cast<std::size_t>(rows), 0);
  for (int t = rows - 2; t >= 0; --t)
    after[static_cast<std::size_t>(t)] =
        after[static_cast<std::size_t>(t) + 1] + std::min(r, row_size[static_cast<std::size_t>(t) + 1]);

  std::vector<std::uint32_t> row_used(static_cast<std::size_t>(rows), 0);
  std::vector<std::uint32_t> col_used(col_id.size(), 0);
  int best = 0;

  auto rec = [&](auto&& self, int i, int colored, int opened) -> void {
    if (colored > best) best = colored;
    if (i == n || best == n) return;
    const auto ii = static_cast<std::size_t>(i);
    const int rr = row[ii];
    int left_in_row = 0;
    for (int t = i; t < n && row[static_cast<std::size_t>(t)] == rr; ++t) ++left_in_row;
    const int free_in_row = r - __builtin_popcount(row_used[static_cast<std::size_t>(rr)]);
    if (colored + std::min(free_in_row, left_in_row) + after[static_cast<std::size_t>(rr)] <= best) return;

    const int cc = col[ii];
    for (int c = 0; c < std::min(r, opened + 1); ++c) {
      const std::uint32_t bit = 1u << c;
      if ((row_used[static_cast<std::size_t>(rr)] & bit) || (col_used[static_cast<std::size_t>(cc)] & bit)) continue;
      row_used[static_cast<std::size_t>(rr)] |= bit;
      col_used[static_cast<std::size_t>(cc)] |= bit;
      self(self, i + 1, colored + 1, std::max(opened, c + 1));
      row_used[static_cast<std::size_t>(rr)] &= ~bit;
      col_used[static_cast<std::size_t>(cc)] &= ~bit;
    }
    self(self, i + 1, colored, opened);
  };
  rec(rec, 0, 0, 0);
  return best;
}

}  // namespace ltc
