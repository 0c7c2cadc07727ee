#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltc/cds.hpp"
#include "ltc/diagram.hpp"
#include "ltc/flow.hpp"

namespace ltc {

using Prefix3 = std::array<int, 3>;  // (nd_2, nd_3, nd_4)

inline std::string to_string(const Prefix3& p) {
  return "(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + "," + std::to_string(p[2]) + ")";
}

/// Raised when a construction cannot place its boxes; carries a full
/// description of where it stopped. Never swallowed into an invalid result.
struct PatternGap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnreachablePrefix : std::logic_error {
  using std::logic_error::logic_error;
};

struct PreconditionViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Four disjoint stable sets meant to have sizes delta_1..delta_4.
struct PartialColoring4 {
  std::array<std::vector<Box>, 4> sets;
  std::array<int, 4> target{};
  Prefix3 prefix{};
  std::string method;             // which construction produced it
  bool matching_completion = false;  // filler boxes placed by bipartite matching

  std::array<int, 4> sizes() const {
    return {static_cast<int>(sets[0].size()), static_cast<int>(sets[1].size()), static_cast<int>(sets[2].size()),
            static_cast<int>(sets[3].size())};
  }

  Coloring as_coloring() const {
    Coloring k;
    for (int c = 0; c < 4; ++c)
      for (const Box& b : sets[static_cast<std::size_t>(c)]) k.set(b, c + 1);
    return k;
  }
};

/// Empty string if the sets are in lambda, pairwise disjoint, stable and
/// of the target sizes; otherwise the first problem found.
inline std::string check_partial_coloring(const Partition& lambda, const PartialColoring4& pc) {
  std::set<Box> seen;
  for (int c = 0; c < 4; ++c) {
    const auto& s = pc.sets[static_cast<std::size_t>(c)];
    for (const Box& b : s) {
      if (!lambda.contains(b)) return "S" + std::to_string(c + 1) + " box " + to_string(b) + " is outside the diagram";
      if (!seen.insert(b).second) return "box " + to_string(b) + " is in two sets";
    }
    if (!is_stable(s)) return "S" + std::to_string(c + 1) + " is not stable";
    if (static_cast<int>(s.size()) != pc.target[static_cast<std::size_t>(c)])
      return "S" + std::to_string(c + 1) + " has " + std::to_string(s.size()) + " boxes, target " +
             std::to_string(pc.target[static_cast<std::size_t>(c)]);
  }
  return {};
}

inline Prefix3 prefix3(const Partition& lambda) {
  auto nd = normalized_prefix(lambda, 4);
  return {nd[1], nd[2], nd[3]};
}

inline bool is_hard_prefix(const Prefix3& p) {
  static const std::set<Prefix3> hard = {{0, 0, 2}, {0, 1, 2}, {0, 2, 2}, {1, 1, 2}, {1, 2, 2}};
  return hard.contains(p);
}

/// The 13 values of (nd_2, nd_3, nd_4) that occur.
inline const std::set<Prefix3>& realizable_prefixes() {
  static const std::set<Prefix3> all = {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}, {0, 0, 3}, {0, 1, 3}, {1, 1, 3},
                                        {1, 2, 3}, {0, 0, 2}, {0, 1, 2}, {0, 2, 2}, {1, 1, 2}, {1, 2, 2}};
  return all;
}

/// Boxes of antidiagonal delta1 that are not in the diagram, by row.
inline std::vector<Box> missing_boxes(const Partition& lambda) {
  return antidiagonal(lambda, delta1(lambda)).missing;
}

namespace detail {

inline std::array<int, 4> cds_target(const CdsProfile& p) {
  return {p.delta_at(1), p.delta_at(2), p.delta_at(3), p.delta_at(4)};
}

inline std::vector<Box> present_on(const Partition& lambda, int k) {
  if (k < 0) return {};
  return antidiagonal(lambda, k).present;
}

/// Occupancy of the four sets, for conflict checks while building.
struct Board {
  const Partition& lambda;
  std::map<Box, int> color;
  std::array<std::set<int>, 4> rows, cols;

  explicit Board(const Partition& l) : lambda(l) {}

  bool can_place(Box b, int c) const {
    return lambda.contains(b) && !color.contains(b) && !rows[static_cast<std::size_t>(c)].contains(b.row) &&
           !cols[static_cast<std::size_t>(c)].contains(b.col);
  }
  void place(Box b, int c) {
    color[b] = c;
    rows[static_cast<std::size_t>(c)].insert(b.row);
    cols[static_cast<std::size_t>(c)].insert(b.col);
  }
  void remove(Box b) {
    int c = color.at(b);
    color.erase(b);
    rows[static_cast<std::size_t>(c)].erase(b.row);
    cols[static_cast<std::size_t>(c)].erase(b.col);
  }
  int count(int c) const {
    return static_cast<int>(rows[static_cast<std::size_t>(c)].size());
  }
  std::vector<Box> set(int c) const {
    std::vector<Box> out;
    for (const auto& [b, cc] : color)
      if (cc == c) out.push_back(b);
    return out;
  }
};

/// Grows set c to `target` boxes with a maximum stable set of the boxes
/// that are uncolored and clear of c's rows and columns.
inline bool complete_by_matching(Board& board, int c, int target) {
  if (board.count(c) >= target) return true;
  std::vector<Box> avail;
  for (const Box& b : boxes_of(board.lambda))
    if (board.can_place(b, c)) avail.push_back(b);
  for (const Box& b : maximum_stable_set(avail)) {
    if (board.count(c) >= target) break;
    board.place(b, c);
  }
  return board.count(c) >= target;
}

/// Takes one free box per row, leftmost first, from row `from` up to row 0.
inline void sweep_up(Board& board, int c, int from) {
  for (int r = from; r >= 0; --r) {
    for (int j = 0; j < board.lambda.part(r); ++j) {
      if (board.can_place({r, j}, c)) {
        board.place({r, j}, c);
        break;
      }
    }
  }
}

/// Colors a maximum union of k stable sets (k = target.size()) into k
/// classes; for the counting-forced prefixes the sizes come out right.
inline std::vector<std::vector<Box>> max_union_classes(const std::vector<Box>& boxes, int k) {
  auto classes = edge_color_bipartite(degree_bounded_subgraph(boxes, k), k);
  std::stable_sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return classes;
}

inline PartialColoring4 finish(const Partition& lambda, const Board& board, const CdsProfile& prof, Prefix3 prefix,
                               std::string method, bool matched) {
  PartialColoring4 pc;
  for (int c = 0; c < 4; ++c) pc.sets[static_cast<std::size_t>(c)] = board.set(c);
  pc.target = cds_target(prof);
  pc.prefix = prefix;
  pc.method = std::move(method);
  pc.matching_completion = matched;
  if (auto why = check_partial_coloring(lambda, pc); !why.empty())
    throw PatternGap("construction '" + pc.method + "' for " + to_string(lambda) + " prefix " + to_string(prefix) +
                     ": " + why);
  return pc;
}

/// Trims set c down to `target` by dropping its last boxes in `order`.
inline void trim(Board& board, int c, int target, const std::vector<Box>& order) {
  for (auto it = order.rbegin(); it != order.rend() && board.count(c) > target; ++it)
    if (auto f = board.color.find(*it); f != board.color.end() && f->second == c) board.remove(*it);
}

/// First three sets per the L3 argument: counting-forced unions when
/// nd_3 <= 1, else a forced 2-union plus an upward row sweep.
inline void first_three(Board& board, const CdsProfile& prof, const std::array<int, 2>& p23) {
  const auto boxes = boxes_of(board.lambda);
  if (p23[1] <= 1) {
    auto cls = max_union_classes(boxes, 3);
    for (int c = 0; c < 3; ++c)
      for (const Box& b : cls[static_cast<std::size_t>(c)]) board.place(b, c);
  } else {
    auto cls = max_union_classes(boxes, 2);
    for (int c = 0; c < 2; ++c)
      for (const Box& b : cls[static_cast<std::size_t>(c)]) board.place(b, c);
    sweep_up(board, 2, prof.delta1 - 3);
  }
}

}  // namespace detail

/// The eight prefixes settled by counting arguments and row sweeps.
inline PartialColoring4 easy_cases(const Partition& lambda, const Prefix3& prefix) {
  if (lambda.empty()) throw EmptyPartitionError("easy_cases: empty partition");
  if (is_hard_prefix(prefix)) throw PreconditionViolation("easy_cases: prefix " + to_string(prefix) + " is a hard case");
  if (!realizable_prefixes().contains(prefix)) throw UnreachablePrefix("easy_cases: prefix " + to_string(prefix));
  const CdsProfile prof = cds(lambda);
  if (prefix3(lambda) != prefix)
    throw PreconditionViolation("easy_cases: " + to_string(lambda) + " has prefix " + to_string(prefix3(lambda)));
  detail::Board board(lambda);
  if (prefix[2] <= 1) {
    auto cls = detail::max_union_classes(boxes_of(lambda), 4);
    for (int c = 0; c < 4; ++c)
      for (const Box& b : cls[static_cast<std::size_t>(c)]) board.place(b, c);
    return detail::finish(lambda, board, prof, prefix, "counting", false);
  }
  detail::first_three(board, prof, {prefix[0], prefix[1]});
  detail::sweep_up(board, 3, prof.delta1 - 4);
  return detail::finish(lambda, board, prof, prefix, "sweep", false);
}

/// nd = (1,2,2): three antidiagonals plus antidiagonal delta1 and the
/// shifted boxes (i_p, j_{p+3}).
inline PartialColoring4 case_122(const Partition& lambda) {
  const Prefix3 prefix{1, 2, 2};
  if (lambda.empty()) throw EmptyPartitionError("case_122: empty partition");
  if (prefix3(lambda) != prefix) throw PreconditionViolation("case_122: " + to_string(lambda) + " has prefix " + to_string(prefix3(lambda)));
  if (!fivecase_exclusions(lambda).case122())
    throw PreconditionViolation("case_122: " + to_string(lambda) + " includes (3,2,1) at delta1-3");
  const CdsProfile prof = cds(lambda);
  const int k = prof.delta1;
  const auto miss = missing_boxes(lambda);
  const int s = static_cast<int>(miss.size());
  if (s < 3) throw PreconditionViolation("case_122: fewer than three missing boxes");
  detail::Board board(lambda);
  for (int i = 1; i <= 3; ++i)
    for (const Box& b : detail::present_on(lambda, k - i)) board.place(b, i - 1);
  for (const Box& b : detail::present_on(lambda, k)) board.place(b, 3);
  for (int p = 0; p + 3 < s; ++p) {
    const auto& mp = miss[static_cast<std::size_t>(p)];
    const auto& mq = miss[static_cast<std::size_t>(p) + 3];
    if (mq.col > mp.col - 4) throw PatternGap("case_122: four consecutive missing boxes near " + to_string(mp));
    board.place({mp.row, mq.col}, 3);
  }
  return detail::finish(lambda, board, prof, prefix, "case_122", false);
}

/// nd = (1,1,2): antidiagonals for S1, S2, S4; S3 is antidiagonal delta1
/// plus the boxes (i_p, j_{p+2}).
inline PartialColoring4 case_112(const Partition& lambda) {
  const Prefix3 prefix{1, 1, 2};
  if (lambda.empty()) throw EmptyPartitionError("case_112: empty partition");
  if (prefix3(lambda) != prefix) throw PreconditionViolation("case_112: " + to_string(lambda) + " has prefix " + to_string(prefix3(lambda)));
  if (!fivecase_exclusions(lambda).case112())
    throw PreconditionViolation("case_112: " + to_string(lambda) + " violates the (1,1,2) exclusions");
  const CdsProfile prof = cds(lambda);
  const int k = prof.delta1;
  const auto miss = missing_boxes(lambda);
  const int s = static_cast<int>(miss.size());
  if (s < 2) throw PreconditionViolation("case_112: fewer than two missing boxes");
  detail::Board board(lambda);
  for (const Box& b : detail::present_on(lambda, k - 1)) board.place(b, 0);
  for (const Box& b : detail::present_on(lambda, k - 2)) board.place(b, 1);
  for (const Box& b : detail::present_on(lambda, k - 3)) board.place(b, 3);
  for (const Box& b : detail::present_on(lambda, k)) board.place(b, 2);
  for (int p = 0; p + 2 < s; ++p) {
    const auto& mp = miss[static_cast<std::size_t>(p)];
    const auto& mq = miss[static_cast<std::size_t>(p) + 2];
    if (mq.col > mp.col - 4) throw PatternGap("case_112: j_{p+2} > j_p - 4 near " + to_string(mp));
    board.place({mp.row, mq.col}, 2);
  }
  return detail::finish(lambda, board, prof, prefix, "case_112", false);
}

enum class BlockKind { top, interior, bottom };

inline const char* to_string(BlockKind k) {
  switch (k) {
    case BlockKind::top: return "top";
    case BlockKind::interior: return "interior";
    case BlockKind::bottom: return "bottom";
  }
  return "?";
}

/// A piece of the diagram cut out by the missing boxes of antidiagonal
/// delta1. `origin` is the local (0,0); the block's antidiagonal delta1 is
/// local antidiagonal `height`.
struct BuildingBlock {
  BlockKind kind = BlockKind::interior;
  std::vector<Box> boxes;  // absolute coordinates
  Box origin;
  int height = 0;
  Coloring coloring;  // partial, absolute coordinates; empty before phase 1
};

/// Blocks in order top, interior..., bottom. No prefix check; see
/// building_blocks.
inline std::vector<BuildingBlock> cut_blocks(const Partition& lambda) {
  const auto miss = missing_boxes(lambda);
  const int s = static_cast<int>(miss.size());
  auto collect = [&](int r0, int r1, int c0, int c1) {
    std::vector<Box> out;
    for (int i = r0; i < std::min(r1, lambda.length()); ++i)
      for (int j = c0; j < std::min(c1, lambda.part(i)); ++j) out.push_back({i, j});
    return out;
  };
  constexpr int inf = 1 << 29;
  std::vector<BuildingBlock> out;
  const Box first = miss.front();
  if (auto bs = collect(0, first.row, first.col, inf); !bs.empty())
    out.push_back({BlockKind::top, std::move(bs), {0, first.col}, first.row, {}});
  for (int p = 0; p + 1 < s; ++p) {
    const Box a = miss[static_cast<std::size_t>(p)];
    const Box b = miss[static_cast<std::size_t>(p) + 1];
    if (auto bs = collect(a.row, b.row, b.col, a.col); !bs.empty())
      out.push_back({BlockKind::interior, std::move(bs), {a.row, b.col}, b.row - a.row, {}});
  }
  const Box last = miss.back();
  if (auto bs = collect(last.row, inf, 0, last.col); !bs.empty())
    out.push_back({BlockKind::bottom, std::move(bs), {last.row, 0}, last.col, {}});
  return out;
}

inline std::vector<BuildingBlock> building_blocks(const Partition& lambda) {
  if (lambda.empty()) throw EmptyPartitionError("building_blocks: empty partition");
  const Prefix3 p = prefix3(lambda);
  if (p != Prefix3{0, 0, 2} && p != Prefix3{0, 1, 2} && p != Prefix3{0, 2, 2})
    throw PreconditionViolation("building_blocks: prefix " + to_string(p) + " is not a building-block case");
  return cut_blocks(lambda);
}

namespace detail {

using Grid = std::vector<std::vector<int>>;  // -1 absent, 0 present but uncolored, 1..4 colors

inline Grid parse_grid(const char* text) {
  Grid g(1);
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "/") {
      g.emplace_back();
    } else {
      g.back().push_back(tok == "." ? 0 : std::stoi(tok));
    }
  }
  return g;
}

/// Phase-1 coloring of the minimal interior block of height h for
/// nd = (0,0,2). Heights 4-6 are tabulated; from 7 on the block is three
/// head rows, an alternating two-row middle band and a four-row tail.
inline Grid interior_002(int h) {
  if (h == 4) return parse_grid("2 3 4 1 / 3 4 1 2 / . 1 2 3 / 1 2 3");
  if (h == 5) return parse_grid("2 . 4 3 1 / 4 3 . 1 2 / . 4 1 2 3 / 3 1 2 / 1 2 3");
  if (h == 6) return parse_grid("2 . . 4 3 1 / . . 4 3 1 2 / . 4 . 1 2 3 / 4 3 1 2 / 3 1 2 / 1 2 3");
  if (h < 4) throw PatternGap("case (0,0,2): no interior block of height " + std::to_string(h));
  Grid g(static_cast<std::size_t>(h));
  for (int t = 0; t < h; ++t) g[static_cast<std::size_t>(t)].assign(static_cast<std::size_t>(t <= 2 ? h : std::max(h - t + 1, 3)), 0);
  auto put = [&](int t, int ad, int c) { g[static_cast<std::size_t>(t)][static_cast<std::size_t>(ad - t)] = c; };
  put(0, h - 4, 2), put(0, h - 3, 4), put(0, h - 2, 3), put(0, h - 1, 1);
  put(1, h - 3, 4), put(1, h - 2, 3), put(1, h - 1, 1), put(1, h, 2);
  put(2, h - 3, 4), put(2, h - 1, 1), put(2, h, 2), put(2, h + 1, 3);
  for (int t = 3; t <= h - 5; ++t) {
    const bool even = (t - 3) % 2 == 0;
    put(t, h - 3, 4), put(t, h - 2, even ? 3 : 2), put(t, h - 1, 1), put(t, h, even ? 2 : 3);
  }
  const Grid tail = parse_grid(h % 2 == 0 ? "2 4 . 1 3 / 4 3 1 2 / 3 1 2 / 1 2 3" : "4 3 . 1 2 / 2 4 1 3 / 3 1 2 / 1 2 3");
  for (int u = 0; u < 4; ++u) g[static_cast<std::size_t>(h - 4 + u)] = tail[static_cast<std::size_t>(u)];
  return g;
}

inline Grid drop_rows(const Grid& g, int n) { return Grid(g.begin() + n, g.end()); }

inline Grid drop_cols(const Grid& g, int n) {
  Grid out;
  for (const auto& row : g) {
    if (static_cast<int>(row.size()) <= n) break;
    out.emplace_back(row.begin() + n, row.end());
  }
  return out;
}

/// Minimal block grid (with colors) for nd = (0,0,2).
inline Grid grid_002(BlockKind kind, int h) {
  switch (kind) {
    case BlockKind::interior: return interior_002(h);
    case BlockKind::top: return drop_rows(interior_002(h + 3), 3);
    case BlockKind::bottom: return drop_cols(interior_002(h + 3), 3);
  }
  return {};
}

/// Minimal block grid for nd = (0,1,2): antidiagonals h-1, h, h-2, h-3
/// take colors 1, 2, 3, 4; interior blocks also give (0,0) to color 2, and
/// the height-3 interior block is the special 3x3 square.
inline Grid grid_012(BlockKind kind, int h) {
  if (kind == BlockKind::interior && h == 3) return parse_grid("2 3 1 / 3 1 2 / 1 2 4");
  if (kind == BlockKind::interior && h < 3) throw PatternGap("case (0,1,2): interior block of height " + std::to_string(h));
  // boxes up to local antidiagonal h, minus the ends the block omits
  const int rows = kind == BlockKind::bottom ? h + 1 : h;
  Grid g(static_cast<std::size_t>(rows));
  for (int t = 0; t < rows; ++t) {
    const int len = kind == BlockKind::top ? h - t + 1 : std::min(h, h - t + 1);
    g[static_cast<std::size_t>(t)].assign(static_cast<std::size_t>(len), 0);
    for (int j = 0; j < len; ++j) {
      const int ad = t + j;
      g[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] =
          ad == h - 1 ? 1 : ad == h ? 2 : ad == h - 2 ? 3 : ad == h - 3 ? 4 : 0;
    }
  }
  if (kind == BlockKind::interior) g[0][0] = 2;
  return g;
}

/// Minimal block grid for nd = (0,2,2). Height-1 top/bottom blocks are a
/// domino; everything else is colored as an interior block of its height.
inline Grid grid_022(BlockKind kind, int h) {
  if (h == 1 && kind == BlockKind::top) return parse_grid("1 2");
  if (h == 1 && kind == BlockKind::bottom) return parse_grid("1 / 2");
  if (h < 2) throw PatternGap("case (0,2,2): interior block of height " + std::to_string(h));
  if (h == 2) return parse_grid("2 1 / 1 2");
  if (h == 3) return parse_grid("2 3 1 / 4 1 2 / 1 2");
  Grid g(static_cast<std::size_t>(h));
  for (int t = 0; t < h; ++t) {
    const int len = std::min(h, h - t + 1);
    g[static_cast<std::size_t>(t)].assign(static_cast<std::size_t>(len), 0);
    for (int j = 0; j < len; ++j) {
      const int ad = t + j;
      int c = ad == h - 1 ? 1 : ad == h ? 2 : (ad == h - 2 && j > 0) ? 3 : ad == h - 3 ? 4 : 0;
      g[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] = c;
    }
  }
  g[0][0] = 2;
  return g;
}

}  // namespace detail

/// Colors the minimal core of a block per the case's Phase-1 pattern,
/// anchored at the block's local origin. Extra boxes stay uncolored.
inline BuildingBlock phase1_color_block(const BuildingBlock& b, const Prefix3& which) {
  detail::Grid g;
  if (which == Prefix3{0, 0, 2}) g = detail::grid_002(b.kind, b.height);
  else if (which == Prefix3{0, 1, 2}) g = detail::grid_012(b.kind, b.height);
  else if (which == Prefix3{0, 2, 2}) g = detail::grid_022(b.kind, b.height);
  else throw PreconditionViolation("phase1_color_block: prefix " + to_string(which) + " has no building blocks");
  std::set<Box> mine(b.boxes.begin(), b.boxes.end());
  BuildingBlock out = b;
  out.coloring = Coloring{};
  for (std::size_t t = 0; t < g.size(); ++t) {
    for (std::size_t j = 0; j < g[t].size(); ++j) {
      const Box abs{b.origin.row + static_cast<int>(t), b.origin.col + static_cast<int>(j)};
      if (!mine.contains(abs))
        throw PatternGap(std::string("phase 1 ") + to_string(which) + ": " + to_string(b.kind) + " block of height " +
                         std::to_string(b.height) + " at " + to_string(b.origin) + " lacks minimal box " + to_string(abs));
      if (g[t][j] > 0) out.coloring.set(abs, g[t][j]);
    }
  }
  return out;
}

/// Joins Phase-1 blocks and adds the filler boxes between them.
///
/// Fillers follow the stated rules first: (0,0,2) puts two 4's on
/// antidiagonal delta1-3 at each junction, or one on delta1-2 next to the
/// special blocks; (0,1,2) fills antidiagonals delta1-2 and delta1-3;
/// (0,2,2) adds two 3's and two 4's at each junction. Where a rule placement
/// collides, the remaining boxes come from a maximum stable set of the free
/// boxes (and matching_completion is set).
inline PartialColoring4 phase2_concatenate(const std::vector<BuildingBlock>& blocks, const Prefix3& which,
                                           const Partition& lambda) {
  const CdsProfile prof = cds(lambda);
  const int k = prof.delta1;
  const auto target = detail::cds_target(prof);
  detail::Board board(lambda);
  for (const auto& b : blocks)
    for (const auto& [box, c] : b.coloring.assignment()) {
      if (!board.can_place(box, c - 1))
        throw PatternGap("phase 2 " + to_string(which) + ": block colorings clash at " + to_string(box));
      board.place(box, c - 1);
    }

  // junctions: missing boxes with a block on both sides
  std::vector<Box> junctions;
  for (std::size_t p = 0; p + 1 < blocks.size(); ++p) {
    const Box& a = blocks[p].origin;
    const Box& b = blocks[p + 1].origin;
    // the missing box between two consecutive blocks sits at (start row of the lower one, start col of the upper one)
    junctions.push_back({b.row, a.col});
  }
  bool matched = false;
  auto try_place = [&](Box b, int c) {
    if (board.can_place(b, c)) {
      board.place(b, c);
      return true;
    }
    return false;
  };

  if (which == Prefix3{0, 0, 2}) {
    std::vector<Box> fillers;
    for (const Box& m : junctions) {
      const Box a1{m.row - 2, m.col - 1}, a2{m.row - 1, m.col - 2}, b1{m.row - 1, m.col - 1};
      if (board.can_place(a1, 3) && board.can_place(a2, 3) && !(a1.row == a2.row || a1.col == a2.col)) {
        board.place(a1, 3), board.place(a2, 3);
        fillers.push_back(a1), fillers.push_back(a2);
      } else if (try_place(b1, 3)) {
        fillers.push_back(b1);
      }
    }
    for (const auto& b : blocks)
      if (b.kind == BlockKind::interior && b.height == 4) {
        const Box free{b.origin.row + 2, b.origin.col};
        if (board.count(3) < target[3] && try_place(free, 3)) fillers.push_back(free);
      }
    if (board.count(3) < target[3]) {
      matched = true;
      detail::complete_by_matching(board, 3, target[3]);
    }
    detail::trim(board, 3, target[3], fillers);
  } else if (which == Prefix3{0, 1, 2}) {
    for (const Box& b : detail::present_on(lambda, k - 2)) try_place(b, 2);
    for (const Box& b : detail::present_on(lambda, k - 3)) try_place(b, 3);
    for (int c : {2, 3})
      if (board.count(c) < target[static_cast<std::size_t>(c)]) {
        detail::complete_by_matching(board, c, target[static_cast<std::size_t>(c)]);
        matched = true;
      }
  } else if (which == Prefix3{0, 2, 2}) {
    for (const Box& m : junctions) {
      try_place({m.row - 2, m.col}, 2), try_place({m.row - 1, m.col - 1}, 2);
      try_place({m.row - 2, m.col - 1}, 3), try_place({m.row - 1, m.col - 2}, 3);
    }
    if (board.count(2) < target[2] || board.count(3) < target[3]) {
      matched = true;
      const detail::Board keep = board;
      if (!detail::complete_by_matching(board, 2, target[2]) || !detail::complete_by_matching(board, 3, target[3]))
        board.color = keep.color, board.rows = keep.rows, board.cols = keep.cols;
    }
    if (board.count(2) < target[2] || board.count(3) < target[3]) {
      // rebuild S3 and S4 together from a maximum 2-union of what is left
      // after S1 and S2, balanced by swapping along an odd path
      std::vector<Box> drop;
      for (const auto& [b, c] : board.color)
        if (c >= 2) drop.push_back(b);
      for (const Box& b : drop) board.remove(b);
      std::vector<Box> rest;
      for (const Box& b : boxes_of(lambda))
        if (!board.color.contains(b)) rest.push_back(b);
      auto two = edge_color_bipartite(degree_bounded_subgraph(rest, 2), 2);
      detail::Board tmp(lambda);
      for (int c = 0; c < 2; ++c)
        for (const Box& b : two[static_cast<std::size_t>(c)]) tmp.place(b, c);
      // components of the 2-union are paths and cycles; flipping a path with
      // more boxes of the larger class moves one box across
      for (;;) {
        const int big = tmp.count(0) >= tmp.count(1) ? 0 : 1;
        if (tmp.count(big) - tmp.count(1 - big) <= 1) break;
        std::map<std::pair<int, int>, std::vector<Box>> inc;
        for (const auto& [b, c] : tmp.color) inc[{0, b.row}].push_back(b), inc[{1, b.col}].push_back(b);
        std::set<Box> seen;
        bool flipped = false;
        for (const auto& [start, c0] : tmp.color) {
          if (seen.contains(start)) continue;
          std::vector<Box> comp, stack{start};
          seen.insert(start);
          while (!stack.empty()) {
            Box b = stack.back();
            stack.pop_back();
            comp.push_back(b);
            for (auto v : {std::pair{0, b.row}, std::pair{1, b.col}})
              for (const Box& nb : inc[v])
                if (seen.insert(nb).second) stack.push_back(nb);
          }
          int bal = 0;
          for (const Box& b : comp) bal += tmp.color.at(b) == big ? 1 : -1;
          if (bal > 0) {
            std::vector<std::pair<Box, int>> flips;
            for (const Box& b : comp) flips.emplace_back(b, 1 - tmp.color.at(b));
            for (const auto& [b, c] : flips) tmp.remove(b);
            for (const auto& [b, c] : flips) tmp.place(b, c);
            flipped = true;
            break;
          }
        }
        if (!flipped) break;
      }
      for (int c = 0; c < 2; ++c)
        for (const Box& b : tmp.set(c)) board.place(b, c + 2);
    }
    for (int c : {2, 3}) detail::trim(board, c, target[static_cast<std::size_t>(c)], boxes_of(lambda));
  } else {
    throw PreconditionViolation("phase2_concatenate: prefix " + to_string(which) + " has no building blocks");
  }
  std::string name = "blocks" + to_string(which);
  return detail::finish(lambda, board, prof, which, name, matched);
}

inline PartialColoring4 color_blocks_case(const Partition& lambda, const Prefix3& which) {
  const auto ex = fivecase_exclusions(lambda);
  const bool ok = which == Prefix3{0, 0, 2} ? ex.case002() : which == Prefix3{0, 1, 2} ? ex.case012() : ex.case022();
  if (!ok) throw PreconditionViolation("case " + to_string(which) + ": exclusions fail for " + to_string(lambda));
  std::vector<BuildingBlock> colored;
  for (const auto& b : building_blocks(lambda)) colored.push_back(phase1_color_block(b, which));
  return phase2_concatenate(colored, which, lambda);
}

/// Four disjoint stable sets of sizes delta_1..delta_4 (zero-padded),
/// dispatched on (nd_2, nd_3, nd_4).
inline PartialColoring4 color_first4(const Partition& lambda) {
  if (lambda.empty()) throw EmptyPartitionError("color_first4: empty partition");
  const Prefix3 p = prefix3(lambda);
  if (!realizable_prefixes().contains(p))
    throw UnreachablePrefix("color_first4: unreachable prefix " + to_string(p) + " for " + to_string(lambda));
  if (p == Prefix3{1, 2, 2}) return case_122(lambda);
  if (p == Prefix3{1, 1, 2}) return case_112(lambda);
  if (is_hard_prefix(p)) return color_blocks_case(lambda, p);
  return easy_cases(lambda, p);
}

}  // namespace ltc
