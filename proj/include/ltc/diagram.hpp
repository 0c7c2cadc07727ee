#pragma once

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ltc/partition.hpp"

namespace ltc {

/// An arbitrary finite set of boxes, stored sorted in row-major order.
class Diagram {
 public:
  Diagram() = default;

  explicit Diagram(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
    std::sort(boxes_.begin(), boxes_.end());
    if (std::adjacent_find(boxes_.begin(), boxes_.end()) != boxes_.end())
      throw std::invalid_argument("diagram contains a duplicate box");
    for (const Box& b : boxes_)
      if (b.row < 0 || b.col < 0) throw std::invalid_argument("diagram box with negative coordinate");
  }

  static Diagram of(const Partition& lambda) { return Diagram(boxes_of(lambda)); }

  const std::vector<Box>& boxes() const noexcept { return boxes_; }
  std::size_t size() const noexcept { return boxes_.size(); }
  bool empty() const noexcept { return boxes_.empty(); }

  bool contains(Box b) const { return std::binary_search(boxes_.begin(), boxes_.end(), b); }

  /// One past the largest row / column index used.
  int row_extent() const {
    int r = 0;
    for (const Box& b : boxes_) r = std::max(r, b.row + 1);
    return r;
  }
  int col_extent() const {
    int c = 0;
    for (const Box& b : boxes_) c = std::max(c, b.col + 1);
    return c;
  }

  friend bool operator==(const Diagram&, const Diagram&) = default;

 private:
  std::vector<Box> boxes_;
};

/// Text form: semicolon-separated "row,col" pairs.
inline std::string to_string(const Diagram& d) {
  std::string out;
  for (std::size_t i = 0; i < d.boxes().size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(d.boxes()[i].row) + "," + std::to_string(d.boxes()[i].col);
  }
  return out;
}

inline Diagram parse_diagram(std::string_view text) {
  std::vector<Box> boxes;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    auto token = text.substr(start, end - start);
    auto comma = token.find(',');
    if (comma == std::string_view::npos)
      throw std::invalid_argument("malformed diagram box: '" + std::string(token) + "'");
    auto to_int = [&](std::string_view s) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("malformed diagram box: '" + std::string(token) + "'");
      return v;
    };
    boxes.push_back({to_int(token.substr(0, comma)), to_int(token.substr(comma + 1))});
    start = end + 1;
  }
  return Diagram(std::move(boxes));
}

/// Assignment of positive color ids to boxes. Validity (no color repeated
/// in a row or column) is checked by is_valid(), not enforced on insert.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::map<Box, int> assignment) : assignment_(std::move(assignment)) {}

  const std::map<Box, int>& assignment() const noexcept { return assignment_; }
  std::size_t size() const noexcept { return assignment_.size(); }

  void set(Box b, int color) {
    if (color <= 0) throw std::invalid_argument("color ids must be positive");
    assignment_[b] = color;
  }
  int color_of(Box b) const {
    auto it = assignment_.find(b);
    return it == assignment_.end() ? 0 : it->second;
  }

  /// Color classes keyed by color id.
  std::map<int, std::vector<Box>> classes() const {
    std::map<int, std::vector<Box>> out;
    for (const auto& [b, c] : assignment_) out[c].push_back(b);
    return out;
  }

  bool is_valid() const { return first_conflict().empty(); }

  /// Description of the first row/column conflict, or empty if none.
  std::string first_conflict() const {
    std::map<std::pair<int, int>, Box> seen_row;
    std::map<std::pair<int, int>, Box> seen_col;
    for (const auto& [b, c] : assignment_) {
      auto [ri, rnew] = seen_row.emplace(std::pair{b.row, c}, b);
      if (!rnew)
        return "color " + std::to_string(c) + " repeated in row " + std::to_string(b.row) + " at " +
               to_string(ri->second) + " and " + to_string(b);
      auto [ci, cnew] = seen_col.emplace(std::pair{b.col, c}, b);
      if (!cnew)
        return "color " + std::to_string(c) + " repeated in column " + std::to_string(b.col) +
               " at " + to_string(ci->second) + " and " + to_string(b);
    }
    return {};
  }

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::map<Box, int> assignment_;
};

/// Class sizes sorted weakly decreasing.
inline Partition shape_of(const Coloring& kappa) {
  std::map<int, int> sizes;
  for (const auto& [b, c] : kappa.assignment()) ++sizes[c];
  std::vector<int> parts;
  for (const auto& [c, n] : sizes) parts.push_back(n);
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition(std::move(parts));
}

/// Relabels classes 1..k by decreasing size, ties broken by the smallest
/// box (row-major) in the class.
inline Coloring canonicalize(const Coloring& kappa) {
  auto classes = kappa.classes();
  std::vector<std::vector<Box>> ordered;
  for (auto& [c, boxes] : classes) ordered.push_back(std::move(boxes));
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  Coloring out;
  for (std::size_t i = 0; i < ordered.size(); ++i)
    for (const Box& b : ordered[i]) out.set(b, static_cast<int>(i) + 1);
  return out;
}

/// True iff the boxes of S lie in pairwise distinct rows and columns.
template <typename Range>
bool is_stable(const Range& boxes) {
  std::set<int> rows;
  std::set<int> cols;
  for (const Box& b : boxes) {
    if (!rows.insert(b.row).second || !cols.insert(b.col).second) return false;
  }
  return true;
}

inline bool is_stable(const Diagram& d, const std::vector<Box>& s) {
  for (const Box& b : s)
    if (!d.contains(b)) throw std::invalid_argument("stable-set candidate " + to_string(b) + " is not in the diagram");
  return is_stable(s);
}

/// Five-row arrangement whose rook graph has CDS (5,3,1) but no coloring of
/// that shape.
inline Diagram cds531_diagram() {
  return Diagram({{0, 2}, {0, 4}, {1, 2}, {1, 3}, {2, 0}, {2, 1}, {2, 2}, {3, 1}, {4, 0}});
}

/// Sixteen-box skew arrangement with CDS (6,6,3,1) and no coloring of that
/// shape.
inline Diagram cds6631_diagram() {
  return Diagram({{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 2}, {2, 3},
                  {3, 0}, {3, 1}, {3, 2}, {3, 3}, {4, 0}, {4, 1}, {5, 0}, {5, 1}});
}

}  // namespace ltc
