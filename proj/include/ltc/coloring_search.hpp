#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ltc/box_set.hpp"
#include "ltc/diagram.hpp"

namespace ltc {

struct WeightMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Class-by-class exact search used by exists_coloring_with_shape. It only
/// uses the degree bound (a residual with a row or column of k boxes needs
/// at least k more classes), never flows, so it can serve as an independent
/// check on the tableau solver.
class ShapeSearch {
 public:
  ShapeSearch(const Diagram& d, const Partition& target) : boxes_(d.boxes()), target_(target.parts()) {
    std::map<int, int> row_id;
    std::map<int, int> col_id;
    for (const Box& b : boxes_) {
      row_id.emplace(b.row, static_cast<int>(row_id.size()));
      col_id.emplace(b.col, static_cast<int>(col_id.size()));
    }
    for (const Box& b : boxes_) {
      row_.push_back(row_id.at(b.row));
      col_.push_back(col_id.at(b.col));
    }
    rows_ = static_cast<int>(row_id.size());
    cols_ = static_cast<int>(col_id.size());
    classes_.resize(target_.size());
  }

  std::optional<Coloring> run() {
    const std::size_t n = boxes_.size();
    if (!solve(0, BoxSet::full(n))) return std::nullopt;
    Coloring kappa;
    for (std::size_t k = 0; k < classes_.size(); ++k)
      for (std::size_t i : classes_[k]) kappa.set(boxes_[i], static_cast<int>(k) + 1);
    return canonicalize(kappa);
  }

 private:
  bool degree_ok(const BoxSet& residual, int classes_left) const {
    std::vector<int> rc(static_cast<std::size_t>(rows_), 0);
    std::vector<int> cc(static_cast<std::size_t>(cols_), 0);
    bool ok = true;
    residual.for_each([&](std::size_t i) {
      if (++rc[static_cast<std::size_t>(row_[i])] > classes_left) ok = false;
      if (++cc[static_cast<std::size_t>(col_[i])] > classes_left) ok = false;
    });
    return ok;
  }

  bool solve(std::size_t k, const BoxSet& residual) {
    if (k == target_.size()) return residual.none();
    if (!degree_ok(residual, static_cast<int>(target_.size() - k))) return false;
    // Equal-size classes are ordered by their first box; the bound is part of
    // the subproblem, so it is part of the cache key.
    std::size_t min_first = 0;
    if (k > 0 && target_[k] == target_[k - 1]) min_first = classes_[k - 1].front() + 1;
    DeadKey key{residual, min_first};
    if (dead_.contains(key)) return false;

    std::vector<std::size_t> candidates;
    residual.for_each([&](std::size_t i) { candidates.push_back(i); });

    std::vector<char> row_used(static_cast<std::size_t>(rows_), 0);
    std::vector<char> col_used(static_cast<std::size_t>(cols_), 0);
    auto& chosen = classes_[k];
    chosen.clear();
    const auto need = static_cast<std::size_t>(target_[k]);

    auto extend = [&](auto&& self, std::size_t pos) -> bool {
      if (chosen.size() == need) {
        BoxSet next = residual;
        for (std::size_t i : chosen) next.reset(i);
        return solve(k + 1, next);
      }
      if (candidates.size() - pos < need - chosen.size()) return false;
      for (std::size_t p = pos; p < candidates.size(); ++p) {
        const std::size_t i = candidates[p];
        if (chosen.empty() && i < min_first) continue;
        if (candidates.size() - p < need - chosen.size()) break;
        auto r = static_cast<std::size_t>(row_[i]);
        auto c = static_cast<std::size_t>(col_[i]);
        if (row_used[r] || col_used[c]) continue;
        row_used[r] = col_used[c] = 1;
        chosen.push_back(i);
        if (self(self, p + 1)) return true;
        chosen.pop_back();
        row_used[r] = col_used[c] = 0;
      }
      return false;
    };
    if (extend(extend, 0)) return true;
    dead_.insert(std::move(key));
    return false;
  }

  std::vector<Box> boxes_;
  std::vector<int> target_;
  std::vector<int> row_;
  std::vector<int> col_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<std::size_t>> classes_;
  struct DeadKey {
    BoxSet residual;
    std::size_t min_first;
    friend bool operator==(const DeadKey&, const DeadKey&) = default;
  };
  struct DeadKeyHash {
    std::size_t operator()(const DeadKey& k) const noexcept {
      return BoxSetHash{}(k.residual) ^ (k.min_first * 0x9e3779b97f4a7c15ull);
    }
  };
  std::unordered_set<DeadKey, DeadKeyHash> dead_;
};

}  // namespace detail

/// A coloring of D whose class sizes are exactly `target`, or nullopt if
/// none exists. Exact and exhaustive.
inline std::optional<Coloring> exists_coloring_with_shape(const Diagram& d, const Partition& target) {
  if (target.weight() != static_cast<std::int64_t>(d.size()))
    throw WeightMismatch("exists_coloring_with_shape: |target| = " + std::to_string(target.weight()) +
                         " but the diagram has " + std::to_string(d.size()) + " boxes");
  detail::ShapeSearch search(d, target);
  return search.run();
}

}  // namespace ltc
