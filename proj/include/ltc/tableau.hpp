#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ltc/box_set.hpp"
#include "ltc/cds.hpp"
#include "ltc/coloring_search.hpp"
#include "ltc/diagram.hpp"
#include "ltc/flow.hpp"

namespace ltc {

/// A coloring of a full Young diagram with no color repeated in any row or
/// column. The type is the sorted class-size sequence.
struct LatinTableau {
  Partition shape;
  Coloring coloring;

  Partition type() const { return shape_of(coloring); }
  friend bool operator==(const LatinTableau&, const LatinTableau&) = default;
};

struct TableauError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Checks full cover of the shape and row/column distinctness; returns the
/// type. Throws TableauError naming the first offending box.
inline Partition validate_tableau(const LatinTableau& t) {
  for (const auto& [b, c] : t.coloring.assignment())
    if (!t.shape.contains(b)) throw TableauError("box " + to_string(b) + " lies outside the shape");
  for (const Box& b : boxes_of(t.shape))
    if (t.coloring.color_of(b) == 0) throw TableauError("box " + to_string(b) + " is uncolored");
  if (auto why = t.coloring.first_conflict(); !why.empty()) throw TableauError(why);
  return t.type();
}

enum class SearchOutcome { found, absent, inconclusive };

inline const char* to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::found: return "found";
    case SearchOutcome::absent: return "absent";
    case SearchOutcome::inconclusive: return "inconclusive";
  }
  return "?";
}

struct SolverOptions {
  std::uint64_t node_budget = 0;  // 0 = unlimited
  int alpha_horizon = 4;          // residual alpha_r checks for r up to this
};

struct SolveResult {
  SearchOutcome outcome = SearchOutcome::absent;
  std::optional<LatinTableau> tableau;
  std::uint64_t nodes = 0;
};

namespace detail {

/// Exact class-by-class search for a Latin tableau of a given type.
///
/// Classes are filled largest first, one stable set of exact size each,
/// scanning rows top to bottom. A row or column whose residual degree equals
/// the number of classes left must be hit by the current class. Residuals
/// are pruned by alpha_r (flow, cached) against the r largest remaining
/// sizes, and failed residuals are remembered (the class index is implied
/// by the residual's size).
class TableauSearch {
 public:
  TableauSearch(const Partition& shape, const Partition& type, const SolverOptions& opt)
      : shape_(shape), target_(type.parts()), opt_(opt) {
    boxes_ = boxes_of(shape);
    rows_ = shape.length();
    cols_ = shape.part(0);
    row_start_.assign(static_cast<std::size_t>(rows_) + 1, 0);
    for (int r = 0; r < rows_; ++r)
      row_start_[static_cast<std::size_t>(r) + 1] = row_start_[static_cast<std::size_t>(r)] + shape.part(r);
    classes_.resize(target_.size());
  }

  SolveResult run() {
    SolveResult out;
    const std::size_t n = boxes_.size();
    if (n == 0) {
      out.outcome = target_.empty() ? SearchOutcome::found : SearchOutcome::absent;
      if (target_.empty()) out.tableau = LatinTableau{shape_, {}};
      return out;
    }
    BoxSet all = BoxSet::full(n);
    // the root check covers every r: this is exactly dominance by the CDS
    bool ok = true;
    std::int64_t prefix = 0;
    for (std::size_t r = 1; r <= target_.size() && ok; ++r) {
      prefix += target_[r - 1];
      if (prefix > alpha(all, static_cast<int>(r))) ok = false;
    }
    if (ok) {
      try {
        ok = solve(0, all);
      } catch (const BudgetExceeded&) {
        out.outcome = SearchOutcome::inconclusive;
        out.nodes = nodes_;
        return out;
      }
    }
    out.nodes = nodes_;
    if (!ok) return out;
    out.outcome = SearchOutcome::found;
    Coloring kappa;
    for (std::size_t k = 0; k < classes_.size(); ++k)
      for (std::size_t i : classes_[k]) kappa.set(boxes_[i], static_cast<int>(k) + 1);
    out.tableau = LatinTableau{shape_, canonicalize(kappa)};
    return out;
  }

 private:
  struct BudgetExceeded {};

  std::int64_t alpha(const BoxSet& residual, int r) {
    auto& slot = alpha_cache_[residual];
    if (slot.empty()) slot.assign(target_.size() + 1, -1);
    auto& v = slot[static_cast<std::size_t>(r)];
    if (v < 0) {
      std::vector<Box> bs;
      residual.for_each([&](std::size_t i) { bs.push_back(boxes_[i]); });
      v = static_cast<std::int64_t>(degree_bounded_subgraph(bs, r).size());
    }
    return v;
  }

  void tick() {
    ++nodes_;
    if (opt_.node_budget != 0 && nodes_ > opt_.node_budget) throw BudgetExceeded{};
  }

  bool solve(std::size_t k, const BoxSet& residual) {
    if (k == target_.size()) return residual.none();
    tick();
    const int left = static_cast<int>(target_.size() - k);

    std::vector<int> rdeg(static_cast<std::size_t>(rows_), 0);
    std::vector<int> cdeg(static_cast<std::size_t>(cols_), 0);
    residual.for_each([&](std::size_t i) {
      ++rdeg[static_cast<std::size_t>(boxes_[i].row)];
      ++cdeg[static_cast<std::size_t>(boxes_[i].col)];
    });
    for (int v : rdeg)
      if (v > left) return false;
    for (int v : cdeg)
      if (v > left) return false;

    // Symmetry: when every remaining class has this size, the smallest
    // residual box opens the current class. Other equal-size groups are left
    // to the residual cache, which sees each relabeling as the same residual.
    std::size_t forced_first = boxes_.size();
    if (target_[k] == target_.back()) residual.for_each([&](std::size_t i) { forced_first = std::min(forced_first, i); });
    if (dead_.contains(residual)) return false;

    if (k > 0) {
      const int horizon = std::min(left - 1, opt_.alpha_horizon);
      std::int64_t prefix = 0;
      for (int r = 1; r <= horizon; ++r) {
        prefix += target_[k + static_cast<std::size_t>(r) - 1];
        if (prefix > alpha(residual, r)) {
          dead_.insert(residual);
          return false;
        }
      }
    }

    const auto need = static_cast<std::size_t>(target_[k]);
    // per row: residual boxes, tight columns first, then by column degree
    std::vector<std::vector<std::size_t>> row_boxes(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) {
      auto& v = row_boxes[static_cast<std::size_t>(r)];
      for (int i = row_start_[static_cast<std::size_t>(r)]; i < row_start_[static_cast<std::size_t>(r) + 1]; ++i)
        if (residual.test(static_cast<std::size_t>(i))) v.push_back(static_cast<std::size_t>(i));
      std::stable_sort(v.begin(), v.end(), [&](std::size_t a, std::size_t b) {
        return cdeg[static_cast<std::size_t>(boxes_[a].col)] > cdeg[static_cast<std::size_t>(boxes_[b].col)];
      });
    }
    // last row holding a residual box of each tight column
    std::vector<int> tight_col_last(static_cast<std::size_t>(cols_), -1);
    int tight_cols = 0;
    residual.for_each([&](std::size_t i) {
      const auto c = static_cast<std::size_t>(boxes_[i].col);
      if (cdeg[c] == left) tight_col_last[c] = boxes_[i].row;
    });
    for (int c = 0; c < cols_; ++c)
      if (cdeg[static_cast<std::size_t>(c)] == left) ++tight_cols;
    // rows still available at or below row r
    std::vector<int> rows_below(static_cast<std::size_t>(rows_) + 1, 0);
    for (int r = rows_ - 1; r >= 0; --r)
      rows_below[static_cast<std::size_t>(r)] =
          rows_below[static_cast<std::size_t>(r) + 1] + (rdeg[static_cast<std::size_t>(r)] > 0 ? 1 : 0);

    std::vector<int> tight_rows_below(static_cast<std::size_t>(rows_) + 1, 0);
    for (int r = rows_ - 1; r >= 0; --r)
      tight_rows_below[static_cast<std::size_t>(r)] =
          tight_rows_below[static_cast<std::size_t>(r) + 1] + (rdeg[static_cast<std::size_t>(r)] == left ? 1 : 0);

    std::vector<char> col_used(static_cast<std::size_t>(cols_), 0);
    auto& chosen = classes_[k];
    chosen.clear();
    int tight_hit = 0;

    auto extend = [&](auto&& self, int row) -> bool {
      if (chosen.size() == need) {
        if (tight_hit != tight_cols) return false;
        for (int r = row; r < rows_; ++r)
          if (rdeg[static_cast<std::size_t>(r)] == left) return false;
        BoxSet next = residual;
        for (std::size_t i : chosen) next.reset(i);
        return solve(k + 1, next);
      }
      if (row == rows_) return false;
      if (static_cast<std::size_t>(rows_below[static_cast<std::size_t>(row)]) < need - chosen.size()) return false;
      if (static_cast<std::size_t>(tight_cols - tight_hit) > need - chosen.size()) return false;
      if (tight_rows_below[static_cast<std::size_t>(row)] > static_cast<int>(need - chosen.size())) return false;
      const auto ru = static_cast<std::size_t>(row);
      for (std::size_t i : row_boxes[ru]) {
        const auto c = static_cast<std::size_t>(boxes_[i].col);
        if (col_used[c]) continue;
        if (chosen.empty() && forced_first < boxes_.size() && i != forced_first) continue;
        tick();
        col_used[c] = 1;
        chosen.push_back(i);
        const bool tight = cdeg[c] == left;
        if (tight) ++tight_hit;
        if (columns_alive(row, tight_col_last, col_used) && self(self, row + 1)) return true;
        if (tight) --tight_hit;
        chosen.pop_back();
        col_used[c] = 0;
      }
      if (rdeg[ru] == left) return false;
      if (chosen.empty() && forced_first < boxes_.size() && boxes_[forced_first].row == row) return false;
      if (!columns_alive(row, tight_col_last, col_used)) return false;
      return self(self, row + 1);
    };
    if (extend(extend, 0)) return true;
    dead_.insert(residual);
    return false;
  }

  // every tight column not yet hit still has a residual box below `row`
  bool columns_alive(int row, const std::vector<int>& last, const std::vector<char>& used) const {
    for (int c = 0; c < cols_; ++c) {
      const int l = last[static_cast<std::size_t>(c)];
      if (l >= 0 && !used[static_cast<std::size_t>(c)] && l <= row) return false;
    }
    return true;
  }

  Partition shape_;
  std::vector<int> target_;
  SolverOptions opt_;
  std::vector<Box> boxes_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_start_;
  std::vector<std::vector<std::size_t>> classes_;
  std::unordered_map<BoxSet, std::vector<std::int64_t>, BoxSetHash> alpha_cache_;
  std::unordered_set<BoxSet, BoxSetHash> dead_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Complete search for a Latin tableau of shape `shape` and type `type`.
inline SolveResult solve_latin_tableau(const Partition& shape, const Partition& type, const SolverOptions& opt = {}) {
  if (shape.weight() != type.weight())
    throw WeightMismatch("latin tableau: |shape| = " + std::to_string(shape.weight()) + " but |type| = " +
                         std::to_string(type.weight()));
  detail::TableauSearch search(shape, type, opt);
  return search.run();
}

inline std::optional<LatinTableau> exists_latin_tableau(const Partition& shape, const Partition& type) {
  return solve_latin_tableau(shape, type).tableau;
}

struct RecolorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Moves a tableau down the dominance order to type nu. Each chain step
/// swaps colors along an odd alternating path of the donor and receiver
/// classes; `on_step` sees every intermediate tableau.
inline LatinTableau recolor_to(const LatinTableau& t, const Partition& nu,
                               const std::function<void(const LatinTableau&)>& on_step = {}) {
  const Partition mu = validate_tableau(t);
  if (mu.weight() != nu.weight()) throw RecolorError("recolor_to: target weight differs from the tableau's");
  if (!dominates(mu, nu)) throw RecolorError("recolor_to: type " + to_string(mu) + " does not dominate " + to_string(nu));

  LatinTableau cur = t;
  for (const TransferMove& m : dominance_chain(mu, nu)) {
    auto classes = cur.coloring.classes();
    // order colors the same way as the type's parts
    std::vector<std::pair<int, int>> by_size;  // (size, color)
    int max_color = 0;
    for (const auto& [c, bs] : classes) {
      by_size.emplace_back(static_cast<int>(bs.size()), c);
      max_color = std::max(max_color, c);
    }
    std::stable_sort(by_size.begin(), by_size.end(), [](auto a, auto b) { return a.first > b.first; });
    const int donor = by_size.at(static_cast<std::size_t>(m.donor)).second;
    const int receiver =
        static_cast<std::size_t>(m.receiver) < by_size.size() ? by_size[static_cast<std::size_t>(m.receiver)].second : max_color + 1;

    // walk components of donor ∪ receiver; rows and columns are the vertices
    std::map<std::pair<int, int>, std::vector<Box>> incident;  // (0,row)/(1,col) -> boxes
    std::vector<Box> edges = classes[donor];
    if (classes.contains(receiver)) edges.insert(edges.end(), classes[receiver].begin(), classes[receiver].end());
    for (const Box& b : edges) {
      incident[{0, b.row}].push_back(b);
      incident[{1, b.col}].push_back(b);
    }
    std::set<Box> seen;
    std::vector<Box> path;
    for (const Box& start : edges) {
      if (seen.contains(start)) continue;
      std::vector<Box> comp;
      std::vector<Box> stack{start};
      seen.insert(start);
      while (!stack.empty()) {
        Box b = stack.back();
        stack.pop_back();
        comp.push_back(b);
        for (auto v : {std::pair{0, b.row}, std::pair{1, b.col}})
          for (const Box& nb : incident[v])
            if (seen.insert(nb).second) stack.push_back(nb);
      }
      int balance = 0;
      for (const Box& b : comp) balance += (cur.coloring.color_of(b) == donor) ? 1 : -1;
      if (balance > 0) {
        path = std::move(comp);
        break;
      }
    }
    if (path.empty()) throw std::logic_error("recolor_to: no donor-majority alternating path (engine defect)");
    for (const Box& b : path) cur.coloring.set(b, cur.coloring.color_of(b) == donor ? receiver : donor);
    validate_tableau(cur);
    if (on_step) on_step(cur);
  }
  if (cur.type() != nu) throw std::logic_error("recolor_to: final type mismatch (engine defect)");
  return cur;
}

/// Outcome of checking one partition against the conjecture.
struct VerificationRecord {
  Partition lambda;
  Partition delta;
  SearchOutcome outcome = SearchOutcome::absent;
  std::optional<LatinTableau> witness;
  std::chrono::nanoseconds elapsed{0};
  std::uint64_t node_count = 0;

  bool tableau_found() const { return outcome == SearchOutcome::found; }
  bool counterexample() const { return outcome == SearchOutcome::absent; }
};

inline VerificationRecord verify_conjecture_single(const Partition& lambda, const SolverOptions& opt = {}) {
  if (lambda.empty()) throw EmptyPartitionError("verify_conjecture_single: empty partition");
  const auto t0 = std::chrono::steady_clock::now();
  VerificationRecord rec;
  rec.lambda = lambda;
  rec.delta = cds(lambda).delta_partition();
  SolveResult res = solve_latin_tableau(lambda, rec.delta, opt);
  rec.outcome = res.outcome;
  rec.witness = std::move(res.tableau);
  rec.node_count = res.nodes;
  rec.elapsed = std::chrono::steady_clock::now() - t0;
  return rec;
}

}  // namespace ltc
