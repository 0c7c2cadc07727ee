#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "ltc/partition.hpp"

namespace ltc {

/// A corner (i,j) achieving alpha_r = r*d + |mu| with d = i+j and mu the
/// corner subdiagram; mu is empty for a missing box.
struct CornerCertificate {
  int row = 0;
  int col = 0;
  int d = 0;
  Partition mu;
};

/// Chromatic difference sequence of a partition graph, with the corner
/// certificates that realize every alpha_r.
struct CdsProfile {
  int delta1 = 0;
  std::vector<std::int64_t> alpha;  // alpha[r-1] = alpha_r, last entry = |lambda|
  std::vector<int> delta;           // delta[r-1] = delta_r
  std::vector<int> normalized;      // normalized[r-1] = delta1 - delta_r
  std::vector<CornerCertificate> certificates;

  int length() const { return static_cast<int>(delta.size()); }

  /// delta_r with trailing zeros (r is 1-based).
  int delta_at(int r) const { return (r >= 1 && r <= length()) ? delta[static_cast<std::size_t>(r) - 1] : 0; }

  /// delta1 - delta_r with delta zero-padded (r is 1-based).
  int normalized_at(int r) const { return delta1 - delta_at(r); }

  std::int64_t alpha_at(int r) const {
    if (r <= 0) return 0;
    if (r > length()) return alpha.empty() ? 0 : alpha.back();
    return alpha[static_cast<std::size_t>(r) - 1];
  }

  Partition delta_partition() const { return Partition(delta); }
};

struct EmptyPartitionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The unique k with antidiagonal k-1 fully inside the diagram and
/// antidiagonal k not.
inline int delta1(const Partition& lambda) {
  if (lambda.empty()) throw EmptyPartitionError("delta1 of the empty partition");
  for (int k = 0;; ++k) {
    for (int t = 0; t <= k; ++t)
      if (lambda.part(t) <= k - t) return k;
  }
}

namespace detail {

/// corner_size[i][j] = |lambda corner (i,j)| for boxes (i,j) of lambda.
inline std::vector<std::vector<std::int64_t>> corner_sizes(const Partition& lambda) {
  std::vector<std::vector<std::int64_t>> size(static_cast<std::size_t>(lambda.length()));
  for (int i = lambda.length() - 1; i >= 0; --i) {
    auto& row = size[static_cast<std::size_t>(i)];
    row.assign(static_cast<std::size_t>(lambda.part(i)), 0);
    for (int j = 0; j < lambda.part(i); ++j) {
      std::int64_t below = (i + 1 < lambda.length() && j < lambda.part(i + 1))
                               ? size[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)]
                               : 0;
      row[static_cast<std::size_t>(j)] = (lambda.part(i) - j) + below;
    }
  }
  return size;
}

}  // namespace detail

/// CDS by corner minimization: alpha_r is the minimum of r*(i+j) + |corner|
/// over every box of the diagram and every minimal missing box.
inline CdsProfile cds(const Partition& lambda) {
  if (lambda.empty()) throw EmptyPartitionError("cds of the empty partition");
  CdsProfile out;
  out.delta1 = delta1(lambda);
  const std::int64_t total = lambda.weight();
  const auto sizes = detail::corner_sizes(lambda);

  struct Candidate {
    int i, j;
    std::int64_t size;
  };
  std::vector<Candidate> candidates;
  for (int i = 0; i < lambda.length(); ++i)
    for (int j = 0; j < lambda.part(i); ++j)
      candidates.push_back({i, j, sizes[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
  // minimal missing boxes: outer corners of the diagram
  for (int i = 0; i <= lambda.length(); ++i) {
    const int j = lambda.part(i);
    if (i == 0 || lambda.part(i - 1) > j) candidates.push_back({i, j, 0});
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::pair{a.i + a.j, a.i} < std::pair{b.i + b.j, b.i};
  });

  std::int64_t prev = 0;
  for (int r = 1;; ++r) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    const Candidate* arg = nullptr;
    for (const Candidate& c : candidates) {
      std::int64_t v = static_cast<std::int64_t>(r) * (c.i + c.j) + c.size;
      if (v < best) {
        best = v;
        arg = &c;
      }
    }
    out.alpha.push_back(best);
    out.delta.push_back(static_cast<int>(best - prev));
    out.normalized.push_back(out.delta1 - static_cast<int>(best - prev));
    out.certificates.push_back({arg->i, arg->j, arg->i + arg->j, corner_subdiagram(lambda, arg->i, arg->j)});
    prev = best;
    if (best == total) break;
  }
  return out;
}

/// delta1-normalized prefix (nd_1, ..., nd_r) with delta zero-padded.
///
/// Uses the minimum corner size per antidiagonal d < delta1, which is all
/// the corner formula needs; this is the fast path behind the census.
inline std::vector<int> normalized_prefix(const Partition& lambda, int r) {
  if (lambda.empty()) throw EmptyPartitionError("normalized_prefix of the empty partition");
  const int k = delta1(lambda);
  std::vector<std::int64_t> min_corner(static_cast<std::size_t>(k) + 1, std::numeric_limits<std::int64_t>::max());
  min_corner[static_cast<std::size_t>(k)] = 0;
  // corner size via suffix sums along each column of the first k antidiagonals
  for (int j = 0; j < k; ++j) {
    std::int64_t acc = 0;
    const int hmax = lambda.length();
    std::vector<std::int64_t> col_suffix(static_cast<std::size_t>(hmax) + 1, 0);
    for (int i = hmax - 1; i >= 0; --i) {
      acc += std::max(lambda.part(i) - j, 0);
      col_suffix[static_cast<std::size_t>(i)] = acc;
    }
    for (int i = 0; i + j < k && i < hmax; ++i) {
      auto& slot = min_corner[static_cast<std::size_t>(i + j)];
      slot = std::min(slot, col_suffix[static_cast<std::size_t>(i)]);
    }
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(r));
  const std::int64_t total = lambda.weight();
  std::int64_t prev = 0;
  for (int t = 1; t <= r; ++t) {
    std::int64_t best = total;
    for (int d = 0; d <= k; ++d) best = std::min(best, static_cast<std::int64_t>(t) * d + min_corner[static_cast<std::size_t>(d)]);
    out.push_back(k - static_cast<int>(best - prev));
    prev = best;
  }
  return out;
}

/// True iff some (i,j) with i+j = d has corner_subdiagram(lambda,i,j) = mu.
inline bool includes(const Partition& lambda, const Partition& mu, int d) {
  if (d < 0) return false;
  for (int i = 0; i <= d; ++i)
    if (corner_subdiagram(lambda, i, d - i) == mu) return true;
  return false;
}

inline bool excludes(const Partition& lambda, const Partition& mu, int d) { return !includes(lambda, mu, d); }

/// Pairs (mu, s = delta1 - d) of nonempty corners, restricted to a horizon r:
/// only 0 < s < r and |mu| < r*s survive, which still determine the first r
/// normalized CDS terms.
struct InclusionSet {
  std::set<std::pair<Partition, int>> entries;
  int horizon = 0;
};

inline InclusionSet inclusion_set(const Partition& lambda, int r) {
  if (lambda.empty()) throw EmptyPartitionError("inclusion_set of the empty partition");
  if (r < 2) throw std::invalid_argument("inclusion_set: horizon must be at least 2");
  InclusionSet out;
  out.horizon = r;
  const int k = delta1(lambda);
  for (int s = 1; s < r; ++s) {
    const int d = k - s;
    if (d < 0) break;
    for (int i = 0; i <= d; ++i) {
      Partition mu = corner_subdiagram(lambda, i, d - i);
      if (mu.empty()) continue;
      if (mu.weight() < static_cast<std::int64_t>(r) * s) out.entries.emplace(std::move(mu), s);
    }
  }
  return out;
}

/// Smallest nonnegative normalized terms consistent with every inclusion:
/// sum_{u<=t} nd_u >= t*s - |mu|.
inline std::vector<int> normalized_prefix_from_inclusions(const InclusionSet& set, int r) {
  std::vector<int> out;
  std::int64_t sum = 0;
  for (int t = 1; t <= r; ++t) {
    std::int64_t need = 0;
    if (t > 1) {
      need = out.back();
      for (const auto& [mu, s] : set.entries)
        need = std::max(need, static_cast<std::int64_t>(t) * s - mu.weight() - sum);
    }
    out.push_back(static_cast<int>(need));
    sum += need;
  }
  return out;
}

/// Inclusion clauses that classify (nd_2, nd_3), and the pair they imply.
struct CharacterizationPredicates {
  bool includes_1_at_d1m1 = false;       // (1) at delta1-1
  bool includes_21_at_d1m2 = false;      // (2,1) at delta1-2
  bool includes_22_at_d1m2 = false;      // (2,2) at delta1-2
  bool includes_2_or_11_at_d1m1 = false; // (2) or (1,1) at delta1-1
  int predicted_nd2 = 0;
  int predicted_nd3 = 0;
};

inline CharacterizationPredicates characterization_predicates(const Partition& lambda) {
  const int k = delta1(lambda);
  CharacterizationPredicates p;
  p.includes_1_at_d1m1 = includes(lambda, {1}, k - 1);
  p.includes_21_at_d1m2 = includes(lambda, {2, 1}, k - 2);
  p.includes_22_at_d1m2 = includes(lambda, {2, 2}, k - 2);
  p.includes_2_or_11_at_d1m1 = includes(lambda, {2}, k - 1) || includes(lambda, {1, 1}, k - 1);
  if (p.includes_1_at_d1m1) {
    p.predicted_nd2 = 1;
    p.predicted_nd3 = p.includes_21_at_d1m2 ? 2 : 1;
  } else {
    p.predicted_nd2 = 0;
    p.predicted_nd3 = p.includes_22_at_d1m2 ? 2 : (p.includes_2_or_11_at_d1m1 ? 1 : 0);
  }
  return p;
}

/// Necessary exclusions for the five prefixes (nd_2, nd_3, nd_4) that the
/// L4 construction handles separately. Negative d is vacuously excluded.
struct FivecaseExclusions {
  // (0,0,2)
  bool c002_excl_1 = true, c002_excl_11 = true, c002_excl_2 = true, c002_excl_333 = true;
  // (0,1,2)
  bool c012_excl_1 = true, c012_excl_22 = true, c012_excl_332 = true;
  // (0,2,2)
  bool c022_excl_1 = true;
  // (1,1,2)
  bool c112_excl_21 = true, c112_excl_331 = true, c112_excl_322 = true;
  // (1,2,2)
  bool c122_excl_321 = true;

  bool case002() const { return c002_excl_1 && c002_excl_11 && c002_excl_2 && c002_excl_333; }
  bool case012() const { return c012_excl_1 && c012_excl_22 && c012_excl_332; }
  bool case022() const { return c022_excl_1; }
  bool case112() const { return c112_excl_21 && c112_excl_331 && c112_excl_322; }
  bool case122() const { return c122_excl_321; }
};

inline FivecaseExclusions fivecase_exclusions(const Partition& lambda) {
  const int k = delta1(lambda);
  FivecaseExclusions e;
  e.c002_excl_1 = e.c012_excl_1 = e.c022_excl_1 = excludes(lambda, {1}, k - 1);
  e.c002_excl_11 = excludes(lambda, {1, 1}, k - 1);
  e.c002_excl_2 = excludes(lambda, {2}, k - 1);
  e.c002_excl_333 = excludes(lambda, {3, 3, 3}, k - 3);
  e.c012_excl_22 = excludes(lambda, {2, 2}, k - 2);
  e.c012_excl_332 = excludes(lambda, {3, 3, 2}, k - 3);
  e.c112_excl_21 = excludes(lambda, {2, 1}, k - 2);
  e.c112_excl_331 = excludes(lambda, {3, 3, 1}, k - 3);
  e.c112_excl_322 = excludes(lambda, {3, 2, 2}, k - 3);
  e.c122_excl_321 = excludes(lambda, {3, 2, 1}, k - 3);
  return e;
}

/// Upper bounds on the number of realizable normalized prefixes of length
/// r = 1..7, and (nd_2..nd_6) values that never occur.
inline constexpr std::array<int, 7> kPrefixCountBounds = {1, 2, 5, 13, 37, 108, 334};

inline const std::vector<std::array<int, 5>>& forbidden_quintuples() {
  static const std::vector<std::array<int, 5>> table = {
      {0, 0, 0, 2, 5}, {0, 0, 0, 3, 5}, {0, 0, 0, 4, 5}, {0, 0, 1, 3, 5}, {0, 0, 1, 4, 5},
      {0, 0, 2, 3, 5}, {0, 0, 2, 4, 4}, {0, 0, 2, 4, 5}, {0, 0, 3, 3, 4}, {0, 0, 3, 3, 5},
      {0, 0, 3, 4, 4}, {0, 0, 3, 4, 5}, {0, 1, 1, 4, 5}, {0, 1, 2, 4, 5}, {0, 1, 3, 3, 5},
      {0, 1, 3, 4, 4}, {0, 1, 3, 4, 5}, {0, 2, 2, 4, 5}, {1, 1, 3, 4, 5},
  };
  return table;
}

struct CensusRow {
  std::int64_t count = 0;
  Partition witness;
  std::size_t witness_index = 0;  // enumeration position of the witness
};

/// Distinct (nd_2, ..., nd_r) over all nonempty partitions in an m x n box,
/// keyed by prefix, with counts and the first witness in enumeration order.
struct Census {
  int r = 0;
  int box_m = 0;
  int box_n = 0;
  std::map<std::vector<int>, CensusRow> prefixes;
};

inline Census prefix_census(int r, int box_m, int box_n, unsigned jobs = 1) {
  if (r < 1 || r > 7) throw std::invalid_argument("prefix_census: r must be in 1..7");
  if (box_m < 1 || box_n < 1) throw std::invalid_argument("prefix_census: box dimensions must be >= 1");
  std::vector<Partition> all = partitions_in_box(box_m, box_n);
  jobs = std::max(1u, jobs);

  std::vector<std::map<std::vector<int>, CensusRow>> partial(jobs);
  auto work = [&](unsigned w) {
    auto& local = partial[w];
    for (std::size_t idx = w; idx < all.size(); idx += jobs) {
      const Partition& p = all[idx];
      if (p.empty()) continue;
      auto nd = normalized_prefix(p, r);
      std::vector<int> key(nd.begin() + 1, nd.end());
      auto [it, fresh] = local.try_emplace(std::move(key));
      if (fresh || idx < it->second.witness_index) {
        it->second.witness = p;
        it->second.witness_index = idx;
      }
      ++it->second.count;
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
  }

  Census out{r, box_m, box_n, {}};
  for (auto& local : partial) {
    for (auto& [key, row] : local) {
      auto [it, fresh] = out.prefixes.try_emplace(key, row);
      if (!fresh) {
        it->second.count += row.count;
        if (row.witness_index < it->second.witness_index) {
          it->second.witness = row.witness;
          it->second.witness_index = row.witness_index;
        }
      }
    }
  }
  return out;
}

}  // namespace ltc
