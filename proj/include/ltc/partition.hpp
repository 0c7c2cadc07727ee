#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ltc {

/// Box of a diagram: 0-based row and column, (0,0) is the top-left box.
struct Box {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Box&, const Box&) = default;
};

inline std::string to_string(Box b) {
  return "(" + std::to_string(b.row) + "," + std::to_string(b.col) + ")";
}

/// A weakly decreasing sequence of positive parts. Trailing zeros are
/// dropped on construction, so equal partitions compare equal.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0)
        throw std::invalid_argument("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }

  Partition(std::initializer_list<int> parts)
      : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const noexcept { return parts_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  bool empty() const noexcept { return parts_.empty(); }

  /// Part i (0-based) with implicit trailing zeros.
  int part(int i) const noexcept {
    return (i >= 0 && i < length()) ? parts_[static_cast<std::size_t>(i)] : 0;
  }

  std::int64_t weight() const noexcept {
    return std::accumulate(parts_.begin(), parts_.end(), std::int64_t{0});
  }

  bool contains(Box b) const noexcept {
    return b.row >= 0 && b.col >= 0 && b.row < length() && b.col < part(b.row);
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
};

/// Comma-separated text form, e.g. "4,2,1"; the empty string is the empty
/// partition.
inline std::string to_string(const Partition& p) {
  std::string out;
  for (int i = 0; i < p.length(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(p.part(i));
  }
  return out;
}

inline Partition parse_partition(std::string_view text) {
  std::vector<int> parts;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) return Partition{};
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto token = trim(text.substr(start, end - start));
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
      throw std::invalid_argument("malformed partition text: '" + std::string(text) + "'");
    parts.push_back(value);
    start = end + 1;
  }
  return Partition(std::move(parts));
}

struct Antidiagonal {
  std::vector<Box> present;
  std::vector<Box> missing;
};

/// Boxes (0,k),(1,k-1),...,(k,0) split by membership, each list ordered by row.
inline Antidiagonal antidiagonal(const Partition& lambda, int k) {
  Antidiagonal out;
  for (int i = 0; i <= k; ++i) {
    Box b{i, k - i};
    (lambda.contains(b) ? out.present : out.missing).push_back(b);
  }
  return out;
}

/// The part of the diagram weakly below and right of (i,j), re-anchored at
/// the origin.
inline Partition corner_subdiagram(const Partition& lambda, int i, int j) {
  std::vector<int> parts;
  for (int t = i; t < lambda.length(); ++t) {
    int v = lambda.part(t) - j;
    if (v <= 0) break;
    parts.push_back(v);
  }
  return Partition(std::move(parts));
}

/// Prefix-sum comparison with implicit zero padding; weights may differ.
inline bool dominates(const Partition& mu, const Partition& nu) {
  const int n = std::max(mu.length(), nu.length());
  std::int64_t a = 0;
  std::int64_t b = 0;
  for (int r = 0; r < n; ++r) {
    a += mu.part(r);
    b += nu.part(r);
    if (a < b) return false;
  }
  return true;
}

/// Moves one box from part `donor` to part `receiver` (0-based indices into
/// the zero-padded part sequence).
struct TransferMove {
  int donor = 0;
  int receiver = 0;

  friend bool operator==(const TransferMove&, const TransferMove&) = default;
};

/// Applies a move and re-sorts; throws if the move is not of the form
/// (a, b) -> (a+1, b-1) with a < b.
inline Partition apply_move(const Partition& p, TransferMove m) {
  std::vector<int> parts = p.parts();
  const int need = std::max(m.donor, m.receiver) + 1;
  if (m.donor < 0 || m.receiver < 0) throw std::invalid_argument("negative part index");
  if (static_cast<int>(parts.size()) < need) parts.resize(static_cast<std::size_t>(need), 0);
  int& b = parts[static_cast<std::size_t>(m.donor)];
  int& a = parts[static_cast<std::size_t>(m.receiver)];
  if (!(a < b)) throw std::invalid_argument("transfer requires receiver part < donor part");
  --b;
  ++a;
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition(std::move(parts));
}

/// A chain of single-box transfers taking mu down to nu in dominance order.
///
/// Each step finds the first index j where the current partition differs
/// from nu (necessarily a surplus) and the first later index k with a
/// deficit, then moves a box from the last copy of part j's value to the
/// first copy of part k's value. Both ends keep the sequence sorted and the
/// result still dominates nu, so no re-sorting is needed.
inline std::vector<TransferMove> dominance_chain(const Partition& mu, const Partition& nu) {
  if (mu.weight() != nu.weight())
    throw std::invalid_argument("dominance_chain: unequal weight");
  if (!dominates(mu, nu))
    throw std::invalid_argument("dominance_chain: not comparable (mu does not dominate nu)");

  const int n = std::max(mu.length(), nu.length());
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < mu.length(); ++i) cur[static_cast<std::size_t>(i)] = mu.part(i);
  auto at = [&](int i) -> int& { return cur[static_cast<std::size_t>(i)]; };

  std::vector<TransferMove> moves;
  for (;;) {
    int j = 0;
    while (j < n && at(j) == nu.part(j)) ++j;
    if (j == n) break;
    int k = j + 1;
    while (k < n && at(k) >= nu.part(k)) ++k;
    if (k == n) throw std::logic_error("dominance_chain: no deficit part found");
    int donor = j;
    while (donor + 1 < n && at(donor + 1) == at(j)) ++donor;
    int receiver = k;
    while (receiver - 1 > donor && at(receiver - 1) == at(k)) --receiver;
    --at(donor);
    ++at(receiver);
    moves.push_back({donor, receiver});
  }
  return moves;
}

/// Visits every partition with at most m parts, each at most n, in
/// descending lexicographic order of the zero-padded part sequence
/// (so (n,...,n) first and the empty partition last).
template <typename F>
void for_each_partition_in_box(int m, int n, F&& visit) {
  if (m < 0 || n < 0) throw std::invalid_argument("box dimensions must be nonnegative");
  std::vector<int> parts;
  parts.reserve(static_cast<std::size_t>(m));
  auto rec = [&](auto&& self, int limit) -> void {
    if (static_cast<int>(parts.size()) < m) {
      for (int v = limit; v >= 1; --v) {
        parts.push_back(v);
        self(self, v);
        parts.pop_back();
      }
    }
    visit(Partition(parts));
  };
  rec(rec, n);
}

inline std::vector<Partition> partitions_in_box(int m, int n) {
  std::vector<Partition> out;
  for_each_partition_in_box(m, n, [&](const Partition& p) { out.push_back(p); });
  return out;
}

/// All partitions of `total`, in descending lexicographic order.
inline std::vector<Partition> partitions_of(int total) {
  std::vector<Partition> out;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int remaining, int limit) -> void {
    if (remaining == 0) {
      out.emplace_back(parts);
      return;
    }
    for (int v = std::min(limit, remaining); v >= 1; --v) {
      parts.push_back(v);
      self(self, remaining - v, v);
      parts.pop_back();
    }
  };
  rec(rec, total, total);
  return out;
}

inline Partition conjugate(const Partition& lambda) {
  std::vector<int> parts(static_cast<std::size_t>(lambda.part(0)), 0);
  for (int j = 0; j < lambda.part(0); ++j) {
    int h = 0;
    while (h < lambda.length() && lambda.part(h) > j) ++h;
    parts[static_cast<std::size_t>(j)] = h;
  }
  return Partition(std::move(parts));
}

/// Boxes of the Young diagram in row-major order.
inline std::vector<Box> boxes_of(const Partition& lambda) {
  std::vector<Box> out;
  out.reserve(static_cast<std::size_t>(lambda.weight()));
  for (int i = 0; i < lambda.length(); ++i)
    for (int j = 0; j < lambda.part(i); ++j) out.push_back({i, j});
  return out;
}

}  // namespace ltc
