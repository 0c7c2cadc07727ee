#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ltc/alpha.hpp"
#include "ltc/cds.hpp"
#include "ltc/color4.hpp"
#include "ltc/coloring_search.hpp"
#include "ltc/diagram.hpp"
#include "ltc/io.hpp"
#include "ltc/tableau.hpp"

namespace ltc {

struct RunConfig {
  int box_m = 8;
  int box_n = 8;
  int r = 4;
  std::uint64_t budget = 0;  // solver node budget, 0 = unlimited
  unsigned jobs = 1;
  bool json = false;
  std::string render;      // "", "ascii" or "latex"
  std::string store_path;  // empty = keep results in memory only

  void validate() const {
    if (box_m < 1 || box_n < 1) throw std::invalid_argument("box dimensions must be >= 1");
    if (jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
  }
};

struct StoreError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Append-only JSONL log of verification records keyed by partition text.
/// A torn last line (from an interrupted run) is ignored on load.
class ResultStore {
 public:
  ResultStore() = default;

  explicit ResultStore(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("lambda")) {
        ++skipped_lines_;
        continue;
      }
      std::string key = j.at("lambda").get<std::string>();
      records_[key] = std::move(j);
    }
    bool torn = false;
    if (std::ifstream tail(path_, std::ios::binary | std::ios::ate); tail && tail.tellg() > 0) {
      tail.seekg(-1, std::ios::end);
      torn = tail.get() != '\n';
    }
    out_.open(path_, std::ios::app);
    if (!out_) throw StoreError("cannot open store '" + path_ + "' for appending");
    if (torn) out_ << '\n';
  }

  bool contains(const std::string& key) const { return records_.contains(key); }
  const json* find(const std::string& key) const {
    auto it = records_.find(key);
    return it == records_.end() ? nullptr : &it->second;
  }
  std::size_t size() const { return records_.size(); }
  std::size_t skipped_lines() const { return skipped_lines_; }
  const std::string& path() const { return path_; }

  void append(const VerificationRecord& rec) {
    json j = to_json(rec);
    if (out_.is_open()) {
      out_ << j.dump() << '\n';
      out_.flush();
      if (!out_) throw StoreError("write to store '" + path_ + "' failed");
    }
    records_[to_string(rec.lambda)] = std::move(j);
  }

 private:
  std::string path_;
  std::ofstream out_;
  std::map<std::string, json> records_;
  std::size_t skipped_lines_ = 0;
};

struct VerifySummary {
  std::size_t total = 0;  // nonempty partitions in the box
  std::size_t verified = 0;
  std::size_t inconclusive = 0;
  std::size_t counterexamples = 0;
  std::size_t reused = 0;  // answered from the store
  std::size_t solver_calls = 0;
  double wall_seconds = 0;
  std::vector<Partition> failures;  // counterexamples and inconclusive, in enumeration order

  int exit_code() const { return counterexamples > 0 ? 2 : inconclusive > 0 ? 3 : 0; }
};

/// Runs the solver on every nonempty partition of the box not already
/// found in the store. Workers pull indices from a shared counter; the
/// calling thread is the only writer and appends in enumeration order.
/// Stored inconclusive records are retried.
inline VerifySummary verify_box(const RunConfig& cfg, ResultStore& store, std::ostream* log = nullptr) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Partition> all;
  for_each_partition_in_box(cfg.box_m, cfg.box_n, [&](const Partition& p) {
    if (!p.empty()) all.push_back(p);
  });

  VerifySummary sum;
  sum.total = all.size();
  std::vector<std::size_t> todo;
  std::vector<SearchOutcome> outcome(all.size(), SearchOutcome::inconclusive);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const json* j = store.find(to_string(all[i]));
    if (j && j->at("outcome") != "inconclusive") {
      outcome[i] = outcome_from_string(j->at("outcome").get<std::string>());
      ++sum.reused;
    } else {
      todo.push_back(i);
    }
  }

  SolverOptions opt;
  opt.node_budget = cfg.budget;
  std::vector<std::optional<VerificationRecord>> slots(todo.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= todo.size()) return;
      VerificationRecord rec = verify_conjecture_single(all[todo[k]], opt);
      std::lock_guard lock(mu);
      slots[k] = std::move(rec);
      ready.notify_one();
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned n = std::min<std::size_t>(cfg.jobs, std::max<std::size_t>(todo.size(), 1));
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
    for (std::size_t k = 0; k < todo.size(); ++k) {
      VerificationRecord rec;
      {
        std::unique_lock lock(mu);
        ready.wait(lock, [&] { return slots[k].has_value(); });
        rec = std::move(*slots[k]);
        slots[k].reset();
      }
      store.append(rec);
      ++sum.solver_calls;
      outcome[todo[k]] = rec.outcome;
      if (log && rec.outcome != SearchOutcome::found)
        *log << "lambda " << to_string(rec.lambda) << ": " << to_string(rec.outcome) << " after " << rec.node_count
             << " nodes\n";
    }
  }

  for (std::size_t i = 0; i < all.size(); ++i) {
    switch (outcome[i]) {
      case SearchOutcome::found: ++sum.verified; break;
      case SearchOutcome::absent: ++sum.counterexamples, sum.failures.push_back(all[i]); break;
      case SearchOutcome::inconclusive: ++sum.inconclusive, sum.failures.push_back(all[i]); break;
    }
  }
  sum.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sum;
}

/// alpha_1, alpha_2, ... up to the point where alpha reaches |d|.
inline std::vector<std::int64_t> alpha_sequence(const Diagram& d) {
  std::vector<std::int64_t> out;
  for (int r = 1; out.empty() || out.back() < static_cast<std::int64_t>(d.size()); ++r) out.push_back(alpha_r_flow(d, r));
  return out;
}

inline Partition cds_of_diagram(const Diagram& d) {
  std::vector<int> parts;
  std::int64_t prev = 0;
  for (std::int64_t a : alpha_sequence(d)) parts.push_back(static_cast<int>(a - prev)), prev = a;
  return Partition(parts);
}

struct CounterexampleCheck {
  std::string name;
  std::vector<std::int64_t> alpha;
  Partition cds;
  Partition target;
  bool expect_present = false;
  bool present = false;
  bool ok = false;
};

/// The built-in non-CDS-colorable diagrams, plus a control target that is
/// colorable.
inline std::vector<CounterexampleCheck> run_counterexamples() {
  struct Case {
    std::string name;
    Diagram d;
    std::vector<std::int64_t> alpha;
    Partition cds;
    Partition target;
    bool present;
  };
  const std::vector<Case> cases = {
      {"cds531", cds531_diagram(), {5, 8, 9}, {5, 3, 1}, {5, 3, 1}, false},
      {"cds6631", cds6631_diagram(), {6, 12, 15, 16}, {6, 6, 3, 1}, {6, 6, 3, 1}, false},
      {"cds531-control", cds531_diagram(), {5, 8, 9}, {5, 3, 1}, {4, 4, 1}, true},
  };
  std::vector<CounterexampleCheck> out;
  for (const Case& c : cases) {
    CounterexampleCheck chk;
    chk.name = c.name;
    chk.alpha = alpha_sequence(c.d);
    chk.cds = cds_of_diagram(c.d);
    chk.target = c.target;
    chk.expect_present = c.present;
    chk.present = exists_coloring_with_shape(c.d, c.target).has_value();
    chk.ok = chk.alpha == c.alpha && chk.cds == c.cds && chk.present == c.present;
    out.push_back(std::move(chk));
  }
  return out;
}

struct Color4Result {
  PartialColoring4 coloring;
  bool fallback = false;
  std::string gap;  // the PatternGap message when fallback is set
};

/// color_first4, falling back to the exact solver (four largest classes
/// of a tableau of type delta) if a construction reports a pattern gap.
inline Color4Result color4_with_fallback(const Partition& lambda, std::ostream* log = nullptr) {
  try {
    return {color_first4(lambda), false, {}};
  } catch (const PatternGap& gap) {
    if (log) *log << "pattern gap for lambda " << to_string(lambda) << ", using the solver: " << gap.what() << '\n';
    const CdsProfile prof = cds(lambda);
    auto t = exists_latin_tableau(lambda, prof.delta_partition());
    if (!t) throw std::runtime_error("solver found no tableau of type delta for " + to_string(lambda));
    auto classes = canonicalize(t->coloring).classes();
    Color4Result res;
    res.fallback = true;
    res.gap = gap.what();
    for (int c = 1; c <= 4; ++c) {
      res.coloring.target[static_cast<std::size_t>(c) - 1] = prof.delta_at(c);
      if (classes.contains(c)) res.coloring.sets[static_cast<std::size_t>(c) - 1] = classes[c];
    }
    res.coloring.prefix = prefix3(lambda);
    res.coloring.method = "solver-fallback";
    return res;
  }
}

}  // namespace ltc
