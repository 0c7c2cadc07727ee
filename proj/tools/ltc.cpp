// ltc: command-line front end for the Latin tableau library.
//
// Exit codes: 0 ok, 1 usage or engine error, 2 counterexample, 3 inconclusive.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "ltc/ltc.hpp"

namespace {

using namespace ltc;

std::pair<int, int> parse_box(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw CLI::ValidationError("--box", "expected MxN, got '" + text + "'");
  try {
    std::size_t a = 0;
    std::size_t b = 0;
    const int m = std::stoi(text.substr(0, x), &a);
    const int n = std::stoi(text.substr(x + 1), &b);
    if (a != x || b != text.size() - x - 1 || m < 1 || n < 1) throw std::invalid_argument("box");
    return {m, n};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--box", "expected MxN with M,N >= 1, got '" + text + "'");
  }
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

// a JSON file, "-" for stdin, or inline tableau text such as "1 2 3 4/3 4/2"
LatinTableau load_tableau(const std::string& arg) {
  if (arg == "-") return tableau_from_json(json::parse(std::cin));
  std::ifstream in(arg);
  if (in) return tableau_from_json(json::parse(in));
  return parse_tableau(arg);
}

void print_tableau(const LatinTableau& t, const std::string& style, bool as_json) {
  if (as_json) {
    std::cout << to_json(t).dump(2) << '\n';
    return;
  }
  std::cout << "type = " << to_string(t.type()) << '\n';
  std::cout << render(t.shape, t.coloring, style.empty() ? "ascii" : style);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latin tableaux, chromatic difference sequences and the first-four-terms construction"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string partition_text, shape_text, type_text, to_text, in_text, box_text = "8x8";
  bool no_store = false;
  const std::vector<std::string> styles = {"ascii", "latex"};

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", cfg.json, "machine-readable output");
  };

  auto* cds_cmd = app.add_subcommand("cds", "chromatic difference sequence of a partition");
  cds_cmd->add_option("partition", partition_text, "e.g. 4,2,1")->required();
  add_common(cds_cmd);

  auto* census_cmd = app.add_subcommand("census", "distinct normalized CDS prefixes over a box");
  census_cmd->add_option("--r", cfg.r, "prefix length (1..7)")->default_val(4)->check(CLI::Range(1, 7));
  census_cmd->add_option("--box", box_text, "MxN box")->default_val("12x12");
  census_cmd->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  add_common(census_cmd);

  auto* exists_cmd = app.add_subcommand("exists", "search for a Latin tableau of given shape and type");
  exists_cmd->add_option("--shape", shape_text)->required();
  exists_cmd->add_option("--type", type_text)->required();
  exists_cmd->add_option("--budget", cfg.budget, "node budget, 0 = unlimited");
  exists_cmd->add_option("--render", cfg.render)->check(CLI::IsMember(styles));
  add_common(exists_cmd);

  auto* color4_cmd = app.add_subcommand("color4", "construct four stable sets of sizes delta_1..delta_4");
  color4_cmd->add_option("partition", partition_text)->required();
  color4_cmd->add_option("--render", cfg.render)->check(CLI::IsMember(styles));
  add_common(color4_cmd);

  auto* recolor_cmd = app.add_subcommand("recolor", "move a tableau down the dominance order");
  recolor_cmd->add_option("--in", in_text, "tableau JSON file, '-' for stdin, or text like '1 2 3 4/3 4/2'")->required();
  recolor_cmd->add_option("--to", to_text, "target type")->required();
  recolor_cmd->add_option("--render", cfg.render)->check(CLI::IsMember(styles));
  add_common(recolor_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "check for a tableau of type delta, for one shape or a whole box");
  verify_cmd->add_option("--shape", shape_text, "verify a single partition");
  verify_cmd->add_option("--box", box_text, "MxN box")->default_val("8x8");
  verify_cmd->add_option("--budget", cfg.budget, "node budget per partition, 0 = unlimited");
  verify_cmd->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--store", cfg.store_path, "JSONL result store (default $LTL_STORE or ltc_store.jsonl)");
  verify_cmd->add_flag("--no-store", no_store, "keep results in memory only");
  verify_cmd->add_option("--render", cfg.render)->check(CLI::IsMember(styles));
  add_common(verify_cmd);

  auto* cex_cmd = app.add_subcommand("counterexamples", "check the built-in non-CDS-colorable diagrams");
  add_common(cex_cmd);

  auto* render_cmd = app.add_subcommand("render", "draw a tableau");
  render_cmd->add_option("--in", in_text, "tableau JSON file, '-' for stdin, or text like '1 2 3 4/3 4/2'")->required();
  render_cmd->add_option("--render", cfg.render)->check(CLI::IsMember(styles))->default_val("ascii");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cds_cmd) {
      const Partition lambda = parse_partition(partition_text);
      const CdsProfile p = cds(lambda);
      if (cfg.json) {
        std::cout << to_json(p, lambda).dump(2) << '\n';
      } else {
        std::cout << "delta = " << join(p.delta) << '\n'
                  << "alpha = " << join(p.alpha) << '\n'
                  << "normalized = " << join(p.normalized) << '\n';
      }
      return 0;
    }

    if (*census_cmd) {
      const auto [m, n] = parse_box(box_text);
      if (census_cmd->count("--jobs") == 0) cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
      const Census c = prefix_census(cfg.r, m, n, cfg.jobs);
      // counts are lower bounds; call them saturated once the next smaller box already shows every prefix
      bool saturated = false;
      if (m > 1 && n > 1) saturated = prefix_census(cfg.r, m - 1, n - 1, cfg.jobs).prefixes.size() == c.prefixes.size();
      if (cfg.json) {
        json j = to_json(c);
        j["saturated"] = saturated;
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << c.prefixes.size() << " prefixes (lower bound";
        if (m > 1 && n > 1) std::cout << "; " << (saturated ? "unchanged from " : "grew from ") << m - 1 << "x" << n - 1;
        std::cout << ")\n";
        for (const auto& [key, row] : c.prefixes)
          std::cout << "(" << join(key) << ") count=" << row.count << " witness=" << to_string(row.witness) << '\n';
      }
      return 0;
    }

    if (*exists_cmd) {
      SolverOptions opt;
      opt.node_budget = cfg.budget;
      const SolveResult res = solve_latin_tableau(parse_partition(shape_text), parse_partition(type_text), opt);
      if (cfg.json) {
        json j = {{"outcome", to_string(res.outcome)}, {"nodes", res.nodes}};
        if (res.tableau) j["tableau"] = to_json(*res.tableau);
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << to_string(res.outcome) << '\n';
        if (res.tableau) print_tableau(*res.tableau, cfg.render, false);
      }
      return res.outcome == SearchOutcome::inconclusive ? 3 : 0;
    }

    if (*color4_cmd) {
      const Partition lambda = parse_partition(partition_text);
      const Color4Result res = color4_with_fallback(lambda, &std::cerr);
      const PartialColoring4& pc = res.coloring;
      if (cfg.json) {
        std::cout << to_json(pc, lambda).dump(2) << '\n';
      } else {
        std::cout << "prefix = " << to_string(pc.prefix) << "  method = " << pc.method
                  << (pc.matching_completion ? " (matching completion)" : "") << '\n';
        const auto sz = pc.sizes();
        std::cout << "target = " << join(std::vector<int>(pc.target.begin(), pc.target.end()))
                  << "  sizes = " << join(std::vector<int>(sz.begin(), sz.end())) << '\n';
        std::cout << render(lambda, pc.as_coloring(), cfg.render.empty() ? "ascii" : cfg.render);
      }
      return 0;
    }

    if (*recolor_cmd) {
      const LatinTableau t = load_tableau(in_text);
      int steps = 0;
      const LatinTableau out = recolor_to(t, parse_partition(to_text), [&](const LatinTableau&) { ++steps; });
      if (!cfg.json) std::cout << "steps = " << steps << '\n';
      print_tableau(out, cfg.render, cfg.json);
      return 0;
    }

    if (*verify_cmd) {
      SolverOptions opt;
      opt.node_budget = cfg.budget;
      if (!shape_text.empty()) {
        const VerificationRecord rec = verify_conjecture_single(parse_partition(shape_text), opt);
        if (cfg.json) {
          std::cout << to_json(rec).dump(2) << '\n';
        } else {
          std::cout << "delta = " << to_string(rec.delta) << "  " << to_string(rec.outcome) << " (" << rec.node_count
                    << " nodes)\n";
          if (rec.witness) std::cout << render(rec.lambda, rec.witness->coloring, cfg.render.empty() ? "ascii" : cfg.render);
        }
        return rec.outcome == SearchOutcome::absent ? 2 : rec.outcome == SearchOutcome::inconclusive ? 3 : 0;
      }
      std::tie(cfg.box_m, cfg.box_n) = parse_box(box_text);
      if (verify_cmd->count("--jobs") == 0) cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
      if (cfg.store_path.empty()) {
        const char* env = std::getenv("LTL_STORE");
        cfg.store_path = env && *env ? env : "ltc_store.jsonl";
      }
      ResultStore store = no_store ? ResultStore{} : ResultStore{cfg.store_path};
      const VerifySummary s = verify_box(cfg, store, &std::cerr);
      if (cfg.json) {
        json failures = json::array();
        for (const Partition& p : s.failures) failures.push_back(to_string(p));
        std::cout << json{{"box", json::array({cfg.box_m, cfg.box_n})},
                          {"total", s.total},
                          {"verified", s.verified},
                          {"inconclusive", s.inconclusive},
                          {"counterexamples", s.counterexamples},
                          {"reused", s.reused},
                          {"solver_calls", s.solver_calls},
                          {"failures", failures}}
                         .dump(2)
                  << '\n';
      } else {
        std::cout << "box " << cfg.box_m << "x" << cfg.box_n << ": " << s.total << " partitions, " << s.verified
                  << " verified, " << s.inconclusive << " inconclusive, " << s.counterexamples << " counterexamples ("
                  << s.reused << " from store, " << s.solver_calls << " solved)\n";
        std::cerr << "wall time " << s.wall_seconds << " s\n";
        for (const Partition& p : s.failures) std::cout << "  " << to_string(p) << '\n';
      }
      return s.exit_code();
    }

    if (*cex_cmd) {
      const auto checks = run_counterexamples();
      bool ok = true;
      json arr = json::array();
      for (const auto& c : checks) {
        ok = ok && c.ok;
        if (cfg.json) {
          arr.push_back({{"name", c.name},
                         {"alpha", c.alpha},
                         {"cds", to_json(c.cds)},
                         {"target", to_json(c.target)},
                         {"coloring", c.present ? "present" : "absent"},
                         {"ok", c.ok}});
        } else {
          std::cout << c.name << " alpha=" << join(c.alpha) << " cds=" << to_string(c.cds)
                    << " target=" << to_string(c.target) << " coloring=" << (c.present ? "present" : "absent") << ' '
                    << (c.ok ? "ok" : "FAIL") << '\n';
        }
      }
      if (cfg.json) std::cout << json{{"checks", arr}, {"ok", ok}}.dump(2) << '\n';
      return ok ? 0 : 1;
    }

    if (*render_cmd) {
      const LatinTableau t = load_tableau(in_text);
      std::cout << render(t.shape, t.coloring, cfg.render);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
