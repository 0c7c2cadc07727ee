#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ltc/cds.hpp"
#include "ltc/color4.hpp"
#include "ltc/diagram.hpp"
#include "ltc/partition.hpp"
#include "ltc/tableau.hpp"

namespace ltc {

using json = nlohmann::ordered_json;

inline json to_json(const Partition& p) { return p.parts(); }
inline json to_json(Box b) { return json::array({b.row, b.col}); }

inline json to_json(const std::vector<Box>& boxes) {
  json out = json::array();
  for (const Box& b : boxes) out.push_back(to_json(b));
  return out;
}

inline Partition partition_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("partition JSON must be an array of integers");
  return Partition(j.get<std::vector<int>>());
}

inline json to_json(const CdsProfile& p, const Partition& lambda) {
  json certs = json::array();
  for (std::size_t r = 0; r < p.certificates.size(); ++r) {
    const auto& c = p.certificates[r];
    certs.push_back({{"r", r + 1}, {"row", c.row}, {"col", c.col}, {"d", c.d}, {"mu", to_json(c.mu)}});
  }
  return {{"lambda", to_json(lambda)}, {"delta1", p.delta1}, {"alpha", p.alpha},
          {"delta", p.delta},           {"normalized", p.normalized}, {"certificates", certs}};
}

/// Cells in row-major order.
inline json to_json(const LatinTableau& t) {
  json cells = json::array();
  for (const auto& [b, c] : t.coloring.assignment()) cells.push_back({{"row", b.row}, {"col", b.col}, {"color", c}});
  return {{"shape", to_json(t.shape)}, {"type", to_json(t.type())}, {"cells", cells}};
}

inline LatinTableau tableau_from_json(const json& j) {
  LatinTableau t;
  t.shape = partition_from_json(j.at("shape"));
  for (const auto& cell : j.at("cells")) t.coloring.set({cell.at("row").get<int>(), cell.at("col").get<int>()}, cell.at("color").get<int>());
  return t;
}

inline json to_json(const PartialColoring4& pc, const Partition& lambda) {
  json sets = json::array();
  for (const auto& s : pc.sets) sets.push_back(to_json(s));
  return {{"lambda", to_json(lambda)},
          {"target", pc.target},
          {"prefix", pc.prefix},
          {"method", pc.method},
          {"matching_completion", pc.matching_completion},
          {"sets", sets}};
}

inline json to_json(const Census& c) {
  json rows = json::array();
  for (const auto& [key, row] : c.prefixes)
    rows.push_back({{"prefix", key}, {"count", row.count}, {"witness", to_json(row.witness)}});
  return {{"r", c.r}, {"box", json::array({c.box_m, c.box_n})}, {"distinct", c.prefixes.size()}, {"prefixes", rows}};
}

/// Witness stored as rows of color ids. No timing, so re-runs are
/// byte-identical.
inline json to_json(const VerificationRecord& rec) {
  json out = {{"lambda", to_string(rec.lambda)},
              {"delta", to_json(rec.delta)},
              {"outcome", to_string(rec.outcome)},
              {"nodes", rec.node_count}};
  if (rec.witness) {
    json rows = json::array();
    for (int i = 0; i < rec.lambda.length(); ++i) {
      json row = json::array();
      for (int j = 0; j < rec.lambda.part(i); ++j) row.push_back(rec.witness->coloring.color_of({i, j}));
      rows.push_back(row);
    }
    out["witness"] = rows;
  }
  return out;
}

inline SearchOutcome outcome_from_string(std::string_view s) {
  if (s == "found") return SearchOutcome::found;
  if (s == "absent") return SearchOutcome::absent;
  if (s == "inconclusive") return SearchOutcome::inconclusive;
  throw std::invalid_argument("unknown outcome '" + std::string(s) + "'");
}

inline VerificationRecord record_from_json(const json& j) {
  VerificationRecord rec;
  rec.lambda = parse_partition(j.at("lambda").get<std::string>());
  rec.delta = partition_from_json(j.at("delta"));
  rec.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  rec.node_count = j.at("nodes").get<std::uint64_t>();
  if (j.contains("witness")) {
    LatinTableau t{rec.lambda, {}};
    const auto& rows = j.at("witness");
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t c = 0; c < rows[i].size(); ++c) t.coloring.set({static_cast<int>(i), static_cast<int>(c)}, rows[i][c].get<int>());
    rec.witness = std::move(t);
  }
  return rec;
}

/// Tableau text: rows separated by '/', colors by spaces or commas,
/// e.g. "1 2 3/2 1/3". The shape is read off the row lengths.
inline LatinTableau parse_tableau(std::string_view text) {
  LatinTableau t;
  std::vector<int> lengths;
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::stringstream rows(s);
  std::string line;
  int i = 0;
  while (std::getline(rows, line, '/')) {
    std::istringstream in(line);
    std::string tok;
    int j = 0;
    while (in >> tok) {
      std::size_t used = 0;
      int c = 0;
      try {
        c = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw std::invalid_argument("malformed tableau entry '" + tok + "'");
      t.coloring.set({i, j++}, c);
    }
    lengths.push_back(j);
    ++i;
  }
  t.shape = Partition(lengths);
  return t;
}

/// Color ids in cells, '.' for boxes without a color; columns right-aligned.
inline std::string render_ascii(const Partition& shape, const Coloring& kappa) {
  int width = 1;
  for (const auto& [b, c] : kappa.assignment()) width = std::max(width, static_cast<int>(std::to_string(c).size()));
  std::string out;
  for (int i = 0; i < shape.length(); ++i) {
    for (int j = 0; j < shape.part(i); ++j) {
      const int c = kappa.color_of({i, j});
      std::string cell = c > 0 ? std::to_string(c) : ".";
      if (j > 0) out += ' ';
      out += std::string(static_cast<std::size_t>(width) - cell.size(), ' ') + cell;
    }
    out += '\n';
  }
  return out;
}

/// A ytableau environment; uncolored boxes are left blank.
inline std::string render_latex(const Partition& shape, const Coloring& kappa) {
  std::string out = "\\begin{ytableau}\n";
  for (int i = 0; i < shape.length(); ++i) {
    out += "  ";
    for (int j = 0; j < shape.part(i); ++j) {
      const int c = kappa.color_of({i, j});
      if (j > 0) out += " & ";
      out += c > 0 ? std::to_string(c) : "\\ ";
    }
    out += i + 1 < shape.length() ? " \\\\\n" : "\n";
  }
  return out + "\\end{ytableau}\n";
}

inline std::string render(const Partition& shape, const Coloring& kappa, std::string_view style) {
  if (style == "ascii") return render_ascii(shape, kappa);
  if (style == "latex") return render_latex(shape, kappa);
  throw std::invalid_argument("unknown render style '" + std::string(style) + "' (ascii|latex)");
}

}  // namespace ltc
