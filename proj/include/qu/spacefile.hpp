#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rational.hpp"
#include "report.hpp"
#include "space.hpp"

namespace qu {

class parse_error : public error {
 public:
  parse_error(std::size_t line, const std::string& msg)
      : error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Space files:
//
//   # comment
//   points 3
//   labels a b c        (optional)
//   relation
//   1 2
//   2 3
//   relation
//   ...
//
// Pairs are 1-based. Missing diagonal pairs are added and recorded in the
// validation report's reflexive_repairs.

namespace detail {
inline std::vector<std::string> words(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line.substr(0, line.find('#')));
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::size_t parse_index(const std::string& w, std::size_t n, std::size_t line) {
  std::size_t v = 0;
  for (char c : w) {
    if (c < '0' || c > '9') throw parse_error(line, "expected a point number, got '" + w + "'");
    v = v * 10 + static_cast<std::size_t>(c - '0');
    if (v > n) break;
  }
  if (v == 0 || v > n) throw parse_error(line, "point " + w + " outside 1.." + std::to_string(n));
  return v - 1;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace detail

struct ParsedSpace {
  GroundSet ground;
  std::vector<Relation> base;
};

/// Syntax only; no axioms are checked.
inline ParsedSpace parse_space_syntax(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  ParsedSpace p;
  bool have_points = false;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> blocks;
  while (std::getline(in, line)) {
    ++lineno;
    const auto w = detail::words(line);
    if (w.empty()) continue;
    if (w[0] == "points") {
      if (have_points) throw parse_error(lineno, "duplicate 'points'");
      if (w.size() != 2) throw parse_error(lineno, "expected 'points N'");
      std::size_t n = 0;
      try {
        std::size_t used = 0;
        n = std::stoul(w[1], &used);
        if (used != w[1].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw parse_error(lineno, "point count '" + w[1] + "' is not a number");
      }
      if (n == 0) throw parse_error(lineno, "a space needs at least one point");
      if (n > 62) throw parse_error(lineno, "at most 62 points are supported");
      p.ground.size = n;
      have_points = true;
    } else if (!have_points) {
      throw parse_error(lineno, "'points N' must come first");
    } else if (w[0] == "labels") {
      if (!p.ground.labels.empty()) throw parse_error(lineno, "duplicate 'labels'");
      if (!blocks.empty()) throw parse_error(lineno, "'labels' must precede the relations");
      if (w.size() - 1 != p.ground.size)
        throw parse_error(lineno, "expected " + std::to_string(p.ground.size) + " labels, got " + std::to_string(w.size() - 1));
      p.ground.labels.assign(w.begin() + 1, w.end());
    } else if (w[0] == "relation") {
      if (w.size() != 1) throw parse_error(lineno, "'relation' takes no arguments");
      blocks.emplace_back();
    } else {
      if (blocks.empty()) throw parse_error(lineno, "pair outside a 'relation' block");
      if (w.size() != 2) throw parse_error(lineno, "expected a pair 'i j'");
      blocks.back().emplace_back(detail::parse_index(w[0], p.ground.size, lineno),
                                 detail::parse_index(w[1], p.ground.size, lineno));
    }
  }
  if (!have_points) throw parse_error(lineno == 0 ? 1 : lineno, "missing 'points N'");
  for (const auto& b : blocks) p.base.push_back(Relation::from_pairs(p.ground.size, b));
  return p;
}

/// Parses and validates, repairing missing diagonals.
inline QUSpace parse_space(const std::string& text, const Caps& caps = {}) {
  ParsedSpace p = parse_space_syntax(text);
  ValidateOptions opt;
  opt.repair_reflexive = true;
  opt.max_points = caps.ground;
  return QUSpace::make(std::move(p.ground), std::move(p.base), opt);
}

inline QUSpace load_space(const std::string& path, const Caps& caps = {}) {
  return parse_space(detail::read_file(path), caps);
}

/// Canonical text: every pair of every base relation, row-major.
inline std::string serialize(const QUSpace& s) {
  std::string out = "points " + std::to_string(s.size()) + "\n";
  if (!s.ground().labels.empty()) {
    out += "labels";
    for (const auto& l : s.ground().labels) out += " " + l;
    out += "\n";
  }
  for (const auto& u : s.base()) {
    out += "relation\n";
    for (std::size_t i = 0; i < s.size(); ++i)
      u.row(i).for_each([&](std::size_t j) { out += std::to_string(i + 1) + " " + std::to_string(j + 1) + "\n"; });
  }
  return out;
}

inline std::string space_hash(const QUSpace& s) { return sha256_hex(serialize(s)); }

/// Point files: one rational per line ("p" or "p/q"), '#' comments.
inline std::vector<Rational> parse_points(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<Rational> out;
  while (std::getline(in, line)) {
    ++lineno;
    const auto w = detail::words(line);
    if (w.empty()) continue;
    if (w.size() != 1) throw parse_error(lineno, "expected one rational per line");
    try {
      out.push_back(parse_rational(w[0]));
    } catch (const error& e) {
      throw parse_error(lineno, e.what());
    }
  }
  if (out.empty()) throw parse_error(lineno == 0 ? 1 : lineno, "no points");
  return out;
}

inline std::vector<Rational> load_points(const std::string& path) { return parse_points(detail::read_file(path)); }

inline std::string serialize_points(const std::vector<Rational>& pts) {
  std::string out;
  for (const auto& p : pts) out += to_string(p) + "\n";
  return out;
}

}  // namespace qu
