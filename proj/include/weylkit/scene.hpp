#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "weylkit/metrizability.hpp"
#include "weylkit/parser.hpp"
#include "weylkit/projective.hpp"

namespace weylkit {

struct SceneError : std::runtime_error {
  SceneError(const std::string& msg, int line)
      : std::runtime_error("scene:" + std::to_string(line) + ": " + msg), line_number(line) {}
  int line_number;
};

// Batch input: a chart plus any of metric / connection(s) / beta / odes.
struct Scene {
  ChartPtr chart;
  int epsilon = 1;
  std::optional<MetricField> metric;
  std::optional<ConnectionField> connection;
  std::optional<ConnectionField> connection2;
  std::optional<std::vector<Expr>> beta;
  std::optional<ODEPair> odes;

  WeylStructureField weyl_structure() const {
    if (!metric) throw std::runtime_error("scene has no [metric] section");
    if (beta) return WeylStructureField(*metric, *beta);
    return WeylStructureField::closed(*metric);
  }
};

namespace detail {

inline std::string trim_copy(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim_copy(item));
  return out;
}

} // namespace detail

// Line-oriented sectioned text format; '#' starts a comment.
//
//   [chart]
//   n = 3
//   vars = x0, x1, x2
//   fiber = p1, p2          # optional, n=3 only
//
//   [signature]
//   epsilon = +1
//
//   [metric]
//   diag(1, 1, 1)           # or sparse entries:  i j = expr
//
//   [connection]            # sparse Christoffel entries
//   0 1 1 = x2
//
//   [connection2]           # second connection, for `equivalent`
//
//   [beta]
//   x1, 0, 0                # covector components (or  k = expr  lines)
//
//   [odes]
//   F1 = p1^3
//   F2 = p1^2*p2
inline Scene load_scene(std::istream& in, int degree_bound = 64) {
  struct Line {
    int no;
    std::string text;
  };
  std::map<std::string, std::vector<Line>> sections;
  std::string cur;
  std::string raw;
  int lineno = 0;
  std::vector<std::pair<int, std::string>> order; // section declaration order
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim_copy(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw SceneError("malformed section header", lineno);
      cur = detail::trim_copy(line.substr(1, line.size() - 2));
      if (cur.empty()) throw SceneError("empty section name", lineno);
      order.push_back({lineno, cur});
      sections[cur];
      continue;
    }
    if (cur.empty()) throw SceneError("content before any [section]", lineno);
    sections[cur].push_back({lineno, line});
  }
  for (auto& [ln, name] : order)
    if (name != "chart" && name != "signature" && name != "metric" && name != "connection" &&
        name != "connection2" && name != "beta" && name != "odes")
      throw SceneError("unknown section [" + name + "]", ln);

  // ---- chart ----
  auto chart_it = sections.find("chart");
  if (chart_it == sections.end()) throw SceneError("missing [chart] section", lineno ? lineno : 1);
  int n = -1;
  std::vector<std::string> vars, fiber;
  for (auto& L : chart_it->second) {
    auto eq = L.text.find('=');
    if (eq == std::string::npos) throw SceneError("expected key = value", L.no);
    std::string key = detail::trim_copy(L.text.substr(0, eq));
    std::string val = detail::trim_copy(L.text.substr(eq + 1));
    if (key == "n") {
      n = std::stoi(val);
    } else if (key == "vars") {
      vars = detail::split(val, ',');
    } else if (key == "fiber") {
      fiber = detail::split(val, ',');
    } else {
      throw SceneError("unknown chart key '" + key + "'", L.no);
    }
  }
  if (n < 0) throw SceneError("chart needs n = <dim>", chart_it->second.empty() ? 1 : chart_it->second[0].no);
  if (vars.empty())
    for (int i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i));
  ChartPtr chart;
  int chart_line = chart_it->second.empty() ? 1 : chart_it->second[0].no;
  try {
    chart = std::make_shared<const Chart>(n, vars, fiber, degree_bound);
  } catch (const std::exception& e) {
    throw SceneError(e.what(), chart_line);
  }

  Scene scene;
  scene.chart = chart;

  auto parse_here = [&](const std::string& text, int line) {
    try {
      return parse_expr(text, chart);
    } catch (const ParseError& e) {
      throw SceneError(e.what(), line);
    }
  };

  // ---- signature ----
  if (auto it = sections.find("signature"); it != sections.end()) {
    for (auto& L : it->second) {
      auto eq = L.text.find('=');
      if (eq == std::string::npos) throw SceneError("expected epsilon = +1 or -1", L.no);
      std::string key = detail::trim_copy(L.text.substr(0, eq));
      std::string val = detail::trim_copy(L.text.substr(eq + 1));
      if (key != "epsilon") throw SceneError("unknown signature key '" + key + "'", L.no);
      if (val == "+1" || val == "1") scene.epsilon = 1;
      else if (val == "-1") scene.epsilon = -1;
      else throw SceneError("epsilon must be +1 or -1", L.no);
    }
  }

  // ---- metric ----
  if (auto it = sections.find("metric"); it != sections.end()) {
    TensorField g(chart, {Variance::Co, Variance::Co});
    std::vector<std::vector<bool>> seen(static_cast<std::size_t>(n),
                                        std::vector<bool>(static_cast<std::size_t>(n), false));
    for (auto& L : it->second) {
      if (L.text.rfind("diag(", 0) == 0) {
        if (L.text.back() != ')') throw SceneError("malformed diag(...)", L.no);
        auto parts = detail::split(L.text.substr(5, L.text.size() - 6), ',');
        if (static_cast<int>(parts.size()) != n)
          throw SceneError("diag needs exactly n entries", L.no);
        for (int i = 0; i < n; ++i) {
          g.at({i, i}) = parse_here(parts[static_cast<std::size_t>(i)], L.no);
          seen[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
        }
        continue;
      }
      auto eq = L.text.find('=');
      if (eq == std::string::npos) throw SceneError("expected 'i j = expr' or diag(...)", L.no);
      std::istringstream idx(L.text.substr(0, eq));
      int i = -1, j = -1;
      idx >> i >> j;
      if (idx.fail() || i < 0 || j < 0 || i >= n || j >= n)
        throw SceneError("metric entry indices out of range", L.no);
      Expr v = parse_here(detail::trim_copy(L.text.substr(eq + 1)), L.no);
      auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
      if (seen[sj][si] && !(g.at({j, i}) - v).is_zero())
        throw SceneError("metric entry conflicts with its symmetric counterpart", L.no);
      g.at({i, j}) = v;
      g.at({j, i}) = v;
      seen[si][sj] = seen[sj][si] = true;
    }
    int mline = it->second.empty() ? chart_line : it->second[0].no;
    try {
      scene.metric.emplace(chart, g, scene.epsilon);
    } catch (const std::exception& e) {
      throw SceneError(e.what(), mline);
    }
  }

  // ---- connections ----
  auto load_conn = [&](const char* name) -> std::optional<ConnectionField> {
    auto it = sections.find(name);
    if (it == sections.end()) return std::nullopt;
    ConnectionField conn(chart);
    for (auto& L : it->second) {
      auto eq = L.text.find('=');
      if (eq == std::string::npos) throw SceneError("expected 'i j k = expr'", L.no);
      std::istringstream idx(L.text.substr(0, eq));
      int i = -1, j = -1, k = -1;
      idx >> i >> j >> k;
      if (idx.fail() || i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n)
        throw SceneError("connection indices out of range", L.no);
      conn.set_gamma(i, j, k, parse_here(detail::trim_copy(L.text.substr(eq + 1)), L.no));
    }
    return conn;
  };
  scene.connection = load_conn("connection");
  scene.connection2 = load_conn("connection2");

  // ---- beta ----
  if (auto it = sections.find("beta"); it != sections.end()) {
    std::vector<Expr> b(static_cast<std::size_t>(n), Expr::zero(chart));
    for (auto& L : it->second) {
      auto eq = L.text.find('=');
      if (eq == std::string::npos) {
        auto parts = detail::split(L.text, ',');
        if (static_cast<int>(parts.size()) != n)
          throw SceneError("beta needs exactly n comma-separated components", L.no);
        for (int k = 0; k < n; ++k)
          b[static_cast<std::size_t>(k)] = parse_here(parts[static_cast<std::size_t>(k)], L.no);
      } else {
        std::istringstream idx(L.text.substr(0, eq));
        int k = -1;
        idx >> k;
        if (idx.fail() || k < 0 || k >= n) throw SceneError("beta index out of range", L.no);
        b[static_cast<std::size_t>(k)] = parse_here(detail::trim_copy(L.text.substr(eq + 1)), L.no);
      }
    }
    scene.beta = std::move(b);
  }

  // ---- odes ----
  if (auto it = sections.find("odes"); it != sections.end()) {
    if (!chart->has_fiber())
      throw SceneError("[odes] requires fiber = p1, p2 in the chart",
                       it->second.empty() ? chart_line : it->second[0].no);
    std::optional<Expr> F1, F2;
    for (auto& L : it->second) {
      auto eq = L.text.find('=');
      if (eq == std::string::npos) throw SceneError("expected F1 = expr / F2 = expr", L.no);
      std::string key = detail::trim_copy(L.text.substr(0, eq));
      Expr v = parse_here(detail::trim_copy(L.text.substr(eq + 1)), L.no);
      if (key == "F1") F1 = v;
      else if (key == "F2") F2 = v;
      else throw SceneError("unknown odes key '" + key + "'", L.no);
    }
    int oline = it->second.empty() ? chart_line : it->second[0].no;
    if (!F1 || !F2) throw SceneError("[odes] needs both F1 and F2", oline);
    scene.odes.emplace(chart, *F1, *F2);
  }

  if (!scene.metric && !scene.connection && !scene.odes)
    throw SceneError("scene declares no geometric object (metric, connection or odes)", chart_line);
  return scene;
}

inline Scene load_scene(const std::string& path, int degree_bound = 64) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene file: " + path);
  return load_scene(in, degree_bound);
}

} // namespace weylkit
