#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sspat/errors.hpp"
#include "sspat/pattern.hpp"
#include "sspat/systems.hpp"

namespace sspat {

/// Directed graph on vertices 0..n-1; edge (u, v) means u -> v.
struct DirectedGraph {
  std::size_t n = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges;

  void add_edge(std::size_t u, std::size_t v) {
    if (u >= n || v >= n) {
      throw InputError("edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) +
                       ") out of range for n = " + std::to_string(n));
    }
    edges.emplace(u, v);
  }
};

/// Graph with leader (input) and target (output) vertex sets, 0-based and
/// sorted ascending.
struct NetworkProblem {
  DirectedGraph graph;
  std::vector<std::size_t> leaders;
  std::vector<std::size_t> targets;
};

/// Pattern whose class is the qualitative class of G: ? on the diagonal,
/// * at (i, j) for i != j iff j -> i is an edge, 0 otherwise.
inline PatternMatrix qualitative_pattern(const DirectedGraph& g) {
  PatternMatrix p = zero_pattern(g.n, g.n);
  for (std::size_t i = 0; i < g.n; ++i) p(i, i) = Symbol::Quest;
  for (const auto& [from, to] : g.edges)
    if (from != to) p(to, from) = Symbol::Star;
  return p;
}

/// Starred submatrix of the n x n identity with the given row and column
/// vertex sets: * at (a, b) iff row_set[a] == col_set[b].
inline PatternMatrix selector_pattern(const std::vector<std::size_t>& row_set,
                                      const std::vector<std::size_t>& col_set, std::size_t n) {
  for (auto v : row_set)
    if (v >= n) throw InputError("vertex " + std::to_string(v + 1) + " out of range 1.." + std::to_string(n));
  for (auto v : col_set)
    if (v >= n) throw InputError("vertex " + std::to_string(v + 1) + " out of range 1.." + std::to_string(n));
  PatternMatrix p = zero_pattern(row_set.size(), col_set.size());
  for (std::size_t a = 0; a < row_set.size(); ++a)
    for (std::size_t b = 0; b < col_set.size(); ++b)
      if (row_set[a] == col_set[b]) p(a, b) = Symbol::Star;
  return p;
}

inline std::vector<std::size_t> all_vertices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

/// The structured system (A, B, C, 0) induced by a network problem.
inline StructuredIOSystem network_system(const NetworkProblem& prob) {
  const std::size_t n = prob.graph.n;
  if (prob.leaders.empty()) throw InputError("leader set is empty");
  if (prob.targets.empty()) throw InputError("target set is empty");
  StructuredIOSystem sys;
  sys.a = qualitative_pattern(prob.graph);
  sys.b = selector_pattern(all_vertices(n), prob.leaders, n);
  sys.c = selector_pattern(prob.targets, all_vertices(n), n);
  sys.d = zero_pattern(prob.targets.size(), prob.leaders.size());
  return sys;
}

/// Strong structural target controllability via the output-controllability
/// test on (A, B, C, 0). Holds is conclusive; Inconclusive is not a refutation.
inline AnalysisReport check_target_controllability(const NetworkProblem& prob) {
  return check_output_controllability(network_system(prob));
}

struct GraphParseResult {
  DirectedGraph graph;
  std::vector<std::string> warnings;
};

/// Parses the edge-list format: first non-comment line `n <count>`, then one
/// `u v` per line (1-based, u -> v). `#` starts a comment.
inline GraphParseResult parse_graph(std::istream& in) {
  GraphParseResult res;
  bool have_n = false;
  std::string line;
  std::size_t line_no = 0;
  auto read_index = [&](std::istringstream& ss, const std::string& what) -> long long {
    std::string tok;
    if (!(ss >> tok)) throw ParseError("missing " + what, line_no);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("invalid " + what + " '" + tok + "'", line_no);
    }
    if (used != tok.size()) throw ParseError("invalid " + what + " '" + tok + "'", line_no);
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (!have_n) {
      if (first != "n") throw ParseError("expected 'n <count>' header", line_no);
      const long long n = read_index(ss, "vertex count");
      if (n < 1) throw ParseError("vertex count must be positive", line_no);
      res.graph.n = static_cast<std::size_t>(n);
      have_n = true;
      if (std::string extra; ss >> extra) throw ParseError("unexpected token '" + extra + "'", line_no);
    } else {
      std::istringstream whole(line);
      const long long u = read_index(whole, "edge source");
      const long long v = read_index(whole, "edge target");
      if (std::string extra; whole >> extra) throw ParseError("unexpected token '" + extra + "'", line_no);
      const auto n = static_cast<long long>(res.graph.n);
      if (u < 1 || u > n || v < 1 || v > n) {
        throw ParseError("edge endpoint out of range 1.." + std::to_string(n), line_no);
      }
      const std::pair<std::size_t, std::size_t> e{static_cast<std::size_t>(u - 1),
                                                   static_cast<std::size_t>(v - 1)};
      if (res.graph.edges.count(e)) {
        res.warnings.push_back("line " + std::to_string(line_no) + ": duplicate edge " +
                               std::to_string(u) + " " + std::to_string(v) + " ignored");
        continue;
      }
      if (u == v) {
        res.warnings.push_back("line " + std::to_string(line_no) + ": self-loop at " +
                               std::to_string(u) + " does not change the diagonal (?)");
      }
      res.graph.edges.insert(e);
    }
  }
  if (!have_n) throw ParseError("missing 'n <count>' header", 0);
  return res;
}

inline GraphParseResult parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

/// Parses a 1-based vertex list such as "1,2" or "1-7,9" into sorted,
/// deduplicated 0-based indices.
inline std::vector<std::size_t> parse_vertex_list(const std::string& text, std::size_t n) {
  std::set<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  auto number = [&](const std::string& s) -> std::size_t {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw InputError("invalid vertex '" + s + "'");
    }
    if (used != s.size()) throw InputError("invalid vertex '" + s + "'");
    if (v < 1 || static_cast<std::size_t>(v) > n)
      throw InputError("vertex " + s + " out of range 1.." + std::to_string(n));
    return static_cast<std::size_t>(v - 1);
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InputError("empty entry in vertex list '" + text + "'");
    const auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      out.insert(number(item));
    } else {
      const std::size_t lo = number(item.substr(0, dash));
      const std::size_t hi = number(item.substr(dash + 1));
      if (lo > hi) throw InputError("descending range '" + item + "'");
      for (std::size_t v = lo; v <= hi; ++v) out.insert(v);
    }
  }
  if (out.empty()) throw InputError("empty vertex list");
  return {out.begin(), out.end()};
}

}  // namespace sspat
