#ifndef UNAVOID_IO_HPP
#define UNAVOID_IO_HPP

#include <fstream>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "unavoid/embedding.hpp"
#include "unavoid/error.hpp"
#include "unavoid/tournament.hpp"
#include "unavoid/tree.hpp"

namespace unavoid {

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string::npos) lines.pop_back();
  return lines;
}

inline int parse_count(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    int n = std::stoi(s, &used);
    if (s.find_first_not_of(" \t", used) != std::string::npos || n < 0) throw std::invalid_argument(s);
    return n;
  } catch (const std::exception&) {
    throw ParseError("expected a non-negative integer, got '" + s + "'", line);
  }
}

}  // namespace detail

/// Reads an n x n 0/1 matrix. A first line holding n is accepted (and is the
/// file format); it is recognised whenever that line is not itself a matrix row.
/// Rows may separate cells by whitespace.
inline Tournament tournament_from_matrix(const std::string& text) {
  auto lines = detail::split_lines(text);
  int first = 0;
  int expected = -1;
  if (!lines.empty()) {
    std::string compact;
    for (char c : lines[0])
      if (c != ' ' && c != '\t') compact += c;
    const bool looks_like_row = compact.find_first_not_of("01") == std::string::npos &&
                                compact.size() == lines.size();
    if (!looks_like_row) {
      expected = detail::parse_count(lines[0], 1);
      first = 1;
    }
  }
  std::vector<std::string> rows;
  for (std::size_t i = first; i < lines.size(); ++i) {
    std::string r;
    for (char c : lines[i]) {
      if (c == ' ' || c == '\t') continue;
      if (c != '0' && c != '1') throw ParseError(std::string("unexpected character '") + c + "'", static_cast<int>(i) + 1);
      r += c;
    }
    rows.push_back(r);
  }
  const int n = static_cast<int>(rows.size());
  if (expected >= 0 && expected != n) throw ParseError("header says " + std::to_string(expected) + " rows", 1);
  for (int u = 0; u < n; ++u)
    if (static_cast<int>(rows[u].size()) != n)
      throw ParseError("matrix is not square: row has " + std::to_string(rows[u].size()) + " cells, expected " +
                           std::to_string(n),
                       u + first + 1);
  Tournament t(n);
  for (int u = 0; u < n; ++u) {
    if (rows[u][u] == '1') throw ParseError("diagonal cell (" + std::to_string(u) + "," + std::to_string(u) + ") is 1", u + first + 1);
    for (int v = u + 1; v < n; ++v) {
      if (rows[u][v] == rows[v][u])
        throw ParseError("cells (" + std::to_string(u) + "," + std::to_string(v) + ") and (" + std::to_string(v) + "," +
                             std::to_string(u) + ") are not antisymmetric",
                         v + first + 1);
      rows[u][v] == '1' ? t.set_arc(u, v) : t.set_arc(v, u);
    }
  }
  return t;
}

inline std::string to_text(const Tournament& t) {
  std::string s = std::to_string(t.size()) + "\n";
  for (int u = 0; u < t.size(); ++u) {
    for (int v = 0; v < t.size(); ++v) s += t.arc(u, v) ? '1' : '0';
    s += '\n';
  }
  return s;
}

inline OrientedTree tree_from_text(const std::string& text) {
  auto lines = detail::split_lines(text);
  if (lines.empty()) throw ParseError("empty tree file", 0);
  int n = detail::parse_count(lines[0], 1);
  if (static_cast<int>(lines.size()) != n) throw ParseError("expected " + std::to_string(n - 1) + " arc lines", 1);
  std::vector<Arc> arcs;
  for (int i = 1; i < n; ++i) {
    std::istringstream in(lines[i]);
    int u, v;
    std::string rest;
    if (!(in >> u >> v) || (in >> rest)) throw ParseError("expected 'u v'", i + 1);
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("node out of range", i + 1);
    arcs.emplace_back(u, v);
  }
  try {
    return {n, std::move(arcs)};
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), 0);
  }
}

inline std::string to_text(const OrientedTree& a) {
  std::string s = std::to_string(a.size()) + "\n";
  for (auto [u, v] : a.arcs()) s += std::to_string(u) + " " + std::to_string(v) + "\n";
  return s;
}

inline Embedding embedding_from_text(const std::string& text, int nodes) {
  auto lines = detail::split_lines(text);
  Embedding phi(nodes);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::istringstream in(lines[i]);
    int x, v;
    std::string rest;
    if (!(in >> x >> v) || (in >> rest)) throw ParseError("expected 'node vertex'", static_cast<int>(i) + 1);
    if (x < 0 || x >= nodes) throw ParseError("node out of range", static_cast<int>(i) + 1);
    if (phi.assigned(x)) throw ParseError("node assigned twice", static_cast<int>(i) + 1);
    if (v < 0) throw ParseError("negative vertex", static_cast<int>(i) + 1);
    phi.image[x] = v;
  }
  return phi;
}

inline std::string to_text(const Embedding& phi) {
  std::string s;
  for (int x = 0; x < phi.size(); ++x) s += std::to_string(x) + " " + std::to_string(phi[x]) + "\n";
  return s;
}

inline std::string ordering_to_text(std::span<const int> order) {
  std::string s;
  for (std::size_t i = 0; i < order.size(); ++i) s += (i ? " " : "") + std::to_string(order[i]);
  return s + "\n";
}

inline std::vector<int> ordering_from_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<int> order;
  std::string tok;
  while (in >> tok) order.push_back(detail::parse_count(tok, 0));
  return order;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path, 0);
  out << content;
}

/// Reproduction bundle attached to HardError.
inline std::string dump_instance(const OrientedTree& a, const Tournament& t, std::span<const int> order) {
  return "# tree\n" + to_text(a) + "# tournament\n" + to_text(t) + "# ordering\n" + ordering_to_text(order);
}

}  // namespace unavoid

#endif  // UNAVOID_IO_HPP
