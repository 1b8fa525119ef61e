#pragma once

// Weighted undirected multigraphs, cuts, volumes, Laplacians and the
// edge-list text format.
//
// Parallel edges are folded into a single weight at insertion, so a bundle
// of c edges of weight w is indistinguishable from one edge of weight c*w.
// Every quantity in this library (degrees, cuts, Laplacians) only sees
// summed weights.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "congestion/error.hpp"

namespace congestion {

using Vertex = std::size_t;
// Sorted, duplicate-free list of vertex indices.
using VertexSet = std::vector<Vertex>;

class Graph {
public:
  explicit Graph(std::size_t n, std::string name = {}) : adjacency_(n), degree_(n, 0.0), name_(std::move(name)) {
    if (n == 0) throw DomainError("graph must have at least one vertex");
  }

  std::size_t num_vertices() const noexcept { return adjacency_.size(); }
  // Number of distinct adjacent pairs (folded edges).
  std::size_t num_edges() const noexcept { return num_pairs_; }
  // Sum of all edge weights; the "m" of volume identities (Vol(V) = 2m).
  double total_weight() const noexcept { return total_weight_; }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // Adds w to the weight on {u, v}.
  Graph& add_edge(Vertex u, Vertex v, double w = 1.0) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw DomainError("self-loop on vertex " + std::to_string(u));
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("edge weight must be positive and finite");
    auto [it, inserted] = adjacency_[u].try_emplace(v, 0.0);
    if (inserted) ++num_pairs_;
    it->second += w;
    adjacency_[v][u] += w;
    degree_[u] += w;
    degree_[v] += w;
    total_weight_ += w;
    return *this;
  }

  double weight(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    auto it = adjacency_[u].find(v);
    return it == adjacency_[u].end() ? 0.0 : it->second;
  }

  double degree(Vertex v) const {
    check_vertex(v);
    return degree_[v];
  }

  double max_degree() const { return *std::max_element(degree_.begin(), degree_.end()); }
  double min_degree() const { return *std::min_element(degree_.begin(), degree_.end()); }
  const std::vector<double>& degrees() const noexcept { return degree_; }

  // Neighbours of v with folded weights, ascending by index.
  const std::map<Vertex, double>& neighbors(Vertex v) const {
    check_vertex(v);
    return adjacency_[v];
  }

  struct Edge {
    Vertex u;
    Vertex v;
    double w;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  // Folded edges with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_pairs_);
    for (Vertex u = 0; u < adjacency_.size(); ++u)
      for (const auto& [v, w] : adjacency_[u])
        if (u < v) out.push_back({u, v, w});
    return out;
  }

  void check_vertex(Vertex v) const {
    if (v >= adjacency_.size())
      throw DomainError("vertex " + std::to_string(v) + " out of range for graph on " +
                        std::to_string(adjacency_.size()) + " vertices");
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_ == b.adjacency_;
  }

private:
  std::vector<std::map<Vertex, double>> adjacency_;
  std::vector<double> degree_;
  std::size_t num_pairs_ = 0;
  double total_weight_ = 0.0;
  std::string name_;
};

inline Graph new_graph(std::size_t n) { return Graph(n); }

// Dense symmetric matrix. Writes through set() mirror across the diagonal.
class SymMatrix {
public:
  explicit SymMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * dim_ + j] = v;
    data_[j * dim_ + i] = v;
  }
  void add(std::size_t i, std::size_t j, double v) {
    data_[i * dim_ + j] += v;
    if (i != j) data_[j * dim_ + i] += v;
  }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

  // max_i sum_j |a_ij|
  double inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      double s = 0.0;
      for (double x : row(i)) s += std::abs(x);
      best = std::max(best, s);
    }
    return best;
  }

private:
  std::size_t dim_;
  std::vector<double> data_;
};

namespace detail {

inline std::vector<char> membership(const Graph& g, std::span<const Vertex> s) {
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : s) {
    g.check_vertex(v);
    in[v] = 1;
  }
  return in;
}

inline double cut_weight_mask(const Graph& g, const std::vector<char>& in) {
  double cut = 0.0;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (!in[u]) continue;
    for (const auto& [v, w] : g.neighbors(u))
      if (!in[v]) cut += w;
  }
  return cut;
}

} // namespace detail

// e(S, S̄): total weight of edges with exactly one endpoint in s.
inline double cut_weight(const Graph& g, std::span<const Vertex> s) {
  return detail::cut_weight_mask(g, detail::membership(g, s));
}

inline double volume(const Graph& g, std::span<const Vertex> s) {
  auto in = detail::membership(g, s);
  double vol = 0.0;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (in[v]) vol += g.degree(v);
  return vol;
}

inline VertexSet complement(const Graph& g, std::span<const Vertex> s) {
  auto in = detail::membership(g, s);
  VertexSet out;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (!in[v]) out.push_back(v);
  return out;
}

inline VertexSet all_vertices(std::size_t n) {
  VertexSet out(n);
  std::iota(out.begin(), out.end(), Vertex{0});
  return out;
}

inline SymMatrix laplacian(const Graph& g) {
  SymMatrix l(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) l.set(v, v, g.degree(v));
  for (const auto& e : g.edges()) l.set(e.u, e.v, -e.w);
  return l;
}

// I - D^{-1/2} A D^{-1/2}; requires every degree > 0.
inline SymMatrix normalized_laplacian(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<double> inv_sqrt(n);
  for (Vertex v = 0; v < n; ++v) {
    if (!(g.degree(v) > 0.0))
      throw DomainError("normalized Laplacian undefined: vertex " + std::to_string(v) + " is isolated");
    inv_sqrt[v] = 1.0 / std::sqrt(g.degree(v));
  }
  SymMatrix l(n);
  for (Vertex v = 0; v < n; ++v) l.set(v, v, 1.0);
  for (const auto& e : g.edges()) l.set(e.u, e.v, -e.w * inv_sqrt[e.u] * inv_sqrt[e.v]);
  return l;
}

// Vertex (u, v) maps to u * |V(h)| + v.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
  const std::size_t ng = g.num_vertices();
  const std::size_t nh = h.num_vertices();
  Graph out(ng * nh);
  for (Vertex u = 0; u < ng; ++u)
    for (const auto& e : h.edges()) out.add_edge(u * nh + e.u, u * nh + e.v, e.w);
  for (const auto& e : g.edges())
    for (Vertex v = 0; v < nh; ++v) out.add_edge(e.u * nh + v, e.v * nh + v, e.w);
  if (!g.name().empty() && !h.name().empty()) out.set_name(g.name() + "x" + h.name());
  return out;
}

// Subgraph induced by `subset` (sorted); local vertex i is subset[i].
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> subset) {
  std::vector<std::size_t> local(g.num_vertices(), g.num_vertices());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    g.check_vertex(subset[i]);
    local[subset[i]] = i;
  }
  Graph out(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (const auto& [v, w] : g.neighbors(subset[i]))
      if (local[v] != g.num_vertices() && i < local[v]) out.add_edge(i, local[v], w);
  return out;
}

// Components as sorted vertex sets, ordered by their smallest vertex.
inline std::vector<VertexSet> connected_components(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<char> seen(n, 0);
  std::vector<VertexSet> comps;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (const auto& [v, w] : g.neighbors(u))
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() == 1; }

// ---------------------------------------------------------------------------
// Edge-list text format
//
//   n m
//   u v w      (m lines, 0 <= u,v < n, u != v, w > 0)
//
// Lines starting with '#' and blank lines are ignored. Repeated pairs fold.

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

} // namespace detail

inline Graph parse_edge_list(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  std::size_t n = 0, m = 0, seen_edges = 0;
  std::vector<Graph::Edge> edges;
  auto fail = [&](const std::string& msg) -> DomainError {
    return DomainError("edge list line " + std::to_string(line_no) + ": " + msg);
  };
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = detail::trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto tok = detail::split_ws(line);
    if (!have_header) {
      if (tok.size() != 2 || !detail::parse_number(tok[0], n) || !detail::parse_number(tok[1], m))
        throw fail("expected header 'n m'");
      if (n == 0) throw fail("vertex count must be positive");
      have_header = true;
      continue;
    }
    if (tok.size() == 2) throw fail("duplicate header");
    Vertex u = 0, v = 0;
    double w = 0.0;
    if (tok.size() != 3 || !detail::parse_number(tok[0], u) || !detail::parse_number(tok[1], v) ||
        !detail::parse_number(tok[2], w))
      throw fail("expected 'u v w'");
    if (u >= n || v >= n) throw fail("vertex index out of range");
    if (u == v) throw fail("self-loop");
    if (!(w > 0.0) || !std::isfinite(w)) throw fail("weight must be positive");
    if (++seen_edges > m) throw fail("more edge lines than declared");
    edges.push_back({u, v, w});
  }
  if (!have_header) throw DomainError("edge list: missing header");
  if (seen_edges != m)
    throw DomainError("edge list: declared " + std::to_string(m) + " edges, found " + std::to_string(seen_edges));
  Graph g(n);
  for (const auto& e : edges) g.add_edge(e.u, e.v, e.w);
  return g;
}

// One line per folded pair, weights in shortest round-trip form.
inline std::string serialize_edge_list(const Graph& g, std::string_view comment = {}) {
  std::ostringstream os;
  if (!comment.empty()) {
    std::istringstream lines{std::string(comment)};
    for (std::string l; std::getline(lines, l);) os << "# " << l << '\n';
  }
  auto edges = g.edges();
  os << g.num_vertices() << ' ' << edges.size() << '\n';
  for (const auto& e : edges) os << e.u << ' ' << e.v << ' ' << detail::format_double(e.w) << '\n';
  return os.str();
}

} // namespace congestion
