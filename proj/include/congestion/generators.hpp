#pragma once

// Seeded graph families used by the experiments, plus the six-node fixture.
// All randomness comes from std::mt19937_64; every generator is a pure
// function of its parameters and seed.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "congestion/contraction.hpp"
#include "congestion/error.hpp"
#include "congestion/graph.hpp"

namespace congestion {

using Rng = std::mt19937_64;
inline constexpr std::string_view kRngName = "mt19937_64";

inline constexpr int kRegularRetryCap = 10000;

inline Graph hypercube(std::size_t d) {
  if (d == 0) throw DomainError("hypercube: d must be at least 1");
  if (d > 20) throw DomainError("hypercube: d too large");
  const std::size_t n = std::size_t{1} << d;
  Graph g(n, "Q_" + std::to_string(d));
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t b = 0; b < d; ++b) {
      const std::size_t u = v ^ (std::size_t{1} << b);
      if (v < u) g.add_edge(v, u);
    }
  return g;
}

inline Graph path(std::size_t k) {
  if (k < 2) throw DomainError("path: needs at least two vertices");
  Graph g(k, "P_" + std::to_string(k));
  for (std::size_t i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle(std::size_t k) {
  if (k < 3) throw DomainError("cycle: needs at least three vertices");
  Graph g(k, "C_" + std::to_string(k));
  for (std::size_t i = 0; i < k; ++i) g.add_edge(i, (i + 1) % k);
  return g;
}

inline Graph complete(std::size_t k) {
  if (k < 2) throw DomainError("complete: needs at least two vertices");
  Graph g(k, "K_" + std::to_string(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) g.add_edge(i, j);
  return g;
}

// P_m x P_n, or C_m x C_n when periodic. Vertex (i, j) is i*n + j.
inline Graph grid(std::size_t m, std::size_t n, bool periodic) {
  if (m < 2 || n < 2) throw DomainError("grid: m and n must be at least 2");
  if (periodic && (m < 3 || n < 3)) throw DomainError("grid: periodic grid needs m, n >= 3");
  Graph g = periodic ? cartesian_product(cycle(m), cycle(n)) : cartesian_product(path(m), path(n));
  g.set_name((periodic ? "torus_" : "grid_") + std::to_string(m) + "x" + std::to_string(n));
  return g;
}

// Configuration model; a pairing with a loop or a repeated pair is thrown
// away whole and redrawn.
inline Graph random_regular(std::size_t n, std::size_t d, Rng& rng) {
  if (d == 0 || d >= n) throw DomainError("random_regular: need 1 <= d < n");
  if ((n * d) % 2 != 0) throw DomainError("random_regular: n*d must be even");
  std::vector<Vertex> stubs(n * d);
  for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = i / d;

  for (int attempt = 0; attempt < kRegularRetryCap; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<Vertex, Vertex>> pairs;
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
      auto [a, b] = std::minmax(stubs[i], stubs[i + 1]);
      simple = a != b && pairs.emplace(a, b).second;
    }
    if (!simple) continue;
    Graph g(n, "rrg_" + std::to_string(n) + "_" + std::to_string(d));
    for (auto [a, b] : pairs) g.add_edge(a, b);
    return g;
  }
  throw DomainError("random_regular: no simple pairing after " + std::to_string(kRegularRetryCap) + " attempts");
}

inline Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return random_regular(n, d, rng);
}

inline Graph gnp(std::size_t n, double p, Rng& rng) {
  if (n < 2) throw DomainError("gnp: n must be at least 2");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("gnp: p must lie in (0, 1)");
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Graph g(n, "gnp_" + std::to_string(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng) < p) g.add_edge(u, v);
  return g;
}

inline Graph gnp(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  return gnp(n, p, rng);
}

enum class Terminals { per_qubit, single };

inline Terminals parse_terminals(std::string_view s) {
  if (s == "per-qubit") return Terminals::per_qubit;
  if (s == "single") return Terminals::single;
  throw DomainError("terminals must be 'per-qubit' or 'single', got '" + std::string(s) + "'");
}

inline std::size_t rqc_gates_per_layer(std::size_t q, std::size_t k) { return q / k; }

// Random circuit graph. Node layout: input terminals, then gates layer by
// layer, then output terminals. With Terminals::single each side is one node.
inline Graph rqc(std::size_t q, std::size_t depth, std::size_t k, Rng& rng,
                 Terminals terminals = Terminals::per_qubit) {
  if (k < 2 || k > q) throw DomainError("rqc: need 2 <= k <= q");
  if (depth == 0) throw DomainError("rqc: depth must be at least 1");
  const std::size_t per_layer = rqc_gates_per_layer(q, k);
  const std::size_t gates = depth * per_layer;
  const std::size_t side = terminals == Terminals::single ? 1 : q;
  Graph g(2 * side + gates, "rqc_" + std::to_string(q) + "_" + std::to_string(depth) + "_" + std::to_string(k));

  std::vector<Vertex> last(q);
  for (std::size_t i = 0; i < q; ++i) last[i] = terminals == Terminals::single ? 0 : i;
  std::vector<std::size_t> wires(q);
  Vertex next = side;
  for (std::size_t layer = 0; layer < depth; ++layer) {
    std::iota(wires.begin(), wires.end(), std::size_t{0});
    std::shuffle(wires.begin(), wires.end(), rng);
    for (std::size_t gate = 0; gate < per_layer; ++gate, ++next)
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t w = wires[gate * k + j];
        g.add_edge(last[w], next);
        last[w] = next;
      }
  }
  const Vertex out = side + gates;
  for (std::size_t i = 0; i < q; ++i) g.add_edge(last[i], terminals == Terminals::single ? out : out + i);
  return g;
}

inline Graph rqc(std::size_t q, std::size_t depth, std::size_t k, std::uint64_t seed,
                 Terminals terminals = Terminals::per_qubit) {
  Rng rng(seed);
  return rqc(q, depth, k, rng, terminals);
}

// Six-node network with its binarized embedding; congestion 4.
inline std::pair<Graph, ContractionTree> fig1_example() {
  Graph g(6, "fig1");
  g.add_edge(0, 1).add_edge(1, 2).add_edge(2, 5).add_edge(5, 3).add_edge(3, 2).add_edge(2, 4).add_edge(4, 5);
  return {std::move(g), parse_tree("((0 1) ((2 3) (4 5)))")};
}

// ---------------------------------------------------------------------------
// Family dispatch for the CLI and harness.

enum class Family { hypercube, path, cycle, grid, random_regular, gnp, rqc, fig1 };

inline Family parse_family(std::string_view s) {
  if (s == "hypercube") return Family::hypercube;
  if (s == "path") return Family::path;
  if (s == "cycle") return Family::cycle;
  if (s == "grid" || s == "lattice") return Family::grid;
  if (s == "random_regular" || s == "rrg") return Family::random_regular;
  if (s == "gnp") return Family::gnp;
  if (s == "rqc") return Family::rqc;
  if (s == "fig1") return Family::fig1;
  throw DomainError("unknown family '" + std::string(s) + "'");
}

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::hypercube: return "hypercube";
    case Family::path: return "path";
    case Family::cycle: return "cycle";
    case Family::grid: return "grid";
    case Family::random_regular: return "random_regular";
    case Family::gnp: return "gnp";
    case Family::rqc: return "rqc";
    case Family::fig1: return "fig1";
  }
  return "?";
}

inline bool is_random_family(Family f) {
  return f == Family::random_regular || f == Family::gnp || f == Family::rqc;
}

struct GenParams {
  std::size_t d = 0;  // hypercube dimension or regular degree
  std::size_t m = 0;
  std::size_t n = 0;  // path/cycle length, grid columns, rrg/gnp vertex count
  double p = 0.0;
  std::size_t q = 0;
  std::size_t depth = 0;
  std::size_t k = 0;
  bool periodic = false;
  Terminals terminals = Terminals::per_qubit;
};

struct GenSpec {
  Family family = Family::fig1;
  GenParams params;
  std::uint64_t seed = 0;
};

inline Graph generate(Family family, const GenParams& p, Rng& rng) {
  switch (family) {
    case Family::hypercube: return hypercube(p.d);
    case Family::path: return path(p.n);
    case Family::cycle: return cycle(p.n);
    case Family::grid: return grid(p.m, p.n, p.periodic);
    case Family::random_regular: return random_regular(p.n, p.d, rng);
    case Family::gnp: return gnp(p.n, p.p, rng);
    case Family::rqc: return rqc(p.q, p.depth, p.k, rng, p.terminals);
    case Family::fig1: return fig1_example().first;
  }
  throw DomainError("unknown family");
}

inline Graph generate(const GenSpec& spec) {
  Rng rng(spec.seed);
  return generate(spec.family, spec.params, rng);
}

} // namespace congestion
