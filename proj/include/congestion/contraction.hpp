#pragma once

// Contraction trees, their congestion, the three tree constructions and the
// exact subset-DP reference.
//
// A contraction tree is a rooted binary tree whose leaves are the vertices
// of the graph. Every node stands for the intermediate tensor obtained by
// contracting its leaf set S; the rank of that tensor is the cut e(S, S̄).
// The congestion of a tree is the largest such cut.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "congestion/clustering.hpp"
#include "congestion/error.hpp"
#include "congestion/graph.hpp"

namespace congestion {

struct TreeNode {
  VertexSet subset;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
};

struct ContractionTree {
  std::vector<TreeNode> nodes;
  std::size_t root = 0;
  std::vector<std::size_t> leaf_map;  // vertex -> leaf node id

  std::size_t num_leaves() const noexcept { return leaf_map.size(); }
};

// Builds trees in preorder: a node gets its id before any of its descendants.
class TreeBuilder {
public:
  explicit TreeBuilder(std::size_t n) : n_(n) {}

  std::size_t add(VertexSet subset, std::optional<std::size_t> parent) {
    const std::size_t id = tree_.nodes.size();
    tree_.nodes.push_back({std::move(subset), parent, {}});
    if (parent) tree_.nodes[*parent].children.push_back(id);
    return id;
  }

  // Adds `subset` under `parent` and keeps splitting with `split` until
  // every leaf is a singleton.
  template <class Split>
  std::size_t grow(VertexSet subset, std::optional<std::size_t> parent, Split&& split) {
    const std::size_t id = add(subset, parent);
    if (subset.size() >= 2) {
      auto [a, b] = split(subset);
      if (a.empty() || b.empty() || a.size() + b.size() != subset.size())
        throw InvariantError("tree split produced an invalid bipartition");
      grow(std::move(a), id, split);
      grow(std::move(b), id, split);
    }
    return id;
  }

  ContractionTree finish() {
    tree_.root = 0;
    tree_.leaf_map.assign(n_, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < tree_.nodes.size(); ++i) {
      const auto& node = tree_.nodes[i];
      if (node.children.empty() && node.subset.size() == 1 && node.subset[0] < n_) tree_.leaf_map[node.subset[0]] = i;
    }
    return std::move(tree_);
  }

private:
  std::size_t n_;
  ContractionTree tree_;
};

// Every broken structural invariant of `t` relative to `g`; empty when valid.
inline std::vector<std::string> validate_tree(const Graph& g, const ContractionTree& t) {
  std::vector<std::string> bad;
  const std::size_t n = g.num_vertices();
  const std::size_t count = t.nodes.size();
  if (count == 0) return {"tree has no nodes"};
  if (t.root >= count) return {"root id out of range"};
  if (t.nodes[t.root].parent) bad.push_back("root has a parent");
  if (t.nodes[t.root].subset != all_vertices(n)) bad.push_back("root subset is not V(G)");

  std::vector<std::size_t> leaf_of(n, count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& node = t.nodes[i];
    const std::string id = "node " + std::to_string(i);
    if (!std::is_sorted(node.subset.begin(), node.subset.end()) ||
        std::adjacent_find(node.subset.begin(), node.subset.end()) != node.subset.end())
      bad.push_back(id + ": subset not sorted and duplicate-free");
    if (std::any_of(node.subset.begin(), node.subset.end(), [&](Vertex v) { return v >= n; })) {
      bad.push_back(id + ": subset has a vertex out of range");
      continue;
    }
    if (node.parent && *node.parent >= count) bad.push_back(id + ": parent id out of range");
    if (node.children.empty()) {
      if (node.subset.size() != 1) {
        bad.push_back(id + ": leaf is not a singleton");
      } else if (leaf_of[node.subset[0]] != count) {
        bad.push_back("bijection: vertex " + std::to_string(node.subset[0]) + " owns two leaves");
      } else {
        leaf_of[node.subset[0]] = i;
      }
      continue;
    }
    if (node.children.size() != 2) {
      bad.push_back("arity: " + id + " has " + std::to_string(node.children.size()) + " children");
    }
    VertexSet merged;
    bool children_ok = true;
    for (auto c : node.children) {
      if (c >= count) {
        bad.push_back(id + ": child id out of range");
        children_ok = false;
        continue;
      }
      if (t.nodes[c].parent != i) bad.push_back("node " + std::to_string(c) + ": parent pointer mismatch");
      merged.insert(merged.end(), t.nodes[c].subset.begin(), t.nodes[c].subset.end());
    }
    std::sort(merged.begin(), merged.end());
    if (children_ok && merged != node.subset) bad.push_back(id + ": children do not partition its subset");
  }
  for (Vertex v = 0; v < n; ++v) {
    if (leaf_of[v] == count) bad.push_back("bijection: vertex " + std::to_string(v) + " has no leaf");
    else if (v >= t.leaf_map.size() || t.leaf_map[v] != leaf_of[v])
      bad.push_back("leaf_map entry for vertex " + std::to_string(v) + " is wrong");
  }
  if (t.leaf_map.size() != n) bad.push_back("leaf_map size differs from vertex count");

  // Reachability from the root.
  std::vector<char> seen(count, 0);
  std::vector<std::size_t> stack{t.root};
  std::size_t reached = 0;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    if (i >= count || seen[i]) continue;
    seen[i] = 1;
    ++reached;
    for (auto c : t.nodes[i].children) stack.push_back(c);
  }
  if (reached != count) bad.push_back("tree has nodes unreachable from the root or a cycle");
  return bad;
}

struct CongestionCert {
  double congestion = 0.0;
  std::size_t argmax_node = 0;
  std::vector<double> per_node_cut;
};

// Max cut over non-root nodes; ties go to the smallest node id.
inline CongestionCert congestion(const Graph& g, const ContractionTree& t) {
  auto bad = validate_tree(g, t);
  if (!bad.empty()) throw DomainError("tree does not match graph: " + bad.front());
  CongestionCert cert;
  cert.per_node_cut.resize(t.nodes.size());
  cert.argmax_node = t.root;
  bool first = true;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    cert.per_node_cut[i] = cut_weight(g, t.nodes[i].subset);
    if (i == t.root) continue;
    if (first || cert.per_node_cut[i] > cert.congestion) {
      cert.congestion = cert.per_node_cut[i];
      cert.argmax_node = i;
      first = false;
    }
  }
  return cert;
}

// Smaller child size over n for the root split.
inline double root_balance(const ContractionTree& t) {
  const auto& root = t.nodes[t.root];
  if (root.children.empty()) return 0.0;
  std::size_t small = root.subset.size();
  for (auto c : root.children) small = std::min(small, t.nodes[c].subset.size());
  return static_cast<double>(small) / static_cast<double>(root.subset.size());
}

// ---------------------------------------------------------------------------
// Serialization: "((0 1) ((2 3) (4 5)))"

inline std::string serialize_tree(const ContractionTree& t) {
  std::string out;
  auto emit = [&](auto&& self, std::size_t i) -> void {
    const auto& node = t.nodes[i];
    if (node.children.empty()) {
      out += std::to_string(node.subset.front());
      return;
    }
    out += '(';
    for (std::size_t c = 0; c < node.children.size(); ++c) {
      if (c) out += ' ';
      self(self, node.children[c]);
    }
    out += ')';
  };
  emit(emit, t.root);
  return out;
}

inline ContractionTree parse_tree(std::string_view text) {
  struct Raw {
    bool leaf = false;
    Vertex v = 0;
    std::vector<Raw> kids;
  };
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto parse = [&](auto&& self) -> Raw {
    skip();
    if (pos >= text.size()) throw DomainError("tree text: unexpected end");
    Raw r;
    if (text[pos] == '(') {
      ++pos;
      for (;;) {
        skip();
        if (pos >= text.size()) throw DomainError("tree text: missing ')'");
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        r.kids.push_back(self(self));
      }
      if (r.kids.size() != 2)
        throw DomainError("tree text: internal node with " + std::to_string(r.kids.size()) + " children");
      return r;
    }
    std::size_t end = pos;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    if (end == pos) throw DomainError("tree text: unexpected character at offset " + std::to_string(pos));
    r.leaf = true;
    if (!detail::parse_number(text.substr(pos, end - pos), r.v)) throw DomainError("tree text: leaf index too large");
    pos = end;
    return r;
  };
  Raw top = parse(parse);
  skip();
  if (pos != text.size()) throw DomainError("tree text: trailing characters");

  std::size_t leaves = 0;
  auto count = [&](auto&& self, const Raw& r) -> void {
    if (r.leaf) ++leaves;
    for (const auto& k : r.kids) self(self, k);
  };
  count(count, top);
  // Ids are assigned on the way down, subsets on the way back up.
  std::vector<char> seen(leaves, 0);
  std::vector<VertexSet> subsets;
  TreeBuilder shape(leaves);
  auto fill = [&](auto&& self, const Raw& r, std::optional<std::size_t> parent) -> std::size_t {
    const std::size_t id = shape.add({}, parent);
    subsets.emplace_back();
    if (r.leaf) {
      if (r.v >= leaves || seen[r.v]) throw DomainError("tree text: leaves must be 0..n-1, each once");
      seen[r.v] = 1;
      subsets[id] = {r.v};
    } else {
      VertexSet s;
      for (const auto& k : r.kids) {
        auto c = self(self, k, id);
        s.insert(s.end(), subsets[c].begin(), subsets[c].end());
      }
      std::sort(s.begin(), s.end());
      subsets[id] = std::move(s);
    }
    return id;
  };
  fill(fill, top, std::nullopt);
  ContractionTree t = shape.finish();
  for (std::size_t i = 0; i < t.nodes.size(); ++i) t.nodes[i].subset = std::move(subsets[i]);
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    if (t.nodes[i].children.empty()) t.leaf_map[t.nodes[i].subset[0]] = i;
  return t;
}

// ---------------------------------------------------------------------------
// Tree constructions

namespace detail {

inline VertexSet lift(std::span<const Vertex> local, std::span<const Vertex> subset) {
  VertexSet out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(subset[v]);
  std::sort(out.begin(), out.end());
  return out;
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Splits off the smallest component (first in index order among equals).
inline std::pair<VertexSet, VertexSet> split_off_component(const std::vector<VertexSet>& comps,
                                                           std::span<const Vertex> subset) {
  std::size_t pick = 0;
  for (std::size_t i = 1; i < comps.size(); ++i)
    if (comps[i].size() < comps[pick].size()) pick = i;
  VertexSet a = lift(comps[pick], subset);
  VertexSet all(subset.begin(), subset.end());
  return {a, set_minus(all, a)};
}

// Two-way spectral split of the subgraph induced by `subset`.
inline std::pair<VertexSet, VertexSet> spectral_bisect(const Graph& g, const VertexSet& subset, bool normalized) {
  if (subset.size() == 2) return {{subset[0]}, {subset[1]}};
  const Graph h = induced_subgraph(g, subset);
  auto comps = connected_components(h);
  if (comps.size() > 1) return split_off_component(comps, subset);
  const Cut c = sweep_cut_2way(h, normalized);
  return {lift(c.members(), subset), lift(c.complement_members(), subset)};
}

inline std::pair<VertexSet, VertexSet> halve(const VertexSet& s) {
  const std::size_t cut = (s.size() + 1) / 2;
  return {VertexSet(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(cut)),
          VertexSet(s.begin() + static_cast<std::ptrdiff_t>(cut), s.end())};
}

} // namespace detail

// Hierarchical spectral clustering. The root is split three ways by
// spectral_clustering(g, 3) and binarized by first merging the pair of
// clusters whose union has the smallest cut; every further node is split by
// a 2-way sweep cut of its induced subgraph. Disconnected induced subgraphs
// split off their smallest component instead.
inline ContractionTree hsc(const Graph& g, std::uint64_t seed, bool normalized = false) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw DomainError("hsc: graph needs at least two vertices");
  TreeBuilder b(n);
  auto split = [&](const VertexSet& s) { return detail::spectral_bisect(g, s, normalized); };
  const VertexSet all = all_vertices(n);

  if (n == 2 || !is_connected(g)) {
    b.grow(all, std::nullopt, split);
    return b.finish();
  }

  auto parts = spectral_clustering(g, 3, seed, normalized).clusters();
  std::sort(parts.begin(), parts.end());
  struct Pair {
    std::size_t i, j;
  };
  const Pair pairs[] = {{0, 1}, {0, 2}, {1, 2}};
  std::size_t best = 0;
  double best_cut = std::numeric_limits<double>::infinity();
  VertexSet best_union;
  for (std::size_t p = 0; p < 3; ++p) {
    VertexSet u = detail::set_union(parts[pairs[p].i], parts[pairs[p].j]);
    const double c = cut_weight(g, u);
    if (c < best_cut || (c == best_cut && u < best_union)) {
      best_cut = c;
      best = p;
      best_union = std::move(u);
    }
  }
  const std::size_t lone = 3 - pairs[best].i - pairs[best].j;

  const std::size_t root = b.add(all, std::nullopt);
  auto emit_pair = [&] {
    const std::size_t mid = b.add(best_union, root);
    b.grow(parts[pairs[best].i], mid, split);
    b.grow(parts[pairs[best].j], mid, split);
  };
  // Children in order of their smallest vertex.
  if (parts[lone].front() < best_union.front()) {
    b.grow(parts[lone], root, split);
    emit_pair();
  } else {
    emit_pair();
    b.grow(parts[lone], root, split);
  }
  return b.finish();
}

// Spectral root cut followed by recursive halving in Fiedler order. The
// root split is the sweep cut, so both sides are contiguous blocks of the
// order; a block at positions i..j splits into i..floor((i+j)/2) and the rest.
inline ContractionTree hybrid_sc_equipartition(const Graph& g, bool normalized = false) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw DomainError("hybrid_sc_equipartition: graph needs at least two vertices");
  if (!is_connected(g)) throw DomainError("hybrid_sc_equipartition: graph is disconnected");
  const auto order = fiedler_order(g, normalized);
  const std::size_t root_len = detail::best_sweep_prefix(g, order, normalized);

  TreeBuilder b(n);
  auto subset_of = [&](std::size_t i, std::size_t j) {
    VertexSet s(order.begin() + static_cast<std::ptrdiff_t>(i), order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    std::sort(s.begin(), s.end());
    return s;
  };
  auto block = [&](auto&& self, std::size_t i, std::size_t j, std::size_t parent) -> void {
    const std::size_t id = b.add(subset_of(i, j), parent);
    if (j > i) {
      const std::size_t mid = (i + j) / 2;
      self(self, i, mid, id);
      self(self, mid + 1, j, id);
    }
  };
  const std::size_t root = b.add(all_vertices(n), std::nullopt);
  block(block, 0, root_len - 1, root);
  block(block, root_len, n - 1, root);
  return b.finish();
}

// Index-order thirds of sizes ceil(n/3), ceil((n - ceil(n/3))/2) and the
// rest, arranged as (S1, (S2, S3)), each block halved recursively.
inline ContractionTree recursive_equipartition(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw DomainError("recursive_equipartition: graph needs at least two vertices");
  const std::size_t s1 = (n + 2) / 3;
  const std::size_t s2 = (n - s1 + 1) / 2;
  const std::size_t s3 = n - s1 - s2;
  const VertexSet all = all_vertices(n);
  auto range = [&](std::size_t from, std::size_t len) {
    return VertexSet(all.begin() + static_cast<std::ptrdiff_t>(from),
                     all.begin() + static_cast<std::ptrdiff_t>(from + len));
  };
  TreeBuilder b(n);
  auto split = [](const VertexSet& s) { return detail::halve(s); };
  const std::size_t root = b.add(all, std::nullopt);
  b.grow(range(0, s1), root, split);
  if (s3 == 0) {
    b.grow(range(s1, s2), root, split);
  } else {
    const std::size_t rest = b.add(range(s1, s2 + s3), root);
    b.grow(range(s1, s2), rest, split);
    b.grow(range(s1 + s2, s3), rest, split);
  }
  return b.finish();
}

// ---------------------------------------------------------------------------
// Exact minimum congestion by subset dynamic programming

constexpr std::size_t kDefaultOracleLimit = 14;

namespace detail {

struct OracleTable {
  std::size_t n = 0;
  std::vector<double> cut;         // e(S, S̄) for every bitmask S
  std::vector<double> best;        // min over trees on S of the max cut strictly inside S
  std::vector<std::uint32_t> arg;  // optimal left part for S
};

inline OracleTable solve_oracle(const Graph& g, std::size_t limit) {
  const std::size_t n = g.num_vertices();
  if (n > limit) throw DomainError("oracle: graph has " + std::to_string(n) + " vertices, limit is " + std::to_string(limit));
  if (n > 24) throw DomainError("oracle: limit above 24 vertices is not supported");
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  OracleTable t;
  t.n = n;
  t.cut.assign(std::size_t{full} + 1, 0.0);
  t.best.assign(std::size_t{full} + 1, 0.0);
  t.arg.assign(std::size_t{full} + 1, 0);

  std::vector<std::vector<std::pair<std::uint32_t, double>>> nbr(n);
  for (const auto& e : g.edges()) {
    nbr[e.u].push_back({std::uint32_t{1} << e.v, e.w});
    nbr[e.v].push_back({std::uint32_t{1} << e.u, e.w});
  }
  for (std::uint32_t s = 1; s <= full; ++s) {
    const auto v = static_cast<std::size_t>(std::countr_zero(s));
    const std::uint32_t rest = s & (s - 1);
    double inside = 0.0;
    for (const auto& [bit, w] : nbr[v])
      if (rest & bit) inside += w;
    t.cut[s] = t.cut[rest] + g.degree(v) - 2.0 * inside;
  }

  // f(S) = max(cut(S), best(S)): the worst node inside a subtree rooted at S.
  std::vector<double> f(std::size_t{full} + 1, 0.0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    if ((s & (s - 1)) != 0) {
      const std::uint32_t low = s & (~s + 1);
      const std::uint32_t others = s ^ low;
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t arg = 0;
      // Left parts contain the lowest bit of S; enumerate submasks of the rest.
      for (std::uint32_t sub = others;; sub = (sub - 1) & others) {
        const std::uint32_t a = sub | low;
        if (a != s) {
          const double val = std::max(f[a], f[s ^ a]);
          if (val < best) {
            best = val;
            arg = a;
          }
        }
        if (sub == 0) break;
      }
      t.best[s] = best;
      t.arg[s] = arg;
    }
    f[s] = std::max(t.cut[s], t.best[s]);
  }
  return t;
}

} // namespace detail

// cng(G): minimum over all contraction trees of the tree's congestion.
inline double oracle_min_congestion(const Graph& g, std::size_t limit = kDefaultOracleLimit) {
  const auto t = detail::solve_oracle(g, limit);
  if (t.n == 1) return 0.0;
  return t.best[(std::uint32_t{1} << t.n) - 1];
}

// A tree attaining oracle_min_congestion.
inline ContractionTree oracle_optimal_tree(const Graph& g, std::size_t limit = kDefaultOracleLimit) {
  const auto t = detail::solve_oracle(g, limit);
  auto to_set = [](std::uint32_t mask) {
    VertexSet s;
    for (; mask; mask &= mask - 1) s.push_back(static_cast<Vertex>(std::countr_zero(mask)));
    return s;
  };
  auto to_mask = [](const VertexSet& s) {
    std::uint32_t m = 0;
    for (Vertex v : s) m |= std::uint32_t{1} << v;
    return m;
  };
  TreeBuilder b(t.n);
  b.grow(all_vertices(t.n), std::nullopt, [&](const VertexSet& s) {
    const std::uint32_t mask = to_mask(s);
    const std::uint32_t a = t.arg[mask];
    return std::pair{to_set(a), to_set(mask ^ a)};
  });
  return b.finish();
}

} // namespace congestion
