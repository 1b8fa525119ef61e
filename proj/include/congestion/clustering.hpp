#pragma once

// Spectral clustering, sweep cuts and the sign-cut balance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "congestion/error.hpp"
#include "congestion/graph.hpp"
#include "congestion/spectra.hpp"

namespace congestion {

// A bipartition (S, S̄) with its cached quality measures.
struct Cut {
  std::vector<char> side;  // 1 for vertices in S
  double cut_weight = 0.0;
  double ratio = 0.0;        // cut / min(|S|, |S̄|)
  double conductance = 0.0;  // cut / min(Vol S, Vol S̄)
  double balance = 0.0;      // min(|S|, |S̄|) / n

  VertexSet members() const {
    VertexSet s;
    for (Vertex v = 0; v < side.size(); ++v)
      if (side[v]) s.push_back(v);
    return s;
  }
  VertexSet complement_members() const {
    VertexSet s;
    for (Vertex v = 0; v < side.size(); ++v)
      if (!side[v]) s.push_back(v);
    return s;
  }
};

inline Cut make_cut(const Graph& g, std::vector<char> side) {
  const std::size_t n = g.num_vertices();
  if (side.size() != n) throw DomainError("cut membership has wrong length");
  std::size_t in = 0;
  double vol = 0.0;
  for (Vertex v = 0; v < n; ++v)
    if (side[v]) {
      ++in;
      vol += g.degree(v);
    }
  if (in == 0 || in == n) throw DomainError("cut sides must both be nonempty");
  Cut c;
  c.cut_weight = detail::cut_weight_mask(g, side);
  const double small = static_cast<double>(std::min(in, n - in));
  c.ratio = c.cut_weight / small;
  const double small_vol = std::min(vol, 2.0 * g.total_weight() - vol);
  c.conductance = small_vol > 0.0 ? c.cut_weight / small_vol : std::numeric_limits<double>::infinity();
  c.balance = small / static_cast<double>(n);
  c.side = std::move(side);
  return c;
}

inline Cut make_cut(const Graph& g, std::span<const Vertex> s) { return make_cut(g, detail::membership(g, s)); }

struct Partition {
  std::vector<std::size_t> labels;  // cluster per vertex, in [0, k)
  std::size_t k = 0;

  std::vector<VertexSet> clusters() const {
    std::vector<VertexSet> out(k);
    for (Vertex v = 0; v < labels.size(); ++v) out[labels[v]].push_back(v);
    return out;
  }
};

// ---------------------------------------------------------------------------
// k-means

struct KMeansOptions {
  int max_iterations = 100;
  int restarts = 8;  // best within-cluster sum of squares wins, first on ties
};

namespace detail {

using Point = std::vector<double>;

inline double sq_dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Renumber clusters by first appearance so equal partitions compare equal.
inline void canonical_labels(std::vector<std::size_t>& labels, std::size_t k) {
  std::vector<std::size_t> remap(k, k);
  std::size_t next = 0;
  for (auto& l : labels) {
    if (remap[l] == k) remap[l] = next++;
    l = remap[l];
  }
}

inline double kmeans_objective(const std::vector<Point>& pts, const std::vector<std::size_t>& labels, std::size_t k) {
  const std::size_t dim = pts.front().size();
  std::vector<Point> centers(k, Point(dim, 0.0));
  std::vector<std::size_t> count(k, 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ++count[labels[i]];
    for (std::size_t j = 0; j < dim; ++j) centers[labels[i]][j] += pts[i][j];
  }
  for (std::size_t c = 0; c < k; ++c)
    for (auto& x : centers[c]) x /= static_cast<double>(std::max<std::size_t>(count[c], 1));
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) total += sq_dist(pts[i], centers[labels[i]]);
  return total;
}

// k-means++ seeding: first center uniform, then D^2-weighted draws.
inline std::vector<Point> seed_centers(const std::vector<Point>& pts, std::size_t k, std::mt19937_64& rng) {
  std::vector<Point> centers;
  std::vector<char> chosen(pts.size(), 0);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  std::size_t first = pick(rng);
  centers.push_back(pts[first]);
  chosen[first] = 1;
  std::vector<double> d2(pts.size());
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      d2[i] = std::numeric_limits<double>::infinity();
      for (const auto& c : centers) d2[i] = std::min(d2[i], sq_dist(pts[i], c));
      total += d2[i];
    }
    std::size_t next = pts.size();
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double r = u(rng);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (d2[i] <= 0.0) continue;
        next = i;
        r -= d2[i];
        if (r <= 0.0) break;
      }
    } else {
      // All remaining points coincide with a center; take an unused index.
      std::vector<std::size_t> unused;
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (!chosen[i]) unused.push_back(i);
      std::uniform_int_distribution<std::size_t> pu(0, unused.size() - 1);
      next = unused[pu(rng)];
    }
    chosen[next] = 1;
    centers.push_back(pts[next]);
  }
  return centers;
}

inline std::vector<std::size_t> lloyd(const std::vector<Point>& pts, std::vector<Point> centers, int max_iterations) {
  const std::size_t n = pts.size();
  const std::size_t k = centers.size();
  const std::size_t dim = pts.front().size();
  std::vector<std::size_t> labels(n, k);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = sq_dist(pts[i], centers[0]);
      for (std::size_t c = 1; c < k; ++c) {
        const double d = sq_dist(pts[i], centers[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (labels[i] != best) {
        labels[i] = best;
        changed = true;
      }
    }

    // Repair empty clusters by stealing the point farthest from its centroid.
    for (;;) {
      std::vector<std::size_t> count(k, 0);
      for (auto l : labels) ++count[l];
      auto empty = std::find(count.begin(), count.end(), std::size_t{0});
      if (empty == count.end()) break;
      std::size_t victim = n;
      double far = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (count[labels[i]] < 2) continue;
        const double d = sq_dist(pts[i], centers[labels[i]]);
        if (d > far) {
          far = d;
          victim = i;
        }
      }
      const auto target = static_cast<std::size_t>(empty - count.begin());
      labels[victim] = target;
      centers[target] = pts[victim];
      changed = true;
    }

    for (auto& c : centers) std::fill(c.begin(), c.end(), 0.0);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++count[labels[i]];
      for (std::size_t j = 0; j < dim; ++j) centers[labels[i]][j] += pts[i][j];
    }
    for (std::size_t c = 0; c < k; ++c)
      for (auto& x : centers[c]) x /= static_cast<double>(count[c]);

    if (!changed) break;
  }
  return labels;
}

} // namespace detail

// Lloyd's algorithm with seeded k-means++ starts; deterministic for fixed inputs.
inline Partition kmeans(const std::vector<std::vector<double>>& points, std::size_t k, std::uint64_t seed,
                        const KMeansOptions& opt = {}) {
  if (k == 0) throw DomainError("kmeans: k must be at least 1");
  if (points.size() < k) throw DomainError("kmeans: fewer points than clusters");
  const std::size_t dim = points.front().size();
  for (const auto& p : points)
    if (p.size() != dim) throw DomainError("kmeans: points have mixed dimensions");

  Partition best;
  best.k = k;
  if (k == 1) {
    best.labels.assign(points.size(), 0);
    return best;
  }
  std::mt19937_64 rng(seed);
  double best_obj = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    auto labels = detail::lloyd(points, detail::seed_centers(points, k, rng), opt.max_iterations);
    const double obj = detail::kmeans_objective(points, labels, k);
    if (obj < best_obj) {
      best_obj = obj;
      best.labels = std::move(labels);
    }
  }
  detail::canonical_labels(best.labels, k);
  return best;
}

// ---------------------------------------------------------------------------
// Spectral clustering

// Embeds vertex i as (x2_i, ..., xk_i) from the (normalized) Laplacian
// eigenvectors and clusters the embedding with k-means.
inline Partition spectral_clustering(const Graph& g, std::size_t k, std::uint64_t seed, bool normalized = false) {
  const std::size_t n = g.num_vertices();
  if (k < 2 || k > n) throw DomainError("spectral_clustering: k must satisfy 2 <= k <= n");
  if (!is_connected(g)) throw DomainError("spectral_clustering: graph is disconnected");
  auto spec = normalized ? normalized_laplacian_spectrum(g) : laplacian_spectrum(g);
  std::vector<std::vector<double>> pts(n, std::vector<double>(k - 1));
  for (std::size_t j = 1; j < k; ++j) {
    auto col = spec.vector(j);
    for (Vertex v = 0; v < n; ++v) pts[v][j - 1] = col[v];
  }
  return kmeans(pts, k, seed);
}

// Vertices sorted by Fiedler value, index breaking ties. The normalized
// variant sorts by D^{-1/2} x, the vector whose level sets carry the
// conductance guarantee.
inline std::vector<Vertex> fiedler_order(const Graph& g, bool normalized = false) {
  auto x = fiedler_vector(g, normalized);
  if (normalized)
    for (Vertex v = 0; v < x.size(); ++v) x[v] /= std::sqrt(g.degree(v));
  std::vector<Vertex> order = all_vertices(g.num_vertices());
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return x[a] < x[b]; });
  return order;
}

namespace detail {

// Length of the best prefix of `order` (ratio, or conductance if normalized).
inline std::size_t best_sweep_prefix(const Graph& g, const std::vector<Vertex>& order, bool normalized) {
  const std::size_t n = g.num_vertices();
  const double total_vol = 2.0 * g.total_weight();
  std::vector<char> in(n, 0);
  double cut = 0.0, vol = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_len = 1;
  for (std::size_t len = 1; len < n; ++len) {
    const Vertex v = order[len - 1];
    double inside = 0.0;
    for (const auto& [u, w] : g.neighbors(v))
      if (in[u]) inside += w;
    in[v] = 1;
    cut += g.degree(v) - 2.0 * inside;
    vol += g.degree(v);
    const double denom = normalized ? std::min(vol, total_vol - vol)
                                    : static_cast<double>(std::min(len, n - len));
    const double score = cut / denom;
    if (score < best) {
      best = score;
      best_len = len;
    }
  }
  return best_len;
}

} // namespace detail

// Best of the n-1 prefix cuts of the Fiedler order.
inline Cut sweep_cut_2way(const Graph& g, bool normalized = false) {
  const auto order = fiedler_order(g, normalized);
  const std::size_t len = detail::best_sweep_prefix(g, order, normalized);
  std::vector<char> side(g.num_vertices(), 0);
  for (std::size_t i = 0; i < len; ++i) side[order[i]] = 1;
  return make_cut(g, std::move(side));
}

// Fiedler sign cut: strictly positive entries form S+, strictly negative S-,
// and near-zero entries (|x_i| <= 1e-9) join the currently smaller side in
// index order (S+ on ties).
inline Cut sign_cut(const Graph& g, bool normalized = false) {
  const auto x = fiedler_vector(g, normalized);
  const std::size_t n = x.size();
  std::vector<char> side(n, 0);
  std::size_t pos = 0, neg = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (x[v] > detail::kZeroEntry) {
      side[v] = 1;
      ++pos;
    } else if (x[v] < -detail::kZeroEntry) {
      ++neg;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (std::abs(x[v]) > detail::kZeroEntry) continue;
    if (pos <= neg) {
      side[v] = 1;
      ++pos;
    } else {
      ++neg;
    }
  }
  return make_cut(g, std::move(side));
}

// epsilon(G), or epsilon'(G) when normalized: balance of the sign cut.
inline double balance_epsilon(const Graph& g, bool normalized = false) { return sign_cut(g, normalized).balance; }

} // namespace congestion
