#pragma once

// Closed-form congestion bounds from the Laplacian and normalized Laplacian
// spectra, the earlier spectral lower bounds they are compared against, and
// the family-specific formulas used by the experiments.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <utility>

#include "congestion/clustering.hpp"
#include "congestion/contraction.hpp"
#include "congestion/error.hpp"
#include "congestion/graph.hpp"
#include "congestion/spectra.hpp"

namespace congestion {

// Value-level forms, shared by the graph-level wrappers and the harness.
namespace bound {

inline double lower(double n, double lambda2) { return 2.0 * lambda2 * n / 9.0; }
inline double upper_trivial(double n, double lambda_n) { return lambda_n * n / 4.0; }
inline double upper_equi(double n, double lambda_n) { return 2.0 * lambda_n * n / 9.0; }

// n * max{ eps sqrt((2 Delta - lambda2) lambda2), ((1 - eps^2 + 1/n) / 4) lambda_n }
inline double upper_hybrid(double n, double max_degree, double lambda2, double lambda_n, double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) throw DomainError("hybrid bound: balance must lie in (0, 1/2]");
  const double cheeger = eps * std::sqrt(std::max(0.0, (2.0 * max_degree - lambda2) * lambda2));
  const double halves = (1.0 - eps * eps + 1.0 / n) / 4.0 * lambda_n;
  return n * std::max(cheeger, halves);
}

} // namespace bound

inline double thm1_lower(const Graph& g) {
  return bound::lower(static_cast<double>(g.num_vertices()), lambda2(g));
}

inline double thm1_upper_trivial(const Graph& g) {
  return bound::upper_trivial(static_cast<double>(g.num_vertices()), lambda_n(g));
}

inline double thm1_upper_equi(const Graph& g) {
  return bound::upper_equi(static_cast<double>(g.num_vertices()), lambda_n(g));
}

inline double thm1_upper_hybrid(const Graph& g, double eps) {
  auto s = laplacian_spectrum(g);
  return bound::upper_hybrid(static_cast<double>(g.num_vertices()), g.max_degree(), s.eigenvalues[1],
                             s.eigenvalues.back(), eps);
}

struct Thm2Bounds {
  double lower = 0.0;
  double upper_trivial = 0.0;
  double upper_equi = 0.0;
  double upper_hybrid = 0.0;
};

// Normalized analogues: n becomes 2m, lambda becomes mu, Delta becomes 1.
inline Thm2Bounds thm2_bounds(const Graph& g, double eps_prime) {
  if (!(g.min_degree() > 0.0)) throw DomainError("thm2_bounds: graph has an isolated vertex");
  if (!(eps_prime > 0.0 && eps_prime <= 0.5)) throw DomainError("thm2_bounds: balance must lie in (0, 1/2]");
  auto s = normalized_laplacian_spectrum(g);
  const double two_m = 2.0 * g.total_weight();
  const double m2 = s.eigenvalues[1];
  const double mn = s.eigenvalues.back();
  Thm2Bounds b;
  b.lower = 2.0 * m2 * two_m / 9.0;
  b.upper_trivial = mn * two_m / 4.0;
  b.upper_equi = 2.0 * mn * two_m / 9.0;
  b.upper_hybrid = two_m * std::max(eps_prime * std::sqrt(std::max(0.0, (2.0 - m2) * m2)),
                                    (1.0 - eps_prime * eps_prime + 1.0 / two_m) / 4.0 * mn);
  return b;
}

struct PriorLowerBounds {
  double gima = 0.0;         // lambda2 n / (Delta + lambda2), via treewidth of L(G)
  double markov_shi = 0.0;   // lambda2 n / 8, via min cut-ratio and Cheeger
};

inline PriorLowerBounds prior_lower_bounds(const Graph& g) {
  const double n = static_cast<double>(g.num_vertices());
  const double l2 = lambda2(g);
  PriorLowerBounds p;
  p.gima = l2 > 0.0 ? l2 * n / (g.max_degree() + l2) : 0.0;
  p.markov_shi = l2 * n / 8.0;
  return p;
}

// Treewidth upper bound n * min{2 lambda_n / 9, hybrid term} with the sign-cut
// balance. Disconnected graphs have no Fiedler sign cut and use the first term.
inline double cor2_treewidth_upper(const Graph& g) {
  const double n = static_cast<double>(g.num_vertices());
  auto s = laplacian_spectrum(g);
  const double equi = bound::upper_equi(n, s.eigenvalues.back());
  if (!is_connected(g)) return equi;
  const double eps = balance_epsilon(g);
  return std::min(equi, bound::upper_hybrid(n, g.max_degree(), s.eigenvalues[1], s.eigenvalues.back(), eps));
}

// ---------------------------------------------------------------------------
// Family formulas

// Treewidth bracket for the congestion of P_m x P_n (C_m x C_n if periodic).
inline std::pair<double, double> lattice_treewidth_bracket(std::size_t m, std::size_t n, bool periodic) {
  if (m < 2 || n < 2) throw DomainError("lattice bracket: m, n must be at least 2");
  const double k = static_cast<double>(std::min(m, n));
  return periodic ? std::pair{2.0 * k, 8.0 * k + 4.0} : std::pair{k, 4.0 * k + 4.0};
}

// q-th Laplacian eigenvalue (q = 0..k-1, unsorted) of the path / cycle on k vertices.
inline double path_eigenvalue(std::size_t k, std::size_t q) {
  const double s = std::sin(static_cast<double>(q) * std::numbers::pi / (2.0 * static_cast<double>(k)));
  return 4.0 * s * s;
}

inline double cycle_eigenvalue(std::size_t k, std::size_t q) {
  const double s = std::sin(static_cast<double>(q) * std::numbers::pi / static_cast<double>(k));
  return 4.0 * s * s;
}

inline double cycle_lambda_max(std::size_t k) {
  return k % 2 == 0 ? 4.0 : cycle_eigenvalue(k, (k - 1) / 2);
}

struct LatticeSpectrum {
  double lambda2 = 0.0;
  double lambda_max = 0.0;
};

// Extreme Laplacian eigenvalues of P_m x P_n, or C_m x C_n when periodic.
// The product spectrum is all pairwise sums of factor eigenvalues, so lambda2
// is the smaller factor lambda2 and lambda_max the sum of factor maxima.
inline LatticeSpectrum lattice_spectrum_closed_form(std::size_t m, std::size_t n, bool periodic) {
  if (m < 2 || n < 2) throw DomainError("lattice spectrum: m, n must be at least 2");
  LatticeSpectrum s;
  if (periodic) {
    s.lambda2 = std::min(cycle_eigenvalue(m, 1), cycle_eigenvalue(n, 1));
    s.lambda_max = cycle_lambda_max(m) + cycle_lambda_max(n);
  } else {
    s.lambda2 = std::min(path_eigenvalue(m, 1), path_eigenvalue(n, 1));
    s.lambda_max = path_eigenvalue(m, m - 1) + path_eigenvalue(n, n - 1);
  }
  return s;
}

// Band on lambda_2 .. lambda_n for a random d-regular graph.
inline std::pair<double, double> friedman_band(double d, double epsilon) {
  const double r = 2.0 * std::sqrt(d - 1.0);
  return {d - r - epsilon, d + r + epsilon};
}

// Congestion band 2n/9 * (d -+ 2 sqrt(d-1) -+ epsilon); the low end clamps at 0.
inline std::pair<double, double> rrg_band(std::size_t n, std::size_t d, double epsilon) {
  if (d < 3) throw DomainError("rrg_band: d must be at least 3");
  if (epsilon < 0.0) throw DomainError("rrg_band: epsilon must be nonnegative");
  auto [lo, hi] = friedman_band(static_cast<double>(d), epsilon);
  const double scale = 2.0 * static_cast<double>(n) / 9.0;
  return {std::max(0.0, scale * lo), scale * hi};
}

// Hypercube bracket on cng(Q_d) as quoted for the family:
// 2^d * 4/9 below, 2^d * max{sqrt(d-1), (3/8 + 1/2^(d-1)) d} above.
inline std::pair<double, double> hypercube_bracket(std::size_t d) {
  if (d < 2) throw DomainError("hypercube bracket: d must be at least 2");
  const double size = std::ldexp(1.0, static_cast<int>(d));
  const double dd = static_cast<double>(d);
  return {size * 4.0 / 9.0,
          size * std::max(std::sqrt(dd - 1.0), (3.0 / 8.0 + std::ldexp(1.0, 1 - static_cast<int>(d))) * dd)};
}

// ---------------------------------------------------------------------------

struct BoundsReport {
  std::size_t n = 0;
  double m = 0.0;  // total edge weight
  double max_degree = 0.0;
  double lambda2 = 0.0, lambda_n = 0.0, mu2 = 0.0, mu_n = 0.0;
  double eps = 0.0;        // sign-cut balance of the Laplacian Fiedler vector
  double eps_prime = 0.0;  // same for the normalized Laplacian
  double eps_root = 0.0;   // balance of the hybrid tree's root cut
  double lower_thm1 = 0.0, upper_trivial = 0.0, upper_equi = 0.0, upper_hybrid = 0.0;
  double lower_thm2 = 0.0, upper_thm2_trivial = 0.0, upper_thm2_equi = 0.0, upper_thm2_hybrid = 0.0;
  double lower_gima = 0.0, lower_markov_shi = 0.0;
  double cor2_treewidth_upper = 0.0;
};

// Every bound for a connected graph. upper_hybrid uses the balance of the
// root cut actually produced by hybrid_sc_equipartition.
inline BoundsReport bounds_report(const Graph& g, std::uint64_t seed = 0) {
  (void)seed;
  if (g.num_vertices() < 2) throw DomainError("bounds_report: graph needs at least two vertices");
  if (!is_connected(g)) throw DomainError("bounds_report: graph is disconnected");
  BoundsReport r;
  const double n = static_cast<double>(g.num_vertices());
  r.n = g.num_vertices();
  r.m = g.total_weight();
  r.max_degree = g.max_degree();
  const auto s = spectral_summary(g);
  r.lambda2 = s.lambda2;
  r.lambda_n = s.lambda_n;
  r.mu2 = s.mu2;
  r.mu_n = s.mu_n;
  r.eps = balance_epsilon(g, false);
  r.eps_prime = balance_epsilon(g, true);
  r.eps_root = root_balance(hybrid_sc_equipartition(g));

  r.lower_thm1 = bound::lower(n, r.lambda2);
  r.upper_trivial = bound::upper_trivial(n, r.lambda_n);
  r.upper_equi = bound::upper_equi(n, r.lambda_n);
  r.upper_hybrid = bound::upper_hybrid(n, r.max_degree, r.lambda2, r.lambda_n, r.eps_root);

  const auto t2 = thm2_bounds(g, r.eps_prime);
  r.lower_thm2 = t2.lower;
  r.upper_thm2_trivial = t2.upper_trivial;
  r.upper_thm2_equi = t2.upper_equi;
  r.upper_thm2_hybrid = t2.upper_hybrid;

  const auto prior = prior_lower_bounds(g);
  r.lower_gima = prior.gima;
  r.lower_markov_shi = prior.markov_shi;
  r.cor2_treewidth_upper = std::min(
      r.upper_equi, bound::upper_hybrid(n, r.max_degree, r.lambda2, r.lambda_n, r.eps));
  return r;
}

} // namespace congestion
