#pragma once

// Dense symmetric eigendecomposition (Householder tridiagonalization +
// implicit-shift QL) and the Laplacian spectral quantities built on it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "congestion/error.hpp"
#include "congestion/graph.hpp"

namespace congestion {

struct SpectrumResult {
  std::size_t dim = 0;
  std::vector<double> eigenvalues;   // ascending
  std::vector<double> eigenvectors;  // column-major; column j pairs with eigenvalues[j]
  double max_residual = 0.0;         // max_j ||M x_j - lambda_j x_j||_inf

  std::span<const double> vector(std::size_t j) const { return {eigenvectors.data() + j * dim, dim}; }
};

namespace detail {

constexpr double kQlTolerance = 1e-14;
constexpr int kQlMaxIterations = 50;

// Column-major square matrix helper for the solver.
struct Dense {
  std::size_t n;
  std::vector<double> a;
  double& operator()(std::size_t i, std::size_t j) { return a[j * n + i]; }
};

// Reduces the symmetric matrix held in v to tridiagonal form. On return v
// holds the accumulated orthogonal transform, d the diagonal and e the
// subdiagonal (e[0] unused).
inline void householder_tridiagonalize(Dense& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.n;
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e), rotating the columns of v.
inline void tridiagonal_ql(Dense& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.n;
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double shift_sum = 0.0;
  double scale = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    scale = std::max(scale, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > kQlTolerance * scale) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kQlMaxIterations)
          throw InvariantError("QL iteration did not converge for eigenvalue " + std::to_string(l));
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        shift_sum += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t k = 0; k < n; ++k) {
            h = v(k, ii + 1);
            v(k, ii + 1) = s * v(k, ii) + c * h;
            v(k, ii) = c * v(k, ii) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > kQlTolerance * scale);
    }
    d[l] += shift_sum;
    e[l] = 0.0;
  }
}

} // namespace detail

inline SpectrumResult eigen_sym(const SymMatrix& m) {
  const std::size_t n = m.dim();
  SpectrumResult out;
  out.dim = n;
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i)
    for (double x : m.row(i))
      if (!std::isfinite(x)) throw DomainError("eigen_sym: matrix has non-finite entries");

  detail::Dense v{n, std::vector<double>(n * n)};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) v(i, j) = m(i, j);
  std::vector<double> d(n), e(n);
  if (n == 1) {
    d[0] = m(0, 0);
    v(0, 0) = 1.0;
  } else {
    detail::householder_tridiagonalize(v, d, e);
    detail::tridiagonal_ql(v, d, e);
  }

  // Stable sort keeps solver order among exactly equal values.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = d[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors[j * n + i] = v(i, order[j]);
  }

  double res = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    auto x = out.vector(j);
    for (std::size_t i = 0; i < n; ++i) {
      double mx = 0.0;
      auto row = m.row(i);
      for (std::size_t k = 0; k < n; ++k) mx += row[k] * x[k];
      res = std::max(res, std::abs(mx - out.eigenvalues[j] * x[i]));
    }
  }
  out.max_residual = res;
  return out;
}

inline SpectrumResult laplacian_spectrum(const Graph& g) { return eigen_sym(laplacian(g)); }
inline SpectrumResult normalized_laplacian_spectrum(const Graph& g) { return eigen_sym(normalized_laplacian(g)); }

namespace detail {

inline void require_two_vertices(const Graph& g, const char* what) {
  if (g.num_vertices() < 2) throw DomainError(std::string(what) + " needs at least two vertices");
}

constexpr double kZeroEntry = 1e-9;

// Flip so the first entry with |x_i| > 1e-9 is positive.
inline void canonicalize_sign(std::vector<double>& x) {
  for (double xi : x) {
    if (std::abs(xi) > kZeroEntry) {
      if (xi < 0)
        for (double& y : x) y = -y;
      return;
    }
  }
}

} // namespace detail

inline double lambda2(const Graph& g) {
  detail::require_two_vertices(g, "lambda2");
  return laplacian_spectrum(g).eigenvalues[1];
}

inline double lambda_n(const Graph& g) {
  detail::require_two_vertices(g, "lambda_n");
  return laplacian_spectrum(g).eigenvalues.back();
}

inline double mu2(const Graph& g) {
  detail::require_two_vertices(g, "mu2");
  return normalized_laplacian_spectrum(g).eigenvalues[1];
}

inline double mu_n(const Graph& g) {
  detail::require_two_vertices(g, "mu_n");
  return normalized_laplacian_spectrum(g).eigenvalues.back();
}

struct SpectralSummary {
  double lambda2 = 0.0;
  double lambda_n = 0.0;
  double mu2 = 0.0;
  double mu_n = 0.0;
};

// mu fields are NaN when the graph has an isolated vertex.
inline SpectralSummary spectral_summary(const Graph& g) {
  detail::require_two_vertices(g, "spectral_summary");
  SpectralSummary s;
  auto lap = laplacian_spectrum(g);
  s.lambda2 = lap.eigenvalues[1];
  s.lambda_n = lap.eigenvalues.back();
  if (g.min_degree() > 0.0) {
    auto nl = normalized_laplacian_spectrum(g);
    s.mu2 = nl.eigenvalues[1];
    s.mu_n = nl.eigenvalues.back();
  } else {
    s.mu2 = s.mu_n = std::nan("");
  }
  return s;
}

// Unit eigenvector of lambda2 (or mu2 when normalized), sign-canonicalized.
inline std::vector<double> fiedler_vector(const Graph& g, bool normalized = false) {
  detail::require_two_vertices(g, "fiedler_vector");
  if (!is_connected(g)) throw DomainError("fiedler_vector: graph is disconnected");
  auto spec = normalized ? normalized_laplacian_spectrum(g) : laplacian_spectrum(g);
  auto col = spec.vector(1);
  std::vector<double> x(col.begin(), col.end());
  double norm = 0.0;
  for (double xi : x) norm += xi * xi;
  norm = std::sqrt(norm);
  for (double& xi : x) xi /= norm;
  detail::canonicalize_sign(x);
  return x;
}

} // namespace congestion
