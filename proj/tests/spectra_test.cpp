#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "congestion/generators.hpp"
#include "congestion/spectra.hpp"
#include "corpus.hpp"

using namespace congestion;

namespace {

// Independent reference: Eigen's self-adjoint solver.
std::vector<double> eigen_reference(const SymMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

void expect_orthonormal(const SpectrumResult& s, double tol) {
  for (std::size_t a = 0; a < s.dim; ++a)
    for (std::size_t b = a; b < s.dim; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < s.dim; ++i) dot += s.vector(a)[i] * s.vector(b)[i];
      EXPECT_NEAR(dot, a == b ? 1.0 : 0.0, tol);
    }
}

Graph two_triangles() {
  Graph g(6);
  g.add_edge(0, 1).add_edge(1, 2).add_edge(2, 0).add_edge(3, 4).add_edge(4, 5).add_edge(5, 3);
  return g;
}

} // namespace

TEST(EigenSym, K2) {
  const auto s = laplacian_spectrum(complete(2));
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_NEAR(s.eigenvalues[0], 0.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[1], 2.0, 1e-12);
}

TEST(EigenSym, Q3Multiset) {
  const auto s = laplacian_spectrum(hypercube(3));
  const double expected[] = {0, 2, 2, 2, 4, 4, 4, 6};
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(s.eigenvalues[i], expected[i], 1e-10);
}

TEST(EigenSym, C4) {
  const auto s = laplacian_spectrum(cycle(4));
  const double expected[] = {0, 2, 2, 4};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(s.eigenvalues[i], expected[i], 1e-10);
}

TEST(EigenSym, OneByOne) {
  SymMatrix m(1);
  m.set(0, 0, -3.5);
  const auto s = eigen_sym(m);
  EXPECT_DOUBLE_EQ(s.eigenvalues[0], -3.5);
  EXPECT_DOUBLE_EQ(s.vector(0)[0], 1.0);
}

TEST(EigenSym, DiagonalAndZeroMatrices) {
  SymMatrix z(4);
  const auto sz = eigen_sym(z);
  for (double x : sz.eigenvalues) EXPECT_DOUBLE_EQ(x, 0.0);
  expect_orthonormal(sz, 1e-12);
  SymMatrix d(3);
  d.set(0, 0, 3);
  d.set(1, 1, -1);
  d.set(2, 2, 2);
  const auto sd = eigen_sym(d);
  EXPECT_NEAR(sd.eigenvalues[0], -1, 1e-14);
  EXPECT_NEAR(sd.eigenvalues[1], 2, 1e-14);
  EXPECT_NEAR(sd.eigenvalues[2], 3, 1e-14);
}

TEST(EigenSym, RejectsNonFinite) {
  SymMatrix m(2);
  m.set(0, 1, std::nan(""));
  EXPECT_THROW(eigen_sym(m), DomainError);
  m.set(0, 1, std::numeric_limits<double>::infinity());
  EXPECT_THROW(eigen_sym(m), DomainError);
}

TEST(EigenSym, RandomDenseMatchesEigen) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  for (std::size_t n : {2, 3, 5, 10, 25, 60}) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m.set(i, j, gauss(rng));
    const auto s = eigen_sym(m);
    const auto ref = eigen_reference(m);
    const double scale = std::max(1.0, m.inf_norm());
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(s.eigenvalues[i], ref[i], 1e-10 * scale);
    EXPECT_LE(s.max_residual, 1e-8 * scale);
    expect_orthonormal(s, 1e-8);
    for (std::size_t i = 1; i < n; ++i) EXPECT_LE(s.eigenvalues[i - 1], s.eigenvalues[i]);
  }
}

TEST(EigenSym, Deterministic) {
  const auto a = laplacian_spectrum(hypercube(4));
  const auto b = laplacian_spectrum(hypercube(4));
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(Lambda, HypercubeExtremes) {
  for (std::size_t d = 1; d <= 6; ++d) {
    const Graph q = hypercube(d);
    EXPECT_NEAR(lambda2(q), 2.0, 1e-9);
    EXPECT_NEAR(lambda_n(q), 2.0 * static_cast<double>(d), 1e-9);
  }
}

TEST(Lambda, PathLambda2) {
  for (std::size_t k = 2; k <= 15; ++k) {
    const double s = std::sin(std::numbers::pi / (2.0 * static_cast<double>(k)));
    EXPECT_NEAR(lambda2(path(k)), 4.0 * s * s, 1e-10);
  }
}

TEST(Lambda, DisconnectedHasZeroLambda2) {
  EXPECT_NEAR(lambda2(two_triangles()), 0.0, 1e-12);
}

TEST(Lambda, NeedsTwoVertices) {
  EXPECT_THROW(lambda2(Graph(1)), DomainError);
  EXPECT_THROW(lambda_n(Graph(1)), DomainError);
  EXPECT_THROW(mu2(Graph(1)), DomainError);
}

TEST(Mu, Examples) {
  EXPECT_NEAR(mu2(complete(2)), 2.0, 1e-12);
  EXPECT_NEAR(mu_n(complete(2)), 2.0, 1e-12);
  EXPECT_NEAR(mu2(hypercube(3)), 2.0 / 3.0, 1e-10);
  EXPECT_NEAR(mu_n(hypercube(3)), 2.0, 1e-10);
  EXPECT_NEAR(mu_n(cycle(6)), 2.0, 1e-10);
  const auto ref = eigen_reference(normalized_laplacian(cycle(6)));
  EXPECT_NEAR(ref.back(), 2.0, 1e-10);
}

TEST(Mu, IsolatedVertexRejected) {
  Graph g(3);
  g.add_edge(0, 1);
  EXPECT_THROW(mu2(g), DomainError);
  const auto s = spectral_summary(g);
  EXPECT_TRUE(std::isnan(s.mu2));
  EXPECT_TRUE(std::isnan(s.mu_n));
  EXPECT_NEAR(s.lambda2, 0.0, 1e-12);
}

TEST(Fiedler, P2) {
  const auto x = fiedler_vector(path(2));
  EXPECT_NEAR(x[0], 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(x[1], -1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Fiedler, P4StrictlyMonotone) {
  const auto x = fiedler_vector(path(4));
  EXPECT_GT(x[0], 0.0);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_LT(x[i], x[i - 1]);
  // closed form cos(pi (i + 1/2) / 4), normalized
  double norm = 0.0;
  std::vector<double> c(4);
  for (std::size_t i = 0; i < 4; ++i) {
    c[i] = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.5) / 4.0);
    norm += c[i] * c[i];
  }
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(x[i], c[i] / std::sqrt(norm), 1e-10);
}

TEST(Fiedler, UnitNormAndEigen) {
  for (bool normalized : {false, true}) {
    const Graph g = fig1_example().first;
    const auto x = fiedler_vector(g, normalized);
    double norm = 0.0;
    for (double xi : x) norm += xi * xi;
    EXPECT_NEAR(norm, 1.0, 1e-12);
    const auto m = normalized ? normalized_laplacian(g) : laplacian(g);
    const double lam = normalized ? mu2(g) : lambda2(g);
    for (std::size_t i = 0; i < x.size(); ++i) {
      double mx = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) mx += m(i, j) * x[j];
      EXPECT_NEAR(mx, lam * x[i], 1e-9);
    }
  }
}

TEST(Fiedler, DisconnectedRejected) {
  Graph g(4);
  g.add_edge(0, 1).add_edge(2, 3);
  EXPECT_THROW(fiedler_vector(g), DomainError);
}

TEST(SpectraProperties, CorpusInvariants) {
  for (const auto& [label, g] : testing_corpus::small_corpus()) {
    if (g.num_vertices() < 2) continue;
    const auto s = laplacian_spectrum(g);
    const auto ref = eigen_reference(laplacian(g));
    double sum = 0.0;
    for (std::size_t i = 0; i < s.dim; ++i) {
      EXPECT_NEAR(s.eigenvalues[i], ref[i], 1e-9) << label;
      sum += s.eigenvalues[i];
    }
    EXPECT_NEAR(sum, 2.0 * g.total_weight(), 1e-8 * std::max(1.0, sum)) << label;
    EXPECT_LE(std::abs(s.eigenvalues[0]), 1e-8) << label;
    EXPECT_LE(s.eigenvalues.back(), 2.0 * g.max_degree() + 1e-8) << label;
    EXPECT_LE(s.max_residual, 1e-8 * std::max(1.0, laplacian(g).inf_norm())) << label;

    if (is_connected(g)) {
      auto v0 = s.vector(0);
      const double c = 1.0 / std::sqrt(static_cast<double>(s.dim));
      const double sign = v0[0] < 0 ? -1.0 : 1.0;
      for (double x : v0) EXPECT_NEAR(sign * x, c, 1e-6) << label;
    }
    if (g.min_degree() > 0) {
      const auto ns = normalized_laplacian_spectrum(g);
      EXPECT_LE(ns.eigenvalues.back(), 2.0 + 1e-8) << label;
      EXPECT_GE(ns.eigenvalues.front(), -1e-8) << label;
      if (g.min_degree() == g.max_degree()) {
        const double d = g.max_degree();
        for (std::size_t i = 0; i < s.dim; ++i) EXPECT_NEAR(ns.eigenvalues[i], s.eigenvalues[i] / d, 1e-8) << label;
      }
    }
  }
}

TEST(SpectraProperties, HypercubeMultiplicities) {
  for (std::size_t d = 1; d <= 7; ++d) {
    const auto s = laplacian_spectrum(hypercube(d));
    std::vector<std::size_t> count(d + 1, 0);
    for (double x : s.eigenvalues) {
      const long j = std::lround(x / 2.0);
      ASSERT_GE(j, 0);
      ASSERT_LE(static_cast<std::size_t>(j), d);
      EXPECT_NEAR(x, 2.0 * static_cast<double>(j), 1e-8);
      ++count[static_cast<std::size_t>(j)];
    }
    std::size_t binom = 1;
    for (std::size_t j = 0; j <= d; ++j) {
      EXPECT_EQ(count[j], binom) << "d=" << d << " j=" << j;
      binom = binom * (d - j) / (j + 1);
    }
  }
}
