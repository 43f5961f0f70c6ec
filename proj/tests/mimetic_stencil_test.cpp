#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <numbers>
#include <vector>

#include "mimdet/error.hpp"
#include "mimdet/mimetic.hpp"
#include "oracles.hpp"

namespace mimdet {
namespace {

TEST(OneSidedStencil, CentralDifference) {
  const std::vector<double> nodes = {-0.5, 0.5};
  auto c = one_sided_stencil(nodes, 0.0, 1);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_NEAR(c[0], -1.0, 1e-15);
  EXPECT_NEAR(c[1], 1.0, 1e-15);
}

TEST(OneSidedStencil, SecondOrderBoundaryClosure) {
  const std::vector<double> nodes = {0.0, 0.5, 1.5};
  auto c = one_sided_stencil(nodes, 0.0, 2);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[0], -8.0 / 3.0, 1e-14);
  EXPECT_NEAR(c[1], 3.0, 1e-14);
  EXPECT_NEAR(c[2], -1.0 / 3.0, 1e-14);
}

TEST(OneSidedStencil, FourthOrderStaggered) {
  const std::vector<double> nodes = {-1.5, -0.5, 0.5, 1.5};
  auto c = one_sided_stencil(nodes, 0.0, 3);
  EXPECT_NEAR(c[0], 1.0 / 24.0, 1e-15);
  EXPECT_NEAR(c[1], -9.0 / 8.0, 1e-15);
  EXPECT_NEAR(c[2], 9.0 / 8.0, 1e-15);
  EXPECT_NEAR(c[3], -1.0 / 24.0, 1e-15);
}

TEST(OneSidedStencil, DuplicateNodesAreSingular) {
  const std::vector<double> nodes = {0.0, 0.5, 0.5};
  EXPECT_THROW(one_sided_stencil(nodes, 0.0, 2), SingularSystem);
}

TEST(OneSidedStencil, NodeCountMustMatchDegree) {
  const std::vector<double> nodes = {0.0, 0.5, 1.5};
  EXPECT_THROW(one_sided_stencil(nodes, 0.0, 3), InvalidArgument);
}

TEST(OneSidedStencil, MatchesLagrangeOracleOnRandomNodes) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int degree = 1 + trial % 8;
    std::vector<double> nodes;
    while (nodes.size() < static_cast<std::size_t>(degree) + 1) {
      double v = std::round(u(rng) * 4.0) / 4.0;
      if (std::find(nodes.begin(), nodes.end(), v) == nodes.end()) nodes.push_back(v);
    }
    const double t = std::round(u(rng) * 2.0) / 2.0;
    auto got = one_sided_stencil(nodes, t, degree);
    std::vector<long double> ln(nodes.begin(), nodes.end());
    auto want = oracle::lagrange_derivative_weights(ln, t);
    double scale = 1.0;
    for (auto w : want) scale = std::max(scale, static_cast<double>(std::abs(w)));
    for (std::size_t i = 0; i < got.size(); ++i) {
      ASSERT_NEAR(got[i], static_cast<double>(want[i]), 1e-9 * scale) << "degree " << degree;
    }
  }
}

TEST(StaggeredGrid1D, NodeAndFaceLayout) {
  StaggeredGrid1D grid(5);
  EXPECT_EQ(grid.node_count(), 7u);
  EXPECT_EQ(grid.face_count(), 6u);
  EXPECT_EQ(grid.nodes(), (std::vector<double>{0, 0.5, 1.5, 2.5, 3.5, 4.5, 5}));
  EXPECT_EQ(grid.faces(), (std::vector<double>{0, 1, 2, 3, 4, 5}));
  EXPECT_TRUE(grid.supports_order(2));
  EXPECT_FALSE(grid.supports_order(4));
}

TEST(BuildGrad1D, SecondOrderRows) {
  auto g = build_grad_1d(2, 5);
  ASSERT_EQ(g.rows(), 6u);
  ASSERT_EQ(g.cols(), 7u);
  const std::vector<double> row0 = {-8.0 / 3.0, 3.0, -1.0 / 3.0, 0, 0, 0, 0};
  const std::vector<double> row2 = {0, 0, -1, 1, 0, 0, 0};
  const std::vector<double> row5 = {0, 0, 0, 0, 1.0 / 3.0, -3.0, 8.0 / 3.0};
  for (std::size_t c = 0; c < 7; ++c) {
    EXPECT_NEAR(g.matrix().at(0, c), row0[c], 1e-14);
    EXPECT_NEAR(g.matrix().at(2, c), row2[c], 1e-14);
    EXPECT_NEAR(g.matrix().at(5, c), row5[c], 1e-14);
  }
}

TEST(BuildGrad1D, RejectsSmallGridsAndBadOrders) {
  EXPECT_THROW(build_grad_1d(4, 7), InvalidArgument);
  EXPECT_THROW(build_grad_1d(3, 20), InvalidArgument);
  EXPECT_THROW(build_grad_1d(10, 40), InvalidArgument);
  EXPECT_NO_THROW(build_grad_1d(8, 16));
}

TEST(BuildGrad1D, MatchesLagrangeOracle) {
  for (int k : kSupportedOrders) {
    for (std::size_t m : {static_cast<std::size_t>(2 * k), static_cast<std::size_t>(4 * k) + 1}) {
      auto g = build_grad_1d(k, m);
      auto want = oracle::dense_gradient(k, m);
      for (std::size_t r = 0; r <= m; ++r) {
        for (std::size_t c = 0; c < m + 2; ++c) {
          const double w = static_cast<double>(want[r][c]);
          ASSERT_NEAR(g.matrix().at(r, c), w, 1e-11 * std::max(1.0, std::abs(w)))
              << "k=" << k << " m=" << m << " (" << r << "," << c << ")";
        }
      }
    }
  }
}

TEST(BuildGrad1D, RowStructure) {
  for (int k : kSupportedOrders) {
    const std::size_t m = 5 * static_cast<std::size_t>(k);
    auto g = build_grad_1d(k, m);
    const std::size_t half = static_cast<std::size_t>(k) / 2;
    for (std::size_t r = 0; r <= m; ++r) {
      double sum = 0.0;
      for (const auto& e : g.matrix().row(r)) sum += e.value;
      EXPECT_LE(std::abs(sum), 1e-12) << "k=" << k << " row " << r;
      const std::size_t width = g.matrix().row(r).size();
      if (r < half || r > m - half) {
        EXPECT_EQ(width, static_cast<std::size_t>(k) + 1);
      } else {
        ASSERT_EQ(width, static_cast<std::size_t>(k));
        auto row = g.matrix().row(r);
        EXPECT_EQ(row.front().col, r - half + 1);
        for (std::size_t j = 0; j < width; ++j) EXPECT_EQ(row[j].value, g.interior_stencil()[j]);
      }
    }
  }
}

TEST(ApplyOperator1D, SecondOrderExamples) {
  auto g = build_grad_1d(2, 5);
  FieldVector ones{FieldLayout::kExtendedCenters1D, 5, 0, std::vector<double>(7, 1.0)};
  auto d = apply(g, ones);
  EXPECT_EQ(d.layout, FieldLayout::kFaces1D);
  for (double v : d.values) EXPECT_NEAR(v, 0.0, 1e-14);

  const auto x = StaggeredGrid1D(5).nodes();
  auto dx = apply(g, FieldVector{FieldLayout::kExtendedCenters1D, 5, 0, x});
  for (double v : dx.values) EXPECT_NEAR(v, 1.0, 1e-14);

  std::vector<double> x2;
  for (double v : x) x2.push_back(v * v);
  auto dx2 = apply(g, FieldVector{FieldLayout::kExtendedCenters1D, 5, 0, x2});
  const std::vector<double> want = {0, 2, 4, 6, 8, 10};
  for (std::size_t f = 0; f < want.size(); ++f) EXPECT_NEAR(dx2.values[f], want[f], 1e-13);
}

TEST(ApplyOperator1D, RejectsLengthAndLayoutMismatch) {
  auto g = build_grad_1d(2, 5);
  EXPECT_THROW(apply(g, FieldVector{FieldLayout::kExtendedCenters1D, 5, 0, std::vector<double>(6)}),
               ShapeMismatch);
  EXPECT_THROW(apply(g, FieldVector{FieldLayout::kFaces1D, 5, 0, std::vector<double>(6)}), ShapeMismatch);
  EXPECT_THROW(apply(g, FieldVector{FieldLayout::kExtendedCenters1D, 6, 0, std::vector<double>(8)}),
               ShapeMismatch);
}

// Monomials of degree <= k are differentiated exactly at every face.
TEST(MimeticProperties, PolynomialExactness) {
  for (int k : kSupportedOrders) {
    const std::size_t m = 4 * static_cast<std::size_t>(k);
    auto g = build_grad_1d(k, m);
    StaggeredGrid1D grid(m);
    const auto x = grid.nodes();
    const auto faces = grid.faces();
    for (int d = 0; d <= k; ++d) {
      std::vector<double> p;
      for (double v : x) p.push_back(std::pow(v, d));
      auto got = g.matrix().multiply(p);
      double max_dp = 0.0;
      std::vector<double> want;
      for (double f : faces) {
        want.push_back(d == 0 ? 0.0 : d * std::pow(f, d - 1));
        max_dp = std::max(max_dp, std::abs(want.back()));
      }
      for (std::size_t f = 0; f < faces.size(); ++f) {
        EXPECT_LE(std::abs(got[f] - want[f]), 1e-9 * std::max(1.0, max_dp))
            << "k=" << k << " degree " << d << " face " << f;
      }
    }
  }
}

TEST(MimeticProperties, MirrorSymmetry) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k : kSupportedOrders) {
    for (std::size_t m : {static_cast<std::size_t>(2 * k), static_cast<std::size_t>(3 * k + 1)}) {
      auto g = build_grad_1d(k, m);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v(m + 2);
        for (double& e : v) e = u(rng);
        std::vector<double> flipped(v.rbegin(), v.rend());
        for (double& e : flipped) e = -e;
        auto a = g.matrix().multiply(v);
        auto b = g.matrix().multiply(flipped);
        for (std::size_t f = 0; f <= m; ++f) ASSERT_NEAR(b[f], a[m - f], 1e-12);
      }
    }
  }
}

// Observed convergence order on sin(x) over [0, pi].
std::vector<double> sine_errors(int k) {
  std::vector<double> errs;
  for (std::size_t m : {16u, 32u, 64u, 128u}) {
    const double h = std::numbers::pi / static_cast<double>(m);
    auto g = build_grad_1d(k, m);
    StaggeredGrid1D grid(m);
    std::vector<double> u;
    for (double x : grid.nodes()) u.push_back(std::sin(x * h));
    auto d = g.matrix().multiply(u);
    double err = 0.0;
    auto faces = grid.faces();
    for (std::size_t f = 0; f < faces.size(); ++f) err = std::max(err, std::abs(d[f] / h - std::cos(faces[f] * h)));
    errs.push_back(err);
  }
  return errs;
}

TEST(MimeticProperties, ConvergenceOrder) {
  for (int k : kSupportedOrders) {
    auto errs = sine_errors(k);
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
      if (k >= 6 && (errs[i] <= 1e-12 || errs[i + 1] <= 1e-12)) continue;
      const double slope = std::log2(errs[i] / errs[i + 1]);
      EXPECT_NEAR(slope, k, 0.4) << "k=" << k << " between m=" << (16 << i) << " and " << (32 << i);
    }
  }
}

}  // namespace
}  // namespace mimdet
