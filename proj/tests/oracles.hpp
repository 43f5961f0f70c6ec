#pragma once

// Reference computations used only by tests. Nothing here calls into the
// library's construction paths.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace mimdet::oracle {

/// Derivative at `t` of the Lagrange interpolant through `nodes`, as
/// weights on the nodal values: l_j'(t) via the product formula.
inline std::vector<long double> lagrange_derivative_weights(std::span<const long double> nodes,
                                                            long double t) {
  const std::size_t n = nodes.size();
  std::vector<long double> w(n, 0.0L);
  for (std::size_t j = 0; j < n; ++j) {
    long double denom = 1.0L;
    for (std::size_t l = 0; l < n; ++l) {
      if (l != j) denom *= nodes[j] - nodes[l];
    }
    long double sum = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      long double prod = 1.0L;
      for (std::size_t l = 0; l < n; ++l) {
        if (l != j && l != i) prod *= t - nodes[l];
      }
      sum += prod;
    }
    w[j] = sum / denom;
  }
  return w;
}

/// Dense (m+1) x (m+2) order-k gradient assembled from Lagrange weights:
/// the first/last k/2 faces use the k+1 nodes nearest the boundary, the
/// rest use the k centers symmetric about the face.
inline std::vector<std::vector<long double>> dense_gradient(int k, std::size_t m) {
  std::vector<long double> x(m + 2);
  x[0] = 0.0L;
  for (std::size_t i = 0; i < m; ++i) x[i + 1] = static_cast<long double>(i) + 0.5L;
  x[m + 1] = static_cast<long double>(m);

  const std::size_t half = static_cast<std::size_t>(k) / 2;
  std::vector<std::vector<long double>> g(m + 1, std::vector<long double>(m + 2, 0.0L));
  for (std::size_t f = 0; f <= m; ++f) {
    std::size_t first = 0;
    std::size_t count = 0;
    if (f < half) {
      first = 0;
      count = static_cast<std::size_t>(k) + 1;
    } else if (f > m - half) {
      first = m + 1 - static_cast<std::size_t>(k);
      count = static_cast<std::size_t>(k) + 1;
    } else {
      first = f - half + 1;
      count = static_cast<std::size_t>(k);
    }
    auto w = lagrange_derivative_weights(std::span(x).subspan(first, count), static_cast<long double>(f));
    for (std::size_t c = 0; c < count; ++c) g[f][first + c] = w[c];
  }
  return g;
}

/// Pairwise AUC: fraction of (clean, perturbed) pairs with perturbed above
/// clean, ties counted one half.
inline double brute_force_auc(std::span<const double> clean, std::span<const double> perturbed) {
  double wins = 0.0;
  for (double c : clean) {
    for (double p : perturbed) {
      if (p > c) {
        wins += 1.0;
      } else if (p == c) {
        wins += 0.5;
      }
    }
  }
  return wins / (static_cast<double>(clean.size()) * static_cast<double>(perturbed.size()));
}

}  // namespace mimdet::oracle
