#include "mimdet/mimetic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mimdet/error.hpp"

namespace mimdet {
namespace {

// Left boundary face weights per order. k = 2 and k = 4 are the reference
// quadrature weights (3/8, 9/8 and 407/1152, 473/384, 343/384, 1177/1152).
// k = 6 and k = 8 are the compact weights that best satisfy
// G^T P = e_last - e_first for the operators built here, subject to each
// side summing to k - 1/2; tests/mimetic_weights_test.cpp re-derives them.
constexpr std::array<double, 2> kWeights2 = {3.0 / 8.0, 9.0 / 8.0};
constexpr std::array<double, 4> kWeights4 = {407.0 / 1152.0, 473.0 / 384.0,
                                             343.0 / 384.0, 1177.0 / 1152.0};
constexpr std::array<double, 6> kWeights6 = {
    0.31580837112036382577, 1.3912045950685872655, 0.62987065424504382614,
    1.2346094666788534439,  0.91913291574430824797, 1.0093739971428433907};
constexpr std::array<double, 8> kWeights8 = {
    0.29564279737623130553, 1.5206727882434246683, 0.27671149930856053571,
    1.7608510770629465768,  0.46000998603140722188, 1.2407025232809081696,
    0.94240941753722625870, 1.0029999111592952636};

void require_grid(int k, std::size_t m, const char* axis) {
  require_supported_order(k);
  if (m < static_cast<std::size_t>(2 * k)) {
    throw InvalidArgument(std::string("grid too small for order: ") + axis + " has " +
                          std::to_string(m) + " cells, order " + std::to_string(k) +
                          " needs at least " + std::to_string(2 * k));
  }
}

}  // namespace

bool is_supported_order(int k) noexcept {
  return std::find(std::begin(kSupportedOrders), std::end(kSupportedOrders), k) !=
         std::end(kSupportedOrders);
}

void require_supported_order(int k) {
  if (!is_supported_order(k)) {
    throw InvalidArgument("unsupported order " + std::to_string(k) +
                          "; expected one of 2, 4, 6, 8");
  }
}

StaggeredGrid1D::StaggeredGrid1D(std::size_t cells) : cells_(cells) {
  if (cells == 0) throw InvalidArgument("grid needs at least one cell");
}

std::vector<double> StaggeredGrid1D::nodes() const {
  std::vector<double> x(node_count());
  x.front() = 0.0;
  for (std::size_t i = 0; i < cells_; ++i) x[i + 1] = static_cast<double>(i) + 0.5;
  x.back() = static_cast<double>(cells_);
  return x;
}

std::vector<double> StaggeredGrid1D::faces() const {
  std::vector<double> x(face_count());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
  return x;
}

bool StaggeredGrid1D::supports_order(int k) const noexcept {
  return k > 0 && cells_ >= static_cast<std::size_t>(2 * k);
}

std::size_t expected_length(FieldLayout layout, std::size_t m, std::size_t n) {
  switch (layout) {
    case FieldLayout::kExtendedCenters1D: return m + 2;
    case FieldLayout::kExtendedCenters2D: return (m + 2) * (n + 2);
    case FieldLayout::kFaces1D: return m + 1;
    case FieldLayout::kFaces2D: return n * (m + 1) + m * (n + 1);
  }
  return 0;
}

void FieldVector::validate() const {
  std::size_t want = expected_length(layout, width_cells, height_cells);
  if (values.size() != want) {
    throw ShapeMismatch("field has " + std::to_string(values.size()) +
                        " values, layout requires " + std::to_string(want));
  }
}

std::vector<double> one_sided_stencil(std::span<const double> nodes, double target,
                                      int degree) {
  if (degree < 0 || nodes.size() != static_cast<std::size_t>(degree) + 1) {
    throw InvalidArgument("one_sided_stencil needs degree+1 nodes");
  }
  std::vector<double> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw SingularSystem("one_sided_stencil: duplicate nodes");
  }

  // Shifted monomials (x - target)^r keep the system well scaled; the only
  // nonzero right-hand side entry is d/dx (x - target) = 1.
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const Eigen::Index n = degree + 1;
  Mat a(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    long double h = static_cast<long double>(nodes[static_cast<std::size_t>(c)]) - target;
    long double p = 1.0L;
    for (Eigen::Index r = 0; r < n; ++r) {
      a(r, c) = p;
      p *= h;
    }
  }
  Vec rhs = Vec::Zero(n);
  if (n > 1) rhs(1) = 1.0L;

  Eigen::FullPivLU<Mat> lu(a);
  if (!lu.isInvertible()) throw SingularSystem("one_sided_stencil: singular system");
  Vec c = lu.solve(rhs);

  std::vector<double> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = static_cast<double>(c(i));
  return out;
}

BandedOperator1D::BandedOperator1D(int order, std::size_t cells, SparseMatrix matrix,
                                   std::vector<double> interior_stencil)
    : order_(order),
      cells_(cells),
      matrix_(std::move(matrix)),
      interior_(std::move(interior_stencil)) {}

SparseOperator2D::SparseOperator2D(int order, std::size_t width_cells,
                                   std::size_t height_cells, SparseMatrix matrix)
    : order_(order), m_(width_cells), n_(height_cells), matrix_(std::move(matrix)) {}

BandedOperator1D build_grad_1d(int k, std::size_t m) {
  require_grid(k, m, "axis");
  const StaggeredGrid1D grid(m);
  const std::vector<double> x = grid.nodes();
  const std::size_t half = static_cast<std::size_t>(k) / 2;
  const std::size_t width = static_cast<std::size_t>(k) + 1;

  // Boundary closures: face f < k/2 uses the boundary node and the first k
  // centers, exact to degree k.
  std::vector<std::vector<double>> closures;
  for (std::size_t f = 0; f < half; ++f) {
    closures.push_back(one_sided_stencil(std::span(x).first(width),
                                         static_cast<double>(f), k));
  }

  // Interior: k centers symmetric about the face, exact to degree k-1. The
  // stencil is translation invariant, so build it once around face k/2.
  std::vector<double> interior = one_sided_stencil(
      std::span(x).subspan(1, static_cast<std::size_t>(k)), static_cast<double>(half), k - 1);

  SparseMatrix g(m + 1, m + 2);
  for (std::size_t f = 0; f <= m; ++f) {
    std::vector<SparseEntry> row;
    if (f < half) {
      for (std::size_t j = 0; j < width; ++j) row.push_back({j, closures[f][j]});
    } else if (f > m - half) {
      // Mirror of the left closure: negate and reverse.
      const auto& c = closures[m - f];
      for (std::size_t j = 0; j < width; ++j) row.push_back({m + 1 - j, -c[j]});
    } else {
      const std::size_t first = f - half + 1;
      for (std::size_t j = 0; j < interior.size(); ++j) row.push_back({first + j, interior[j]});
    }
    g.push_row(std::move(row));
  }
  return BandedOperator1D(k, m, std::move(g), std::move(interior));
}

std::span<const double> boundary_weights(int k) {
  switch (k) {
    case 2: return kWeights2;
    case 4: return kWeights4;
    case 6: return kWeights6;
    case 8: return kWeights8;
    default: require_supported_order(k);
  }
  return {};
}

DiagonalWeights build_weights_1d(int k, std::size_t m) {
  require_grid(k, m, "axis");
  auto side = boundary_weights(k);
  std::vector<double> w(m + 1, 1.0);
  for (std::size_t i = 0; i < side.size(); ++i) {
    w[i] = side[i];
    w[m - i] = side[i];
  }
  return DiagonalWeights{k, 0, std::move(w)};
}

SparseOperator2D build_grad_2d(int k, std::size_t m, std::size_t n) {
  require_grid(k, m, "width");
  require_grid(k, n, "height");
  const BandedOperator1D gx = build_grad_1d(k, m);
  const BandedOperator1D gy = build_grad_1d(k, n);
  SparseMatrix x_block = kron(interior_selection(n), gx.matrix());
  SparseMatrix y_block = kron(gy.matrix(), interior_selection(m));
  return SparseOperator2D(k, m, n, vstack(x_block, y_block));
}

DiagonalWeights build_weights_2d(int k, std::size_t m, std::size_t n) {
  require_grid(k, m, "width");
  require_grid(k, n, "height");
  const DiagonalWeights pm = build_weights_1d(k, m);
  const DiagonalWeights pn = build_weights_1d(k, n);
  DiagonalWeights out{k, n * (m + 1), {}};
  out.values.reserve(n * (m + 1) + m * (n + 1));
  for (std::size_t j = 0; j < n; ++j) {
    out.values.insert(out.values.end(), pm.values.begin(), pm.values.end());
  }
  for (std::size_t g = 0; g <= n; ++g) {
    out.values.insert(out.values.end(), m, pn.values[g]);
  }
  return out;
}

FieldVector apply(const BandedOperator1D& op, const FieldVector& field) {
  field.validate();
  if (field.layout != FieldLayout::kExtendedCenters1D || field.width_cells != op.cells()) {
    throw ShapeMismatch("1D operator expects an extended-center field with " +
                        std::to_string(op.cells()) + " cells");
  }
  FieldVector out{FieldLayout::kFaces1D, op.cells(), 0, {}};
  out.values = op.matrix().multiply(field.values);
  return out;
}

FieldVector apply(const SparseOperator2D& op, const FieldVector& field) {
  field.validate();
  if (field.layout != FieldLayout::kExtendedCenters2D ||
      field.width_cells != op.width_cells() || field.height_cells != op.height_cells()) {
    throw ShapeMismatch("2D operator expects an x-fastest extended field of " +
                        std::to_string(op.width_cells()) + "x" +
                        std::to_string(op.height_cells()) + " cells");
  }
  FieldVector out{FieldLayout::kFaces2D, op.width_cells(), op.height_cells(), {}};
  out.values = op.matrix().multiply(field.values);
  return out;
}

double weighted_energy(const DiagonalWeights& weights, std::span<const double> faces) {
  if (faces.size() != weights.values.size()) {
    throw ShapeMismatch("weights and face field lengths differ");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < faces.size(); ++i) acc += weights.values[i] * faces[i] * faces[i];
  return acc;
}

}  // namespace mimdet
