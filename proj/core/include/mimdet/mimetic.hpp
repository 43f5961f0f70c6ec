#pragma once

// High-order mimetic gradient operators on 1D and 2D staggered grids with
// unit spacing.
//
// A 1D grid of m cells carries scalar values on m+2 extended nodes (the two
// boundary nodes plus the m cell centers) and gradient values on the m+1
// faces. The 2D operator stacks the x-face block on top of the y-face block
// and reads the extended field in x-fastest order.

#include <cstddef>
#include <span>
#include <vector>

#include "mimdet/sparse.hpp"

namespace mimdet {

/// Orders supported by the operator builders.
inline constexpr int kSupportedOrders[] = {2, 4, 6, 8};

bool is_supported_order(int k) noexcept;

/// Throws InvalidArgument unless k ∈ {2,4,6,8}.
void require_supported_order(int k);

class StaggeredGrid1D {
 public:
  /// Throws InvalidArgument when cells < 1.
  explicit StaggeredGrid1D(std::size_t cells);

  std::size_t cells() const noexcept { return cells_; }
  std::size_t node_count() const noexcept { return cells_ + 2; }
  std::size_t face_count() const noexcept { return cells_ + 1; }

  /// {0, 0.5, 1.5, ..., m-0.5, m}
  std::vector<double> nodes() const;
  /// {0, 1, ..., m}
  std::vector<double> faces() const;

  /// Whether the grid is wide enough for order-k stencils (m >= 2k).
  bool supports_order(int k) const noexcept;

 private:
  std::size_t cells_;
};

enum class FieldLayout {
  kExtendedCenters1D,
  kExtendedCenters2D,  // x-fastest, (m+2)(n+2) entries
  kFaces1D,
  kFaces2D,  // x-face block then y-face block
};

std::size_t expected_length(FieldLayout layout, std::size_t m, std::size_t n);

/// A vectorized grid function tagged with its layout. For 1D layouts
/// `height_cells` is 0.
struct FieldVector {
  FieldLayout layout = FieldLayout::kExtendedCenters1D;
  std::size_t width_cells = 0;
  std::size_t height_cells = 0;
  std::vector<double> values;

  /// Throws ShapeMismatch if the value count disagrees with the layout.
  void validate() const;
};

/// Derivative weights c with sum_i c_i p(nodes_i) = p'(target) for every
/// polynomial p of degree <= `degree`. Requires nodes.size() == degree + 1
/// and distinct nodes; duplicates raise SingularSystem.
std::vector<double> one_sided_stencil(std::span<const double> nodes,
                                      double target, int degree);

/// Order-k 1D gradient, (m+1) x (m+2).
class BandedOperator1D {
 public:
  BandedOperator1D(int order, std::size_t cells, SparseMatrix matrix,
                   std::vector<double> interior_stencil);

  int order() const noexcept { return order_; }
  std::size_t cells() const noexcept { return cells_; }
  std::size_t rows() const noexcept { return matrix_.rows(); }
  std::size_t cols() const noexcept { return matrix_.cols(); }
  const SparseMatrix& matrix() const noexcept { return matrix_; }

  /// The width-k stencil shared by rows k/2 .. m-k/2, acting on centers
  /// f-k/2+1/2 .. f+k/2-1/2 of face f.
  std::span<const double> interior_stencil() const noexcept { return interior_; }

 private:
  int order_;
  std::size_t cells_;
  SparseMatrix matrix_;
  std::vector<double> interior_;
};

/// Order-k 2D gradient G = [E_n ⊗ G_m; G_n ⊗ E_m].
class SparseOperator2D {
 public:
  SparseOperator2D(int order, std::size_t width_cells, std::size_t height_cells,
                   SparseMatrix matrix);

  int order() const noexcept { return order_; }
  std::size_t width_cells() const noexcept { return m_; }
  std::size_t height_cells() const noexcept { return n_; }
  std::size_t rows() const noexcept { return matrix_.rows(); }
  std::size_t cols() const noexcept { return matrix_.cols(); }
  /// n(m+1) rows holding x-face values.
  std::size_t x_face_rows() const noexcept { return n_ * (m_ + 1); }
  const SparseMatrix& matrix() const noexcept { return matrix_; }

 private:
  int order_;
  std::size_t m_;
  std::size_t n_;
  SparseMatrix matrix_;
};

/// Diagonal of the positive weight matrix paired with a gradient.
/// `x_face_rows` is 0 for 1D weights.
struct DiagonalWeights {
  int order = 2;
  std::size_t x_face_rows = 0;
  std::vector<double> values;
};

BandedOperator1D build_grad_1d(int k, std::size_t m);

/// Face weights of length m+1: k boundary values on each side, ones inside.
DiagonalWeights build_weights_1d(int k, std::size_t m);

/// The k left-boundary weights for order k; the right side mirrors them.
std::span<const double> boundary_weights(int k);

SparseOperator2D build_grad_2d(int k, std::size_t m, std::size_t n);

/// [I_n ⊗ P_m ; P_n ⊗ I_m] as one diagonal.
DiagonalWeights build_weights_2d(int k, std::size_t m, std::size_t n);

FieldVector apply(const BandedOperator1D& op, const FieldVector& field);
FieldVector apply(const SparseOperator2D& op, const FieldVector& field);

/// sum_f w_f g_f^2
double weighted_energy(const DiagonalWeights& weights, std::span<const double> faces);

}  // namespace mimdet
