#pragma once

// Mimetic gradient-energy detector.
//
//   T(x) = (G u)^T P (G u) / sum_ij x_ij^2
//
// where u is x padded with one replicated ghost layer and vectorized
// x-fastest, G is the order-k 2D mimetic gradient and P its diagonal face
// weights. Inputs with T above a threshold calibrated on clean data are
// flagged as adversarial.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "mimdet/image.hpp"
#include "mimdet/mimetic.hpp"

namespace mimdet {

enum class Verdict { kClean, kAdversarial, kUnthresholded };

std::string to_string(Verdict v);

struct DetectorConfig {
  int order = 2;
  std::optional<double> threshold;

  /// Throws InvalidArgument on an unsupported order or non-positive threshold.
  void validate() const;
};

struct DetectorReport {
  int order = 2;
  double gradient_energy = 0.0;  // E_H1
  double pixel_energy = 0.0;     // E_l2
  double statistic = 0.0;        // T
  std::optional<double> threshold;
  Verdict verdict = Verdict::kUnthresholded;
};

/// G and P for one (k, H, W), shared read-only.
struct OperatorPair {
  SparseOperator2D gradient;
  DiagonalWeights weights;
};

/// Thread-safe cache of operators keyed by (k, H, W). Lookups take a shared
/// lock; insertion is exclusive.
class OperatorCache {
 public:
  std::shared_ptr<const OperatorPair> get(int k, std::size_t height, std::size_t width);
  std::size_t size() const;
  void clear();

  /// Process-wide cache used when callers do not supply one.
  static OperatorCache& global();

 private:
  using Key = std::tuple<int, std::size_t, std::size_t>;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const OperatorPair>> entries_;
};

/// Builds fresh operators without touching any cache.
std::shared_ptr<const OperatorPair> build_operators(int k, std::size_t height, std::size_t width);

/// Throws InvalidArgument when H or W is below 2k or k is unsupported.
void require_image_fits_order(const Image& img, int k);

/// Face values G u of the padded image.
std::vector<double> image_gradient(const Image& img, const OperatorPair& ops);

double gradient_energy(const Image& img, int k, OperatorCache& cache = OperatorCache::global());
double gradient_energy(const Image& img, const OperatorPair& ops);

struct PixelEnergy {
  double value = 0.0;
  /// Set for the all-zero image, where T is 0/0.
  bool statistic_undefined = false;
};

PixelEnergy pixel_energy(const Image& img);

/// Throws UndefinedStatistic for the all-zero image.
DetectorReport statistic_t(const Image& img, const DetectorConfig& config,
                           OperatorCache& cache = OperatorCache::global());
DetectorReport statistic_t(const Image& img, int k, OperatorCache& cache = OperatorCache::global());
DetectorReport statistic_t(const Image& img, const OperatorPair& ops,
                           std::optional<double> threshold = std::nullopt);

/// Adversarial iff statistic > threshold (ties are clean).
Verdict classify(double statistic, double threshold);

/// T for each image, computed concurrently; output order matches input.
std::vector<DetectorReport> statistic_batch(std::span<const Image> images, int k,
                                            OperatorCache& cache = OperatorCache::global(),
                                            unsigned max_threads = 0);

struct Calibration {
  int order = 2;
  double alpha = 0.05;
  double threshold = 0.0;
  std::vector<double> statistics;
};

inline constexpr std::size_t kMinCalibrationSamples = 20;

/// One-based rank ceil((1-alpha)(n+1)) clamped to [1, n].
std::size_t calibration_rank(std::size_t n, double alpha);

/// Threshold = order statistic of rank ceil((1-alpha)(N+1)) clamped to
/// [1, N]. Requires N >= 20, 0 < alpha < 1, finite non-negative samples.
Calibration calibrate(std::span<const double> clean_statistics, double alpha, int k);

/// Cell-centered gradient magnitude sqrt(gx^2 + gy^2), where gx and gy
/// average the two adjacent x- and y-face values of G u. Row-major H x W.
struct GradientMap {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> magnitude;

  double max() const;
};

GradientMap gradient_magnitude_map(const Image& img, int k, OperatorCache& cache = OperatorCache::global());
GradientMap gradient_magnitude_map(const Image& img, const OperatorPair& ops);

/// Values affinely mapped from [low, high] to [0,1]; low/high are recorded
/// so the original values can be reconstructed.
struct ScaledMap {
  Image image;
  double low = 0.0;
  double high = 0.0;
};

/// Map ranges below this are stencil roundoff (a constant image gives
/// ~1e-17) and export as all zeros.
inline constexpr double kMapRoundoff = 1e-12;

/// Magnitude map scaled by its maximum (low = 0).
ScaledMap normalize_map(const GradientMap& map);
/// Difference map adv - clean, scaled from [min, max].
ScaledMap excess_map(const GradientMap& clean, const GradientMap& adversarial);

std::string report_to_json(const DetectorReport& report, int indent = -1);
std::string calibration_to_json(const Calibration& calibration, int indent = 2);
Calibration calibration_from_json(const std::string& text);

}  // namespace mimdet
