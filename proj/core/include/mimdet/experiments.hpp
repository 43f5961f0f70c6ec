#pragma once

// Experiment drivers behind the command-line tool: the clean / sign-noise /
// smooth-control comparison across orders, corpus ROC evaluation, and
// directory scanning.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mimdet/detector.hpp"
#include "mimdet/image.hpp"

namespace mimdet {

inline constexpr double kCanonicalEpsilon = 16.0 / 255.0;
inline constexpr std::size_t kTableImageSize = 128;
inline constexpr std::uint64_t kDefaultSeeds[] = {1, 2, 3, 4, 5};

struct Table1Row {
  int order = 2;
  double t_clean = 0.0;
  double t_adv_mean = 0.0;
  double t_adv_std = 0.0;
  double t_low = 0.0;
  double ratio_adv = 0.0;
  double ratio_low = 0.0;
  std::vector<std::uint64_t> seeds;
};

/// Grayscale, then bicubic resize to 128 x 128.
Image prepare_table_image(const Raster& raster);

/// Mean that returns exactly x when every value equals x.
double stable_mean(std::span<const double> values);
/// Sample standard deviation (n-1); 0 for fewer than two values.
double sample_std(std::span<const double> values);

/// T for the clean image, sign-noise (one per seed, clipped) and the smooth
/// control (clipped) at every order in {2,4,6,8}.
std::vector<Table1Row> reproduce_table1(const Image& image, double epsilon,
                                        std::span<const std::uint64_t> seeds,
                                        OperatorCache& cache = OperatorCache::global());

/// Header k,t_clean,t_adv_mean,t_adv_std,t_low,ratio_adv,ratio_low; six
/// significant digits.
std::string table1_csv(std::span<const Table1Row> rows);
/// Full-precision JSON array of rows.
std::string table1_json(std::span<const Table1Row> rows);

enum class SampleLabel { kClean, kPerturbed };

struct ScoredSample {
  std::string name;
  SampleLabel label = SampleLabel::kClean;
  double statistic = 0.0;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct EvalSummary {
  int order = 2;
  std::vector<ScoredSample> scores;
  double auc = 0.5;
  std::optional<double> threshold;
  std::optional<double> fpr;
  std::optional<double> tpr;
};

/// Mann-Whitney AUC: P(perturbed > clean) + 0.5 P(tie), via midranks.
double auc_rank(std::span<const double> clean, std::span<const double> perturbed);

/// Empirical ROC sweeping the threshold through every distinct score, from
/// (0,0) to (1,1). Samples scoring at or above the threshold are flagged.
std::vector<RocPoint> roc_curve(std::span<const double> clean, std::span<const double> perturbed);
double trapezoid_auc(std::span<const RocPoint> curve);

/// Requires both sets non-empty.
EvalSummary evaluate(std::vector<ScoredSample> scores, int k, std::optional<double> threshold);
std::string eval_to_json(const EvalSummary& summary, int indent = 2);

/// Regular files with a .png/.pgm/.ppm extension, sorted by filename.
std::vector<std::filesystem::path> list_image_files(const std::filesystem::path& dir);

}  // namespace mimdet
