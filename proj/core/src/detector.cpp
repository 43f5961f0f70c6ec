#include "mimdet/detector.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "mimdet/error.hpp"

namespace mimdet {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kClean: return "clean";
    case Verdict::kAdversarial: return "adversarial";
    case Verdict::kUnthresholded: return "unthresholded";
  }
  return "unknown";
}

void DetectorConfig::validate() const {
  require_supported_order(order);
  if (threshold && !(*threshold > 0.0 && std::isfinite(*threshold))) {
    throw InvalidArgument("threshold must be positive and finite");
  }
}

std::shared_ptr<const OperatorPair> build_operators(int k, std::size_t height, std::size_t width) {
  return std::make_shared<const OperatorPair>(
      OperatorPair{build_grad_2d(k, width, height), build_weights_2d(k, width, height)});
}

std::shared_ptr<const OperatorPair> OperatorCache::get(int k, std::size_t height, std::size_t width) {
  const Key key{k, height, width};
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto built = build_operators(k, height, width);
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(key, std::move(built));
  return it->second;
}

std::size_t OperatorCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void OperatorCache::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

OperatorCache& OperatorCache::global() {
  static OperatorCache cache;
  return cache;
}

void require_image_fits_order(const Image& img, int k) {
  require_supported_order(k);
  const auto need = static_cast<std::size_t>(2 * k);
  if (img.height() < need || img.width() < need) {
    throw InvalidArgument("image too small for order: " + std::to_string(img.height()) + "x" +
                          std::to_string(img.width()) + " needs at least " + std::to_string(need) +
                          " pixels per side for k=" + std::to_string(k));
  }
}

std::vector<double> image_gradient(const Image& img, const OperatorPair& ops) {
  if (img.width() != ops.gradient.width_cells() || img.height() != ops.gradient.height_cells()) {
    throw ShapeMismatch("operators were built for a different image shape");
  }
  return apply(ops.gradient, pad_and_vectorize(img)).values;
}

double gradient_energy(const Image& img, const OperatorPair& ops) {
  return weighted_energy(ops.weights, image_gradient(img, ops));
}

double gradient_energy(const Image& img, int k, OperatorCache& cache) {
  require_image_fits_order(img, k);
  return gradient_energy(img, *cache.get(k, img.height(), img.width()));
}

PixelEnergy pixel_energy(const Image& img) {
  double acc = 0.0;
  for (double v : img.samples()) acc += v * v;
  return {acc, acc == 0.0};
}

Verdict classify(double statistic, double threshold) {
  return statistic > threshold ? Verdict::kAdversarial : Verdict::kClean;
}

DetectorReport statistic_t(const Image& img, const OperatorPair& ops, std::optional<double> threshold) {
  const PixelEnergy pe = pixel_energy(img);
  if (pe.statistic_undefined) throw UndefinedStatistic("statistic undefined for zero image");
  DetectorReport r;
  r.order = ops.gradient.order();
  r.gradient_energy = gradient_energy(img, ops);
  r.pixel_energy = pe.value;
  r.statistic = r.gradient_energy / r.pixel_energy;
  r.threshold = threshold;
  r.verdict = threshold ? classify(r.statistic, *threshold) : Verdict::kUnthresholded;
  return r;
}

DetectorReport statistic_t(const Image& img, const DetectorConfig& config, OperatorCache& cache) {
  config.validate();
  require_image_fits_order(img, config.order);
  return statistic_t(img, *cache.get(config.order, img.height(), img.width()), config.threshold);
}

DetectorReport statistic_t(const Image& img, int k, OperatorCache& cache) {
  return statistic_t(img, DetectorConfig{k, std::nullopt}, cache);
}

std::vector<DetectorReport> statistic_batch(std::span<const Image> images, int k, OperatorCache& cache,
                                            unsigned max_threads) {
  std::vector<DetectorReport> out(images.size());
  if (images.empty()) return out;
  unsigned threads = max_threads ? max_threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(images.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < images.size(); i = next++) {
      try {
        out[i] = statistic_t(images[i], k, cache);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (error) std::rethrow_exception(error);
  return out;
}

std::size_t calibration_rank(std::size_t n, double alpha) {
  if (n == 0) throw InvalidArgument("calibration rank needs at least one sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie strictly between 0 and 1");
  const auto nd = static_cast<double>(n);
  // Guard the ceiling against representation error in (1-alpha)(N+1).
  const double target = (1.0 - alpha) * (nd + 1.0);
  const double rank = std::ceil(target - 1e-9 * std::max(1.0, target));
  return static_cast<std::size_t>(std::clamp(rank, 1.0, nd));
}

Calibration calibrate(std::span<const double> clean_statistics, double alpha, int k) {
  require_supported_order(k);
  if (clean_statistics.size() < kMinCalibrationSamples) {
    throw InvalidArgument("calibration needs at least " + std::to_string(kMinCalibrationSamples) +
                          " clean samples, got " + std::to_string(clean_statistics.size()));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie strictly between 0 and 1");
  for (double t : clean_statistics) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("calibration statistics must be finite and >= 0");
  }

  std::vector<double> sorted(clean_statistics.begin(), clean_statistics.end());
  std::sort(sorted.begin(), sorted.end());

  Calibration c;
  c.order = k;
  c.alpha = alpha;
  c.threshold = sorted[calibration_rank(sorted.size(), alpha) - 1];
  c.statistics.assign(clean_statistics.begin(), clean_statistics.end());
  return c;
}

double GradientMap::max() const {
  return magnitude.empty() ? 0.0 : *std::max_element(magnitude.begin(), magnitude.end());
}

GradientMap gradient_magnitude_map(const Image& img, const OperatorPair& ops) {
  const std::vector<double> g = image_gradient(img, ops);
  const std::size_t h = img.height();
  const std::size_t w = img.width();
  const std::size_t y_offset = h * (w + 1);
  GradientMap map{h, w, std::vector<double>(h * w)};
  for (std::size_t j = 0; j < h; ++j) {
    for (std::size_t i = 0; i < w; ++i) {
      const double gx = 0.5 * (g[i + j * (w + 1)] + g[i + 1 + j * (w + 1)]);
      const double gy = 0.5 * (g[y_offset + i + j * w] + g[y_offset + i + (j + 1) * w]);
      map.magnitude[j * w + i] = std::hypot(gx, gy);
    }
  }
  return map;
}

GradientMap gradient_magnitude_map(const Image& img, int k, OperatorCache& cache) {
  require_image_fits_order(img, k);
  return gradient_magnitude_map(img, *cache.get(k, img.height(), img.width()));
}

ScaledMap normalize_map(const GradientMap& map) {
  const double hi = map.max();
  std::vector<double> v(map.magnitude.size(), 0.0);
  if (hi > kMapRoundoff) {
    for (std::size_t s = 0; s < v.size(); ++s) v[s] = std::clamp(map.magnitude[s] / hi, 0.0, 1.0);
  }
  return {Image(map.height, map.width, std::move(v)), 0.0, hi};
}

ScaledMap excess_map(const GradientMap& clean, const GradientMap& adversarial) {
  if (clean.height != adversarial.height || clean.width != adversarial.width) {
    throw ShapeMismatch("gradient maps differ in shape");
  }
  std::vector<double> d(clean.magnitude.size());
  for (std::size_t s = 0; s < d.size(); ++s) d[s] = adversarial.magnitude[s] - clean.magnitude[s];
  const auto [lo_it, hi_it] = std::minmax_element(d.begin(), d.end());
  const double lo = d.empty() ? 0.0 : *lo_it;
  const double hi = d.empty() ? 0.0 : *hi_it;
  std::vector<double> v(d.size(), 0.0);
  if (hi - lo > kMapRoundoff) {
    for (std::size_t s = 0; s < v.size(); ++s) v[s] = std::clamp((d[s] - lo) / (hi - lo), 0.0, 1.0);
  }
  return {Image(clean.height, clean.width, std::move(v)), lo, hi};
}

std::string report_to_json(const DetectorReport& report, int indent) {
  nlohmann::ordered_json j;
  j["k"] = report.order;
  j["e_h1"] = report.gradient_energy;
  j["e_l2"] = report.pixel_energy;
  j["t"] = report.statistic;
  j["tau"] = report.threshold ? nlohmann::ordered_json(*report.threshold) : nlohmann::ordered_json(nullptr);
  j["verdict"] = to_string(report.verdict);
  return j.dump(indent);
}

std::string calibration_to_json(const Calibration& calibration, int indent) {
  nlohmann::ordered_json j;
  j["k"] = calibration.order;
  j["alpha"] = calibration.alpha;
  j["tau"] = calibration.threshold;
  j["n"] = calibration.statistics.size();
  j["ts"] = calibration.statistics;
  return j.dump(indent);
}

Calibration calibration_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("calibration is not valid JSON: ") + e.what());
  }
  Calibration c;
  try {
    c.order = j.at("k").get<int>();
    c.alpha = j.at("alpha").get<double>();
    c.threshold = j.at("tau").get<double>();
    c.statistics = j.at("ts").get<std::vector<double>>();
    const auto n = j.at("n").get<std::size_t>();
    if (n != c.statistics.size()) throw InvalidArgument("calibration: n does not match ts length");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("calibration JSON is missing fields: ") + e.what());
  }
  require_supported_order(c.order);
  if (!(c.threshold > 0.0)) throw InvalidArgument("calibration threshold must be positive");
  if (calibrate(c.statistics, c.alpha, c.order).threshold != c.threshold) {
    throw InvalidArgument("calibration tau is not the configured quantile of ts");
  }
  return c;
}

}  // namespace mimdet
