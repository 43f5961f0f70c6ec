#include "mimdet/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mimdet/error.hpp"

namespace mimdet {
namespace {

void require_budget(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("perturbation budget must be finite and non-negative");
  }
}

// Box-Muller on 53-bit uniforms drawn from mt19937_64. Spelled out rather
// than std::normal_distribution so the stream is identical across standard
// libraries.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (cached_) {
      cached_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    cached_ = true;
    return r * std::cos(theta);
  }

 private:
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool cached_ = false;
};

}  // namespace

Perturbation sign_noise(std::size_t height, std::size_t width, double epsilon, std::uint64_t seed) {
  require_budget(epsilon);
  Perturbation p{height, width, epsilon, PerturbationKind::kSignNoise, seed, {}};
  p.delta.resize(height * width);
  GaussianStream eta(seed);
  for (double& d : p.delta) d = eta.next() >= 0.0 ? epsilon : -epsilon;
  return p;
}

Perturbation smooth_control(std::size_t height, std::size_t width, double epsilon) {
  require_budget(epsilon);
  if (height == 0 || width == 0) throw InvalidArgument("smooth_control: empty shape");
  Perturbation p{height, width, epsilon, PerturbationKind::kSmoothControl, std::nullopt, {}};
  p.delta.resize(height * width);
  const double wx = 4.0 * std::numbers::pi / static_cast<double>(width);
  const double wy = 4.0 * std::numbers::pi / static_cast<double>(height);
  for (std::size_t j = 0; j < height; ++j) {
    const double sy = std::sin(wy * static_cast<double>(j));
    for (std::size_t i = 0; i < width; ++i) {
      const double v = epsilon * std::sin(wx * static_cast<double>(i)) * sy;
      p.delta[j * width + i] = std::clamp(v, -epsilon, epsilon);
    }
  }
  return p;
}

Image apply_and_clip(const Image& img, const Perturbation& p) {
  if (img.height() != p.height || img.width() != p.width || p.delta.size() != img.size()) {
    throw ShapeMismatch("perturbation shape does not match image");
  }
  std::vector<double> out(img.size());
  auto src = img.samples();
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = std::clamp(src[s] + p.delta[s], 0.0, 1.0);
  return Image(img.height(), img.width(), std::move(out));
}

Image perturbation_to_image(const Perturbation& p) {
  std::vector<double> out(p.delta.size(), 0.5);
  if (p.epsilon > 0.0) {
    for (std::size_t s = 0; s < out.size(); ++s) {
      out[s] = std::clamp(0.5 + 0.5 * p.delta[s] / p.epsilon, 0.0, 1.0);
    }
  }
  return Image(p.height, p.width, std::move(out));
}

}  // namespace mimdet
