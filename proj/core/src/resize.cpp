#include <algorithm>
#include <cmath>
#include <string>

#include "mimdet/error.hpp"
#include "mimdet/image.hpp"

namespace mimdet {
namespace {

double cubic(double x) {
  const double a = std::abs(x);
  const double a2 = a * a;
  const double a3 = a2 * a;
  if (a <= 1.0) return 1.5 * a3 - 2.5 * a2 + 1.0;
  if (a <= 2.0) return -0.5 * a3 + 2.5 * a2 - 4.0 * a + 2.0;
  return 0.0;
}

struct Contribution {
  std::vector<std::size_t> index;
  std::vector<double> weight;
};

// Per-output-sample source indices and normalized weights along one axis.
// Out-of-range taps reflect symmetrically about the edges.
std::vector<Contribution> contributions(std::size_t in_len, std::size_t out_len) {
  const double scale = static_cast<double>(out_len) / static_cast<double>(in_len);
  const bool shrink = scale < 1.0;
  const double support = shrink ? 4.0 / scale : 4.0;
  const auto taps = static_cast<std::ptrdiff_t>(std::ceil(support)) + 2;
  const auto n = static_cast<std::ptrdiff_t>(in_len);

  std::vector<Contribution> out(out_len);
  for (std::size_t u = 0; u < out_len; ++u) {
    // One-based source coordinate of output sample u+1.
    const double x = static_cast<double>(u + 1) / scale + 0.5 * (1.0 - 1.0 / scale);
    const auto left = static_cast<std::ptrdiff_t>(std::floor(x - support / 2.0));
    std::vector<double> w(static_cast<std::size_t>(taps));
    double sum = 0.0;
    for (std::ptrdiff_t t = 0; t < taps; ++t) {
      const double d = x - static_cast<double>(left + t);
      const double v = shrink ? scale * cubic(scale * d) : cubic(d);
      w[static_cast<std::size_t>(t)] = v;
      sum += v;
    }
    Contribution& c = out[u];
    for (std::ptrdiff_t t = 0; t < taps; ++t) {
      const double v = w[static_cast<std::size_t>(t)];
      if (v == 0.0) continue;
      std::ptrdiff_t idx = (left + t - 1) % (2 * n);
      if (idx < 0) idx += 2 * n;
      if (idx >= n) idx = 2 * n - 1 - idx;
      c.index.push_back(static_cast<std::size_t>(idx));
      c.weight.push_back(v / sum);
    }
  }
  return out;
}

}  // namespace

Image resize(const Image& img, std::size_t out_height, std::size_t out_width) {
  if (out_height < 2 || out_width < 2) {
    throw InvalidArgument("resize target " + std::to_string(out_height) + "x" +
                          std::to_string(out_width) + " is degenerate");
  }
  if (img.empty()) throw InvalidArgument("cannot resize an empty image");

  const std::size_t h = img.height();
  const std::size_t w = img.width();
  const auto along_x = contributions(w, out_width);
  const auto along_y = contributions(h, out_height);

  auto resize_x = [&](const std::vector<double>& src, std::size_t rows) {
    std::vector<double> dst(rows * out_width);
    for (std::size_t j = 0; j < rows; ++j) {
      for (std::size_t u = 0; u < out_width; ++u) {
        const auto& c = along_x[u];
        double acc = 0.0;
        for (std::size_t t = 0; t < c.index.size(); ++t) acc += c.weight[t] * src[j * w + c.index[t]];
        dst[j * out_width + u] = acc;
      }
    }
    return dst;
  };
  auto resize_y = [&](const std::vector<double>& src, std::size_t cols) {
    std::vector<double> dst(out_height * cols);
    for (std::size_t v = 0; v < out_height; ++v) {
      const auto& c = along_y[v];
      for (std::size_t i = 0; i < cols; ++i) {
        double acc = 0.0;
        for (std::size_t t = 0; t < c.index.size(); ++t) acc += c.weight[t] * src[c.index[t] * cols + i];
        dst[v * cols + i] = acc;
      }
    }
    return dst;
  };

  std::vector<double> src(img.samples().begin(), img.samples().end());
  const double sy = static_cast<double>(out_height) / static_cast<double>(h);
  const double sx = static_cast<double>(out_width) / static_cast<double>(w);
  std::vector<double> result;
  // The stronger reduction runs first.
  if (sy <= sx) {
    result = resize_x(resize_y(src, w), out_height);
  } else {
    result = resize_y(resize_x(src, h), out_width);
  }
  for (double& v : result) v = std::clamp(v, 0.0, 1.0);
  return Image(out_height, out_width, std::move(result));
}

}  // namespace mimdet
