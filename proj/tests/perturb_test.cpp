#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mimdet/error.hpp"
#include "mimdet/perturb.hpp"

namespace mimdet {
namespace {

constexpr double kEps = 16.0 / 255.0;

TEST(SignNoise, EveryEntryHasMagnitudeEpsilon) {
  auto p = sign_noise(128, 128, kEps, 1);
  ASSERT_EQ(p.delta.size(), 128u * 128u);
  std::size_t positive = 0;
  for (double v : p.delta) {
    ASSERT_EQ(std::abs(v), kEps);
    if (v > 0) ++positive;
  }
  const double frac = static_cast<double>(positive) / static_cast<double>(p.delta.size());
  EXPECT_GE(frac, 0.47);
  EXPECT_LE(frac, 0.53);
  EXPECT_EQ(p.seed, std::optional<std::uint64_t>(1));
  EXPECT_EQ(p.kind, PerturbationKind::kSignNoise);
}

TEST(SignNoise, SeedControlsTheDraw) {
  auto a = sign_noise(64, 48, kEps, 7);
  auto b = sign_noise(64, 48, kEps, 7);
  auto c = sign_noise(64, 48, kEps, 8);
  EXPECT_EQ(a.delta, b.delta);
  EXPECT_NE(a.delta, c.delta);
}

TEST(SignNoise, BalancedAcrossSeeds) {
  for (std::uint64_t seed = 10; seed < 30; ++seed) {
    auto p = sign_noise(64, 64, 0.1, seed);
    std::size_t positive = 0;
    for (double v : p.delta) positive += v > 0;
    const double frac = static_cast<double>(positive) / 4096.0;
    EXPECT_GT(frac, 0.45) << seed;
    EXPECT_LT(frac, 0.55) << seed;
  }
}

TEST(SignNoise, ZeroBudgetIsZeroField) {
  auto p = sign_noise(8, 8, 0.0, 3);
  for (double v : p.delta) EXPECT_EQ(v, 0.0);
}

TEST(SignNoise, RejectsBadBudget) {
  EXPECT_THROW(sign_noise(8, 8, -0.1, 1), InvalidArgument);
  EXPECT_THROW(sign_noise(8, 8, std::nan(""), 1), InvalidArgument);
}

TEST(SmoothControl, ClosedForm) {
  const std::size_t h = 96, w = 128;
  auto p = smooth_control(h, w, kEps);
  for (std::size_t i = 0; i < w; ++i) EXPECT_NEAR(p(0, i), 0.0, 1e-18);
  for (std::size_t j = 0; j < h; ++j) EXPECT_NEAR(p(j, 0), 0.0, 1e-18);
  EXPECT_NEAR(p(h / 8, w / 8), kEps, 1e-15);
  EXPECT_NEAR(p(3 * h / 8, w / 8), -kEps, 1e-15);
  for (std::size_t j = 0; j < h; ++j) {
    for (std::size_t i = 0; i < w; ++i) {
      const double want = kEps * std::sin(4 * std::numbers::pi * static_cast<double>(i) / w) *
                          std::sin(4 * std::numbers::pi * static_cast<double>(j) / h);
      ASSERT_NEAR(p(j, i), want, 1e-15);
      ASSERT_LE(std::abs(p(j, i)), kEps);
    }
  }
  EXPECT_FALSE(p.seed.has_value());
}

TEST(ApplyAndClip, Examples) {
  Image img(1, 2, std::vector<double>{0.99, 0.01});
  Perturbation p{1, 2, kEps, PerturbationKind::kSignNoise, 1, {kEps, -kEps}};
  auto out = apply_and_clip(img, p);
  EXPECT_EQ(out(0, 0), 1.0);
  EXPECT_EQ(out(0, 1), 0.0);

  Image mid(16, 16, 0.5);
  auto noise = sign_noise(16, 16, kEps, 2);
  auto moved = apply_and_clip(mid, noise);
  for (std::size_t q = 0; q < moved.size(); ++q) EXPECT_EQ(moved.samples()[q], 0.5 + noise.delta[q]);
}

// Clipping never increases the change and keeps samples in range.
TEST(ApplyAndClip, ClippingOnlyShrinksTheChange) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto noise = sign_noise(20, 30, 0.3, seed);
    auto base_noise = sign_noise(20, 30, 0.5, seed + 100);
    Image img(20, 30);
    for (std::size_t q = 0; q < img.size(); ++q) img.samples()[q] = 0.5 + base_noise.delta[q];
    auto out = apply_and_clip(img, noise);
    for (std::size_t q = 0; q < img.size(); ++q) {
      const double change = out.samples()[q] - img.samples()[q];
      ASSERT_LE(std::abs(change), std::abs(noise.delta[q]) + 1e-15);
      ASSERT_GE(change * noise.delta[q], 0.0);
      ASSERT_GE(out.samples()[q], 0.0);
      ASSERT_LE(out.samples()[q], 1.0);
    }
  }
}

TEST(ApplyAndClip, ShapeMismatch) {
  EXPECT_THROW(apply_and_clip(Image(4, 4), sign_noise(4, 5, 0.1, 1)), ShapeMismatch);
}

TEST(PerturbationToImage, MapsBudgetToUnitRange) {
  Perturbation p{1, 3, 0.2, PerturbationKind::kSignNoise, 1, {-0.2, 0.0, 0.2}};
  auto img = perturbation_to_image(p);
  EXPECT_EQ(img(0, 0), 0.0);
  EXPECT_EQ(img(0, 1), 0.5);
  EXPECT_EQ(img(0, 2), 1.0);
  auto flat = perturbation_to_image(sign_noise(2, 2, 0.0, 1));
  for (double v : flat.samples()) EXPECT_EQ(v, 0.5);
}

}  // namespace
}  // namespace mimdet
