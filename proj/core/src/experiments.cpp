#include "mimdet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <nlohmann/json.hpp>

#include "mimdet/error.hpp"
#include "mimdet/perturb.hpp"

namespace mimdet {

Image prepare_table_image(const Raster& raster) {
  return resize(as_grayscale(raster), kTableImageSize, kTableImageSize);
}

double stable_mean(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("mean of an empty set");
  const double base = values.front();
  double acc = 0.0;
  for (double v : values) acc += v - base;
  return base + acc / static_cast<double>(values.size());
}

double sample_std(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mean = stable_mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

std::vector<Table1Row> reproduce_table1(const Image& image, double epsilon,
                                        std::span<const std::uint64_t> seeds, OperatorCache& cache) {
  if (seeds.empty()) throw InvalidArgument("at least one seed is required");
  const std::size_t h = image.height();
  const std::size_t w = image.width();

  std::vector<Image> adversarial;
  adversarial.reserve(seeds.size());
  for (std::uint64_t s : seeds) adversarial.push_back(apply_and_clip(image, sign_noise(h, w, epsilon, s)));
  const Image smooth = apply_and_clip(image, smooth_control(h, w, epsilon));

  std::vector<Table1Row> rows;
  for (int k : kSupportedOrders) {
    require_image_fits_order(image, k);
    const auto ops = cache.get(k, h, w);
    Table1Row row;
    row.order = k;
    row.seeds.assign(seeds.begin(), seeds.end());
    row.t_clean = statistic_t(image, *ops).statistic;
    std::vector<double> t_adv;
    for (const Image& a : adversarial) t_adv.push_back(statistic_t(a, *ops).statistic);
    row.t_adv_mean = stable_mean(t_adv);
    row.t_adv_std = sample_std(t_adv);
    row.t_low = statistic_t(smooth, *ops).statistic;
    row.ratio_adv = row.t_adv_mean / row.t_clean;
    row.ratio_low = row.t_low / row.t_clean;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string table1_csv(std::span<const Table1Row> rows) {
  std::string out = "k,t_clean,t_adv_mean,t_adv_std,t_low,ratio_adv,ratio_low\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g\n", r.order, r.t_clean, r.t_adv_mean,
                  r.t_adv_std, r.t_low, r.ratio_adv, r.ratio_low);
    out += buf;
  }
  return out;
}

std::string table1_json(std::span<const Table1Row> rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["k"] = r.order;
    j["t_clean"] = r.t_clean;
    j["t_adv_mean"] = r.t_adv_mean;
    j["t_adv_std"] = r.t_adv_std;
    j["t_low"] = r.t_low;
    j["ratio_adv"] = r.ratio_adv;
    j["ratio_low"] = r.ratio_low;
    j["seeds"] = r.seeds;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

double auc_rank(std::span<const double> clean, std::span<const double> perturbed) {
  if (clean.empty() || perturbed.empty()) throw InvalidArgument("AUC needs both classes");
  struct Item {
    double score;
    bool perturbed;
  };
  std::vector<Item> all;
  all.reserve(clean.size() + perturbed.size());
  for (double s : clean) all.push_back({s, false});
  for (double s : perturbed) all.push_back({s, true});
  std::sort(all.begin(), all.end(), [](const Item& a, const Item& b) { return a.score < b.score; });

  // Ranks are 1-based; tied blocks share their midrank.
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].score == all[i].score) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (all[t].perturbed) rank_sum += midrank;
    }
    i = j;
  }
  const auto np = static_cast<double>(perturbed.size());
  const auto nc = static_cast<double>(clean.size());
  const double u = rank_sum - np * (np + 1.0) / 2.0;
  return u / (nc * np);
}

std::vector<RocPoint> roc_curve(std::span<const double> clean, std::span<const double> perturbed) {
  if (clean.empty() || perturbed.empty()) throw InvalidArgument("ROC needs both classes");
  std::vector<double> c(clean.begin(), clean.end());
  std::vector<double> p(perturbed.begin(), perturbed.end());
  std::sort(c.begin(), c.end(), std::greater<>());
  std::sort(p.begin(), p.end(), std::greater<>());
  std::vector<double> thresholds(c);
  thresholds.insert(thresholds.end(), p.begin(), p.end());
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  std::vector<RocPoint> curve{{0.0, 0.0}};
  std::size_t fc = 0;
  std::size_t fp = 0;
  for (double t : thresholds) {
    while (fc < c.size() && c[fc] >= t) ++fc;
    while (fp < p.size() && p[fp] >= t) ++fp;
    curve.push_back({static_cast<double>(fc) / static_cast<double>(c.size()),
                     static_cast<double>(fp) / static_cast<double>(p.size())});
  }
  return curve;
}

double trapezoid_auc(std::span<const RocPoint> curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    area += (curve[i].fpr - curve[i - 1].fpr) * 0.5 * (curve[i].tpr + curve[i - 1].tpr);
  }
  return area;
}

EvalSummary evaluate(std::vector<ScoredSample> scores, int k, std::optional<double> threshold) {
  std::vector<double> clean;
  std::vector<double> perturbed;
  for (const auto& s : scores) (s.label == SampleLabel::kClean ? clean : perturbed).push_back(s.statistic);
  if (clean.empty() || perturbed.empty()) throw InvalidArgument("evaluation needs clean and perturbed samples");

  EvalSummary out;
  out.order = k;
  out.scores = std::move(scores);
  out.auc = auc_rank(clean, perturbed);
  if (threshold) {
    auto flagged = [&](const std::vector<double>& v) {
      const auto n = std::count_if(v.begin(), v.end(), [&](double t) { return classify(t, *threshold) == Verdict::kAdversarial; });
      return static_cast<double>(n) / static_cast<double>(v.size());
    };
    out.threshold = threshold;
    out.fpr = flagged(clean);
    out.tpr = flagged(perturbed);
  }
  return out;
}

std::string eval_to_json(const EvalSummary& summary, int indent) {
  nlohmann::ordered_json j;
  j["k"] = summary.order;
  j["auc"] = summary.auc;
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  j["tau"] = opt(summary.threshold);
  j["fpr"] = opt(summary.fpr);
  j["tpr"] = opt(summary.tpr);
  nlohmann::ordered_json scores = nlohmann::ordered_json::array();
  for (const auto& s : summary.scores) {
    scores.push_back({{"name", s.name},
                      {"label", s.label == SampleLabel::kClean ? "clean" : "perturbed"},
                      {"t", s.statistic}});
  }
  j["scores"] = std::move(scores);
  return j.dump(indent);
}

std::vector<std::filesystem::path> list_image_files(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw IoError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (ext == ".png" || ext == ".pgm" || ext == ".ppm") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  return out;
}

}  // namespace mimdet
