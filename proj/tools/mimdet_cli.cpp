// mimdet: command-line front end.
//
// Exit codes: 0 success / clean verdict, 2 adversarial verdict, 1 error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "mimdet/mimdet.hpp"

namespace fs = std::filesystem;
using namespace mimdet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAdversarial = 2;

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string read_text(const fs::path& path) {
  auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

Calibration load_calibration(const fs::path& path, int k) {
  auto c = calibration_from_json(read_text(path));
  if (c.order != k) {
    throw InvalidArgument("calibration was made for k=" + std::to_string(c.order) + ", not k=" + std::to_string(k));
  }
  return c;
}

struct DetectArgs {
  std::string image;
  int order = 2;
  std::string calibration;
  std::optional<double> tau;
};

int run_detect(const DetectArgs& a) {
  DetectorConfig config{a.order, a.tau};
  if (!a.calibration.empty()) config.threshold = load_calibration(a.calibration, a.order).threshold;
  config.validate();
  const auto report = statistic_t(load_grayscale(a.image), config);
  std::cout << report_to_json(report, 2) << "\n";
  return report.verdict == Verdict::kAdversarial ? kExitAdversarial : kExitOk;
}

struct CalibrateArgs {
  std::string dir;
  int order = 2;
  double alpha = 0.05;
  std::string out;
};

int run_calibrate(const CalibrateArgs& a) {
  require_supported_order(a.order);
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw InvalidArgument("--alpha must lie strictly between 0 and 1");
  const auto files = list_image_files(a.dir);
  if (files.size() < kMinCalibrationSamples) {
    throw InvalidArgument("calibration needs at least " + std::to_string(kMinCalibrationSamples) +
                          " images, found " + std::to_string(files.size()) + " in " + a.dir);
  }
  std::vector<Image> images;
  images.reserve(files.size());
  for (const auto& f : files) images.push_back(load_grayscale(f));
  std::vector<double> ts;
  for (const auto& r : statistic_batch(images, a.order)) ts.push_back(r.statistic);
  const auto c = calibrate(ts, a.alpha, a.order);
  write_text(a.out, calibration_to_json(c) + "\n");
  char buf[128];
  std::snprintf(buf, sizeof(buf), "tau=%.17g n=%zu\n", c.threshold, c.statistics.size());
  std::cout << buf;
  return kExitOk;
}

struct TableArgs {
  std::string image;
  double eps = kCanonicalEpsilon;
  std::vector<std::uint64_t> seeds{std::begin(kDefaultSeeds), std::end(kDefaultSeeds)};
  std::string out;
  std::string json;
};

int run_table(const TableArgs& a) {
  if (!(a.eps >= 0.0) || !std::isfinite(a.eps)) throw InvalidArgument("--eps must be finite and >= 0");
  const Image img = prepare_table_image(load_raster(a.image));
  const auto rows = reproduce_table1(img, a.eps, a.seeds);
  const std::string csv = table1_csv(rows);
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    write_text(a.out, csv);
  }
  if (!a.json.empty()) write_text(a.json, table1_json(rows));
  return kExitOk;
}

struct GradmapArgs {
  std::string image;
  int order = 2;
  std::string prefix;
  std::uint64_t seed = 1;
  double eps = kCanonicalEpsilon;
  bool save_perturbation = false;
};

int run_gradmap(const GradmapArgs& a) {
  const Image clean = load_grayscale(a.image);
  require_image_fits_order(clean, a.order);
  const auto delta = sign_noise(clean.height(), clean.width(), a.eps, a.seed);
  const Image adv = apply_and_clip(clean, delta);
  const auto mc = gradient_magnitude_map(clean, a.order);
  const auto ma = gradient_magnitude_map(adv, a.order);
  const auto nc = normalize_map(mc);
  const auto na = normalize_map(ma);
  const auto ex = excess_map(mc, ma);

  const std::string pfx = a.prefix;
  save_pgm(pfx + "_clean.pgm", nc.image);
  save_pgm(pfx + "_adv.pgm", na.image);
  save_pgm(pfx + "_excess.pgm", ex.image);
  if (a.save_perturbation) save_pgm(pfx + "_perturbation.pgm", perturbation_to_image(delta));

  double mean_excess = 0.0;
  for (std::size_t q = 0; q < mc.magnitude.size(); ++q) mean_excess += ma.magnitude[q] - mc.magnitude[q];
  mean_excess /= static_cast<double>(mc.magnitude.size());

  nlohmann::ordered_json meta;
  meta["k"] = a.order;
  meta["eps"] = a.eps;
  meta["seed"] = a.seed;
  meta["height"] = clean.height();
  meta["width"] = clean.width();
  meta["clean"] = {{"file", pfx + "_clean.pgm"}, {"low", nc.low}, {"high", nc.high}};
  meta["adv"] = {{"file", pfx + "_adv.pgm"}, {"low", na.low}, {"high", na.high}};
  meta["excess"] = {{"file", pfx + "_excess.pgm"}, {"low", ex.low}, {"high", ex.high}, {"mean", mean_excess}};
  write_text(pfx + "_meta.json", meta.dump(2) + "\n");
  return kExitOk;
}

struct EvalArgs {
  std::string clean;
  std::string adv;
  int order = 2;
  std::string calibration;
  std::optional<double> tau;
  std::string out;
};

std::vector<ScoredSample> score_dir(const std::string& dir, SampleLabel label, int k) {
  const auto files = list_image_files(dir);
  if (files.empty()) throw InvalidArgument("no images in " + dir);
  std::vector<Image> images;
  for (const auto& f : files) images.push_back(load_grayscale(f));
  const auto reports = statistic_batch(images, k);
  std::vector<ScoredSample> out;
  for (std::size_t q = 0; q < files.size(); ++q) {
    out.push_back({files[q].filename().string(), label, reports[q].statistic});
  }
  return out;
}

int run_eval(const EvalArgs& a) {
  require_supported_order(a.order);
  std::optional<double> tau = a.tau;
  if (!a.calibration.empty()) tau = load_calibration(a.calibration, a.order).threshold;
  auto scores = score_dir(a.clean, SampleLabel::kClean, a.order);
  auto adv = score_dir(a.adv, SampleLabel::kPerturbed, a.order);
  scores.insert(scores.end(), adv.begin(), adv.end());
  const std::string text = eval_to_json(evaluate(std::move(scores), a.order, tau)) + "\n";
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text(a.out, text);
  }
  return kExitOk;
}

struct DumpArgs {
  int order = 2;
  std::size_t width = 0;
  std::size_t height = 0;
  bool weights = false;
  std::string out;
};

int run_dump(const DumpArgs& a) {
  std::ostringstream os;
  if (a.weights) {
    const auto w = build_weights_2d(a.order, a.width, a.height);
    char buf[64];
    for (double v : w.values) {
      std::snprintf(buf, sizeof(buf), "%.17g\n", v);
      os << buf;
    }
  } else {
    write_coo(os, build_grad_2d(a.order, a.width, a.height).matrix());
  }
  if (a.out.empty()) {
    std::cout << os.str();
  } else {
    write_text(a.out, os.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mimetic gradient-energy adversarial detector"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mimdet 0.1.0");

  const auto orders = CLI::IsMember({2, 4, 6, 8});

  DetectArgs detect;
  auto* cmd_detect = app.add_subcommand("detect", "Compute T for one image and classify it");
  cmd_detect->add_option("--image", detect.image, "PNG or PGM/PPM image")->required();
  cmd_detect->add_option("--order", detect.order, "Mimetic order k")->check(orders);
  auto* cal_opt = cmd_detect->add_option("--calibration", detect.calibration, "Calibration JSON supplying tau");
  cmd_detect->add_option("--tau", detect.tau, "Explicit threshold")->excludes(cal_opt);

  CalibrateArgs cal;
  auto* cmd_cal = app.add_subcommand("calibrate", "Set tau from a directory of clean images");
  cmd_cal->add_option("--dir", cal.dir, "Directory of clean images")->required();
  cmd_cal->add_option("--order", cal.order, "Mimetic order k")->check(orders);
  cmd_cal->add_option("--alpha", cal.alpha, "Target false-positive rate");
  cmd_cal->add_option("--out", cal.out, "Output calibration JSON")->required();

  TableArgs table;
  auto* cmd_table = app.add_subcommand("reproduce-table1", "Clean / sign-noise / smooth-control T at every order");
  cmd_table->add_option("--image", table.image, "Source image")->required();
  cmd_table->add_option("--eps", table.eps, "Perturbation budget (default 16/255)");
  cmd_table->add_option("--seeds", table.seeds, "Comma-separated seeds")->delimiter(',');
  cmd_table->add_option("--out", table.out, "CSV output (stdout if omitted)");
  cmd_table->add_option("--json", table.json, "Also write full-precision JSON here");

  GradmapArgs gm;
  auto* cmd_gm = app.add_subcommand("gradmap", "Write gradient-magnitude maps for clean and perturbed image");
  cmd_gm->add_option("--image", gm.image, "Source image")->required();
  cmd_gm->add_option("--order", gm.order, "Mimetic order k")->check(orders);
  cmd_gm->add_option("--out-prefix", gm.prefix, "Prefix for output files")->required();
  cmd_gm->add_option("--seed", gm.seed, "Sign-noise seed");
  cmd_gm->add_option("--eps", gm.eps, "Perturbation budget (default 16/255)")->check(CLI::NonNegativeNumber);
  cmd_gm->add_flag("--save-perturbation", gm.save_perturbation, "Also write PFX_perturbation.pgm");

  EvalArgs ev;
  auto* cmd_eval = app.add_subcommand("eval", "ROC AUC of T on clean versus perturbed directories");
  cmd_eval->add_option("--clean", ev.clean, "Directory of clean images")->required();
  cmd_eval->add_option("--adv", ev.adv, "Directory of perturbed images")->required();
  cmd_eval->add_option("--order", ev.order, "Mimetic order k")->check(orders);
  auto* ev_cal = cmd_eval->add_option("--calibration", ev.calibration, "Calibration JSON supplying tau");
  cmd_eval->add_option("--tau", ev.tau, "Explicit threshold")->excludes(ev_cal);
  cmd_eval->add_option("--out", ev.out, "JSON output (stdout if omitted)");

  DumpArgs dump;
  auto* cmd_dump = app.add_subcommand("dump-operator", "Print the 2D gradient as COO triplets");
  cmd_dump->add_option("--order", dump.order, "Mimetic order k")->check(orders);
  cmd_dump->add_option("--width", dump.width, "Cells along x")->required();
  cmd_dump->add_option("--height", dump.height, "Cells along y")->required();
  cmd_dump->add_flag("--weights", dump.weights, "Print the diagonal weights instead");
  cmd_dump->add_option("--out", dump.out, "Output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*cmd_detect) return run_detect(detect);
    if (*cmd_cal) return run_calibrate(cal);
    if (*cmd_table) return run_table(table);
    if (*cmd_gm) return run_gradmap(gm);
    if (*cmd_eval) return run_eval(ev);
    if (*cmd_dump) return run_dump(dump);
  } catch (const std::exception& e) {
    std::cerr << "mimdet: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
