// Copyright 2026 The bzcontour Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front end for the bzcontour library.
//
//   bzcontour encode masks/ --out contours/
//   bzcontour decode disc.json --width 512 --height 512 --out disc.pgm
//   bzcontour eval --pred contours/ --gt masks/ --out metrics.csv
//   bzcontour fidelity --synthetic --count 200 --out fidelity.csv
//   bzcontour sensitivity --count 100 --deltas 2,5,10,15,20 --trials 20
//   bzcontour gradcheck --seed 0
//
// Exit status is 0 when every item succeeded, 1 when any item failed and
// 2 for usage errors.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bzcontour/bzcontour.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitItemFailure = 1;
constexpr int kExitUsage = 2;

struct MaskDeleter {
  void operator()(bzc_mask* m) const { bzc_mask_free(m); }
};
struct ContourDeleter {
  void operator()(bzc_contour* c) const { bzc_contour_free(c); }
};
using MaskPtr = std::unique_ptr<bzc_mask, MaskDeleter>;
using ContourPtr = std::unique_ptr<bzc_contour, ContourDeleter>;

struct CallError : std::runtime_error {
  CallError(bzc_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  bzc_status status;
};

void check(bzc_status status) {
  if (status != BZC_OK) {
    throw CallError(status, std::string(bzc_status_string(status)) + ": " + bzc_last_error());
  }
}

MaskPtr read_mask(const std::string& path, int threshold) {
  bzc_mask* m = nullptr;
  check(bzc_mask_read_file(path.c_str(), threshold, &m));
  return MaskPtr(m);
}

ContourPtr read_contour(const std::string& path) {
  bzc_contour* c = nullptr;
  check(bzc_contour_read_file(path.c_str(), &c));
  return ContourPtr(c);
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Temp file plus rename so readers never see a partial file. "-" is stdout.
void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw CLI::ValidationError("bad list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("empty list '" + text + "'");
  return out;
}

// Files are taken as given; directories contribute their entries with a
// matching extension in name order.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs,
                                    const std::vector<std::string>& exts) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (!e.is_regular_file()) continue;
        const auto ext = e.path().extension().string();
        if (std::find(exts.begin(), exts.end(), ext) != exts.end()) found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

// Same contract as the library pool: results land by index, so the output
// never depends on the job count.
void run_parallel(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

struct Common {
  int degree = 5;
  int samples = 128;
  int smooth_radius = 0;
  std::uint64_t seed = 0;
  int jobs = 1;
  int threshold = 127;
  std::string out = "-";
};

struct CorpusOptions {
  std::vector<std::string> inputs;
  int count = 200;
  std::string kind = "blob";
  int width = 256;
  int height = 256;
};

struct Corpus {
  std::vector<std::string> ids;
  std::vector<MaskPtr> masks;
  int failures = 0;

  std::vector<const bzc_mask*> handles() const {
    std::vector<const bzc_mask*> h;
    for (const auto& m : masks) h.push_back(m.get());
    return h;
  }
};

Corpus generate(const std::string& kind, int count, int width, int height, std::uint64_t seed) {
  const int blobs = kind == "blob" ? count : 0;
  const int ellipses = kind == "ellipse" ? count : 0;
  const int dumbbells = kind == "dumbbell" ? count : 0;
  if (blobs + ellipses + dumbbells != count) {
    throw CLI::ValidationError("unknown --kind '" + kind + "'");
  }
  std::vector<bzc_mask*> raw(static_cast<std::size_t>(count), nullptr);
  std::size_t n = 0;
  check(bzc_generate_corpus(blobs, ellipses, dumbbells, width, height, seed, raw.data(), raw.size(), &n));
  Corpus c;
  for (std::size_t i = 0; i < n; ++i) {
    char id[64];
    std::snprintf(id, sizeof id, "%s_%04zu", kind.c_str(), i);
    c.ids.emplace_back(id);
    c.masks.emplace_back(raw[i]);
  }
  return c;
}

Corpus load_corpus(const CorpusOptions& opt, const Common& common) {
  if (opt.inputs.empty()) return generate(opt.kind, opt.count, opt.width, opt.height, common.seed);
  Corpus c;
  for (const auto& path : expand_inputs(opt.inputs, {".pgm"})) {
    try {
      c.masks.push_back(read_mask(path.string(), common.threshold));
      c.ids.push_back(path.stem().string());
    } catch (const CallError& e) {
      std::cerr << path.string() << ": " << e.what() << "\n";
      ++c.failures;
    }
  }
  return c;
}

void add_common(CLI::App* app, Common& c, bool with_degree = true) {
  if (with_degree) {
    app->add_option("--degree", c.degree, "Bezier degree per arc")->check(CLI::Range(1, 20));
    app->add_option("--smooth-radius", c.smooth_radius, "Morphological smoothing radius")
        ->check(CLI::NonNegativeNumber);
  }
  app->add_option("--samples", c.samples, "Samples per segment when decoding")->check(CLI::Range(2, 1 << 20));
  app->add_option("--seed", c.seed, "Base random seed");
  app->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--threshold", c.threshold, "PGM foreground threshold")->check(CLI::Range(0, 255));
  app->add_option("--out", c.out, "Output path ('-' for stdout)");
}

void add_corpus(CLI::App* app, CorpusOptions& c, int default_count) {
  c.count = default_count;
  app->add_option("inputs", c.inputs, "Mask files or directories (synthetic corpus if omitted)");
  app->add_flag("--synthetic", "Use a synthetic corpus (the default without inputs)");
  app->add_option("--count", c.count, "Synthetic shapes")->check(CLI::PositiveNumber);
  app->add_option("--kind", c.kind, "Synthetic shape kind")->check(CLI::IsMember({"blob", "ellipse", "dumbbell"}));
  app->add_option("--width", c.width, "Synthetic frame width")->check(CLI::PositiveNumber);
  app->add_option("--height", c.height, "Synthetic frame height")->check(CLI::PositiveNumber);
}

std::string metrics_row(const std::string& id, const bzc_metrics& m) {
  return id + "," + fmt(m.iou) + "," + fmt(m.hausdorff) + "," + fmt(m.mcc) + "," + fmt(m.fp_rate) +
         "," + fmt(m.fn_rate) + "\n";
}

constexpr const char* kMetricsHeader = "image_id,iou,hausdorff,mcc,fp,fn\n";

std::string summary_row(const bzc_summary& s) {
  return "mean," + fmt(s.miou) + "," + fmt(s.hausdorff) + "," + fmt(s.mcc) + "," + fmt(s.fp_rate) +
         "," + fmt(s.fn_rate) + "\n";
}

void print_summary(const char* what, const bzc_summary& s) {
  std::cerr << what << ": n=" << s.count << " miou=" << fmt(s.miou) << " siou=" << fmt(s.siou)
            << " hausdorff=" << fmt(s.hausdorff) << " mcc=" << fmt(s.mcc) << "\n";
}

// ---- encode ---------------------------------------------------------------

int cmd_encode(const std::vector<std::string>& inputs, const Common& c, const std::string& report) {
  const auto files = expand_inputs(inputs, {".pgm"});
  if (files.empty()) throw CLI::ValidationError("encode: no input masks");
  if (c.out == "-") throw CLI::ValidationError("encode: --out must name a directory");
  fs::create_directories(c.out);
  struct Item {
    std::optional<bzc_fit_report> fit;
    std::string error;
  };
  std::vector<Item> items(files.size());
  run_parallel(files.size(), c.jobs, [&](std::size_t i) {
    try {
      MaskPtr mask = read_mask(files[i].string(), c.threshold);
      bzc_contour* raw = nullptr;
      bzc_fit_report fit{};
      check(bzc_encode_mask(mask.get(), c.degree, c.smooth_radius, &raw, &fit));
      ContourPtr contour(raw);
      const fs::path target = fs::path(c.out) / (files[i].stem().string() + ".json");
      check(bzc_contour_write_file(contour.get(), target.string().c_str()));
      items[i].fit = fit;
    } catch (const std::exception& e) {
      items[i].error = e.what();
    }
  });

  std::string csv = "image_id,arc,points,residual\n";
  int failures = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string id = files[i].stem().string();
    if (!items[i].fit) {
      std::cerr << files[i].string() << ": " << items[i].error << "\n";
      ++failures;
      continue;
    }
    for (int k = 0; k < 4; ++k) {
      csv += id + "," + std::to_string(k) + "," + std::to_string(items[i].fit->arc_length[k]) + "," +
             fmt(items[i].fit->residual[k]) + "\n";
    }
  }
  write_text(report.empty() ? (fs::path(c.out) / "fit_report.csv").string() : report, csv);
  if (failures > 0) std::cerr << failures << " of " << files.size() << " inputs failed\n";
  return failures > 0 ? kExitItemFailure : 0;
}

// ---- decode / render -------------------------------------------------------

int cmd_decode(const std::string& input, int width, int height, const Common& c) {
  if (c.out == "-") throw CLI::ValidationError("decode: --out must name a file");
  ContourPtr contour = read_contour(input);
  const int w = width > 0 ? width : bzc_contour_width(contour.get());
  const int h = height > 0 ? height : bzc_contour_height(contour.get());
  bzc_mask* raw = nullptr;
  check(bzc_contour_render(contour.get(), w, h, c.samples, &raw));
  MaskPtr mask(raw);
  check(bzc_mask_write_file(mask.get(), c.out.c_str()));
  return 0;
}

int cmd_render(const std::string& input, const std::string& base, const Common& c) {
  if (c.out == "-") throw CLI::ValidationError("render: --out must name a file");
  ContourPtr contour = read_contour(input);
  MaskPtr mask;
  if (!base.empty()) mask = read_mask(base, c.threshold);
  check(bzc_render_overlay_file(mask.get(), contour.get(), c.samples, c.out.c_str()));
  return 0;
}

// ---- eval ------------------------------------------------------------------

struct Pair {
  std::string id;
  fs::path pred;
  fs::path gt;
};

// Manifest lines are "pred,gt"; relative paths resolve against the manifest.
std::vector<Pair> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot read manifest " + path);
  const fs::path dir = fs::path(path).parent_path();
  std::vector<Pair> pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("manifest line without comma: " + line);
    fs::path pred = line.substr(0, comma);
    fs::path gt = line.substr(comma + 1);
    if (pred.is_relative()) pred = dir / pred;
    if (gt.is_relative()) gt = dir / gt;
    pairs.push_back({pred.stem().string(), pred, gt});
  }
  return pairs;
}

std::vector<Pair> pair_by_stem(const std::vector<std::string>& pred, const std::vector<std::string>& gt,
                               int& unmatched) {
  std::map<std::string, fs::path> gts;
  for (const auto& p : expand_inputs(gt, {".pgm"})) gts[p.stem().string()] = p;
  std::vector<Pair> pairs;
  for (const auto& p : expand_inputs(pred, {".pgm", ".json"})) {
    const auto it = gts.find(p.stem().string());
    if (it == gts.end()) {
      std::cerr << p.string() << ": no ground truth with stem '" << p.stem().string() << "', skipped\n";
      ++unmatched;
      continue;
    }
    pairs.push_back({it->first, p, it->second});
  }
  return pairs;
}

int cmd_eval(const std::vector<std::string>& pred, const std::vector<std::string>& gt,
             const std::string& manifest, const Common& c) {
  int unmatched = 0;
  const std::vector<Pair> pairs = manifest.empty() ? pair_by_stem(pred, gt, unmatched) : read_manifest(manifest);
  if (pairs.empty()) {
    std::cerr << "eval: no matched pairs\n";
    return kExitItemFailure;
  }
  std::vector<std::optional<bzc_metrics>> results(pairs.size());
  std::vector<std::string> errors(pairs.size());
  run_parallel(pairs.size(), c.jobs, [&](std::size_t i) {
    try {
      MaskPtr truth = read_mask(pairs[i].gt.string(), c.threshold);
      bzc_metrics m{};
      if (pairs[i].pred.extension() == ".json") {
        ContourPtr contour = read_contour(pairs[i].pred.string());
        check(bzc_evaluate_contour(contour.get(), truth.get(), c.samples, &m));
      } else {
        MaskPtr mask = read_mask(pairs[i].pred.string(), c.threshold);
        check(bzc_evaluate_masks(mask.get(), truth.get(), &m));
      }
      results[i] = m;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  std::string csv = kMetricsHeader;
  std::vector<bzc_metrics> ok;
  int failures = unmatched;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!results[i]) {
      std::cerr << pairs[i].pred.string() << ": " << errors[i] << "\n";
      ++failures;
      continue;
    }
    csv += metrics_row(pairs[i].id, *results[i]);
    ok.push_back(*results[i]);
  }
  if (!ok.empty()) {
    bzc_summary s{};
    check(bzc_summarize(ok.data(), ok.size(), &s));
    csv += summary_row(s);
    print_summary("eval", s);
  }
  write_text(c.out, csv);
  return failures > 0 ? kExitItemFailure : 0;
}

// ---- experiments ------------------------------------------------------------

struct FidelityRun {
  std::vector<bzc_fidelity_item> items;
  bzc_summary summary{};
  int failures = 0;
  double mean_residual = 0.0;
};

FidelityRun run_fidelity(const Corpus& corpus, int degree, const Common& c) {
  FidelityRun run;
  const auto handles = corpus.handles();
  run.items.resize(handles.size());
  check(bzc_fidelity_study(handles.data(), handles.size(), degree, c.samples, c.smooth_radius, c.jobs,
                           run.items.data(), &run.summary));
  double sum = 0.0;
  int arcs = 0;
  for (std::size_t i = 0; i < run.items.size(); ++i) {
    const auto& item = run.items[i];
    if (!item.ok) {
      std::cerr << corpus.ids[i] << ": " << bzc_status_string(item.status) << "\n";
      ++run.failures;
      continue;
    }
    for (double r : item.fit.residual) sum += r;
    arcs += 4;
  }
  run.mean_residual = arcs > 0 ? sum / arcs : 0.0;
  return run;
}

int cmd_fidelity(const CorpusOptions& opt, const Common& c) {
  const Corpus corpus = load_corpus(opt, c);
  if (corpus.masks.empty()) {
    std::cerr << "fidelity: no masks\n";
    return kExitItemFailure;
  }
  const FidelityRun run = run_fidelity(corpus, c.degree, c);
  std::string csv = kMetricsHeader;
  for (std::size_t i = 0; i < run.items.size(); ++i) {
    if (run.items[i].ok) csv += metrics_row(corpus.ids[i], run.items[i].metrics);
  }
  if (run.summary.count > 0) {
    csv += summary_row(run.summary);
    print_summary("fidelity", run.summary);
  }
  write_text(c.out, csv);
  return corpus.failures + run.failures > 0 ? kExitItemFailure : 0;
}

int cmd_degree_sweep(const CorpusOptions& opt, const std::string& degrees, const Common& c) {
  const Corpus corpus = load_corpus(opt, c);
  if (corpus.masks.empty()) {
    std::cerr << "degree-sweep: no masks\n";
    return kExitItemFailure;
  }
  int failures = corpus.failures;
  std::string csv = "degree,miou,siou,hausdorff,mcc,mean_residual,images\n";
  for (double d : parse_list(degrees)) {
    const int degree = static_cast<int>(d);
    if (degree != d || degree < 1 || degree > 20) throw CLI::ValidationError("degrees must be integers in [1, 20]");
    const FidelityRun run = run_fidelity(corpus, degree, c);
    failures += run.failures;
    csv += std::to_string(degree) + "," + fmt(run.summary.miou) + "," + fmt(run.summary.siou) + "," +
           fmt(run.summary.hausdorff) + "," + fmt(run.summary.mcc) + "," + fmt(run.mean_residual) + "," +
           std::to_string(run.summary.count) + "\n";
  }
  write_text(c.out, csv);
  return failures > 0 ? kExitItemFailure : 0;
}

int cmd_sensitivity(const CorpusOptions& opt, const std::string& deltas_text, int trials, const Common& c) {
  const Corpus corpus = load_corpus(opt, c);
  if (corpus.masks.empty()) {
    std::cerr << "sensitivity: no masks\n";
    return kExitItemFailure;
  }
  const std::vector<double> deltas = parse_list(deltas_text);
  std::vector<double> bezier(deltas.size());
  std::vector<double> polygon(deltas.size());
  std::size_t used = 0;
  const auto handles = corpus.handles();
  check(bzc_sensitivity_sweep(handles.data(), handles.size(), deltas.data(), deltas.size(), trials, c.seed,
                              c.degree, c.samples, c.smooth_radius, c.jobs, bezier.data(), polygon.data(),
                              &used));
  std::string csv = "delta,representation,miou,trials\n";
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    csv += fmt(deltas[d]) + ",bezier," + fmt(bezier[d]) + "," + std::to_string(trials) + "\n";
    csv += fmt(deltas[d]) + ",polygon," + fmt(polygon[d]) + "," + std::to_string(trials) + "\n";
  }
  write_text(c.out, csv);
  const std::size_t skipped = handles.size() - used;
  if (skipped > 0) std::cerr << skipped << " masks could not be encoded and were skipped\n";
  return corpus.failures > 0 || skipped > 0 ? kExitItemFailure : 0;
}

int cmd_gen_synthetic(const CorpusOptions& opt, const Common& c) {
  if (c.out == "-") throw CLI::ValidationError("gen-synthetic: --out must name a directory");
  const Corpus corpus = generate(opt.kind, opt.count, opt.width, opt.height, c.seed);
  fs::create_directories(c.out);
  for (std::size_t i = 0; i < corpus.masks.size(); ++i) {
    const fs::path target = fs::path(c.out) / (corpus.ids[i] + ".pgm");
    check(bzc_mask_write_file(corpus.masks[i].get(), target.string().c_str()));
  }
  return 0;
}

constexpr double kGradientTolerance = 1e-5;

int cmd_gradcheck(int pairs, int n_samples, const Common& c) {
  double err = 0.0;
  check(bzc_gradient_check(c.seed, pairs, n_samples, &err));
  const bool pass = err < kGradientTolerance;
  write_text(c.out, "pairs,n_loss_samples,max_relative_error,tolerance,result\n" + std::to_string(pairs) + "," +
                        std::to_string(n_samples) + "," + fmt(err) + "," + fmt(kGradientTolerance) + "," +
                        (pass ? "pass" : "fail") + "\n");
  return pass ? 0 : kExitItemFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Encode binary masks as four-arc Bezier contours and evaluate them"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bzc_version()));

  Common common;
  CorpusOptions fidelity_corpus;
  CorpusOptions sensitivity_corpus;
  CorpusOptions sweep_corpus;
  CorpusOptions gen_corpus;
  std::vector<std::string> inputs;
  std::string input;
  std::string report;
  std::string base;
  std::string manifest;
  std::vector<std::string> gt;
  std::string deltas = "2,5,10,15,20";
  std::string degrees = "3,4,5,6,7,8,9";
  int trials = 20;
  int width = 0;
  int height = 0;
  int pairs = 100;
  int n_loss_samples = 72;
  std::function<int()> action;

  auto* encode = app.add_subcommand("encode", "Fit contours to PGM masks, one JSON per mask");
  encode->add_option("inputs", inputs, "Mask files or directories")->required();
  encode->add_option("--report", report, "Fit report CSV (default <out>/fit_report.csv)");
  add_common(encode, common);
  encode->callback([&] { action = [&] { return cmd_encode(inputs, common, report); }; });

  auto* decode = app.add_subcommand("decode", "Rasterize a contour JSON, optionally at a new resolution");
  decode->add_option("input", input, "Contour JSON")->required()->check(CLI::ExistingFile);
  decode->add_option("--width", width, "Output width (default: source frame)")->check(CLI::PositiveNumber);
  decode->add_option("--height", height, "Output height (default: source frame)")->check(CLI::PositiveNumber);
  add_common(decode, common, false);
  decode->callback([&] { action = [&] { return cmd_decode(input, width, height, common); }; });

  auto* render = app.add_subcommand("render", "Draw outline and control points over a mask as a grey PGM");
  render->add_option("input", input, "Contour JSON")->required()->check(CLI::ExistingFile);
  render->add_option("--mask", base, "Background mask PGM")->check(CLI::ExistingFile);
  add_common(render, common, false);
  render->callback([&] { action = [&] { return cmd_render(input, base, common); }; });

  auto* eval = app.add_subcommand("eval", "Score predicted masks or contours against ground truth");
  eval->add_option("--pred", inputs, "Predicted masks/contours, files or directories");
  eval->add_option("--gt", gt, "Ground-truth masks, files or directories");
  eval->add_option("--manifest", manifest, "CSV of pred,gt paths instead of stem pairing")
      ->check(CLI::ExistingFile);
  add_common(eval, common, false);
  eval->callback([&] {
    if (manifest.empty() && (inputs.empty() || gt.empty())) {
      throw CLI::ValidationError("eval needs --pred and --gt, or --manifest");
    }
    action = [&] { return cmd_eval(inputs, gt, manifest, common); };
  });

  auto* fidelity = app.add_subcommand("fidelity", "Encode, decode and score a corpus");
  add_corpus(fidelity, fidelity_corpus, 200);
  add_common(fidelity, common);
  fidelity->callback([&] { action = [&] { return cmd_fidelity(fidelity_corpus, common); }; });

  auto* sensitivity = app.add_subcommand("sensitivity", "Noise sweep: Bezier contour vs polygon baseline");
  add_corpus(sensitivity, sensitivity_corpus, 100);
  sensitivity->add_option("--deltas", deltas, "Noise standard deviations in pixels, comma separated");
  sensitivity->add_option("--trials", trials, "Trials per image and noise level")->check(CLI::PositiveNumber);
  add_common(sensitivity, common);
  sensitivity->callback([&] { action = [&] { return cmd_sensitivity(sensitivity_corpus, deltas, trials, common); }; });

  auto* sweep = app.add_subcommand("degree-sweep", "Fidelity and fit residual per degree");
  add_corpus(sweep, sweep_corpus, 200);
  sweep->add_option("--degrees", degrees, "Degrees, comma separated");
  add_common(sweep, common);
  sweep->callback([&] { action = [&] { return cmd_degree_sweep(sweep_corpus, degrees, common); }; });

  auto* gen = app.add_subcommand("gen-synthetic", "Write a synthetic mask corpus as PGM files");
  add_corpus(gen, gen_corpus, 10);
  add_common(gen, common, false);
  gen->callback([&] { action = [&] { return cmd_gen_synthetic(gen_corpus, common); }; });

  auto* grad = app.add_subcommand("gradcheck", "Compare loss gradients with finite differences");
  grad->add_option("--pairs", pairs, "Random contour pairs")->check(CLI::PositiveNumber);
  grad->add_option("--n-loss-samples", n_loss_samples, "Sampled points per contour")->check(CLI::PositiveNumber);
  add_common(grad, common, false);
  grad->callback([&] { action = [&] { return cmd_gradcheck(pairs, n_loss_samples, common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  try {
    return action();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitItemFailure;
  }
}
