// Copyright 2026 The HDR-FUNQUE Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "funque/bench.h"
#include "funque/csv.h"
#include "funque/errors.h"
#include "funque/features.h"
#include "funque/frameio.h"
#include "funque/fusion.h"
#include "funque/parallel.h"
#include "funque/synth.h"
#include "funque/transfer.h"
#include "funque/unified.h"
#include "json.hpp"

namespace funque {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct SharedFlags {
  uint64_t seed = 0;
  int threads = 1;
  std::string geometry = "1.5:2160";
};

// Format of inputs that are not self-describing (raw .yuv).
struct RawFlags {
  int width = 0;
  int height = 0;
  int bit_depth = 10;
  std::string chroma = "420";
};

ViewingGeometry ParseGeometry(const std::string& text) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw DomainError("geometry must be D_H:HEIGHT_PX, got '" + text + "'");
  }
  ViewingGeometry g;
  g.distance_to_height = ParseNumber(text.substr(0, colon), "geometry D/H");
  const double px = ParseNumber(text.substr(colon + 1), "geometry height");
  if (px != std::floor(px)) throw DomainError("display height must be whole");
  g.display_height_px = static_cast<int>(px);
  g.Validate();
  return g;
}

UnifiedConfig MakeConfig(const SharedFlags& flags) {
  UnifiedConfig cfg;
  cfg.geometry = ParseGeometry(flags.geometry);
  return cfg;
}

std::unique_ptr<FrameSource> OpenInput(const fs::path& path,
                                       const RawFlags& raw) {
  if (!fs::is_regular_file(path)) {
    throw Error("no such video file: " + path.string());
  }
  if (path.extension() == ".y4m") return OpenVideo(path);
  if (raw.width <= 0 || raw.height <= 0) {
    throw UnsupportedFormatError("raw input " + path.string() +
                                 " needs --width and --height");
  }
  VideoFormat fmt;
  fmt.width = raw.width;
  fmt.height = raw.height;
  fmt.bit_depth = raw.bit_depth;
  if (raw.chroma == "420") {
    fmt.subsampling = ChromaSubsampling::k420;
  } else if (raw.chroma == "444") {
    fmt.subsampling = ChromaSubsampling::k444;
  } else {
    throw UnsupportedFormatError("chroma must be 420 or 444");
  }
  return OpenVideo(path, fmt);
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a sibling temporary so failures never leave a partial file.
void WriteFileAtomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    out.close();
    if (!out) {
      fs::remove(tmp);
      throw Error("cannot write " + path.string());
    }
  }
  fs::rename(tmp, path);
}

void Emit(const std::string& path, const std::string& content,
          std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    WriteFileAtomic(path, content);
  }
}

std::string Timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

struct ResolvedModel {
  ModelSpec spec;
  std::optional<TrainedModel> trained;
};

ResolvedModel ResolveModel(const std::string& name) {
  ResolvedModel m;
  if (fs::is_regular_file(name)) {
    m.trained = LoadModel(ReadText(name));
    m.spec = m.trained->spec;
  } else if (IsBuiltinModel(name)) {
    m.spec = BuiltinModelSpec(name);
  } else {
    throw RegistryError("unknown model '" + name + "'");
  }
  return m;
}

std::vector<double> ExtractMeans(const fs::path& ref, const fs::path& test,
                                 const std::vector<std::string>& names,
                                 const UnifiedConfig& cfg,
                                 const RawFlags& raw) {
  VideoPairStream stream(OpenInput(ref, raw), OpenInput(test, raw));
  return ExtractVideoFeatures(stream, names, cfg).mean;
}

// ---------------------------------------------------------------- score

struct ScoreArgs {
  std::string ref;
  std::string test;
  std::string model = "Y-FUNQUE+";
  std::string out;
  RawFlags raw;
};

int RunScore(const ScoreArgs& a, const SharedFlags& flags, std::ostream& out,
             std::ostream& err) {
  const ResolvedModel model = ResolveModel(a.model);
  const UnifiedConfig cfg = MakeConfig(flags);
  VideoPairStream stream(OpenInput(a.ref, a.raw), OpenInput(a.test, a.raw));
  const VideoFeatures vf =
      ExtractVideoFeatures(stream, model.spec.features, cfg);

  std::string jsonl;
  for (const FeatureRecord& r : vf.frames) {
    ordered_json features = ordered_json::object();
    for (size_t i = 0; i < r.names.size(); ++i) {
      features[r.names[i]] = r.values[i];
    }
    jsonl += ordered_json{{"frame", r.frame_index}, {"features", features}}
                 .dump() +
             "\n";
  }
  ordered_json mean = ordered_json::object();
  for (size_t i = 0; i < vf.names.size(); ++i) mean[vf.names[i]] = vf.mean[i];
  ordered_json summary = {{"model", model.spec.name},
                          {"frames", vf.frames.size()},
                          {"mean", mean}};
  if (model.trained) {
    const double mos = Predict(*model.trained, vf.mean);
    summary["predicted_mos"] = mos;
    summary["condition"] = std::string(ConditionName(model.trained->spec.target));
    err << "predicted MOS " << FormatDouble(mos) << "\n";
  }
  jsonl += ordered_json{{"summary", summary}}.dump() + "\n";
  Emit(a.out, jsonl, out);
  err << "scored " << vf.frames.size() << " frames with " << model.spec.name
      << " (" << vf.names.size() << " features)\n";
  return kExitOk;
}

// -------------------------------------------------------------- extract

struct ExtractArgs {
  std::string manifest;
  std::string model = "Y-FUNQUE+";
  std::string out;
  RawFlags raw;
};

// Rows of an earlier run that are complete: newline-terminated, full width
// and numerically parseable.
std::map<std::string, std::string> CompleteRows(
    const fs::path& path, const std::string& header,
    const std::vector<std::string>& names) {
  std::map<std::string, std::string> rows;
  if (!fs::exists(path)) return rows;
  const std::string text = ReadText(path);
  if (text.empty()) return rows;
  std::vector<std::string> lines;
  size_t start = 0;
  for (size_t nl; (nl = text.find('\n', start)) != std::string::npos;
       start = nl + 1) {
    lines.push_back(text.substr(start, nl - start + 1));
  }
  if (lines.empty()) return rows;
  if (lines[0] != header) {
    throw Error("existing " + path.string() +
                " has different columns; remove it or pick another --out");
  }
  for (size_t i = 1; i < lines.size(); ++i) {
    try {
      const CsvTable t = ParseCsv(header + lines[i]);
      if (t.rows.size() != 1 || t.rows[0].size() != names.size() + 1) continue;
      for (size_t c = 1; c < t.rows[0].size(); ++c) {
        ParseNumber(t.rows[0][c], names[c - 1]);
      }
      rows[t.rows[0][0]] = lines[i];
    } catch (const Error&) {
      // Damaged line from an interrupted run; recompute it.
    }
  }
  return rows;
}

int RunExtract(const ExtractArgs& a, const SharedFlags& flags,
               std::ostream& err) {
  const DatasetManifest manifest = LoadManifest(a.manifest);
  const ModelSpec spec = ResolveModel(a.model).spec;
  const UnifiedConfig cfg = MakeConfig(flags);
  std::vector<std::string> header_fields = {"video_id"};
  header_fields.insert(header_fields.end(), spec.features.begin(),
                       spec.features.end());
  const std::string header = CsvLine(header_fields);
  const fs::path out_path = a.out;

  std::map<std::string, std::string> done =
      CompleteRows(out_path, header, spec.features);
  std::vector<int> pending;
  for (size_t i = 0; i < manifest.entries.size(); ++i) {
    const std::string& id = manifest.entries[i].video_id;
    if (done.count(id)) {
      err << Timestamp() << " skip " << id << " (complete)\n";
    } else {
      pending.push_back(static_cast<int>(i));
    }
  }

  // Rewrite the kept rows, then append new rows as they finish.
  {
    std::string kept = header;
    for (const ManifestEntry& e : manifest.entries) {
      auto it = done.find(e.video_id);
      if (it != done.end()) kept += it->second;
    }
    WriteFileAtomic(out_path, kept);
  }
  std::ofstream append(out_path, std::ios::binary | std::ios::app);
  if (!append) throw Error("cannot append to " + out_path.string());
  std::mutex mu;
  std::vector<std::string> failures(pending.size());
  std::vector<bool> numeric(pending.size(), false);
  ParallelFor(static_cast<int>(pending.size()), flags.threads, [&](int k) {
    const ManifestEntry& e = manifest.entries[pending[k]];
    try {
      if (e.ref_path.empty() || e.test_path.empty()) {
        throw ManifestError("manifest entry has no video paths");
      }
      const std::vector<double> mean =
          ExtractMeans(e.ref_path, e.test_path, spec.features, cfg, a.raw);
      std::vector<std::string> fields = {e.video_id};
      for (double v : mean) fields.push_back(FormatDouble(v));
      const std::string line = CsvLine(fields);
      std::lock_guard<std::mutex> lock(mu);
      append << line << std::flush;
      done[e.video_id] = line;
      err << Timestamp() << " done " << e.video_id << "\n";
    } catch (const Error& ex) {
      failures[k] = ex.what();
      numeric[k] = dynamic_cast<const NumericError*>(&ex) != nullptr;
    } catch (const std::exception& ex) {
      failures[k] = ex.what();
    }
  });
  append.close();

  // Final file in manifest order regardless of completion order.
  std::string sorted = header;
  for (const ManifestEntry& e : manifest.entries) {
    auto it = done.find(e.video_id);
    if (it != done.end()) sorted += it->second;
  }
  WriteFileAtomic(out_path, sorted);

  fs::path errors_path = out_path;
  errors_path += ".errors.csv";
  std::string errors = CsvLine({"video_id", "error"});
  int n_failed = 0;
  bool any_numeric = false;
  for (size_t k = 0; k < pending.size(); ++k) {
    if (failures[k].empty()) continue;
    const std::string& id = manifest.entries[pending[k]].video_id;
    errors += CsvLine({id, failures[k]});
    err << "error: kind=video video_id=" << id << " message=" << failures[k]
        << "\n";
    ++n_failed;
    any_numeric = any_numeric || numeric[k];
  }
  if (n_failed > 0) {
    WriteFileAtomic(errors_path, errors);
    err << n_failed << " of " << manifest.entries.size()
        << " videos failed; see " << errors_path.string() << "\n";
    return any_numeric ? kExitNumericError : kExitInputError;
  }
  fs::remove(errors_path);
  err << "extracted " << pending.size() << " videos, "
      << manifest.entries.size() - pending.size() << " already complete\n";
  return kExitOk;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string manifest;
  std::string features;
  std::string model = "Y-FUNQUE+";
  std::string condition = "dark";
  double lambda = 1.0;
  std::string out;
};

AmbientCondition ParseCondition(const std::string& s) {
  if (s == "dark") return AmbientCondition::kDark;
  if (s == "bright") return AmbientCondition::kBright;
  throw DomainError("condition must be dark or bright, got '" + s + "'");
}

int RunTrain(const TrainArgs& a, const SharedFlags& flags, std::ostream& out,
             std::ostream& err) {
  const DatasetManifest manifest = LoadManifest(a.manifest);
  const FeatureTable table = LoadFeatureTable(a.features);
  ModelSpec spec = BuiltinModelSpec(a.model);
  spec.target = ParseCondition(a.condition);
  const auto selected = table.Select(spec.features);
  std::map<std::string, size_t> row_of;
  for (size_t i = 0; i < table.row_ids.size(); ++i) {
    row_of[table.row_ids[i]] = i;
  }
  std::vector<std::vector<double>> rows;
  std::vector<double> targets;
  for (const ManifestEntry& e : manifest.entries) {
    auto it = row_of.find(e.video_id);
    if (it == row_of.end()) {
      throw ManifestError("no feature row for video " + e.video_id);
    }
    rows.push_back(selected[it->second]);
    targets.push_back(e.mos(spec.target));
  }
  const TrainedModel model =
      TrainRidge(spec, rows, targets, a.lambda, flags.seed);
  Emit(a.out, SaveModel(model), out);
  err << "trained " << spec.name << " for " << a.condition << " on "
      << rows.size() << " videos\n";
  return kExitOk;
}

// ------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string manifest;
  std::string features;
  std::string model = "Y-FUNQUE+";
  int splits = 1000;
  double test_fraction = 0.2;
  std::vector<double> lambdas;
  std::string out;
  std::string summary;
  RawFlags raw;
};

FeatureTable ExtractTable(const DatasetManifest& manifest,
                          const ModelSpec& spec, const SharedFlags& flags,
                          const RawFlags& raw) {
  const UnifiedConfig cfg = MakeConfig(flags);
  FeatureTable table;
  table.columns = spec.features;
  table.rows.resize(manifest.entries.size());
  for (const ManifestEntry& e : manifest.entries) {
    if (e.ref_path.empty() || e.test_path.empty()) {
      throw ManifestError("manifest has no video paths; pass --features");
    }
    table.row_ids.push_back(e.video_id);
  }
  ParallelFor(static_cast<int>(manifest.entries.size()), flags.threads,
              [&](int i) {
                const ManifestEntry& e = manifest.entries[i];
                table.rows[i] = ExtractMeans(e.ref_path, e.test_path,
                                             spec.features, cfg, raw);
              });
  return table;
}

int RunEvaluate(const EvaluateArgs& a, const SharedFlags& flags,
                std::ostream& out, std::ostream& err) {
  const DatasetManifest manifest = LoadManifest(a.manifest);
  const ModelSpec spec = BuiltinModelSpec(a.model);
  const FeatureTable table = a.features.empty()
                                 ? ExtractTable(manifest, spec, flags, a.raw)
                                 : LoadFeatureTable(a.features);
  Protocol protocol;
  protocol.n_splits = a.splits;
  protocol.test_fraction = a.test_fraction;
  if (!a.lambdas.empty()) protocol.lambdas = a.lambdas;
  protocol.seed = flags.seed;
  protocol.threads = flags.threads;
  const SplitReport report = Evaluate(manifest, table, spec, protocol);
  Emit(a.out, ReportJson(report), out);
  if (!a.summary.empty()) WriteFileAtomic(a.summary, ReportSummaryCsv(report));
  err << spec.name << " lambda=" << FormatDouble(report.chosen_lambda)
      << " dark SROCC=" << FormatDouble(report.median_dark.srocc)
      << " PCC=" << FormatDouble(report.median_dark.pcc)
      << " RMSE=" << FormatDouble(report.median_dark.rmse)
      << " bright SROCC=" << FormatDouble(report.median_bright.srocc)
      << " PCC=" << FormatDouble(report.median_bright.pcc)
      << " RMSE=" << FormatDouble(report.median_bright.rmse) << "\n";
  return kExitOk;
}

// -------------------------------------------------- plot-nonlinearities

std::string NonlinearitySvg(int count) {
  const CurveName curves[] = {CurveName::kHdrmax1, CurveName::kHdrmax2Pos,
                              CurveName::kHdrmax2Neg};
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c"};
  const char* labels[] = {"HDRMAX1", "HDRMAX2 (x>0)", "HDRMAX2 (x<0)"};
  std::vector<NonlinearityCurve> sampled;
  double lo = 0.0;
  double hi = 0.0;
  for (CurveName c : curves) {
    sampled.push_back(SampleCurve(c, -1.0, 1.0, count));
    for (const auto& [x, y] : sampled.back().samples) {
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  }
  const double w = 640.0;
  const double h = 480.0;
  const double m = 40.0;
  auto px = [&](double x) { return m + (x + 1.0) / 2.0 * (w - 2 * m); };
  auto py = [&](double y) {
    return h - m - (y - lo) / (hi - lo) * (h - 2 * m);
  };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
    << "\" height=\"" << h << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<line x1=\"" << px(-1) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1)
    << "\" y2=\"" << py(0) << "\" stroke=\"gray\"/>\n"
    << "<line x1=\"" << px(0) << "\" y1=\"" << py(lo) << "\" x2=\"" << px(0)
    << "\" y2=\"" << py(hi) << "\" stroke=\"gray\"/>\n";
  for (size_t k = 0; k < sampled.size(); ++k) {
    s << "<polyline fill=\"none\" stroke=\"" << colors[k] << "\" points=\"";
    for (const auto& [x, y] : sampled[k].samples) {
      s << px(x) << "," << py(y) << " ";
    }
    s << "\"/>\n<text x=\"" << m + 10 << "\" y=\"" << m + 20 * (k + 1)
      << "\" fill=\"" << colors[k] << "\">" << labels[k] << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

int RunPlot(const std::string& out_dir, bool svg, std::ostream& err) {
  fs::create_directories(out_dir);
  std::ostringstream csv;
  WriteNonlinearityCsv(csv, 1001);
  WriteFileAtomic(fs::path(out_dir) / "nonlinearities.csv", csv.str());
  if (svg) {
    WriteFileAtomic(fs::path(out_dir) / "nonlinearities.svg",
                    NonlinearitySvg(1001));
  }
  err << "wrote curves to " << out_dir << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- synth

int RunSynth(SynthParams params, const std::string& out_dir,
             const SharedFlags& flags, std::ostream& err) {
  params.seed = flags.seed;
  const DatasetManifest m = SynthesizeDataset(params, out_dir);
  err << "wrote " << m.entries.size() << " videos to " << out_dir << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Full-reference HDR video quality toolkit", "funque"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "TOML-style key = value file");

  SharedFlags flags;
  app.add_option("--seed", flags.seed, "Random seed");
  app.add_option("--threads", flags.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--geometry", flags.geometry,
                 "Viewing distance over height and display height, D_H:PX");

  auto add_raw = [](CLI::App* sub, RawFlags& raw) {
    sub->add_option("--width", raw.width, "Raw input width");
    sub->add_option("--height", raw.height, "Raw input height");
    sub->add_option("--bit-depth", raw.bit_depth, "Raw input bit depth");
    sub->add_option("--chroma", raw.chroma, "Raw input chroma (420 or 444)");
  };

  ScoreArgs score;
  CLI::App* score_cmd = app.add_subcommand("score", "Score one video pair");
  score_cmd->add_option("--ref", score.ref, "Reference video")->required();
  score_cmd->add_option("--test", score.test, "Test video")->required();
  score_cmd->add_option("--model", score.model,
                        "Built-in model name or trained model file");
  score_cmd->add_option("--out", score.out, "JSONL output (default stdout)");
  add_raw(score_cmd, score.raw);

  ExtractArgs extract;
  CLI::App* extract_cmd =
      app.add_subcommand("extract", "Extract per-video features");
  extract_cmd->add_option("--manifest", extract.manifest, "Manifest CSV")
      ->required();
  extract_cmd->add_option("--model", extract.model, "Built-in model name");
  extract_cmd->add_option("--out", extract.out, "Features CSV")->required();
  add_raw(extract_cmd, extract.raw);

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a ridge model");
  train_cmd->add_option("--manifest", train.manifest, "Manifest CSV")
      ->required();
  train_cmd->add_option("--features", train.features, "Features CSV")
      ->required();
  train_cmd->add_option("--model", train.model, "Built-in model name");
  train_cmd->add_option("--condition", train.condition, "dark or bright");
  train_cmd->add_option("--lambda", train.lambda, "Ridge penalty");
  train_cmd->add_option("--out", train.out, "Model JSON (default stdout)");

  EvaluateArgs evaluate;
  CLI::App* evaluate_cmd = app.add_subcommand(
      "evaluate", "Content-separated cross-validation of a model");
  evaluate_cmd->add_option("--manifest", evaluate.manifest, "Manifest CSV")
      ->required();
  evaluate_cmd->add_option("--features", evaluate.features,
                           "Precomputed features CSV");
  evaluate_cmd->add_option("--model", evaluate.model, "Built-in model name");
  evaluate_cmd->add_option("--splits", evaluate.splits, "Random splits")
      ->check(CLI::PositiveNumber);
  evaluate_cmd->add_option("--test-fraction", evaluate.test_fraction,
                           "Fraction of content groups held out");
  evaluate_cmd->add_option("--lambdas", evaluate.lambdas, "Ridge grid")
      ->delimiter(',');
  evaluate_cmd->add_option("--out", evaluate.out,
                           "Report JSON (default stdout)");
  evaluate_cmd->add_option("--summary", evaluate.summary, "Summary CSV");
  add_raw(evaluate_cmd, evaluate.raw);

  std::string plot_dir;
  bool plot_svg = false;
  CLI::App* plot_cmd = app.add_subcommand(
      "plot-nonlinearities", "Write the HDRMAX curves on [-1, 1]");
  plot_cmd->add_option("--out-dir", plot_dir, "Output directory")->required();
  plot_cmd->add_flag("--svg", plot_svg, "Also write an SVG plot");

  SynthParams synth;
  std::string synth_dir;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic dataset");
  synth_cmd->add_option("--out-dir", synth_dir, "Output directory")
      ->required();
  synth_cmd->add_option("--contents", synth.n_contents, "Source contents");
  synth_cmd->add_option("--levels", synth.n_levels, "Distortion levels");
  synth_cmd->add_option("--frames", synth.frames, "Frames per video");
  synth_cmd->add_option("--width", synth.width, "Frame width");
  synth_cmd->add_option("--height", synth.height, "Frame height");
  synth_cmd->add_option("--mos-noise", synth.mos_noise,
                        "Standard deviation of proxy MOS noise");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: kind=usage message=" << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (*score_cmd) return RunScore(score, flags, out, err);
    if (*extract_cmd) return RunExtract(extract, flags, err);
    if (*train_cmd) return RunTrain(train, flags, out, err);
    if (*evaluate_cmd) return RunEvaluate(evaluate, flags, out, err);
    if (*plot_cmd) return RunPlot(plot_dir, plot_svg, err);
    if (*synth_cmd) return RunSynth(synth, synth_dir, flags, err);
  } catch (const NumericError& e) {
    err << "error: kind=numeric message=" << e.what() << "\n";
    return kExitNumericError;
  } catch (const Error& e) {
    err << "error: kind=input message=" << e.what() << "\n";
    return kExitInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: kind=io message=" << e.what() << "\n";
    return kExitInputError;
  } catch (const std::ios_base::failure& e) {
    err << "error: kind=io message=" << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace funque
