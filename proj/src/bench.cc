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

#include "funque/bench.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "funque/csv.h"
#include "funque/errors.h"
#include "funque/metrics.h"
#include "funque/parallel.h"
#include "funque/random.h"
#include "funque/transfer.h"
#include "json.hpp"

namespace funque {

using nlohmann::json;

std::vector<std::string> DatasetManifest::Groups() const {
  std::vector<std::string> groups;
  std::set<std::string> seen;
  for (const ManifestEntry& e : entries) {
    if (seen.insert(e.content_group).second) groups.push_back(e.content_group);
  }
  return groups;
}

int DatasetManifest::IndexOf(const std::string& video_id) const {
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].video_id == video_id) return static_cast<int>(i);
  }
  return -1;
}

void DatasetManifest::Validate() const {
  std::set<std::string> ids;
  std::map<std::string, std::string> group_of;
  for (const ManifestEntry& e : entries) {
    if (e.video_id.empty()) throw ManifestError("empty video_id");
    if (!ids.insert(e.video_id).second) {
      throw ManifestError("duplicate video_id " + e.video_id);
    }
    auto [it, inserted] = group_of.emplace(e.content_id, e.content_group);
    if (!inserted && it->second != e.content_group) {
      throw ManifestError("content " + e.content_id +
                          " appears in groups " + it->second + " and " +
                          e.content_group);
    }
    if (!std::isfinite(e.mos_dark) || !std::isfinite(e.mos_bright)) {
      throw ManifestError("non-finite MOS for " + e.video_id);
    }
  }
}

DatasetManifest LoadManifest(const std::filesystem::path& path) {
  const CsvTable csv = ReadCsv(path);
  auto require = [&csv](const char* name) {
    const int c = csv.Column(name);
    if (c < 0) {
      throw ManifestError(std::string("manifest is missing column '") + name +
                          "'");
    }
    return c;
  };
  const int c_id = require("video_id");
  const int c_content = require("content_id");
  const int c_group = csv.Column("content_group");
  const int c_ref = csv.Column("ref_path");
  const int c_test = csv.Column("test_path");
  const int c_dark = require("mos_dark");
  const int c_bright = require("mos_bright");
  const std::filesystem::path base = path.parent_path();
  auto resolve = [&base](const std::string& p) -> std::filesystem::path {
    if (p.empty()) return {};
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  DatasetManifest m;
  for (const auto& row : csv.rows) {
    ManifestEntry e;
    e.video_id = row[c_id];
    e.content_id = row[c_content];
    e.content_group = c_group >= 0 ? row[c_group] : row[c_content];
    if (c_ref >= 0) e.ref_path = resolve(row[c_ref]);
    if (c_test >= 0) e.test_path = resolve(row[c_test]);
    e.mos_dark = ParseNumber(row[c_dark], "mos_dark");
    e.mos_bright = ParseNumber(row[c_bright], "mos_bright");
    m.entries.push_back(std::move(e));
  }
  m.Validate();
  return m;
}

void WriteManifest(const DatasetManifest& manifest,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot create " + path.string());
  const std::filesystem::path base = path.parent_path();
  auto rel = [&base](const std::filesystem::path& p) {
    return p.empty() ? std::string() : p.lexically_relative(base).string();
  };
  out << "video_id,content_id,content_group,ref_path,test_path,mos_dark,"
         "mos_bright\n";
  for (const ManifestEntry& e : manifest.entries) {
    out << CsvLine({e.video_id, e.content_id, e.content_group, rel(e.ref_path),
                    rel(e.test_path), FormatDouble(e.mos_dark),
                    FormatDouble(e.mos_bright)});
  }
}

FeatureTable LoadFeatureTable(const std::filesystem::path& path) {
  const CsvTable csv = ReadCsv(path);
  if (csv.header.empty() || csv.header[0] != "video_id") {
    throw ManifestError("features CSV must start with a video_id column");
  }
  FeatureTable t;
  t.columns.assign(csv.header.begin() + 1, csv.header.end());
  for (const auto& row : csv.rows) {
    t.row_ids.push_back(row[0]);
    std::vector<double> values;
    for (size_t i = 1; i < row.size(); ++i) {
      values.push_back(ParseNumber(row[i], csv.header[i]));
    }
    t.rows.push_back(std::move(values));
  }
  return t;
}

std::string FeatureTableCsv(const FeatureTable& table) {
  std::vector<std::string> header = {"video_id"};
  header.insert(header.end(), table.columns.begin(), table.columns.end());
  std::string out = CsvLine(header);
  for (size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<std::string> fields = {table.row_ids[r]};
    for (double v : table.rows[r]) fields.push_back(FormatDouble(v));
    out += CsvLine(fields);
  }
  return out;
}

std::vector<Split> MakeSplits(const DatasetManifest& manifest, int n_splits,
                              double test_fraction, uint64_t seed) {
  const std::vector<std::string> groups = manifest.Groups();
  const int g = static_cast<int>(groups.size());
  if (g < 2) {
    throw DomainError("content-separated splits need at least two groups");
  }
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw DomainError("test fraction must lie in (0, 1)");
  }
  if (n_splits < 1) throw DomainError("need at least one split");
  const int n_test = std::clamp(
      static_cast<int>(std::ceil(test_fraction * g - 1e-9)), 1, g - 1);
  std::map<std::string, int> group_index;
  for (int i = 0; i < g; ++i) group_index[groups[i]] = i;

  std::vector<Split> splits(n_splits);
  for (int s = 0; s < n_splits; ++s) {
    Split& split = splits[s];
    split.seed = StreamSeed(seed, static_cast<uint64_t>(s));
    Rng rng(split.seed);
    std::vector<int> order(g);
    for (int i = 0; i < g; ++i) order[i] = i;
    for (int i = g - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.Below(static_cast<uint64_t>(i) + 1));
      std::swap(order[i], order[j]);
    }
    std::vector<bool> is_test(g, false);
    for (int i = 0; i < n_test; ++i) is_test[order[i]] = true;
    for (const ManifestEntry& e : manifest.entries) {
      (is_test[group_index[e.content_group]] ? split.test_ids
                                             : split.train_ids)
          .push_back(e.video_id);
    }
  }
  return splits;
}

namespace {

struct Dataset {
  std::vector<std::vector<double>> x;  // aligned with manifest entries
  std::vector<double> dark;
  std::vector<double> bright;
};

Dataset Assemble(const DatasetManifest& manifest, const FeatureTable& table,
                 const ModelSpec& spec) {
  const auto selected = table.Select(spec.features);
  std::map<std::string, size_t> row_of;
  for (size_t i = 0; i < table.row_ids.size(); ++i) {
    row_of[table.row_ids[i]] = i;
  }
  Dataset d;
  for (const ManifestEntry& e : manifest.entries) {
    auto it = row_of.find(e.video_id);
    if (it == row_of.end()) {
      throw ManifestError("no feature row for video " + e.video_id);
    }
    d.x.push_back(selected[it->second]);
    d.dark.push_back(e.mos_dark);
    d.bright.push_back(e.mos_bright);
  }
  return d;
}

Accuracy Score(std::span<const double> pred, std::span<const double> mos) {
  Accuracy a{Pcc(pred, mos), Srocc(pred, mos), Rmse(pred, mos)};
  if (!std::isfinite(a.pcc) || !std::isfinite(a.srocc) ||
      !std::isfinite(a.rmse)) {
    throw NumericError("non-finite accuracy statistic");
  }
  return a;
}

struct SplitOutcome {
  bool ok = false;
  std::string error;
  SplitResult result;
};

struct SplitRows {
  std::vector<int> train;
  std::vector<int> test;
};

SplitRows RowsOf(const DatasetManifest& manifest, const Split& split) {
  std::map<std::string, int> index;
  for (size_t i = 0; i < manifest.entries.size(); ++i) {
    index[manifest.entries[i].video_id] = static_cast<int>(i);
  }
  SplitRows rows;
  for (const std::string& id : split.train_ids) rows.train.push_back(index[id]);
  for (const std::string& id : split.test_ids) rows.test.push_back(index[id]);
  return rows;
}

SplitOutcome RunSplit(const Dataset& data, const ModelSpec& spec,
                      const Split& split, const SplitRows& rows, int index,
                      double lambda) {
  SplitOutcome out;
  out.result.index = index;
  out.result.seed = split.seed;
  out.result.n_train = static_cast<int>(split.train_ids.size());
  out.result.n_test = static_cast<int>(split.test_ids.size());
  try {
    std::vector<std::vector<double>> x_train;
    std::vector<double> dark_train;
    std::vector<double> bright_train;
    for (const int i : rows.train) {
      x_train.push_back(data.x[i]);
      dark_train.push_back(data.dark[i]);
      bright_train.push_back(data.bright[i]);
    }
    ModelSpec dark_spec = spec;
    dark_spec.target = AmbientCondition::kDark;
    ModelSpec bright_spec = spec;
    bright_spec.target = AmbientCondition::kBright;
    const TrainedModel dark =
        TrainRidge(dark_spec, x_train, dark_train, lambda, split.seed);
    const TrainedModel bright =
        TrainRidge(bright_spec, x_train, bright_train, lambda, split.seed);
    std::vector<double> pd;
    std::vector<double> pb;
    std::vector<double> md;
    std::vector<double> mb;
    for (const int i : rows.test) {
      pd.push_back(Predict(dark, data.x[i]));
      pb.push_back(Predict(bright, data.x[i]));
      md.push_back(data.dark[i]);
      mb.push_back(data.bright[i]);
    }
    out.result.dark = Score(pd, md);
    out.result.bright = Score(pb, mb);
    out.ok = true;
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

Accuracy MedianOf(const std::vector<SplitResult>& r, bool dark) {
  std::vector<double> p;
  std::vector<double> s;
  std::vector<double> e;
  for (const SplitResult& x : r) {
    const Accuracy& a = dark ? x.dark : x.bright;
    p.push_back(a.pcc);
    s.push_back(a.srocc);
    e.push_back(a.rmse);
  }
  return {LowerMedian(p), LowerMedian(s), LowerMedian(e)};
}

}  // namespace

SplitReport Evaluate(const DatasetManifest& manifest,
                     const FeatureTable& features, const ModelSpec& spec,
                     const Protocol& protocol) {
  if (protocol.lambdas.empty()) throw DomainError("empty lambda grid");
  const Dataset data = Assemble(manifest, features, spec);
  const std::vector<Split> splits = MakeSplits(
      manifest, protocol.n_splits, protocol.test_fraction, protocol.seed);

  std::vector<SplitRows> rows;
  for (const Split& split : splits) rows.push_back(RowsOf(manifest, split));

  SplitReport report;
  report.model = spec.name;
  report.protocol = protocol;
  const int n = static_cast<int>(splits.size());
  double best = -INFINITY;
  int best_index = -1;
  std::vector<SplitResult> best_results;
  for (size_t li = 0; li < protocol.lambdas.size(); ++li) {
    const double lambda = protocol.lambdas[li];
    std::vector<SplitOutcome> outcomes(n);
    ParallelFor(n, protocol.threads, [&](int i) {
      outcomes[i] = RunSplit(data, spec, splits[i], rows[i], i, lambda);
    });
    bool eligible = true;
    std::vector<SplitResult> results;
    for (int i = 0; i < n; ++i) {
      if (!outcomes[i].ok) {
        eligible = false;
        report.failures.push_back({lambda, i, outcomes[i].error});
      } else {
        results.push_back(outcomes[i].result);
      }
    }
    double objective = NAN;
    if (eligible) {
      const Accuracy d = MedianOf(results, true);
      const Accuracy b = MedianOf(results, false);
      objective = (d.pcc + d.srocc + b.pcc + b.srocc) / 4.0;
      if (objective > best) {
        best = objective;
        best_index = static_cast<int>(li);
        best_results = std::move(results);
      }
    }
    report.lambda_objectives.push_back(objective);
    report.lambda_eligible.push_back(eligible);
  }
  if (best_index < 0) {
    throw NumericError("every lambda in the grid produced a failed split");
  }
  report.chosen_lambda = protocol.lambdas[best_index];
  report.splits = std::move(best_results);
  report.median_dark = MedianOf(report.splits, true);
  report.median_bright = MedianOf(report.splits, false);
  return report;
}

namespace {

json AccuracyJson(const Accuracy& a) {
  return {{"pcc", a.pcc}, {"srocc", a.srocc}, {"rmse", a.rmse}};
}

}  // namespace

std::string ReportJson(const SplitReport& r) {
  json splits = json::array();
  for (const SplitResult& s : r.splits) {
    splits.push_back({{"index", s.index},
                      {"seed", s.seed},
                      {"n_train", s.n_train},
                      {"n_test", s.n_test},
                      {"dark", AccuracyJson(s.dark)},
                      {"bright", AccuracyJson(s.bright)}});
  }
  json grid = json::array();
  for (size_t i = 0; i < r.protocol.lambdas.size(); ++i) {
    json entry = {{"lambda", r.protocol.lambdas[i]},
                  {"eligible", static_cast<bool>(r.lambda_eligible[i])}};
    entry["objective"] = r.lambda_eligible[i] ? json(r.lambda_objectives[i])
                                              : json(nullptr);
    grid.push_back(entry);
  }
  json failures = json::array();
  for (const SplitFailure& f : r.failures) {
    failures.push_back(
        {{"lambda", f.lambda}, {"split", f.split}, {"message", f.message}});
  }
  const json j = {
      {"model", r.model},
      {"n_splits", r.protocol.n_splits},
      {"test_fraction", r.protocol.test_fraction},
      {"seed", r.protocol.seed},
      {"lambda_grid", grid},
      {"chosen_lambda", r.chosen_lambda},
      {"median",
       {{"dark", AccuracyJson(r.median_dark)},
        {"bright", AccuracyJson(r.median_bright)}}},
      {"splits", splits},
      {"failures", failures},
  };
  return j.dump(2) + "\n";
}

std::string ReportSummaryCsv(const SplitReport& r) {
  std::string out =
      "model,dark_srocc,dark_pcc,dark_rmse,bright_srocc,bright_pcc,"
      "bright_rmse\n";
  out += CsvLine({r.model, FormatDouble(r.median_dark.srocc),
                  FormatDouble(r.median_dark.pcc),
                  FormatDouble(r.median_dark.rmse),
                  FormatDouble(r.median_bright.srocc),
                  FormatDouble(r.median_bright.pcc),
                  FormatDouble(r.median_bright.rmse)});
  return out;
}

}  // namespace funque
