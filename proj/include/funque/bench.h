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

#ifndef FUNQUE_BENCH_H_
#define FUNQUE_BENCH_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "funque/fusion.h"

namespace funque {

struct ManifestEntry {
  std::string video_id;
  std::string content_id;
  std::string content_group;
  std::filesystem::path ref_path;   // empty in feature-matrix mode
  std::filesystem::path test_path;  // empty in feature-matrix mode
  double mos_dark = 0.0;
  double mos_bright = 0.0;

  double mos(AmbientCondition c) const {
    return c == AmbientCondition::kDark ? mos_dark : mos_bright;
  }
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;

  // Distinct content groups in order of first appearance.
  std::vector<std::string> Groups() const;
  int IndexOf(const std::string& video_id) const;  // -1 when absent
  // Throws ManifestError on duplicate ids, a content mapped to two groups or
  // non-finite MOS.
  void Validate() const;
};

// Reads the manifest CSV. Paths are resolved against the manifest's
// directory. A missing content_group column defaults each group to its
// content_id; ref_path/test_path may be omitted in feature-matrix mode.
// Missing required columns throw ManifestError naming the column.
DatasetManifest LoadManifest(const std::filesystem::path& path);
void WriteManifest(const DatasetManifest& manifest,
                   const std::filesystem::path& path);

// Features CSV: `video_id` followed by one column per feature.
FeatureTable LoadFeatureTable(const std::filesystem::path& path);
std::string FeatureTableCsv(const FeatureTable& table);

struct Split {
  uint64_t seed = 0;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
};

// Content-separated random splits. Each split shuffles the content groups
// with its own stream (StreamSeed(seed, i)) and sends ceil(test_fraction * G)
// groups to test. Throws DomainError with fewer than two groups.
std::vector<Split> MakeSplits(const DatasetManifest& manifest, int n_splits,
                              double test_fraction, uint64_t seed);

struct Protocol {
  int n_splits = 1000;
  double test_fraction = 0.2;
  std::vector<double> lambdas = {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
  uint64_t seed = 0;
  int threads = 1;
};

struct Accuracy {
  double pcc = 0.0;
  double srocc = 0.0;
  double rmse = 0.0;
};

struct SplitResult {
  int index = 0;
  uint64_t seed = 0;
  int n_train = 0;
  int n_test = 0;
  Accuracy dark;
  Accuracy bright;
};

struct SplitFailure {
  double lambda = 0.0;
  int split = 0;
  std::string message;
};

struct SplitReport {
  std::string model;
  Protocol protocol;
  std::vector<double> lambda_objectives;  // aligned with protocol.lambdas
  std::vector<bool> lambda_eligible;
  double chosen_lambda = 0.0;
  std::vector<SplitResult> splits;  // at the chosen lambda
  Accuracy median_dark;
  Accuracy median_bright;
  std::vector<SplitFailure> failures;
};

// Runs the cross-validation protocol. `features` must hold one row per
// manifest entry (matched by video_id) with every spec feature.
SplitReport Evaluate(const DatasetManifest& manifest,
                     const FeatureTable& features, const ModelSpec& spec,
                     const Protocol& protocol);

std::string ReportJson(const SplitReport& report);
// One header line and one row in the SROCC/PCC/RMSE x dark/bright layout.
std::string ReportSummaryCsv(const SplitReport& report);

}  // namespace funque

#endif  // FUNQUE_BENCH_H_
