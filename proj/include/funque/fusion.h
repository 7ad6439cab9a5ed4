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

#ifndef FUNQUE_FUSION_H_
#define FUNQUE_FUSION_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace funque {

enum class HdrmaxAugment { kH1, kH2 };
enum class AmbientCondition { kDark, kBright };

std::string_view ConditionName(AmbientCondition c);

struct ModelSpec {
  std::string name;
  // Full ordered feature list, including any HDRMAX side-channel features.
  std::vector<std::string> features;
  std::vector<HdrmaxAugment> hdrmax;
  AmbientCondition target = AmbientCondition::kDark;

  // Throws RegistryError on duplicates or unregistered names.
  void Validate() const;
};

// Y-FUNQUE+, 3C-FUNQUE+, either with an "+HDRMAX1" / "+HDRMAX2" suffix (e.g.
// "3C-FUNQUE++HDRMAX2"), PU21-PSNR and PU21-SSIM.
ModelSpec BuiltinModelSpec(std::string_view name);
std::vector<std::string> BuiltinModelNames();
bool IsBuiltinModel(std::string_view name);

// Appends the augmentation's side-channel features: five for HDRMAX1, ten for
// HDRMAX2 (bright and dark emphasis).
ModelSpec Augment(ModelSpec base, HdrmaxAugment augment);

// Row-major per-video feature table.
struct FeatureTable {
  std::vector<std::string> columns;
  std::vector<std::string> row_ids;
  std::vector<std::vector<double>> rows;

  int ColumnIndex(std::string_view name) const;  // -1 when absent
  // Rows of the named columns in the given order. Throws RegistryError for
  // absent columns.
  std::vector<std::vector<double>> Select(
      const std::vector<std::string>& names) const;
};

struct TrainedModel {
  static constexpr int kVersion = 1;

  ModelSpec spec;
  std::vector<double> means;
  std::vector<double> stds;
  std::vector<double> weights;  // in standardized units
  std::vector<bool> retained;   // false for zero-variance features
  double intercept = 0.0;
  double lambda = 0.0;
  std::string training_hash;
  uint64_t seed = 0;

  bool dropped_any() const;
};

// Ridge regression on standardized features. `rows` are aligned with
// spec.features. Throws SingularSystemError for a rank-deficient system with
// lambda == 0.
TrainedModel TrainRidge(const ModelSpec& spec,
                        const std::vector<std::vector<double>>& rows,
                        std::span<const double> targets, double lambda,
                        uint64_t seed = 0);

// `x` aligned with spec.features.
double Predict(const TrainedModel& model, std::span<const double> x);

// Aligns by name; extra entries are ignored. Throws RegistryError naming the
// first missing feature.
double Predict(const TrainedModel& model,
               const std::map<std::string, double>& named);

std::string SaveModel(const TrainedModel& model);
// Throws ParseError for malformed input, VersionMismatchError and
// RegistryError for unknown features.
TrainedModel LoadModel(std::string_view json);

}  // namespace funque

#endif  // FUNQUE_FUSION_H_
