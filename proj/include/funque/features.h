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

#ifndef FUNQUE_FEATURES_H_
#define FUNQUE_FEATURES_H_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "funque/frameio.h"
#include "funque/unified.h"

namespace funque {

enum class Atom {
  kMsEssim,
  kDlmS,
  kMad,
  kMadRef,
  kMadDis,
  kSrredHv,
  kTrredHv,
  kEdge,
  kVif,
  kPu21Psnr,
  kPu21Ssim,
};

// A registered feature name, e.g. "Y-MS-ESSIM", "Cb-Edge", "HDRMAX1-VIF-3"
// or "PU21-PSNR". Names are "<channel>-<atom>" with channel one of Y, Cb, Cr,
// HDRMAX1, HDRMAX2P, HDRMAX2N; the PU21 baselines have no channel.
struct FeatureDescriptor {
  std::string name;
  PlaneKind plane = PlaneKind::kY;
  Atom atom = Atom::kMad;
  int scale = 0;  // VIF scale, 1..4

  bool temporal() const {
    return atom == Atom::kMadRef || atom == Atom::kMadDis ||
           atom == Atom::kTrredHv;
  }
  bool uses_pyramid() const {
    return atom != Atom::kPu21Psnr && atom != Atom::kPu21Ssim;
  }
};

// Throws RegistryError for unknown names.
FeatureDescriptor ParseFeature(std::string_view name);
bool IsRegisteredFeature(std::string_view name);

// The five side-channel features computed on one HDRMAX-transformed plane:
// VIF at scales 1..4 followed by DLM-S.
std::vector<std::string> HdrmaxSideChannelFeatures(PlaneKind hdrmax_plane);

struct FeatureRecord {
  int64_t frame_index = 0;
  std::vector<std::string> names;
  std::vector<double> values;

  // Throws RegistryError when `name` is absent.
  double Get(std::string_view name) const;
};

// Pyramids of the current and, when t >= 1, the previous frame of each video.
struct PairPyramids {
  const FramePyramids* ref = nullptr;
  const FramePyramids* test = nullptr;
};

// Evaluates `features` for one frame pair. `prev` is null at t = 0, where
// temporal features are reported as 0.
FeatureRecord ExtractFrameFeatures(const PlanarFrame& ref,
                                   const PlanarFrame& test,
                                   const PairPyramids& current,
                                   const PairPyramids* prev,
                                   const std::vector<FeatureDescriptor>& features);

// Streaming per-video extractor. Each pushed frame pair costs exactly one
// unified transform per required plane kind per video; the previous frame's
// pyramids are retained for the temporal features.
class FeatureExtractor {
 public:
  FeatureExtractor(const std::vector<std::string>& feature_names,
                   UnifiedConfig cfg);

  FeatureRecord Push(const PlanarFrame& ref, const PlanarFrame& test);

  // All records so far, with the t = 0 temporal values copied from t = 1
  // when at least two frames were pushed.
  std::vector<FeatureRecord> Finish() const;

  const std::vector<std::string>& names() const { return names_; }
  const std::array<bool, kPlaneKindCount>& required_planes() const {
    return required_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<FeatureDescriptor> features_;
  std::array<bool, kPlaneKindCount> required_{};
  UnifiedConfig cfg_;
  FramePyramids prev_ref_;
  FramePyramids prev_test_;
  std::vector<FeatureRecord> records_;
};

struct VideoFeatures {
  std::vector<std::string> names;
  std::vector<FeatureRecord> frames;
  // Arithmetic mean over frames, aligned with `names`.
  std::vector<double> mean;
};

std::vector<double> MeanFeatures(const std::vector<FeatureRecord>& frames,
                                 size_t count);

VideoFeatures ExtractVideoFeatures(VideoPairStream& stream,
                                   const std::vector<std::string>& names,
                                   const UnifiedConfig& cfg);

}  // namespace funque

#endif  // FUNQUE_FEATURES_H_
