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

#include "funque/features.h"

#include <cmath>
#include <set>
#include <utility>

#include "funque/atoms.h"
#include "funque/errors.h"

namespace funque {

namespace {

struct ChannelPrefix {
  std::string_view prefix;
  PlaneKind kind;
};

constexpr std::array<ChannelPrefix, 6> kChannels = {{
    {"Y", PlaneKind::kY},
    {"Cb", PlaneKind::kCb},
    {"Cr", PlaneKind::kCr},
    {"HDRMAX1", PlaneKind::kHdrmax1},
    {"HDRMAX2P", PlaneKind::kHdrmax2Pos},
    {"HDRMAX2N", PlaneKind::kHdrmax2Neg},
}};

struct AtomName {
  std::string_view name;
  Atom atom;
  int scale;
};

constexpr std::array<AtomName, 12> kAtoms = {{
    {"MS-ESSIM", Atom::kMsEssim, 0},
    {"DLM-S", Atom::kDlmS, 0},
    {"MAD", Atom::kMad, 0},
    {"MAD-Ref", Atom::kMadRef, 0},
    {"MAD-Dis", Atom::kMadDis, 0},
    {"SRRED-HV", Atom::kSrredHv, 0},
    {"TRRED-HV", Atom::kTrredHv, 0},
    {"Edge", Atom::kEdge, 0},
    {"VIF-1", Atom::kVif, 1},
    {"VIF-2", Atom::kVif, 2},
    {"VIF-3", Atom::kVif, 3},
    {"VIF-4", Atom::kVif, 4},
}};

}  // namespace

FeatureDescriptor ParseFeature(std::string_view name) {
  FeatureDescriptor d;
  d.name = std::string(name);
  if (name == "PU21-PSNR" || name == "PU21-SSIM") {
    d.atom = name == "PU21-PSNR" ? Atom::kPu21Psnr : Atom::kPu21Ssim;
    return d;
  }
  const size_t dash = name.find('-');
  if (dash != std::string_view::npos) {
    const std::string_view channel = name.substr(0, dash);
    const std::string_view atom = name.substr(dash + 1);
    for (const ChannelPrefix& c : kChannels) {
      if (c.prefix != channel) continue;
      for (const AtomName& a : kAtoms) {
        if (a.name != atom) continue;
        d.plane = c.kind;
        d.atom = a.atom;
        d.scale = a.scale;
        return d;
      }
    }
  }
  throw RegistryError("unknown feature '" + std::string(name) + "'");
}

bool IsRegisteredFeature(std::string_view name) {
  try {
    ParseFeature(name);
    return true;
  } catch (const RegistryError&) {
    return false;
  }
}

std::vector<std::string> HdrmaxSideChannelFeatures(PlaneKind hdrmax_plane) {
  const std::string p = PlaneKindName(hdrmax_plane);
  return {p + "-VIF-1", p + "-VIF-2", p + "-VIF-3", p + "-VIF-4",
          p + "-DLM-S"};
}

double FeatureRecord::Get(std::string_view name) const {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return values[i];
  }
  throw RegistryError("record has no feature '" + std::string(name) + "'");
}

FeatureRecord ExtractFrameFeatures(
    const PlanarFrame& ref, const PlanarFrame& test,
    const PairPyramids& current, const PairPyramids* prev,
    const std::vector<FeatureDescriptor>& features) {
  FeatureRecord rec;
  rec.frame_index = ref.frame_index;
  rec.names.reserve(features.size());
  rec.values.reserve(features.size());
  for (const FeatureDescriptor& f : features) {
    double v = 0.0;
    if (!f.uses_pyramid()) {
      v = f.atom == Atom::kPu21Psnr ? Pu21Psnr(ref.y, test.y)
                                    : Pu21Ssim(ref.y, test.y);
    } else {
      const WaveletPyramid& o = current.ref->get(f.plane);
      const WaveletPyramid& t = current.test->get(f.plane);
      switch (f.atom) {
        case Atom::kMsEssim:
          v = MsEssim(o, t);
          break;
        case Atom::kDlmS:
          v = DlmS(o, t);
          break;
        case Atom::kMad:
          v = Mad(o.level(1).approx, t.level(1).approx);
          break;
        case Atom::kSrredHv:
          v = EntropicDifferenceHv(o, t, 1);
          break;
        case Atom::kEdge:
          v = EdgeEnhancement(o, t, 1);
          break;
        case Atom::kVif:
          v = VifScale(o, t, f.scale);
          break;
        case Atom::kMadRef:
          if (prev) {
            v = Mad(o.level(1).approx, prev->ref->get(f.plane).level(1).approx);
          }
          break;
        case Atom::kMadDis:
          if (prev) {
            v = Mad(t.level(1).approx,
                    prev->test->get(f.plane).level(1).approx);
          }
          break;
        case Atom::kTrredHv:
          if (prev) {
            v = EntropicDifferenceHv(
                DifferencePyramid(o, prev->ref->get(f.plane)),
                DifferencePyramid(t, prev->test->get(f.plane)), 1);
          }
          break;
        case Atom::kPu21Psnr:
        case Atom::kPu21Ssim:
          break;
      }
    }
    if (!std::isfinite(v)) {
      throw NumericError("feature " + f.name + " is not finite at frame " +
                         std::to_string(rec.frame_index));
    }
    rec.names.push_back(f.name);
    rec.values.push_back(v);
  }
  return rec;
}

FeatureExtractor::FeatureExtractor(const std::vector<std::string>& names,
                                   UnifiedConfig cfg)
    : names_(names), cfg_(std::move(cfg)) {
  std::set<std::string> seen;
  for (const std::string& n : names_) {
    if (!seen.insert(n).second) {
      throw RegistryError("duplicate feature '" + n + "'");
    }
    FeatureDescriptor d = ParseFeature(n);
    if (d.uses_pyramid()) required_[static_cast<int>(d.plane)] = true;
    features_.push_back(std::move(d));
  }
}

FeatureRecord FeatureExtractor::Push(const PlanarFrame& ref,
                                     const PlanarFrame& test) {
  FramePyramids ref_pyr = UnifiedTransform(ref, required_, cfg_);
  FramePyramids test_pyr = UnifiedTransform(test, required_, cfg_);
  const PairPyramids current{&ref_pyr, &test_pyr};
  const PairPyramids previous{&prev_ref_, &prev_test_};
  FeatureRecord rec = ExtractFrameFeatures(
      ref, test, current, records_.empty() ? nullptr : &previous, features_);
  prev_ref_ = std::move(ref_pyr);
  prev_test_ = std::move(test_pyr);
  records_.push_back(rec);
  return rec;
}

std::vector<FeatureRecord> FeatureExtractor::Finish() const {
  std::vector<FeatureRecord> out = records_;
  if (out.size() >= 2) {
    for (size_t i = 0; i < features_.size(); ++i) {
      if (features_[i].temporal()) out[0].values[i] = out[1].values[i];
    }
  }
  return out;
}

std::vector<double> MeanFeatures(const std::vector<FeatureRecord>& frames,
                                 size_t count) {
  std::vector<double> mean(count, 0.0);
  if (frames.empty()) return mean;
  for (const FeatureRecord& r : frames) {
    for (size_t i = 0; i < count; ++i) mean[i] += r.values[i];
  }
  for (double& m : mean) m /= static_cast<double>(frames.size());
  return mean;
}

VideoFeatures ExtractVideoFeatures(VideoPairStream& stream,
                                   const std::vector<std::string>& names,
                                   const UnifiedConfig& cfg) {
  FeatureExtractor extractor(names, cfg);
  while (auto pair = stream.NextPair()) {
    extractor.Push(pair->first, pair->second);
  }
  VideoFeatures out;
  out.names = names;
  out.frames = extractor.Finish();
  out.mean = MeanFeatures(out.frames, names.size());
  return out;
}

}  // namespace funque
