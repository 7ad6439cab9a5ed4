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

#ifndef FUNQUE_UNIFIED_H_
#define FUNQUE_UNIFIED_H_

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <vector>

#include "funque/frameio.h"
#include "funque/plane.h"
#include "funque/transfer.h"

namespace funque {

inline constexpr int kDefaultLevels = 4;

struct ViewingGeometry {
  double distance_to_height = 1.5;
  int display_height_px = 2160;

  // Throws DomainError unless D/H > 0 and the display height is positive.
  void Validate() const;
  // Pixels per degree of visual angle along the display height.
  double PixelsPerDegree() const;
};

// (D/H) / 1.618.
double SastFactor(const ViewingGeometry& geom);

// Nearest power of two when the factor lies within 15% of it; otherwise the
// factor itself.
double SnapSastFactor(double factor);

// Bilinear (half-pixel centred, edge-clamped) rescale by 1/SnapSastFactor.
// A snapped factor of exactly 1 returns a copy. Throws TooSmallError when the
// output would be smaller than 2^levels along either axis.
Plane SastRescale(const Plane& plane, double factor, int levels = kDefaultLevels);

enum class Orientation { kHorizontal = 0, kVertical = 1, kDiagonal = 2 };

struct Subbands {
  Plane approx;
  Plane horizontal;
  Plane vertical;
  Plane diagonal;

  const Plane& detail(Orientation o) const;
  Plane& detail(Orientation o);
};

struct CsfWeights;

// Multi-level 2-D Haar decomposition. Level l (1-based) holds the
// approximation and detail bands produced by the l-th analysis step.
class WaveletPyramid {
 public:
  WaveletPyramid() = default;

  int levels() const { return static_cast<int>(bands_.size()); }
  const Subbands& level(int l) const { return bands_.at(l - 1); }
  Subbands& level(int l) { return bands_.at(l - 1); }
  bool csf_applied() const { return csf_applied_; }

  // Width and height of the plane that level l was computed from.
  int source_width(int l) const { return source_dims_.at(l - 1)[0]; }
  int source_height(int l) const { return source_dims_.at(l - 1)[1]; }

  double Energy() const;

 private:
  friend WaveletPyramid HaarDwt(const Plane&, int);
  friend WaveletPyramid ApplyCsf(WaveletPyramid, const CsfWeights&);
  friend WaveletPyramid DifferencePyramid(const WaveletPyramid&,
                                          const WaveletPyramid&);

  std::vector<Subbands> bands_;
  std::vector<std::array<int, 2>> source_dims_;
  bool csf_applied_ = false;
};

// Orthonormal Haar analysis, recursing on the approximation band. Odd
// dimensions are extended by replicating the last row or column, so level l
// has ceil(w / 2^l) x ceil(h / 2^l) coefficients. Throws TooSmallError when
// either dimension is below 2^levels.
WaveletPyramid HaarDwt(const Plane& plane, int levels);

// Exact inverse of HaarDwt for a pyramid without CSF weighting.
Plane HaarIdwt(const WaveletPyramid& pyr);

// Per-band difference a - b. Linear, so the difference of two weighted
// pyramids equals the weighted pyramid of the difference.
WaveletPyramid DifferencePyramid(const WaveletPyramid& a,
                                 const WaveletPyramid& b);

struct CsfWeights {
  // detail[l-1][orientation]
  std::vector<std::array<double, 3>> detail;
  std::vector<double> approx;

  int levels() const { return static_cast<int>(detail.size()); }
  static CsfWeights Identity(int levels);
  void WriteCsv(std::ostream& out) const;
};

// Mannos-Sakrison A(f) = 2.6 (0.0192 + 0.114 f) exp(-(0.114 f)^1.1).
double MannosSakrison(double cycles_per_degree);

// Detail weight at level l is A(ppd_eff / 2^(l+1)) with
// ppd_eff = PixelsPerDegree() / pixel_scale. `pixel_scale` is the number of
// display pixels spanned by one plane sample (the applied SAST factor times
// the chroma subsampling factor). Approximation weights are 1.
CsfWeights MannosSakrisonWeights(const ViewingGeometry& geom, int levels,
                                 double pixel_scale = 1.0);

// Scales every subband by its weight. Throws StateError if already applied.
WaveletPyramid ApplyCsf(WaveletPyramid pyr, const CsfWeights& weights);

// Planes the unified transform can be asked for. The HDRMAX kinds are derived
// from the luma plane.
enum class PlaneKind { kY = 0, kCb, kCr, kHdrmax1, kHdrmax2Pos, kHdrmax2Neg };
inline constexpr int kPlaneKindCount = 6;

const char* PlaneKindName(PlaneKind kind);

struct UnifiedConfig {
  ViewingGeometry geometry;
  int levels = kDefaultLevels;
  LocalNormConfig local_norm;
};

// Instrumentation: number of unified transforms executed per plane kind.
class TransformCounters {
 public:
  static TransformCounters& Global();
  void Reset();
  void Increment(PlaneKind kind);
  void IncrementResample();
  int64_t count(PlaneKind kind) const;
  // SAST rescales that actually resampled (snapped factor != 1).
  int64_t resamples() const;

 private:
  std::array<std::atomic<int64_t>, kPlaneKindCount> counts_{};
  std::atomic<int64_t> resamples_{0};
};

using PyramidPtr = std::shared_ptr<const WaveletPyramid>;

// sast_rescale -> haar_dwt -> apply_csf for a single plane whose samples each
// span `chroma_scale` luma pixels.
PyramidPtr UnifiedTransformPlane(const Plane& plane, PlaneKind kind,
                                 const UnifiedConfig& cfg,
                                 double chroma_scale = 1.0);

// Pyramids of one frame, keyed by plane kind. Absent kinds were not
// requested.
struct FramePyramids {
  std::array<PyramidPtr, kPlaneKindCount> planes{};

  const WaveletPyramid& get(PlaneKind kind) const;
  bool has(PlaneKind kind) const {
    return planes[static_cast<int>(kind)] != nullptr;
  }
};

// Runs the unified transform once for each requested plane kind.
FramePyramids UnifiedTransform(const PlanarFrame& frame,
                               const std::array<bool, kPlaneKindCount>& wanted,
                               const UnifiedConfig& cfg);

}  // namespace funque

#endif  // FUNQUE_UNIFIED_H_
