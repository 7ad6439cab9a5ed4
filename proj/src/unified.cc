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

#include "funque/unified.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "funque/errors.h"

namespace funque {

void ViewingGeometry::Validate() const {
  if (!(distance_to_height > 0.0)) {
    throw DomainError("viewing distance ratio D/H must be positive");
  }
  if (display_height_px <= 0) {
    throw DomainError("display height must be positive");
  }
}

double ViewingGeometry::PixelsPerDegree() const {
  const double degrees =
      2.0 * std::atan(1.0 / (2.0 * distance_to_height)) * 180.0 /
      std::numbers::pi;
  return display_height_px / degrees;
}

double SastFactor(const ViewingGeometry& geom) {
  geom.Validate();
  return geom.distance_to_height / 1.618;
}

double SnapSastFactor(double factor) {
  if (!(factor > 0.0)) throw DomainError("SAST factor must be positive");
  const double nearest = std::exp2(std::round(std::log2(factor)));
  return std::abs(factor / nearest - 1.0) <= 0.15 ? nearest : factor;
}

Plane SastRescale(const Plane& plane, double factor, int levels) {
  const double s = SnapSastFactor(factor);
  const int min_dim = 1 << levels;
  if (s == 1.0) {
    if (plane.width() < min_dim || plane.height() < min_dim) {
      throw TooSmallError("plane smaller than 2^levels");
    }
    return plane;
  }
  const int w = plane.width();
  const int h = plane.height();
  const int ow = std::max(1, static_cast<int>(std::lround(w / s)));
  const int oh = std::max(1, static_cast<int>(std::lround(h / s)));
  if (ow < min_dim || oh < min_dim) {
    throw TooSmallError("SAST output " + std::to_string(ow) + "x" +
                        std::to_string(oh) + " is smaller than 2^" +
                        std::to_string(levels));
  }
  const double sx = static_cast<double>(w) / ow;
  const double sy = static_cast<double>(h) / oh;
  struct Tap {
    int i0, i1;
    double f;
  };
  auto taps = [](int n_out, int n_in, double scale) {
    std::vector<Tap> t(n_out);
    for (int i = 0; i < n_out; ++i) {
      const double src =
          std::clamp((i + 0.5) * scale - 0.5, 0.0, static_cast<double>(n_in - 1));
      const int i0 = static_cast<int>(std::floor(src));
      t[i] = {i0, std::min(i0 + 1, n_in - 1), src - i0};
    }
    return t;
  };
  const auto tx = taps(ow, w, sx);
  const auto ty = taps(oh, h, sy);
  Plane out(ow, oh);
  for (int y = 0; y < oh; ++y) {
    auto r0 = plane.row(ty[y].i0);
    auto r1 = plane.row(ty[y].i1);
    const double fy = ty[y].f;
    auto dst = out.row(y);
    for (int x = 0; x < ow; ++x) {
      const Tap& t = tx[x];
      const double top = (1.0 - t.f) * r0[t.i0] + t.f * r0[t.i1];
      const double bot = (1.0 - t.f) * r1[t.i0] + t.f * r1[t.i1];
      dst[x] = (1.0 - fy) * top + fy * bot;
    }
  }
  TransformCounters::Global().IncrementResample();
  return out;
}

const Plane& Subbands::detail(Orientation o) const {
  switch (o) {
    case Orientation::kHorizontal:
      return horizontal;
    case Orientation::kVertical:
      return vertical;
    case Orientation::kDiagonal:
      return diagonal;
  }
  return horizontal;
}

Plane& Subbands::detail(Orientation o) {
  return const_cast<Plane&>(std::as_const(*this).detail(o));
}

double WaveletPyramid::Energy() const {
  double e = 0.0;
  for (const Subbands& b : bands_) {
    e += SumOfSquares(b.horizontal) + SumOfSquares(b.vertical) +
         SumOfSquares(b.diagonal);
  }
  if (!bands_.empty()) e += SumOfSquares(bands_.back().approx);
  return e;
}

WaveletPyramid HaarDwt(const Plane& plane, int levels) {
  if (levels < 1) throw DomainError("wavelet levels must be >= 1");
  const int min_dim = 1 << levels;
  if (plane.width() < min_dim || plane.height() < min_dim) {
    throw TooSmallError("plane " + std::to_string(plane.width()) + "x" +
                        std::to_string(plane.height()) +
                        " is too small for " + std::to_string(levels) +
                        " Haar levels");
  }
  WaveletPyramid pyr;
  const Plane* src = &plane;
  for (int l = 0; l < levels; ++l) {
    const int w = src->width();
    const int h = src->height();
    const int ow = (w + 1) / 2;
    const int oh = (h + 1) / 2;
    Subbands b{Plane(ow, oh), Plane(ow, oh), Plane(ow, oh), Plane(ow, oh)};
    for (int y = 0; y < oh; ++y) {
      auto top = src->row(2 * y);
      auto bottom = src->row(std::min(2 * y + 1, h - 1));
      for (int x = 0; x < ow; ++x) {
        const int x1 = std::min(2 * x + 1, w - 1);
        const double a = top[2 * x];
        const double bb = top[x1];
        const double c = bottom[2 * x];
        const double d = bottom[x1];
        b.approx.at(x, y) = 0.5 * (a + bb + c + d);
        b.horizontal.at(x, y) = 0.5 * (a + bb - c - d);
        b.vertical.at(x, y) = 0.5 * (a - bb + c - d);
        b.diagonal.at(x, y) = 0.5 * (a - bb - c + d);
      }
    }
    pyr.source_dims_.push_back({w, h});
    pyr.bands_.push_back(std::move(b));
    src = &pyr.bands_.back().approx;
  }
  return pyr;
}

Plane HaarIdwt(const WaveletPyramid& pyr) {
  if (pyr.csf_applied()) {
    throw StateError("cannot invert a CSF-weighted pyramid");
  }
  if (pyr.levels() == 0) return Plane();
  Plane approx = pyr.level(pyr.levels()).approx;
  for (int l = pyr.levels(); l >= 1; --l) {
    const Subbands& b = pyr.level(l);
    const int w = pyr.source_width(l);
    const int h = pyr.source_height(l);
    Plane out(w, h);
    for (int y = 0; y < b.approx.height(); ++y) {
      for (int x = 0; x < b.approx.width(); ++x) {
        const double A = approx.at(x, y);
        const double H = b.horizontal.at(x, y);
        const double V = b.vertical.at(x, y);
        const double D = b.diagonal.at(x, y);
        const int x0 = 2 * x;
        const int y0 = 2 * y;
        out.at(x0, y0) = 0.5 * (A + H + V + D);
        if (x0 + 1 < w) out.at(x0 + 1, y0) = 0.5 * (A + H - V - D);
        if (y0 + 1 < h) {
          out.at(x0, y0 + 1) = 0.5 * (A - H + V - D);
          if (x0 + 1 < w) out.at(x0 + 1, y0 + 1) = 0.5 * (A - H - V + D);
        }
      }
    }
    approx = std::move(out);
  }
  return approx;
}

WaveletPyramid DifferencePyramid(const WaveletPyramid& a,
                                 const WaveletPyramid& b) {
  if (a.levels() != b.levels() || a.csf_applied() != b.csf_applied()) {
    throw DimensionMismatchError("pyramids are not comparable");
  }
  WaveletPyramid out;
  out.source_dims_ = a.source_dims_;
  out.csf_applied_ = a.csf_applied_;
  for (int l = 1; l <= a.levels(); ++l) {
    const Subbands& x = a.level(l);
    const Subbands& y = b.level(l);
    out.bands_.push_back({Subtract(x.approx, y.approx),
                          Subtract(x.horizontal, y.horizontal),
                          Subtract(x.vertical, y.vertical),
                          Subtract(x.diagonal, y.diagonal)});
  }
  return out;
}

CsfWeights CsfWeights::Identity(int levels) {
  CsfWeights w;
  w.detail.assign(levels, {1.0, 1.0, 1.0});
  w.approx.assign(levels, 1.0);
  return w;
}

void CsfWeights::WriteCsv(std::ostream& out) const {
  static constexpr const char* kNames[] = {"H", "V", "D"};
  out << "level,orientation,weight\n";
  for (int l = 0; l < levels(); ++l) {
    out << l + 1 << ",A," << FormatDouble(approx[l]) << '\n';
    for (int o = 0; o < 3; ++o) {
      out << l + 1 << ',' << kNames[o] << ',' << FormatDouble(detail[l][o])
          << '\n';
    }
  }
}

double MannosSakrison(double f) {
  return 2.6 * (0.0192 + 0.114 * f) * std::exp(-std::pow(0.114 * f, 1.1));
}

CsfWeights MannosSakrisonWeights(const ViewingGeometry& geom, int levels,
                                 double pixel_scale) {
  if (levels < 1) throw DomainError("CSF levels must be >= 1");
  geom.Validate();
  const double ppd = geom.PixelsPerDegree() / pixel_scale;
  CsfWeights w;
  for (int l = 1; l <= levels; ++l) {
    const double weight = MannosSakrison(ppd / std::exp2(l + 1));
    w.detail.push_back({weight, weight, weight});
    w.approx.push_back(1.0);
  }
  return w;
}

WaveletPyramid ApplyCsf(WaveletPyramid pyr, const CsfWeights& weights) {
  if (pyr.csf_applied_) throw StateError("CSF weights already applied");
  if (weights.levels() < pyr.levels()) {
    throw DimensionMismatchError("CSF table has fewer levels than the pyramid");
  }
  for (int l = 1; l <= pyr.levels(); ++l) {
    Subbands& b = pyr.level(l);
    auto scale = [](Plane& p, double s) {
      if (s == 1.0) return;
      for (double& v : p.data()) v *= s;
    };
    scale(b.approx, weights.approx[l - 1]);
    scale(b.horizontal, weights.detail[l - 1][0]);
    scale(b.vertical, weights.detail[l - 1][1]);
    scale(b.diagonal, weights.detail[l - 1][2]);
  }
  pyr.csf_applied_ = true;
  return pyr;
}

const char* PlaneKindName(PlaneKind kind) {
  switch (kind) {
    case PlaneKind::kY:
      return "Y";
    case PlaneKind::kCb:
      return "Cb";
    case PlaneKind::kCr:
      return "Cr";
    case PlaneKind::kHdrmax1:
      return "HDRMAX1";
    case PlaneKind::kHdrmax2Pos:
      return "HDRMAX2P";
    case PlaneKind::kHdrmax2Neg:
      return "HDRMAX2N";
  }
  return "?";
}

TransformCounters& TransformCounters::Global() {
  static TransformCounters counters;
  return counters;
}

void TransformCounters::Reset() {
  for (auto& c : counts_) c.store(0);
  resamples_.store(0);
}

void TransformCounters::Increment(PlaneKind kind) {
  counts_[static_cast<int>(kind)].fetch_add(1, std::memory_order_relaxed);
}

void TransformCounters::IncrementResample() {
  resamples_.fetch_add(1, std::memory_order_relaxed);
}

int64_t TransformCounters::count(PlaneKind kind) const {
  return counts_[static_cast<int>(kind)].load();
}

int64_t TransformCounters::resamples() const { return resamples_.load(); }

PyramidPtr UnifiedTransformPlane(const Plane& plane, PlaneKind kind,
                                 const UnifiedConfig& cfg,
                                 double chroma_scale) {
  const double factor = SastFactor(cfg.geometry);
  const double snapped = SnapSastFactor(factor);
  WaveletPyramid pyr =
      snapped == 1.0 ? HaarDwt(plane, cfg.levels)
                     : HaarDwt(SastRescale(plane, factor, cfg.levels),
                               cfg.levels);
  pyr = ApplyCsf(std::move(pyr),
                 MannosSakrisonWeights(cfg.geometry, cfg.levels,
                                       snapped * chroma_scale));
  TransformCounters::Global().Increment(kind);
  return std::make_shared<const WaveletPyramid>(std::move(pyr));
}

const WaveletPyramid& FramePyramids::get(PlaneKind kind) const {
  const PyramidPtr& p = planes[static_cast<int>(kind)];
  if (!p) {
    throw StateError(std::string("no pyramid computed for plane ") +
                     PlaneKindName(kind));
  }
  return *p;
}

FramePyramids UnifiedTransform(const PlanarFrame& frame,
                               const std::array<bool, kPlaneKindCount>& wanted,
                               const UnifiedConfig& cfg) {
  FramePyramids out;
  const double chroma_scale =
      frame.subsampling == ChromaSubsampling::k420 ? 2.0 : 1.0;
  for (int k = 0; k < kPlaneKindCount; ++k) {
    if (!wanted[k]) continue;
    const auto kind = static_cast<PlaneKind>(k);
    switch (kind) {
      case PlaneKind::kY:
        out.planes[k] = UnifiedTransformPlane(frame.y, kind, cfg);
        break;
      case PlaneKind::kCb:
        out.planes[k] = UnifiedTransformPlane(frame.cb, kind, cfg, chroma_scale);
        break;
      case PlaneKind::kCr:
        out.planes[k] = UnifiedTransformPlane(frame.cr, kind, cfg, chroma_scale);
        break;
      case PlaneKind::kHdrmax1:
        out.planes[k] = UnifiedTransformPlane(
            HdrmaxTransform(frame.y, HdrmaxVariant::kH1, cfg.local_norm), kind,
            cfg);
        break;
      case PlaneKind::kHdrmax2Pos:
        out.planes[k] = UnifiedTransformPlane(
            HdrmaxTransform(frame.y, HdrmaxVariant::kH2Pos, cfg.local_norm),
            kind, cfg);
        break;
      case PlaneKind::kHdrmax2Neg:
        out.planes[k] = UnifiedTransformPlane(
            HdrmaxTransform(frame.y, HdrmaxVariant::kH2Neg, cfg.local_norm),
            kind, cfg);
        break;
    }
  }
  return out;
}

}  // namespace funque
