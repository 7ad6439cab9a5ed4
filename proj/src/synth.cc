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

#include "funque/synth.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "funque/errors.h"
#include "funque/frameio.h"
#include "funque/plane.h"
#include "funque/random.h"
#include "funque/transfer.h"

namespace funque {
namespace {

constexpr int kBitDepth = 10;
constexpr double kMaxCode = 1023.0;

struct Wave {
  double fx, fy, phase, amp;
};

struct Blob {
  double cx, cy, radius, amp;
};

// Procedural content on a canvas wider than the frame; frame t is the
// window starting at column t.
struct Content {
  std::vector<Wave> luma_waves;
  std::vector<Wave> chroma_waves[2];
  std::vector<Blob> blobs;
  double gx, gy, base;

  double Luma(double x, double y, int w, int h) const {
    double v = base + gx * (x / w - 0.5) + gy * (y / h - 0.5);
    for (const Wave& wv : luma_waves) {
      v += wv.amp * std::sin(2.0 * std::numbers::pi *
                                 (wv.fx * x + wv.fy * y) +
                             wv.phase);
    }
    for (const Blob& b : blobs) {
      const double dx = x - b.cx;
      const double dy = y - b.cy;
      v += b.amp * std::exp(-(dx * dx + dy * dy) / (2.0 * b.radius * b.radius));
    }
    return std::clamp(v, 0.02, 0.98);
  }

  double Chroma(int c, double x, double y) const {
    double v = 0.5;
    for (const Wave& wv : chroma_waves[c]) {
      v += wv.amp * std::sin(2.0 * std::numbers::pi *
                                 (wv.fx * x + wv.fy * y) +
                             wv.phase);
    }
    return std::clamp(v, 0.0, 1.0);
  }
};

Content MakeContent(Rng& rng, int canvas_w, int h) {
  Content c;
  c.base = rng.Uniform(0.35, 0.55);
  c.gx = rng.Uniform(-0.2, 0.2);
  c.gy = rng.Uniform(-0.2, 0.2);
  // Band-limited texture: random orientations, periods of 3 to 24 pixels.
  for (int i = 0; i < 12; ++i) {
    const double period = rng.Uniform(3.0, 24.0);
    const double theta = rng.Uniform(0.0, std::numbers::pi);
    c.luma_waves.push_back({std::cos(theta) / period,
                            std::sin(theta) / period,
                            rng.Uniform(0.0, 2.0 * std::numbers::pi),
                            rng.Uniform(0.01, 0.04)});
  }
  for (auto& waves : c.chroma_waves) {
    for (int i = 0; i < 4; ++i) {
      const double period = rng.Uniform(8.0, 32.0);
      const double theta = rng.Uniform(0.0, std::numbers::pi);
      waves.push_back({std::cos(theta) / period, std::sin(theta) / period,
                       rng.Uniform(0.0, 2.0 * std::numbers::pi),
                       rng.Uniform(0.01, 0.05)});
    }
  }
  // Specular highlights reaching toward the top of the PQ code range.
  for (int i = 0; i < 3; ++i) {
    c.blobs.push_back({rng.Uniform(0.0, canvas_w), rng.Uniform(0.0, h),
                       rng.Uniform(2.0, 6.0), rng.Uniform(0.25, 0.45)});
  }
  return c;
}

// Integer-valued 10-bit codes stored as doubles.
Plane Render(int w, int h, int offset,
             const std::function<double(double, double)>& f, int scale) {
  Plane p(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double sx = (x + 0.5) * scale - 0.5 + offset;
      const double sy = (y + 0.5) * scale - 0.5;
      p.at(x, y) = std::round(f(sx, sy) * kMaxCode);
    }
  }
  return p;
}

Plane Degrade(const Plane& codes, double sigma, int step) {
  Plane out = codes;
  if (sigma > 0.0) {
    const int window = 2 * static_cast<int>(std::ceil(3.0 * sigma)) + 1;
    out = GaussianLocalMean(codes, window, sigma);
  }
  for (double& v : out.data()) {
    v = std::clamp(std::round(v / step) * step, 0.0, kMaxCode);
  }
  return out;
}

PlanarFrame ToFrame(const Plane& y, const Plane& cb, const Plane& cr,
                    int64_t index) {
  PlanarFrame f;
  f.y = Scale(y, 1.0 / kMaxCode);
  f.cb = Scale(cb, 1.0 / kMaxCode);
  f.cr = Scale(cr, 1.0 / kMaxCode);
  f.width = y.width();
  f.height = y.height();
  f.subsampling = ChromaSubsampling::k420;
  f.bit_depth = kBitDepth;
  f.frame_index = index;
  return f;
}

}  // namespace

double SynthBlurSigma(int level) { return 0.6 * level; }

int SynthQuantStep(int level) { return 1 + 2 * level; }

DatasetManifest SynthesizeDataset(const SynthParams& params,
                                  const std::filesystem::path& out_dir) {
  if (params.width < 64 || params.height < 64) {
    throw DomainError("synthetic videos must be at least 64x64");
  }
  if (params.n_contents < 1 || params.n_levels < 1 || params.frames < 1) {
    throw DomainError("synthetic dataset needs contents, levels and frames");
  }
  std::filesystem::create_directories(out_dir);
  VideoFormat fmt;
  fmt.width = params.width;
  fmt.height = params.height;
  fmt.bit_depth = kBitDepth;
  fmt.subsampling = ChromaSubsampling::k420;
  fmt.fps = {24, 1};
  const int w = params.width;
  const int h = params.height;
  const int cw = fmt.chroma_width();
  const int ch = fmt.chroma_height();

  DatasetManifest manifest;
  for (int c = 0; c < params.n_contents; ++c) {
    Rng rng(StreamSeed(params.seed, static_cast<uint64_t>(c)));
    const Content content = MakeContent(rng, w + params.frames, h);
    auto luma = [&](double x, double y) { return content.Luma(x, y, w, h); };
    auto cb = [&](double x, double y) { return content.Chroma(0, x, y); };
    auto cr = [&](double x, double y) { return content.Chroma(1, x, y); };

    const std::string cid = "c" + std::to_string(c);
    const std::filesystem::path ref_path = out_dir / (cid + "_ref.y4m");
    std::vector<Y4mWriter> writers;
    writers.emplace_back(ref_path, fmt);
    for (int d = 0; d < params.n_levels; ++d) {
      writers.emplace_back(out_dir / (cid + "_d" + std::to_string(d) + ".y4m"),
                           fmt);
    }
    for (int t = 0; t < params.frames; ++t) {
      const Plane y = Render(w, h, t, luma, 1);
      const Plane u = Render(cw, ch, t, cb, 2);
      const Plane v = Render(cw, ch, t, cr, 2);
      writers[0].Write(ToFrame(y, u, v, t));
      for (int d = 0; d < params.n_levels; ++d) {
        const double sigma = SynthBlurSigma(d);
        const int step = SynthQuantStep(d);
        writers[d + 1].Write(ToFrame(Degrade(y, sigma, step),
                                     Degrade(u, sigma / 2.0, step),
                                     Degrade(v, sigma / 2.0, step), t));
      }
    }
    for (int d = 0; d < params.n_levels; ++d) {
      ManifestEntry e;
      e.video_id = cid + "_d" + std::to_string(d);
      e.content_id = cid;
      e.content_group = "g" + std::to_string(c);
      e.ref_path = ref_path;
      e.test_path = out_dir / (e.video_id + ".y4m");
      const double clean = 100.0 * std::exp(-0.35 * d);
      e.mos_dark = clean + params.mos_noise * rng.Normal();
      e.mos_bright = clean + params.mos_noise * rng.Normal();
      manifest.entries.push_back(std::move(e));
    }
  }
  WriteManifest(manifest, out_dir / "manifest.csv");
  return manifest;
}

}  // namespace funque
