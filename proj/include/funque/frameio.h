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

#ifndef FUNQUE_FRAMEIO_H_
#define FUNQUE_FRAMEIO_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "funque/plane.h"

namespace funque {

enum class ChromaSubsampling { k420, k444 };

// How integer code values map onto [0,1].
enum class SampleRange {
  kFull,     // code / (2^b - 1)
  kLimited,  // narrow-range: luma [16, 235], chroma [16, 240] scaled by 2^(b-8)
};

// One decoded frame. Samples are normalized code values in [0,1].
struct PlanarFrame {
  Plane y;
  Plane cb;
  Plane cr;
  int width = 0;
  int height = 0;
  ChromaSubsampling subsampling = ChromaSubsampling::k420;
  int bit_depth = 8;
  int64_t frame_index = 0;
};

struct Rational {
  int num = 0;
  int den = 1;
};

struct VideoFormat {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  ChromaSubsampling subsampling = ChromaSubsampling::k420;
  Rational fps{0, 1};

  int chroma_width() const {
    return subsampling == ChromaSubsampling::k420 ? (width + 1) / 2 : width;
  }
  int chroma_height() const {
    return subsampling == ChromaSubsampling::k420 ? (height + 1) / 2 : height;
  }
  int bytes_per_sample() const { return bit_depth > 8 ? 2 : 1; }
  uint64_t frame_bytes() const;
};

// Sequential single-consumer reader of decoded frames.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  // Returns the next frame in display order, or nullopt at end of stream.
  virtual std::optional<PlanarFrame> Next() = 0;
  virtual const VideoFormat& format() const = 0;
  // Known up front for raw files; unknown for Y4M.
  virtual std::optional<int64_t> frame_count() const = 0;
};

std::unique_ptr<FrameSource> OpenY4m(const std::filesystem::path& path,
                                     SampleRange range = SampleRange::kFull);

std::unique_ptr<FrameSource> OpenRawYuv(const std::filesystem::path& path,
                                        int width, int height, int bit_depth,
                                        ChromaSubsampling subsampling,
                                        SampleRange range = SampleRange::kFull);

// Opens `path` as Y4M when it carries the ".y4m" extension. Other extensions
// are treated as raw planar YUV and require `raw_format`.
std::unique_ptr<FrameSource> OpenVideo(
    const std::filesystem::path& path,
    const std::optional<VideoFormat>& raw_format = std::nullopt,
    SampleRange range = SampleRange::kFull);

// Lockstep iteration over a reference and a test source.
class VideoPairStream {
 public:
  VideoPairStream(std::unique_ptr<FrameSource> ref,
                  std::unique_ptr<FrameSource> test);

  // Next (reference, test) pair or nullopt once both streams end together.
  // Throws LengthMismatchError or DimensionMismatchError.
  std::optional<std::pair<PlanarFrame, PlanarFrame>> NextPair();

  std::optional<int64_t> frame_count() const;
  Rational fps() const { return ref_->format().fps; }

 private:
  std::unique_ptr<FrameSource> ref_;
  std::unique_ptr<FrameSource> test_;
  int64_t pairs_read_ = 0;
};

// Quantizes a normalized sample back to its integer code at `bit_depth`.
uint32_t ToCode(double normalized, int bit_depth);

// Appends one frame as raw planar YUV (Y, Cb, Cr) at the frame's bit depth.
void WriteRawYuvFrame(std::ostream& out, const PlanarFrame& frame);

class Y4mWriter {
 public:
  Y4mWriter(const std::filesystem::path& path, const VideoFormat& format);
  void Write(const PlanarFrame& frame);

 private:
  std::ofstream out_;
  VideoFormat format_;
};

}  // namespace funque

#endif  // FUNQUE_FRAMEIO_H_
