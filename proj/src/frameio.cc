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

#include "funque/frameio.h"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <string_view>
#include <vector>

#include "funque/errors.h"

namespace funque {

namespace {

double MaxCode(int bit_depth) {
  return static_cast<double>((1u << bit_depth) - 1u);
}

// Decodes one plane of little-endian samples into normalized values.
void DecodePlane(const uint8_t* src, int bytes_per_sample, int bit_depth,
                 SampleRange range, bool is_chroma, Plane& dst) {
  const double max_code = MaxCode(bit_depth);
  const double step = static_cast<double>(1u << (bit_depth - 8));
  const double offset = 16.0 * step;
  const double span = (is_chroma ? 224.0 : 219.0) * step;
  auto data = dst.data();
  for (size_t i = 0; i < data.size(); ++i) {
    uint32_t code = src[i * bytes_per_sample];
    if (bytes_per_sample == 2) {
      code |= static_cast<uint32_t>(src[i * 2 + 1]) << 8;
    }
    double v;
    if (range == SampleRange::kFull) {
      v = static_cast<double>(code) / max_code;
    } else {
      v = (static_cast<double>(code) - offset) / span;
    }
    data[i] = std::clamp(v, 0.0, 1.0);
  }
}

PlanarFrame DecodeFrame(const std::vector<uint8_t>& bytes,
                        const VideoFormat& fmt, SampleRange range,
                        int64_t index) {
  PlanarFrame frame;
  frame.width = fmt.width;
  frame.height = fmt.height;
  frame.subsampling = fmt.subsampling;
  frame.bit_depth = fmt.bit_depth;
  frame.frame_index = index;
  frame.y = Plane(fmt.width, fmt.height);
  frame.cb = Plane(fmt.chroma_width(), fmt.chroma_height());
  frame.cr = Plane(fmt.chroma_width(), fmt.chroma_height());
  const int bps = fmt.bytes_per_sample();
  const uint8_t* p = bytes.data();
  DecodePlane(p, bps, fmt.bit_depth, range, false, frame.y);
  p += frame.y.size() * bps;
  DecodePlane(p, bps, fmt.bit_depth, range, true, frame.cb);
  p += frame.cb.size() * bps;
  DecodePlane(p, bps, fmt.bit_depth, range, true, frame.cr);
  return frame;
}

void ValidateFormat(const VideoFormat& fmt) {
  if (fmt.width <= 0 || fmt.height <= 0) {
    throw UnsupportedFormatError("frame dimensions must be positive");
  }
  if (fmt.bit_depth != 8 && fmt.bit_depth != 10 && fmt.bit_depth != 12) {
    throw UnsupportedFormatError("unsupported bit depth " +
                                 std::to_string(fmt.bit_depth));
  }
}

class Y4mSource : public FrameSource {
 public:
  Y4mSource(const std::filesystem::path& path, SampleRange range)
      : in_(path, std::ios::binary), range_(range) {
    if (!in_) {
      throw Error("cannot open " + path.string());
    }
    ParseHeader();
  }

  std::optional<PlanarFrame> Next() override {
    const uint64_t marker_offset = offset_;
    std::string line;
    if (!ReadLine(line)) {
      if (line.empty()) return std::nullopt;
      throw TruncationError(index_);
    }
    if (line.compare(0, 5, "FRAME") != 0 ||
        (line.size() > 5 && line[5] != ' ')) {
      throw ParseError("expected FRAME marker", marker_offset);
    }
    std::vector<uint8_t> bytes(format_.frame_bytes());
    in_.read(reinterpret_cast<char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
    if (static_cast<size_t>(in_.gcount()) != bytes.size()) {
      throw TruncationError(index_);
    }
    offset_ += bytes.size();
    return DecodeFrame(bytes, format_, range_, index_++);
  }

  const VideoFormat& format() const override { return format_; }
  std::optional<int64_t> frame_count() const override { return std::nullopt; }

 private:
  // Reads up to and excluding '\n'. Returns false when EOF precedes '\n'.
  bool ReadLine(std::string& line) {
    line.clear();
    char c;
    while (in_.get(c)) {
      ++offset_;
      if (c == '\n') return true;
      line.push_back(c);
      if (line.size() > 4096) {
        throw ParseError("header line too long", offset_);
      }
    }
    return false;
  }

  static int ParseInt(std::string_view s, uint64_t at) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError("malformed integer '" + std::string(s) + "'", at);
    }
    return v;
  }

  void ParseHeader() {
    std::string line;
    if (!ReadLine(line)) {
      throw ParseError("missing Y4M header line", offset_);
    }
    constexpr std::string_view kSignature = "YUV4MPEG2";
    if (line.compare(0, kSignature.size(), kSignature) != 0 ||
        (line.size() > kSignature.size() && line[kSignature.size()] != ' ')) {
      throw ParseError("missing YUV4MPEG2 signature", 0);
    }
    std::string colorspace = "420jpeg";
    size_t pos = kSignature.size();
    while (pos < line.size()) {
      if (line[pos] == ' ') {
        ++pos;
        continue;
      }
      size_t end = line.find(' ', pos);
      if (end == std::string::npos) end = line.size();
      std::string_view token(line.data() + pos, end - pos);
      const uint64_t at = pos;
      const char tag = token[0];
      std::string_view value = token.substr(1);
      switch (tag) {
        case 'W':
          format_.width = ParseInt(value, at);
          break;
        case 'H':
          format_.height = ParseInt(value, at);
          break;
        case 'F': {
          const size_t colon = value.find(':');
          if (colon == std::string_view::npos) {
            throw ParseError("malformed frame rate", at);
          }
          format_.fps.num = ParseInt(value.substr(0, colon), at);
          format_.fps.den = ParseInt(value.substr(colon + 1), at);
          break;
        }
        case 'I':
          if (value != "p" && value != "?") {
            throw UnsupportedFormatError("interlaced Y4M streams (I" +
                                         std::string(value) +
                                         ") are not supported");
          }
          break;
        case 'C':
          colorspace = std::string(value);
          break;
        case 'A':
        case 'X':
          break;
        default:
          throw ParseError("unknown header token '" + std::string(token) + "'",
                           at);
      }
      pos = end;
    }
    if (format_.width <= 0 || format_.height <= 0) {
      throw ParseError("header lacks positive W and H", 0);
    }
    if (colorspace == "420" || colorspace == "420jpeg" ||
        colorspace == "420paldv" || colorspace == "420mpeg2") {
      format_.subsampling = ChromaSubsampling::k420;
      format_.bit_depth = 8;
    } else if (colorspace == "420p10" || colorspace == "420p12") {
      format_.subsampling = ChromaSubsampling::k420;
      format_.bit_depth = colorspace == "420p10" ? 10 : 12;
    } else if (colorspace == "444") {
      format_.subsampling = ChromaSubsampling::k444;
      format_.bit_depth = 8;
    } else if (colorspace == "444p10" || colorspace == "444p12") {
      format_.subsampling = ChromaSubsampling::k444;
      format_.bit_depth = colorspace == "444p10" ? 10 : 12;
    } else {
      throw UnsupportedFormatError("unsupported Y4M colorspace C" + colorspace);
    }
  }

  std::ifstream in_;
  SampleRange range_;
  VideoFormat format_;
  uint64_t offset_ = 0;
  int64_t index_ = 0;
};

class RawYuvSource : public FrameSource {
 public:
  RawYuvSource(const std::filesystem::path& path, const VideoFormat& format,
               SampleRange range)
      : in_(path, std::ios::binary), format_(format), range_(range) {
    if (!in_) {
      throw Error("cannot open " + path.string());
    }
    ValidateFormat(format_);
    const uint64_t size = std::filesystem::file_size(path);
    const uint64_t frame_bytes = format_.frame_bytes();
    if (size % frame_bytes != 0) {
      throw GeometryError(frame_bytes, size);
    }
    count_ = static_cast<int64_t>(size / frame_bytes);
  }

  std::optional<PlanarFrame> Next() override {
    if (index_ >= count_) return std::nullopt;
    std::vector<uint8_t> bytes(format_.frame_bytes());
    in_.read(reinterpret_cast<char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
    if (static_cast<size_t>(in_.gcount()) != bytes.size()) {
      throw TruncationError(index_);
    }
    return DecodeFrame(bytes, format_, range_, index_++);
  }

  const VideoFormat& format() const override { return format_; }
  std::optional<int64_t> frame_count() const override { return count_; }

 private:
  std::ifstream in_;
  VideoFormat format_;
  SampleRange range_;
  int64_t count_ = 0;
  int64_t index_ = 0;
};

void WritePlane(std::ostream& out, const Plane& plane, int bit_depth) {
  const int bps = bit_depth > 8 ? 2 : 1;
  std::vector<char> bytes(plane.size() * bps);
  auto data = plane.data();
  for (size_t i = 0; i < data.size(); ++i) {
    const uint32_t code = ToCode(data[i], bit_depth);
    bytes[i * bps] = static_cast<char>(code & 0xff);
    if (bps == 2) bytes[i * 2 + 1] = static_cast<char>(code >> 8);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

uint64_t VideoFormat::frame_bytes() const {
  const uint64_t luma = static_cast<uint64_t>(width) * height;
  const uint64_t chroma =
      static_cast<uint64_t>(chroma_width()) * chroma_height();
  return (luma + 2 * chroma) * bytes_per_sample();
}

std::unique_ptr<FrameSource> OpenY4m(const std::filesystem::path& path,
                                     SampleRange range) {
  return std::make_unique<Y4mSource>(path, range);
}

std::unique_ptr<FrameSource> OpenRawYuv(const std::filesystem::path& path,
                                        int width, int height, int bit_depth,
                                        ChromaSubsampling subsampling,
                                        SampleRange range) {
  VideoFormat fmt;
  fmt.width = width;
  fmt.height = height;
  fmt.bit_depth = bit_depth;
  fmt.subsampling = subsampling;
  return std::make_unique<RawYuvSource>(path, fmt, range);
}

std::unique_ptr<FrameSource> OpenVideo(const std::filesystem::path& path,
                                       const std::optional<VideoFormat>& raw,
                                       SampleRange range) {
  if (!std::filesystem::exists(path)) {
    throw Error("no such file: " + path.string());
  }
  if (path.extension() == ".y4m") return OpenY4m(path, range);
  if (!raw) {
    throw Error("raw YUV input " + path.string() +
                " needs width, height, bit depth and subsampling");
  }
  return std::make_unique<RawYuvSource>(path, *raw, range);
}

VideoPairStream::VideoPairStream(std::unique_ptr<FrameSource> ref,
                                 std::unique_ptr<FrameSource> test)
    : ref_(std::move(ref)), test_(std::move(test)) {}

std::optional<std::pair<PlanarFrame, PlanarFrame>> VideoPairStream::NextPair() {
  auto r = ref_->Next();
  auto t = test_->Next();
  if (!r && !t) return std::nullopt;
  if (!r) throw LengthMismatchError("reference", pairs_read_);
  if (!t) throw LengthMismatchError("test", pairs_read_);
  if (r->width != t->width || r->height != t->height ||
      r->subsampling != t->subsampling) {
    throw DimensionMismatchError(
        "reference is " + std::to_string(r->width) + "x" +
        std::to_string(r->height) + ", test is " + std::to_string(t->width) +
        "x" + std::to_string(t->height) + " (frame " +
        std::to_string(pairs_read_) + ")");
  }
  ++pairs_read_;
  return std::make_pair(std::move(*r), std::move(*t));
}

std::optional<int64_t> VideoPairStream::frame_count() const {
  return ref_->frame_count();
}

uint32_t ToCode(double normalized, int bit_depth) {
  const double max_code = MaxCode(bit_depth);
  const double v = std::clamp(normalized, 0.0, 1.0) * max_code;
  return static_cast<uint32_t>(v + 0.5);
}

void WriteRawYuvFrame(std::ostream& out, const PlanarFrame& frame) {
  WritePlane(out, frame.y, frame.bit_depth);
  WritePlane(out, frame.cb, frame.bit_depth);
  WritePlane(out, frame.cr, frame.bit_depth);
}

Y4mWriter::Y4mWriter(const std::filesystem::path& path,
                     const VideoFormat& format)
    : out_(path, std::ios::binary), format_(format) {
  if (!out_) throw Error("cannot create " + path.string());
  ValidateFormat(format_);
  std::string cs =
      format_.subsampling == ChromaSubsampling::k420 ? "420" : "444";
  if (format_.bit_depth > 8) cs += "p" + std::to_string(format_.bit_depth);
  const Rational fps = format_.fps.num > 0 ? format_.fps : Rational{25, 1};
  out_ << "YUV4MPEG2 W" << format_.width << " H" << format_.height << " F"
       << fps.num << ":" << fps.den << " Ip A1:1 C" << cs << "\n";
}

void Y4mWriter::Write(const PlanarFrame& frame) {
  if (frame.width != format_.width || frame.height != format_.height) {
    throw DimensionMismatchError("frame does not match Y4M stream geometry");
  }
  out_ << "FRAME\n";
  WritePlane(out_, frame.y, format_.bit_depth);
  WritePlane(out_, frame.cb, format_.bit_depth);
  WritePlane(out_, frame.cr, format_.bit_depth);
  if (!out_) throw Error("write failed");
}

}  // namespace funque
