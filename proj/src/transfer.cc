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

#include "funque/transfer.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "funque/errors.h"

namespace funque {

namespace internal {
extern const std::string_view kPu21BandingGlareData;
}  // namespace internal

double PqEotf(double code, const PqConstants& pq) {
  if (!(code >= 0.0 && code <= 1.0)) {
    throw DomainError("PQ code value outside [0,1]");
  }
  const double ep = std::pow(code, 1.0 / pq.m2);
  const double num = std::max(ep - pq.c1, 0.0);
  const double den = pq.c2 - pq.c3 * ep;
  return pq.peak_nits * std::pow(num / den, 1.0 / pq.m1);
}

Pu21Params Pu21Params::Parse(std::string_view text) {
  Pu21Params out;
  std::array<bool, 7> seen{};
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string key;
    double value;
    if (!(fields >> key)) continue;
    if (!(fields >> value) || key.size() != 2 || key[0] != 'p' ||
        key[1] < '1' || key[1] > '7') {
      throw DomainError("malformed PU21 coefficient line: " + line);
    }
    const int idx = key[1] - '1';
    out.p[idx] = value;
    seen[idx] = true;
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    throw DomainError("PU21 coefficient table needs p1..p7");
  }
  out.Validate();
  return out;
}

Pu21Params Pu21Params::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

const Pu21Params& Pu21Params::BandingGlare() {
  static const Pu21Params params = Parse(internal::kPu21BandingGlareData);
  return params;
}

namespace {

double Pu21Raw(double y, const Pu21Params& params) {
  const auto& p = params.p;
  const double yp = std::pow(y, p[3]);
  return p[6] * (std::pow((p[0] + p[1] * yp) / (1.0 + p[2] * yp), p[4]) - p[5]);
}

}  // namespace

void Pu21Params::Validate() const {
  if (std::abs(Pu21Raw(kMinLuminance, *this)) >= 1e-3) {
    throw DomainError("PU21 coefficients fail the V(0.005) ~ 0 check");
  }
  constexpr int kGrid = 10000;
  const double log_lo = std::log10(kMinLuminance);
  const double log_hi = std::log10(kMaxLuminance);
  double prev = Pu21Raw(kMinLuminance, *this);
  for (int i = 1; i < kGrid; ++i) {
    const double y =
        std::pow(10.0, log_lo + (log_hi - log_lo) * i / (kGrid - 1));
    const double v = Pu21Raw(y, *this);
    if (!(v > prev)) {
      throw DomainError("PU21 coefficients are not strictly increasing");
    }
    prev = v;
  }
}

double Pu21Encode(double luminance, const Pu21Params& params) {
  if (!(luminance >= 0.0)) {
    throw DomainError("negative luminance passed to PU21");
  }
  const double y = std::clamp(luminance, Pu21Params::kMinLuminance,
                              Pu21Params::kMaxLuminance);
  return Pu21Raw(y, params);
}

double Pu21Peak(const Pu21Params& params) {
  return Pu21Raw(Pu21Params::kMaxLuminance, params);
}

double Hdrmax1(double x, Hdrmax1Form form) {
  if (form == Hdrmax1Form::kLiteral) {
    const double s = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    return s * std::exp(4.0 * std::abs(x)) - 1.0;
  }
  const double mag = std::expm1(4.0 * std::abs(x));
  return x < 0.0 ? -mag : mag;
}

void LocalNormConfig::Validate() const {
  for (int w : {minmax_window, meansub_window}) {
    if (w < 3 || w % 2 == 0) {
      throw DomainError("local normalization windows must be odd and >= 3");
    }
  }
  if (!(sigma() > 0.0)) throw DomainError("gaussian sigma must be positive");
}

namespace {

template <typename Better>
void SlidingExtremum(std::span<const double> in, int radius,
                     std::span<double> out, Better better) {
  const int n = static_cast<int>(in.size());
  std::vector<int> dq(in.size());
  int head = 0;
  int tail = 0;
  int next = 0;
  for (int i = 0; i < n; ++i) {
    const int hi = std::min(n - 1, i + radius);
    for (; next <= hi; ++next) {
      while (tail > head && !better(in[dq[tail - 1]], in[next])) --tail;
      dq[tail++] = next;
    }
    while (dq[head] < i - radius) ++head;
    out[i] = in[dq[head]];
  }
}

template <typename Better>
Plane SeparableExtremum(const Plane& plane, int window, Better better) {
  const int r = window / 2;
  const int w = plane.width();
  const int h = plane.height();
  Plane rows(w, h);
  for (int y = 0; y < h; ++y) {
    SlidingExtremum(plane.row(y), r, rows.row(y), better);
  }
  Plane out(w, h);
  std::vector<double> col(h);
  std::vector<double> res(h);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) col[y] = rows.at(x, y);
    SlidingExtremum(col, r, res, better);
    for (int y = 0; y < h; ++y) out.at(x, y) = res[y];
  }
  return out;
}

}  // namespace

void SlidingMin(std::span<const double> in, int radius, std::span<double> out) {
  SlidingExtremum(in, radius, out, [](double a, double b) { return a < b; });
}

void SlidingMax(std::span<const double> in, int radius, std::span<double> out) {
  SlidingExtremum(in, radius, out, [](double a, double b) { return a > b; });
}

Plane LocalMin(const Plane& plane, int window) {
  return SeparableExtremum(plane, window,
                           [](double a, double b) { return a < b; });
}

Plane LocalMax(const Plane& plane, int window) {
  return SeparableExtremum(plane, window,
                           [](double a, double b) { return a > b; });
}

Plane LocalMinMaxNormalize(const Plane& plane, const LocalNormConfig& cfg) {
  cfg.Validate();
  const Plane lo = LocalMin(plane, cfg.minmax_window);
  const Plane hi = LocalMax(plane, cfg.minmax_window);
  Plane out(plane.width(), plane.height());
  auto o = out.data();
  auto in = plane.data();
  auto mn = lo.data();
  auto mx = hi.data();
  for (size_t i = 0; i < o.size(); ++i) {
    const double range = mx[i] - mn[i];
    o[i] = range > 0.0
               ? std::clamp(2.0 * (in[i] - mn[i]) / range - 1.0, -1.0, 1.0)
               : 0.0;
  }
  return out;
}

std::vector<double> GaussianKernel(int window, double sigma) {
  const int r = window / 2;
  std::vector<double> taps(window);
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    taps[i + r] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += taps[i + r];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

Plane GaussianLocalMean(const Plane& plane, int window, double sigma) {
  // Accumulating offsets from the centre sample keeps flat regions exact.
  const std::vector<double> taps = GaussianKernel(window, sigma);
  const int r = window / 2;
  const int w = plane.width();
  const int h = plane.height();
  Plane tmp(w, h);
  for (int y = 0; y < h; ++y) {
    auto src = plane.row(y);
    auto dst = tmp.row(y);
    for (int x = 0; x < w; ++x) {
      const double c = src[x];
      double acc = 0.0;
      for (int k = -r; k <= r; ++k) {
        acc += taps[k + r] * (src[std::clamp(x + k, 0, w - 1)] - c);
      }
      dst[x] = c + acc;
    }
  }
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    auto dst = out.row(y);
    for (int x = 0; x < w; ++x) {
      const double c = tmp.at(x, y);
      double acc = 0.0;
      for (int k = -r; k <= r; ++k) {
        acc += taps[k + r] * (tmp.at(x, std::clamp(y + k, 0, h - 1)) - c);
      }
      dst[x] = c + acc;
    }
  }
  return out;
}

Plane LocalMeanSubNormalize(const Plane& plane, const LocalNormConfig& cfg) {
  cfg.Validate();
  const Plane mean = GaussianLocalMean(plane, cfg.meansub_window, cfg.sigma());
  Plane out(plane.width(), plane.height());
  auto o = out.data();
  auto in = plane.data();
  auto m = mean.data();
  for (size_t i = 0; i < o.size(); ++i) {
    o[i] = in[i] - m[i];
  }
  return out;
}

std::string_view HdrmaxVariantName(HdrmaxVariant v) {
  switch (v) {
    case HdrmaxVariant::kH1:
      return "HDRMAX1";
    case HdrmaxVariant::kH2Pos:
      return "HDRMAX2P";
    case HdrmaxVariant::kH2Neg:
      return "HDRMAX2N";
  }
  return "";
}

Plane HdrmaxTransform(const Plane& luma, HdrmaxVariant variant,
                      const LocalNormConfig& cfg) {
  Plane out = variant == HdrmaxVariant::kH1 ? LocalMinMaxNormalize(luma, cfg)
                                            : LocalMeanSubNormalize(luma, cfg);
  for (double& v : out.data()) {
    switch (variant) {
      case HdrmaxVariant::kH1:
        v = Hdrmax1(v, cfg.hdrmax1_form);
        break;
      case HdrmaxVariant::kH2Pos:
        v = Hdrmax2Pos(v);
        break;
      case HdrmaxVariant::kH2Neg:
        v = Hdrmax2Neg(v);
        break;
    }
  }
  return out;
}

NonlinearityCurve SampleCurve(CurveName name, double lo, double hi,
                              int count) {
  NonlinearityCurve curve{name, lo, hi, {}};
  curve.samples.reserve(count);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const int n1 = count - 1;
  for (int i = 0; i < count; ++i) {
    // Integer-symmetric numerator keeps the grid exactly mirrored about mid.
    const double x = n1 > 0 ? mid + half * (static_cast<double>(2 * i - n1) / n1)
                            : lo;
    double fx = 0.0;
    switch (name) {
      case CurveName::kHdrmax1:
        fx = Hdrmax1(x);
        break;
      case CurveName::kHdrmax2Pos:
        fx = Hdrmax2Pos(x);
        break;
      case CurveName::kHdrmax2Neg:
        fx = Hdrmax2Neg(x);
        break;
      case CurveName::kPu21:
        fx = Pu21Encode(x);
        break;
      case CurveName::kPqEotf:
        fx = PqEotf(x);
        break;
    }
    curve.samples.emplace_back(x, fx);
  }
  return curve;
}

std::string FormatDouble(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void WriteNonlinearityCsv(std::ostream& out, int count) {
  const auto h1 = SampleCurve(CurveName::kHdrmax1, -1.0, 1.0, count);
  const auto pos = SampleCurve(CurveName::kHdrmax2Pos, -1.0, 1.0, count);
  const auto neg = SampleCurve(CurveName::kHdrmax2Neg, -1.0, 1.0, count);
  out << "x,hdrmax1,hdrmax2_pos,hdrmax2_neg\n";
  for (int i = 0; i < count; ++i) {
    out << FormatDouble(h1.samples[i].first) << ','
        << FormatDouble(h1.samples[i].second) << ','
        << FormatDouble(pos.samples[i].second) << ','
        << FormatDouble(neg.samples[i].second) << '\n';
  }
}

}  // namespace funque
