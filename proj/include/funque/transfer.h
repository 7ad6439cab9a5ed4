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

#ifndef FUNQUE_TRANSFER_H_
#define FUNQUE_TRANSFER_H_

#include <array>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "funque/plane.h"

namespace funque {

// SMPTE ST 2084 constants.
struct PqConstants {
  double m1 = 2610.0 / 16384.0;
  double m2 = 2523.0 * 128.0 / 4096.0;
  double c1 = 3424.0 / 4096.0;
  double c2 = 2413.0 * 32.0 / 4096.0;
  double c3 = 2392.0 * 32.0 / 4096.0;
  double peak_nits = 10000.0;
};

// PQ EOTF: normalized code value in [0,1] to luminance in cd/m^2.
// Throws DomainError outside [0,1].
double PqEotf(double code, const PqConstants& pq = {});

// Seven-parameter PU21 fit. See data/pu21_banding_glare.txt.
struct Pu21Params {
  std::array<double, 7> p{};

  static constexpr double kMinLuminance = 0.005;
  static constexpr double kMaxLuminance = 10000.0;

  // The bundled banding+glare coefficients, parsed and validated once.
  static const Pu21Params& BandingGlare();
  static Pu21Params Parse(std::string_view text);
  static Pu21Params Load(const std::filesystem::path& path);

  // Throws DomainError unless the curve is strictly increasing on its domain
  // and |V(0.005)| < 1e-3.
  void Validate() const;
};

// Luminance in cd/m^2 to PU21 units. Clamps to [0.005, 10000]; negative input
// throws DomainError.
double Pu21Encode(double luminance,
                  const Pu21Params& params = Pu21Params::BandingGlare());

// PU21 value at the 10000 cd/m^2 peak, used to rescale PU values to [0,1].
double Pu21Peak(const Pu21Params& params = Pu21Params::BandingGlare());

enum class Hdrmax1Form {
  kOddSymmetric,  // sgn(x) * (exp(4|x|) - 1)
  kLiteral,       // sgn(x) * exp(4|x|) - 1, discontinuous at 0
};

double Hdrmax1(double x, Hdrmax1Form form = Hdrmax1Form::kOddSymmetric);
inline double Hdrmax2Pos(double x);
inline double Hdrmax2Neg(double x);

struct LocalNormConfig {
  int minmax_window = 17;
  int meansub_window = 31;
  // Non-positive means meansub_window / 6.
  double gaussian_sigma = 0.0;
  Hdrmax1Form hdrmax1_form = Hdrmax1Form::kOddSymmetric;

  double sigma() const {
    return gaussian_sigma > 0.0 ? gaussian_sigma : meansub_window / 6.0;
  }
  // Throws DomainError for even windows or windows below 3.
  void Validate() const;
};

// Sliding-window extrema over a 1-D signal with edge replication. `radius`
// samples on either side; monotonic-deque, O(n).
void SlidingMin(std::span<const double> in, int radius, std::span<double> out);
void SlidingMax(std::span<const double> in, int radius, std::span<double> out);

// Separable 2-D extrema over (2r+1)x(2r+1) windows, edge-replicated.
Plane LocalMin(const Plane& plane, int window);
Plane LocalMax(const Plane& plane, int window);

// 2 (I - Imin) / (Imax - Imin) - 1 per pixel; flat windows map to 0.
Plane LocalMinMaxNormalize(const Plane& plane, const LocalNormConfig& cfg = {});

// Unit-sum truncated Gaussian taps of length `window`.
std::vector<double> GaussianKernel(int window, double sigma);

// Separable Gaussian-weighted local mean, edge-replicated.
Plane GaussianLocalMean(const Plane& plane, int window, double sigma);

// I - I_mean per pixel.
Plane LocalMeanSubNormalize(const Plane& plane,
                            const LocalNormConfig& cfg = {});

enum class HdrmaxVariant { kH1, kH2Pos, kH2Neg };

std::string_view HdrmaxVariantName(HdrmaxVariant v);

// Local normalization followed by the variant's non-linearity, applied to
// [0,1]-normalized luma.
Plane HdrmaxTransform(const Plane& luma, HdrmaxVariant variant,
                      const LocalNormConfig& cfg = {});

enum class CurveName { kHdrmax1, kHdrmax2Pos, kHdrmax2Neg, kPu21, kPqEotf };

struct NonlinearityCurve {
  CurveName name;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::pair<double, double>> samples;
};

// `count` samples uniformly spaced on [lo, hi], endpoints included. Sample i
// sits at lo + (hi - lo) * i / (count - 1).
NonlinearityCurve SampleCurve(CurveName name, double lo, double hi, int count);

// Writes the `x,hdrmax1,hdrmax2_pos,hdrmax2_neg` table on [-1,1].
void WriteNonlinearityCsv(std::ostream& out, int count = 1001);

// Shortest round-trip decimal form of `v`.
std::string FormatDouble(double v);

// ---------------------------------------------------------------------------

inline double Hdrmax2Pos(double x) { return std::exp(0.5 * x); }
inline double Hdrmax2Neg(double x) { return std::exp(-5.0 * x); }

}  // namespace funque

#endif  // FUNQUE_TRANSFER_H_
