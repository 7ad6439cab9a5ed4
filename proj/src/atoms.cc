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

#include "funque/atoms.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "funque/errors.h"
#include "funque/moments.h"
#include "funque/transfer.h"

namespace funque {

namespace {

void RequireComparable(const WaveletPyramid& a, const WaveletPyramid& b,
                       int level) {
  if (a.levels() < level || b.levels() < level || level < 1) {
    throw DomainError("pyramid lacks level " + std::to_string(level));
  }
  if (!a.level(level).approx.SameShape(b.level(level).approx)) {
    throw DimensionMismatchError("pyramids differ in geometry");
  }
}

constexpr std::array<Orientation, 3> kOrientations = {
    Orientation::kHorizontal, Orientation::kVertical, Orientation::kDiagonal};

}  // namespace

std::array<double, 4> MsEssimExponents() {
  std::array<double, 4> b = {0.0448, 0.2856, 0.3001, 0.2363};
  const double sum = b[0] + b[1] + b[2] + b[3];
  for (double& v : b) v /= sum;
  return b;
}

double CovPooledScore(std::span<const double> map) {
  if (map.empty()) return 0.0;
  double sum = 0.0;
  for (double v : map) sum += v;
  const double mu = sum / static_cast<double>(map.size());
  if (mu == 0.0) return 0.0;
  double ss = 0.0;
  for (double v : map) ss += (v - mu) * (v - mu);
  const double sigma = std::sqrt(ss / static_cast<double>(map.size()));
  return std::clamp(mu * (1.0 - sigma / mu), 0.0, 1.0);
}

double MsEssim(const WaveletPyramid& ref, const WaveletPyramid& test) {
  constexpr int kScales = 4;
  RequireComparable(ref, test, kScales);
  const auto beta = MsEssimExponents();
  double score = 1.0;
  for (int l = 1; l <= kScales; ++l) {
    // Level-l approximation of a [0,1] input spans [0, 2^l].
    const double range = std::exp2(l);
    const double c1 = (0.01 * range) * (0.01 * range);
    const double c2 = (0.03 * range) * (0.03 * range);
    const MomentMaps m = ComputeMomentMaps(ref.level(l).approx,
                                           test.level(l).approx, kMomentWindow);
    const double q = CovPooledScore(SsimMap(m, c1, c2).data());
    score *= std::pow(q, beta[l - 1]);
  }
  return score;
}

double DlmS(const WaveletPyramid& ref, const WaveletPyramid& test, int level) {
  if (level == 0) level = ref.levels();
  RequireComparable(ref, test, level);
  const Subbands& o = ref.level(level);
  const Subbands& t = test.level(level);
  const int w = o.approx.width();
  const int h = o.approx.height();
  int border = static_cast<int>(std::ceil(0.1 * std::min(w, h)));
  if (2 * border >= std::min(w, h)) border = 0;
  constexpr double kAngleTolerance = 1.0;  // degrees
  constexpr double kToDegrees = 180.0 / std::numbers::pi;

  std::array<double, 3> restored{};  // sum |R'|^3 per orientation
  std::array<double, 3> original{};  // sum |O|^3 per orientation
  for (int y = border; y < h - border; ++y) {
    for (int x = border; x < w - border; ++x) {
      const double psi_o =
          std::atan2(o.vertical.at(x, y), o.horizontal.at(x, y)) * kToDegrees;
      const double psi_t =
          std::atan2(t.vertical.at(x, y), t.horizontal.at(x, y)) * kToDegrees;
      double dpsi = std::abs(psi_o - psi_t);
      dpsi = std::min(dpsi, 360.0 - dpsi);
      const bool aligned = dpsi < kAngleTolerance;
      for (size_t k = 0; k < kOrientations.size(); ++k) {
        const double ov = o.detail(kOrientations[k]).at(x, y);
        const double tv = t.detail(kOrientations[k]).at(x, y);
        double r;
        if (aligned) {
          r = tv;
        } else if (ov == 0.0) {
          r = 0.0;
        } else {
          r = std::clamp(tv / ov, 0.0, 1.0) * ov;
        }
        const double additive = tv - r;
        const double masked = std::max(std::abs(r) - std::abs(additive), 0.0);
        restored[k] += masked * masked * masked;
        original[k] += std::abs(ov) * ov * ov;
      }
    }
  }
  double num = 0.0;
  double den = 0.0;
  for (size_t k = 0; k < 3; ++k) {
    num += std::cbrt(restored[k]);
    den += std::cbrt(original[k]);
  }
  if (den <= kEpsilon) return 1.0;
  return std::clamp(num / den, 0.0, 1.0);
}

double Mad(const Plane& a, const Plane& b) {
  if (!a.SameShape(b)) throw DimensionMismatchError("MAD band shapes differ");
  if (a.empty()) return 0.0;
  auto x = a.data();
  auto y = b.data();
  double sum = 0.0;
  for (size_t i = 0; i < x.size(); ++i) sum += std::abs(x[i] - y[i]);
  return sum / static_cast<double>(x.size());
}

double ScaledBlockEntropy(double var) {
  const double h = std::log(2.0 * std::numbers::pi * std::numbers::e *
                            (var + kEntropyNoiseVariance));
  return std::log1p(var) * h;
}

namespace {

double BlockVariance(const Plane& band, int bx, int by) {
  constexpr int n = kEntropyBlock * kEntropyBlock;
  double sum = 0.0;
  for (int y = 0; y < kEntropyBlock; ++y) {
    for (int x = 0; x < kEntropyBlock; ++x) {
      sum += band.at(bx * kEntropyBlock + x, by * kEntropyBlock + y);
    }
  }
  const double mean = sum / n;
  double ss = 0.0;
  for (int y = 0; y < kEntropyBlock; ++y) {
    for (int x = 0; x < kEntropyBlock; ++x) {
      const double d =
          band.at(bx * kEntropyBlock + x, by * kEntropyBlock + y) - mean;
      ss += d * d;
    }
  }
  return ss / (n - 1);
}

double BandEntropicDifference(const Plane& ref, const Plane& test) {
  const int nbx = ref.width() / kEntropyBlock;
  const int nby = ref.height() / kEntropyBlock;
  if (nbx == 0 || nby == 0) {
    throw TooSmallError("band " + std::to_string(ref.width()) + "x" +
                        std::to_string(ref.height()) +
                        " is smaller than one entropy block");
  }
  double sum = 0.0;
  for (int by = 0; by < nby; ++by) {
    for (int bx = 0; bx < nbx; ++bx) {
      sum += std::abs(ScaledBlockEntropy(BlockVariance(ref, bx, by)) -
                      ScaledBlockEntropy(BlockVariance(test, bx, by)));
    }
  }
  return sum / (static_cast<double>(nbx) * nby);
}

}  // namespace

double EntropicDifferenceHv(const WaveletPyramid& ref,
                            const WaveletPyramid& test, int level) {
  RequireComparable(ref, test, level);
  const Subbands& o = ref.level(level);
  const Subbands& t = test.level(level);
  return 0.5 * (BandEntropicDifference(o.horizontal, t.horizontal) +
                BandEntropicDifference(o.vertical, t.vertical));
}

double EdgeEnhancement(const WaveletPyramid& ref, const WaveletPyramid& test,
                       int level) {
  RequireComparable(ref, test, level);
  double num = 0.0;
  double den = 0.0;
  for (Orientation orient : kOrientations) {
    auto o = ref.level(level).detail(orient).data();
    auto t = test.level(level).detail(orient).data();
    double enhanced = 0.0;
    double magnitude = 0.0;
    for (size_t i = 0; i < o.size(); ++i) {
      enhanced += std::max(std::abs(t[i]) - std::abs(o[i]), 0.0);
      magnitude += std::abs(o[i]);
    }
    num += enhanced / static_cast<double>(o.size());
    den += magnitude / static_cast<double>(o.size());
  }
  return num / (den + kEpsilon);
}

double VifNoiseVariance(int scale) {
  const double s = std::exp2(scale) / 1023.0;
  return 2.0 * s * s;
}

VifTerms VifWindowTerms(double var_ref, double var_test, double cov,
                        double noise_var) {
  double g;
  double sv;
  if (var_ref < kEpsilon) {
    var_ref = 0.0;
    g = 0.0;
    sv = var_test;
  } else {
    g = cov / var_ref;
    sv = var_test - g * cov;
  }
  if (var_test < kEpsilon) {
    g = 0.0;
    sv = 0.0;
  }
  if (g < 0.0) {
    sv = var_test;
    g = 0.0;
  }
  sv = std::max(sv, 0.0);
  return {std::log1p(g * g * var_ref / (sv + noise_var)),
          std::log1p(var_ref / noise_var)};
}

double VifScale(const WaveletPyramid& ref, const WaveletPyramid& test,
                int scale) {
  if (scale < 1 || scale > 4) throw DomainError("VIF scale must be 1..4");
  RequireComparable(ref, test, scale);
  const MomentMaps m = ComputeMomentMaps(
      ref.level(scale).approx, test.level(scale).approx, kMomentWindow);
  const double noise = VifNoiseVariance(scale);
  auto vx = m.var_x.data();
  auto vy = m.var_y.data();
  auto cxy = m.cov.data();
  double num = 0.0;
  double den = 0.0;
  for (size_t i = 0; i < vx.size(); ++i) {
    const VifTerms t = VifWindowTerms(vx[i], vy[i], cxy[i], noise);
    num += t.num;
    den += t.den;
  }
  if (den <= kEpsilon) return 1.0;
  return std::clamp(num / den, 0.0, 1.0 + 1e-6);
}

Plane Pu21Map(const Plane& luma) {
  const double peak = Pu21Peak();
  Plane out(luma.width(), luma.height());
  auto o = out.data();
  auto in = luma.data();
  for (size_t i = 0; i < o.size(); ++i) {
    o[i] = Pu21Encode(PqEotf(in[i])) / peak;
  }
  return out;
}

double Pu21Psnr(const Plane& ref_luma, const Plane& test_luma) {
  if (!ref_luma.SameShape(test_luma)) {
    throw DimensionMismatchError("PSNR inputs differ in shape");
  }
  const Plane a = Pu21Map(ref_luma);
  const Plane b = Pu21Map(test_luma);
  double se = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (size_t i = 0; i < x.size(); ++i) se += (x[i] - y[i]) * (x[i] - y[i]);
  const double mse = se / static_cast<double>(x.size());
  if (mse == 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(1.0 / mse));
}

double Pu21Ssim(const Plane& ref_luma, const Plane& test_luma) {
  const MomentMaps m =
      ComputeMomentMaps(Pu21Map(ref_luma), Pu21Map(test_luma), kMomentWindow);
  return Mean(SsimMap(m, 0.01 * 0.01, 0.03 * 0.03));
}

}  // namespace funque
