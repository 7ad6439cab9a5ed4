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

#ifndef FUNQUE_ATOMS_H_
#define FUNQUE_ATOMS_H_

#include <array>
#include <span>

#include "funque/plane.h"
#include "funque/unified.h"

namespace funque {

// Guard used in ratio denominators.
inline constexpr double kEpsilon = 1e-12;

// Local statistics window for SSIM-type and VIF computations.
inline constexpr int kMomentWindow = 9;

// First four MS-SSIM exponents, renormalized to sum to 1.
std::array<double, 4> MsEssimExponents();

// Coefficient-of-variation pooled score clamp(mu * (1 - sigma / mu), 0, 1);
// 0 when mu == 0.
double CovPooledScore(std::span<const double> map);

// Multi-scale ESSIM over the approximation bands of levels 1..4.
double MsEssim(const WaveletPyramid& ref, const WaveletPyramid& test);

// Single-scale detail loss at `level` (0 = coarsest).
double DlmS(const WaveletPyramid& ref, const WaveletPyramid& test,
            int level = 0);

// Mean absolute difference of two equally sized bands.
double Mad(const Plane& a, const Plane& b);

// Entropic difference averaged over the H and V bands at `level`, using 5x5
// blocks. SRRED applies it to frame pyramids, TRRED to pyramids of frame
// differences.
double EntropicDifferenceHv(const WaveletPyramid& ref,
                            const WaveletPyramid& test, int level = 1);

inline constexpr int kEntropyBlock = 5;
inline constexpr double kEntropyNoiseVariance = 0.1;

// Scaled entropy gamma * h for one block of variance `var`.
double ScaledBlockEntropy(double var);

// One-sided detail-magnitude enhancement at `level`.
double EdgeEnhancement(const WaveletPyramid& ref, const WaveletPyramid& test,
                       int level = 1);

// Noise variance of the VIF channel model at `scale` in normalized units.
double VifNoiseVariance(int scale);

// Contribution of a single window to the VIF numerator and denominator.
struct VifTerms {
  double num = 0.0;
  double den = 0.0;
};
VifTerms VifWindowTerms(double var_ref, double var_test, double cov,
                        double noise_var);

// VIF on the approximation band of `scale` (1..4).
double VifScale(const WaveletPyramid& ref, const WaveletPyramid& test,
                int scale);

// PQ code value -> PU21 units divided by the PU21 peak.
Plane Pu21Map(const Plane& luma);

// Both inputs are [0,1] PQ-coded luma planes.
double Pu21Psnr(const Plane& ref_luma, const Plane& test_luma);
double Pu21Ssim(const Plane& ref_luma, const Plane& test_luma);

inline constexpr double kPsnrCap = 100.0;

}  // namespace funque

#endif  // FUNQUE_ATOMS_H_
