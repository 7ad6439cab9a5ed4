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

#include <cmath>
#include <sstream>

#include "funque/csv.h"
#include "funque/errors.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace funque {
namespace {

using testing_util::UniformPlane;

double MaxAbsDiff(const Plane& a, const Plane& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

void ExpectAllEqual(const Plane& p, double v) {
  for (double x : p.data()) ASSERT_EQ(x, v);
}

TEST(Sast, FactorFromGeometry) {
  EXPECT_NEAR(SastFactor({3.0, 2160}), 1.8541409147095178, 1e-15);
  EXPECT_NEAR(SastFactor({1.5, 2160}), 0.9270704573547589, 1e-15);
  EXPECT_EQ(SastFactor({1.618, 2160}), 1.0);
}

TEST(Sast, SnapsNearPowersOfTwo) {
  EXPECT_EQ(SnapSastFactor(0.9271), 1.0);
  EXPECT_EQ(SnapSastFactor(1.8541), 2.0);
  EXPECT_EQ(SnapSastFactor(0.5), 0.5);
  EXPECT_EQ(SnapSastFactor(1.4), 1.4);
  EXPECT_THROW(SnapSastFactor(0.0), DomainError);
}

TEST(Sast, IdentityPassThrough) {
  const Plane p = UniformPlane(20, 18, 1);
  EXPECT_EQ(SastRescale(p, 1.0), p);
  EXPECT_EQ(SastRescale(p, 0.9271), p);
}

TEST(Sast, DyadicConstantStaysConstant) {
  const Plane out = SastRescale(Plane(8, 8, 0.42), 2.0, 2);
  EXPECT_EQ(out.width(), 4);
  EXPECT_EQ(out.height(), 4);
  for (double v : out.data()) EXPECT_NEAR(v, 0.42, 1e-15);
}

TEST(Sast, DyadicAveragesPairs) {
  Plane p(8, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) p.at(x, y) = x + 10.0 * y;
  }
  const Plane out = SastRescale(p, 2.0, 2);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      EXPECT_NEAR(out.at(x, y), 2 * x + 0.5 + 10.0 * (2 * y + 0.5), 1e-12);
    }
  }
}

TEST(Sast, TooSmallOutput) {
  EXPECT_THROW(SastRescale(Plane(8, 8, 0.0), 2.0, 4), TooSmallError);
  EXPECT_THROW(SastRescale(Plane(8, 8, 0.0), 1.0, 4), TooSmallError);
}

TEST(Haar, ConstantOneLevel) {
  const WaveletPyramid pyr = HaarDwt(Plane(8, 6, 0.3), 1);
  ASSERT_EQ(pyr.levels(), 1);
  for (double v : pyr.level(1).approx.data()) EXPECT_NEAR(v, 0.6, 1e-15);
  ExpectAllEqual(pyr.level(1).horizontal, 0.0);
  ExpectAllEqual(pyr.level(1).vertical, 0.0);
  ExpectAllEqual(pyr.level(1).diagonal, 0.0);
}

TEST(Haar, ConstantThreeLevels) {
  const WaveletPyramid pyr = HaarDwt(Plane(16, 16, 0.25), 3);
  for (double v : pyr.level(3).approx.data()) EXPECT_NEAR(v, 2.0, 1e-15);
  for (int l = 1; l <= 3; ++l) {
    ExpectAllEqual(pyr.level(l).horizontal, 0.0);
    ExpectAllEqual(pyr.level(l).vertical, 0.0);
    ExpectAllEqual(pyr.level(l).diagonal, 0.0);
  }
}

TEST(Haar, BlockConvention) {
  Plane p(2, 2);
  p.at(0, 0) = 1.0;  // a
  p.at(1, 0) = 2.0;  // b
  p.at(0, 1) = 3.0;  // c
  p.at(1, 1) = 5.0;  // d
  const WaveletPyramid pyr = HaarDwt(p, 1);
  const Subbands& s = pyr.level(1);
  EXPECT_DOUBLE_EQ(s.approx.at(0, 0), (1 + 2 + 3 + 5) / 2.0);
  EXPECT_DOUBLE_EQ(s.horizontal.at(0, 0), (1 + 2 - 3 - 5) / 2.0);
  EXPECT_DOUBLE_EQ(s.vertical.at(0, 0), (1 - 2 + 3 - 5) / 2.0);
  EXPECT_DOUBLE_EQ(s.diagonal.at(0, 0), (1 - 2 - 3 + 5) / 2.0);
}

TEST(Haar, PerfectReconstruction16) {
  const Plane p = UniformPlane(16, 16, 2);
  EXPECT_LT(MaxAbsDiff(HaarIdwt(HaarDwt(p, 4)), p), 1e-12);
}

TEST(Haar, PerfectReconstructionOddDims) {
  const Plane p = UniformPlane(37, 23, 3);
  const WaveletPyramid pyr = HaarDwt(p, 4);
  EXPECT_EQ(pyr.level(1).approx.width(), 19);
  EXPECT_EQ(pyr.level(1).approx.height(), 12);
  EXPECT_EQ(pyr.level(4).approx.width(), 3);
  EXPECT_EQ(pyr.level(4).approx.height(), 2);
  EXPECT_EQ(pyr.source_width(2), 19);
  const Plane r = HaarIdwt(pyr);
  ASSERT_TRUE(r.SameShape(p));
  EXPECT_LT(MaxAbsDiff(r, p), 1e-12);
}

TEST(Haar, ParsevalOnDyadicDims) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const Plane p = UniformPlane(64, 48, seed, -1.0, 1.0);
    const double e_in = SumOfSquares(p);
    const double e_out = HaarDwt(p, 4).Energy();
    EXPECT_LT(std::abs(e_out - e_in) / e_in, 1e-12);
  }
}

TEST(Haar, ShiftByTwoShiftsLevelOneByOne) {
  const Plane big = UniformPlane(34, 34, 4);
  Plane a(32, 32);
  Plane b(32, 32);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      a.at(x, y) = big.at(x, y);
      b.at(x, y) = big.at(x + 2, y + 2);
    }
  }
  const WaveletPyramid pa = HaarDwt(a, 1);
  const WaveletPyramid pb = HaarDwt(b, 1);
  const Subbands& sa = pa.level(1);
  const Subbands& sb = pb.level(1);
  for (int y = 0; y < 15; ++y) {
    for (int x = 0; x < 15; ++x) {
      ASSERT_EQ(sa.approx.at(x + 1, y + 1), sb.approx.at(x, y));
      ASSERT_EQ(sa.diagonal.at(x + 1, y + 1), sb.diagonal.at(x, y));
    }
  }
}

TEST(Haar, TooSmall) {
  EXPECT_THROW(HaarDwt(Plane(15, 32), 4), TooSmallError);
  EXPECT_NO_THROW(HaarDwt(Plane(16, 16), 4));
}

TEST(Csf, PixelsPerDegree) {
  EXPECT_NEAR(ViewingGeometry{}.PixelsPerDegree(), 58.58437744384342, 1e-11);
}

TEST(Csf, MannosSakrisonLevelWeights) {
  const CsfWeights w = MannosSakrisonWeights(ViewingGeometry{}, 4);
  ASSERT_EQ(w.levels(), 4);
  const double expected[] = {0.7573621881712258, 0.9780719718467199,
                             0.7743836028676867, 0.4957189711733568};
  for (int l = 0; l < 4; ++l) {
    for (int o = 0; o < 3; ++o) EXPECT_NEAR(w.detail[l][o], expected[l], 1e-12);
    EXPECT_EQ(w.approx[l], 1.0);
  }
  EXPECT_NEAR(w.detail[0][0], 0.759, 3e-3);
  EXPECT_NEAR(w.detail[1][0], 0.978, 1e-3);
  EXPECT_GT(w.detail[1][0], w.detail[0][0]);
}

TEST(Csf, ChromaScaleShiftsFrequencies) {
  const CsfWeights luma = MannosSakrisonWeights(ViewingGeometry{}, 4);
  const CsfWeights chroma = MannosSakrisonWeights(ViewingGeometry{}, 4, 2.0);
  for (int l = 0; l < 3; ++l) {
    EXPECT_NEAR(chroma.detail[l][0], luma.detail[l + 1][0], 1e-12);
  }
}

TEST(Csf, PositiveAcrossGeometries) {
  for (double dh = 0.5; dh <= 10.0; dh += 0.25) {
    const CsfWeights w = MannosSakrisonWeights({dh, 2160}, 4);
    for (const auto& l : w.detail) {
      for (double v : l) EXPECT_GT(v, 0.0) << dh;
    }
  }
}

TEST(Csf, WeightTableCsv) {
  std::ostringstream s;
  MannosSakrisonWeights(ViewingGeometry{}, 4).WriteCsv(s);
  const CsvTable t = ParseCsv(s.str());
  EXPECT_EQ(t.header,
            (std::vector<std::string>{"level", "orientation", "weight"}));
  EXPECT_EQ(t.rows.size(), 16u);
  EXPECT_EQ(t.rows[0][1], "A");
}

TEST(ApplyCsf, IdentityWeights) {
  const WaveletPyramid pyr = HaarDwt(UniformPlane(32, 32, 5), 4);
  const WaveletPyramid out = ApplyCsf(pyr, CsfWeights::Identity(4));
  EXPECT_TRUE(out.csf_applied());
  for (int l = 1; l <= 4; ++l) {
    EXPECT_EQ(out.level(l).approx, pyr.level(l).approx);
    EXPECT_EQ(out.level(l).horizontal, pyr.level(l).horizontal);
    EXPECT_EQ(out.level(l).diagonal, pyr.level(l).diagonal);
  }
}

TEST(ApplyCsf, SingleBandHalved) {
  const WaveletPyramid pyr = HaarDwt(UniformPlane(32, 32, 6), 4);
  CsfWeights w = CsfWeights::Identity(4);
  w.detail[0][static_cast<int>(Orientation::kHorizontal)] = 0.5;
  const WaveletPyramid out = ApplyCsf(pyr, w);
  EXPECT_EQ(out.level(1).horizontal, Scale(pyr.level(1).horizontal, 0.5));
  EXPECT_EQ(out.level(1).vertical, pyr.level(1).vertical);
  EXPECT_EQ(out.level(2).horizontal, pyr.level(2).horizontal);
  EXPECT_LT(out.Energy(), pyr.Energy());
}

TEST(ApplyCsf, RejectsDoubleApplicationAndInverse) {
  const WaveletPyramid once =
      ApplyCsf(HaarDwt(UniformPlane(16, 16, 7), 4), CsfWeights::Identity(4));
  EXPECT_THROW(ApplyCsf(once, CsfWeights::Identity(4)), StateError);
  EXPECT_THROW(HaarIdwt(once), StateError);
}

TEST(DifferencePyramid, LinearInInput) {
  const Plane a = UniformPlane(32, 32, 8);
  const Plane b = UniformPlane(32, 32, 9);
  const CsfWeights w = MannosSakrisonWeights(ViewingGeometry{}, 4);
  const WaveletPyramid d =
      DifferencePyramid(ApplyCsf(HaarDwt(a, 4), w), ApplyCsf(HaarDwt(b, 4), w));
  const WaveletPyramid direct = ApplyCsf(HaarDwt(Subtract(a, b), 4), w);
  for (int l = 1; l <= 4; ++l) {
    EXPECT_LT(MaxAbsDiff(d.level(l).approx, direct.level(l).approx), 1e-12);
    EXPECT_LT(MaxAbsDiff(d.level(l).vertical, direct.level(l).vertical),
              1e-12);
  }
}

PlanarFrame MakeFrame(int w, int h, uint64_t seed) {
  PlanarFrame f;
  f.width = w;
  f.height = h;
  f.bit_depth = 10;
  f.y = UniformPlane(w, h, seed);
  f.cb = UniformPlane((w + 1) / 2, (h + 1) / 2, seed + 1);
  f.cr = UniformPlane((w + 1) / 2, (h + 1) / 2, seed + 2);
  return f;
}

TEST(UnifiedTransform, DeterministicAndShared) {
  const PlanarFrame f = MakeFrame(64, 48, 10);
  std::array<bool, kPlaneKindCount> want{};
  want.fill(true);
  const UnifiedConfig cfg;
  TransformCounters::Global().Reset();
  const FramePyramids a = UnifiedTransform(f, want, cfg);
  const FramePyramids b = UnifiedTransform(f, want, cfg);
  for (int k = 0; k < kPlaneKindCount; ++k) {
    const PlaneKind kind = static_cast<PlaneKind>(k);
    EXPECT_EQ(TransformCounters::Global().count(kind), 2) << PlaneKindName(kind);
    for (int l = 1; l <= 4; ++l) {
      EXPECT_EQ(a.get(kind).level(l).approx, b.get(kind).level(l).approx);
      EXPECT_EQ(a.get(kind).level(l).diagonal, b.get(kind).level(l).diagonal);
    }
    EXPECT_TRUE(a.get(kind).csf_applied());
  }
}

TEST(UnifiedTransform, OnlyRequestedPlanes) {
  std::array<bool, kPlaneKindCount> want{};
  want[static_cast<int>(PlaneKind::kY)] = true;
  const FramePyramids p = UnifiedTransform(MakeFrame(32, 32, 11), want, {});
  EXPECT_TRUE(p.has(PlaneKind::kY));
  EXPECT_FALSE(p.has(PlaneKind::kCb));
  EXPECT_FALSE(p.has(PlaneKind::kHdrmax1));
}

TEST(UnifiedTransform, UhdFrameAtDefaultGeometryIsNotResampled) {
  PlanarFrame f;
  f.width = 3840;
  f.height = 2160;
  f.y = Plane(3840, 2160, 0.5);
  std::array<bool, kPlaneKindCount> want{};
  want[static_cast<int>(PlaneKind::kY)] = true;
  TransformCounters::Global().Reset();
  const FramePyramids p = UnifiedTransform(f, want, {});
  EXPECT_EQ(TransformCounters::Global().resamples(), 0);
  EXPECT_EQ(p.get(PlaneKind::kY).source_width(1), 3840);
}

TEST(UnifiedTransform, FarViewingResamples) {
  UnifiedConfig cfg;
  cfg.geometry = {3.0, 2160};
  std::array<bool, kPlaneKindCount> want{};
  want[static_cast<int>(PlaneKind::kY)] = true;
  TransformCounters::Global().Reset();
  const FramePyramids p = UnifiedTransform(MakeFrame(64, 64, 12), want, cfg);
  EXPECT_EQ(TransformCounters::Global().resamples(), 1);
  EXPECT_EQ(p.get(PlaneKind::kY).source_width(1), 32);
}

}  // namespace
}  // namespace funque
