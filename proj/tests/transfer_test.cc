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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "funque/csv.h"
#include "funque/errors.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace funque {
namespace {

using testing_util::UniformPlane;

// Reference values below were evaluated independently in double precision
// from the closed forms and frozen here.
constexpr double kPqAt05081 = 100.02150251995964;
constexpr double kE4Minus1 = 53.598150033144236;
constexpr double kSqrtE = 1.6487212707001282;
constexpr double kE5 = 148.4131591025766;
// 1 - g(0,0) for the 31x31 Gaussian with sigma 31/6.
constexpr double kImpulseCentre = 0.9940060720549316;

TEST(PqEotf, Anchors) {
  EXPECT_EQ(PqEotf(0.0), 0.0);
  EXPECT_EQ(PqEotf(1.0), 10000.0);
  EXPECT_NEAR(PqEotf(0.5081), kPqAt05081, 1e-9);
  EXPECT_NEAR(PqEotf(0.5081), 100.0, 1.0);
}

TEST(PqEotf, DomainErrors) {
  EXPECT_THROW(PqEotf(-0.01), DomainError);
  EXPECT_THROW(PqEotf(1.01), DomainError);
  EXPECT_THROW(PqEotf(NAN), DomainError);
}

TEST(PqEotf, StrictlyIncreasingOnGrid) {
  double prev = PqEotf(0.0);
  for (int i = 1; i <= 10000; ++i) {
    const double v = PqEotf(i / 10000.0);
    ASSERT_GT(v, prev) << i;
    prev = v;
  }
}

TEST(Pu21, BandingGlareAnchors) {
  EXPECT_LT(std::abs(Pu21Encode(0.005)), 1e-3);
  EXPECT_NEAR(Pu21Encode(0.005), 5.470456654038225e-10, 1e-15);
  EXPECT_NEAR(Pu21Encode(100.0), 256.3838973127039, 1e-9);
  EXPECT_NEAR(Pu21Encode(1000.0), 420.0969213492443, 1e-9);
  EXPECT_NEAR(Pu21Peak(), 595.393920020095, 1e-9);
  EXPECT_LT(Pu21Encode(100.0), Pu21Encode(1000.0));
}

TEST(Pu21, ClampsBelowDomainAndRejectsNegative) {
  EXPECT_EQ(Pu21Encode(0.0), Pu21Encode(0.005));
  EXPECT_EQ(Pu21Encode(0.001), Pu21Encode(0.005));
  EXPECT_THROW(Pu21Encode(-1.0), DomainError);
}

// PQ codes below about 0.0151 decode under the 0.005 cd/m^2 clamp, so the
// composition is flat there and strictly increasing above it.
TEST(Pu21, ComposedWithPqIsMonotone) {
  double prev = -INFINITY;
  int flat = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 0.01 + 0.99 * i / 999.0;
    const double v = Pu21Encode(PqEotf(x));
    if (PqEotf(x) > Pu21Params::kMinLuminance) {
      ASSERT_GT(v, prev) << x;
    } else {
      ASSERT_GE(v, prev) << x;
      ++flat;
    }
    prev = v;
  }
  EXPECT_LT(flat, 15);
}

TEST(Pu21, StrictlyIncreasingOnLogGrid) {
  double prev = -INFINITY;
  for (int i = 0; i < 10000; ++i) {
    const double y = 0.005 * std::pow(10000.0 / 0.005, i / 9999.0);
    const double v = Pu21Encode(y);
    ASSERT_GT(v, prev) << y;
    prev = v;
  }
}

TEST(Pu21, ParseAndValidate) {
  const Pu21Params q = Pu21Params::Parse(
      "# comment\np1 0.353487901\np2 0.3734658629\np3 8.277049286e-05\n"
      "p4 0.9062562627\np5 0.09150303166\np6 0.9099517204\np7 596.3148142\n");
  EXPECT_EQ(q.p, Pu21Params::BandingGlare().p);
  EXPECT_THROW(Pu21Params::Parse("p1 0.3\n"), DomainError);
  EXPECT_THROW(Pu21Params::Parse("q1 0.3\n"), DomainError);
  Pu21Params bad = q;
  bad.p[6] = -bad.p[6];
  EXPECT_THROW(bad.Validate(), DomainError);
  bad = q;
  bad.p[5] = 0.5;  // V(0.005) far from zero
  EXPECT_THROW(bad.Validate(), DomainError);
}

TEST(Hdrmax1, Anchors) {
  EXPECT_EQ(Hdrmax1(0.0), 0.0);
  EXPECT_NEAR(Hdrmax1(1.0), kE4Minus1, 1e-12);
  EXPECT_NEAR(Hdrmax1(-1.0), -kE4Minus1, 1e-12);
}

TEST(Hdrmax1, OddSymmetryOnRandomInputs) {
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.Uniform(-1.0, 1.0);
    ASSERT_LT(std::abs(Hdrmax1(-x) + Hdrmax1(x)), 1e-12);
  }
}

TEST(Hdrmax1, LiteralFormIsDiscontinuousAtZero) {
  EXPECT_EQ(Hdrmax1(0.0, Hdrmax1Form::kLiteral), -1.0);
  EXPECT_NEAR(Hdrmax1(1e-12, Hdrmax1Form::kLiteral), 0.0, 1e-9);
  EXPECT_NEAR(Hdrmax1(-1e-12, Hdrmax1Form::kLiteral), -2.0, 1e-9);
  EXPECT_NEAR(Hdrmax1(1.0, Hdrmax1Form::kLiteral), kE4Minus1, 1e-12);
}

TEST(Hdrmax2, Anchors) {
  EXPECT_EQ(Hdrmax2Pos(0.0), 1.0);
  EXPECT_EQ(Hdrmax2Neg(0.0), 1.0);
  EXPECT_NEAR(Hdrmax2Pos(1.0), kSqrtE, 1e-12);
  EXPECT_NEAR(Hdrmax2Neg(-1.0), kE5, 1e-10);
}

TEST(Nonlinearities, MonotoneOnGrid) {
  for (int i = 1; i < 10000; ++i) {
    const double a = -1.0 + 2.0 * (i - 1) / 9999.0;
    const double b = -1.0 + 2.0 * i / 9999.0;
    ASSERT_LT(Hdrmax1(a), Hdrmax1(b));
    ASSERT_LT(Hdrmax2Pos(a), Hdrmax2Pos(b));
    ASSERT_GT(Hdrmax2Neg(a), Hdrmax2Neg(b));
    ASSERT_GT(Hdrmax2Pos(a), 0.0);
    ASSERT_GT(Hdrmax2Neg(b), 0.0);
  }
}

TEST(SlidingExtrema, MatchesBruteForce) {
  Rng rng(3);
  std::vector<double> v(200);
  for (double& x : v) x = rng.Uniform();
  for (int r : {0, 1, 4, 8, 250}) {
    std::vector<double> mn(v.size());
    std::vector<double> mx(v.size());
    SlidingMin(v, r, mn);
    SlidingMax(v, r, mx);
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      double lo = INFINITY;
      double hi = -INFINITY;
      for (int k = -r; k <= r; ++k) {
        const int j = std::clamp(i + k, 0, static_cast<int>(v.size()) - 1);
        lo = std::min(lo, v[j]);
        hi = std::max(hi, v[j]);
      }
      ASSERT_EQ(mn[i], lo);
      ASSERT_EQ(mx[i], hi);
    }
  }
}

TEST(LocalMinMax, MatchesBruteForce2D) {
  const Plane p = UniformPlane(23, 19, 5);
  const Plane mn = LocalMin(p, 5);
  const Plane mx = LocalMax(p, 5);
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) {
      double lo = INFINITY;
      double hi = -INFINITY;
      for (int dy = -2; dy <= 2; ++dy) {
        for (int dx = -2; dx <= 2; ++dx) {
          const double v = p.at(std::clamp(x + dx, 0, p.width() - 1),
                                std::clamp(y + dy, 0, p.height() - 1));
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      ASSERT_EQ(mn.at(x, y), lo);
      ASSERT_EQ(mx.at(x, y), hi);
    }
  }
}

TEST(LocalMinMaxNormalize, ExtremesAndBounds) {
  const Plane p = UniformPlane(40, 40, 7);
  const Plane n = LocalMinMaxNormalize(p);
  const Plane mn = LocalMin(p, 17);
  const Plane mx = LocalMax(p, 17);
  int hits_lo = 0;
  int hits_hi = 0;
  for (int y = 0; y < 40; ++y) {
    for (int x = 0; x < 40; ++x) {
      const double v = n.at(x, y);
      ASSERT_GE(v, -1.0);
      ASSERT_LE(v, 1.0);
      if (p.at(x, y) == mn.at(x, y)) {
        EXPECT_EQ(v, -1.0);
        ++hits_lo;
      }
      if (p.at(x, y) == mx.at(x, y)) {
        EXPECT_EQ(v, 1.0);
        ++hits_hi;
      }
    }
  }
  EXPECT_GT(hits_lo, 0);
  EXPECT_GT(hits_hi, 0);
}

TEST(LocalMinMaxNormalize, ConstantPlaneIsZero) {
  const Plane n = LocalMinMaxNormalize(Plane(20, 20, 0.37));
  for (double v : n.data()) EXPECT_EQ(v, 0.0);
}

TEST(LocalMeanSub, ConstantPlaneIsZero) {
  for (double c : {0.0, 0.1, 0.37, 1.0}) {
    const Plane n = LocalMeanSubNormalize(Plane(40, 33, c));
    for (double v : n.data()) ASSERT_EQ(v, 0.0);
  }
}

TEST(LocalMeanSub, ImpulseCentre) {
  Plane p(63, 63, 0.0);
  p.at(31, 31) = 1.0;
  const Plane n = LocalMeanSubNormalize(p);
  EXPECT_NEAR(n.at(31, 31), kImpulseCentre, 1e-15);
}

TEST(LocalMeanSub, BoundedForUnitInputs) {
  const Plane n = LocalMeanSubNormalize(UniformPlane(50, 50, 9));
  for (double v : n.data()) {
    ASSERT_GT(v, -1.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(GaussianKernel, UnitSumSymmetric) {
  const auto k = GaussianKernel(31, 31.0 / 6.0);
  double sum = 0.0;
  for (double v : k) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-15);
  for (int i = 0; i < 15; ++i) EXPECT_EQ(k[i], k[30 - i]);
}

TEST(LocalNormConfig, Validation) {
  LocalNormConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  EXPECT_DOUBLE_EQ(cfg.sigma(), 31.0 / 6.0);
  cfg.minmax_window = 16;
  EXPECT_THROW(cfg.Validate(), DomainError);
  cfg.minmax_window = 1;
  EXPECT_THROW(cfg.Validate(), DomainError);
}

TEST(HdrmaxTransform, ConstantPlanes) {
  const Plane c(24, 24, 0.6);
  const Plane h1 = HdrmaxTransform(c, HdrmaxVariant::kH1);
  const Plane pos = HdrmaxTransform(c, HdrmaxVariant::kH2Pos);
  const Plane neg = HdrmaxTransform(c, HdrmaxVariant::kH2Neg);
  for (double v : h1.data()) ASSERT_EQ(v, 0.0);
  for (double v : pos.data()) ASSERT_EQ(v, 1.0);
  for (double v : neg.data()) ASSERT_EQ(v, 1.0);
}

TEST(HdrmaxTransform, H1RangeBound) {
  const Plane out = HdrmaxTransform(UniformPlane(48, 48, 13),
                                    HdrmaxVariant::kH1);
  for (double v : out.data()) ASSERT_LE(std::abs(v), kE4Minus1);
}

TEST(HdrmaxTransform, TranslationEquivariantInInterior) {
  const Plane big = UniformPlane(96, 80, 17);
  const int dx = 5;
  const int dy = 3;
  const int w = 96 - dx;
  const int h = 80 - dy;
  Plane a(w, h);
  Plane b(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      a.at(x, y) = big.at(x, y);
      b.at(x, y) = big.at(x + dx, y + dy);
    }
  }
  for (HdrmaxVariant v :
       {HdrmaxVariant::kH1, HdrmaxVariant::kH2Pos, HdrmaxVariant::kH2Neg}) {
    const Plane ta = HdrmaxTransform(a, v);
    const Plane tb = HdrmaxTransform(b, v);
    const int m = 15;
    for (int y = m; y < h - dy - m; ++y) {
      for (int x = m; x < w - dx - m; ++x) {
        ASSERT_NEAR(ta.at(x + dx, y + dy), tb.at(x, y), 1e-12)
            << HdrmaxVariantName(v) << " " << x << "," << y;
      }
    }
  }
}

TEST(NonlinearityCsv, Layout) {
  std::ostringstream s;
  WriteNonlinearityCsv(s);
  const CsvTable t = ParseCsv(s.str());
  ASSERT_EQ(t.header, (std::vector<std::string>{"x", "hdrmax1", "hdrmax2_pos",
                                                 "hdrmax2_neg"}));
  ASSERT_EQ(t.rows.size(), 1001u);
  EXPECT_EQ(t.rows[500], (std::vector<std::string>{"0", "0", "1", "1"}));
  EXPECT_EQ(ParseNumber(t.rows[0][0], "x"), -1.0);
  EXPECT_EQ(ParseNumber(t.rows[1000][0], "x"), 1.0);
  for (int i = 0; i < 1001; ++i) {
    const double a = ParseNumber(t.rows[i][1], "h1");
    const double b = ParseNumber(t.rows[1000 - i][1], "h1");
    ASSERT_EQ(a, -b) << i;
    if (i > 0) {
      ASSERT_LT(ParseNumber(t.rows[i][3], "neg"),
                ParseNumber(t.rows[i - 1][3], "neg"));
      ASSERT_GT(ParseNumber(t.rows[i][0], "x"),
                ParseNumber(t.rows[i - 1][0], "x"));
    }
  }
}

TEST(SampleCurve, StrictlyIncreasingAbscissae) {
  const NonlinearityCurve c = SampleCurve(CurveName::kPqEotf, 0.0, 1.0, 101);
  ASSERT_EQ(c.samples.size(), 101u);
  EXPECT_EQ(c.samples.front().second, 0.0);
  EXPECT_EQ(c.samples.back().second, 10000.0);
  for (size_t i = 1; i < c.samples.size(); ++i) {
    EXPECT_GT(c.samples[i].first, c.samples[i - 1].first);
  }
}

}  // namespace
}  // namespace funque
