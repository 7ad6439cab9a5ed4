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

#include "funque/moments.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "funque/errors.h"

namespace funque {

namespace {

// (w+1) x (h+1) summed-area table of f(x_i, y_i).
template <typename F>
std::vector<double> Integral(const Plane& x, const Plane& y, F f) {
  const int w = x.width();
  const int h = x.height();
  const size_t stride = static_cast<size_t>(w) + 1;
  std::vector<double> s(stride * (h + 1), 0.0);
  for (int r = 0; r < h; ++r) {
    auto xr = x.row(r);
    auto yr = y.row(r);
    double run = 0.0;
    for (int c = 0; c < w; ++c) {
      run += f(xr[c], yr[c]);
      s[(r + 1) * stride + c + 1] = s[r * stride + c + 1] + run;
    }
  }
  return s;
}

}  // namespace

int EffectiveWindow(const Plane& p, int window) {
  return std::max(1, std::min({window, p.width(), p.height()}));
}

double Mean(const Plane& p) {
  if (p.empty()) return 0.0;
  double sum = 0.0;
  for (double v : p.data()) sum += v;
  return sum / static_cast<double>(p.size());
}

MomentMaps ComputeMomentMaps(const Plane& x, const Plane& y, int window) {
  if (!x.SameShape(y)) {
    throw DimensionMismatchError("moment inputs differ in shape");
  }
  if (x.empty()) throw TooSmallError("empty plane");
  const int k = EffectiveWindow(x, window);
  const int w = x.width();
  const int h = x.height();
  const int ow = w - k + 1;
  const int oh = h - k + 1;
  // Centre on the global means so window sums do not cancel catastrophically.
  const double gx = Mean(x);
  const double gy = Mean(y);
  const auto sx = Integral(x, y, [gx](double a, double) { return a - gx; });
  const auto sy = Integral(x, y, [gy](double, double b) { return b - gy; });
  const auto sxx = Integral(
      x, y, [gx](double a, double) { return (a - gx) * (a - gx); });
  const auto syy = Integral(
      x, y, [gy](double, double b) { return (b - gy) * (b - gy); });
  const auto sxy = Integral(
      x, y, [gx, gy](double a, double b) { return (a - gx) * (b - gy); });
  const size_t stride = static_cast<size_t>(w) + 1;
  auto box = [&](const std::vector<double>& s, int c, int r) {
    const size_t r0 = r * stride;
    const size_t r1 = (r + k) * stride;
    return s[r1 + c + k] - s[r0 + c + k] - s[r1 + c] + s[r0 + c];
  };
  const double n = static_cast<double>(k) * k;
  MomentMaps m{k,          Plane(ow, oh), Plane(ow, oh),
               Plane(ow, oh), Plane(ow, oh), Plane(ow, oh)};
  for (int r = 0; r < oh; ++r) {
    for (int c = 0; c < ow; ++c) {
      const double mx = box(sx, c, r) / n;
      const double my = box(sy, c, r) / n;
      const double vx = std::max(box(sxx, c, r) / n - mx * mx, 0.0);
      const double vy = std::max(box(syy, c, r) / n - my * my, 0.0);
      const double bound = std::sqrt(vx * vy);
      const double cxy =
          std::clamp(box(sxy, c, r) / n - mx * my, -bound, bound);
      m.mean_x.at(c, r) = mx + gx;
      m.mean_y.at(c, r) = my + gy;
      m.var_x.at(c, r) = vx;
      m.var_y.at(c, r) = vy;
      m.cov.at(c, r) = cxy;
    }
  }
  return m;
}

Plane SsimMap(const MomentMaps& m, double c1, double c2) {
  Plane out(m.mean_x.width(), m.mean_x.height());
  auto o = out.data();
  auto mx = m.mean_x.data();
  auto my = m.mean_y.data();
  auto vx = m.var_x.data();
  auto vy = m.var_y.data();
  auto cxy = m.cov.data();
  for (size_t i = 0; i < o.size(); ++i) {
    const double num = (2.0 * mx[i] * my[i] + c1) * (2.0 * cxy[i] + c2);
    const double den =
        (mx[i] * mx[i] + my[i] * my[i] + c1) * (vx[i] + vy[i] + c2);
    o[i] = num / den;
  }
  return out;
}

}  // namespace funque
