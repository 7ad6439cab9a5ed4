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

#ifndef FUNQUE_MOMENTS_H_
#define FUNQUE_MOMENTS_H_

#include "funque/plane.h"

namespace funque {

// Local first and second moments over every k x k window that fits entirely
// inside the (equal-sized) inputs. Output maps are (w-k+1) x (h-k+1), entry
// (x, y) describing the window with top-left corner (x, y). Moments are
// population (divide by k^2). Variances are clamped to >= 0 and the
// covariance to the Cauchy-Schwarz bound.
struct MomentMaps {
  int window = 0;
  Plane mean_x;
  Plane mean_y;
  Plane var_x;
  Plane var_y;
  Plane cov;
};

// Integral-image implementation, O(1) per window. `window` is shrunk to the
// smaller plane dimension when the planes are too small for it.
MomentMaps ComputeMomentMaps(const Plane& x, const Plane& y, int window);

// Effective window used by ComputeMomentMaps for planes of this shape.
int EffectiveWindow(const Plane& p, int window);

// Per-window SSIM from moment maps.
Plane SsimMap(const MomentMaps& m, double c1, double c2);

double Mean(const Plane& p);

}  // namespace funque

#endif  // FUNQUE_MOMENTS_H_
