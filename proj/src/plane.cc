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

#include "funque/plane.h"

#include "funque/errors.h"

namespace funque {

Plane Subtract(const Plane& a, const Plane& b) {
  if (!a.SameShape(b)) throw DimensionMismatchError("plane shapes differ");
  Plane out(a.width(), a.height());
  auto o = out.data();
  auto x = a.data();
  auto y = b.data();
  for (size_t i = 0; i < o.size(); ++i) o[i] = x[i] - y[i];
  return out;
}

Plane Scale(const Plane& a, double s) {
  Plane out(a.width(), a.height());
  auto o = out.data();
  auto x = a.data();
  for (size_t i = 0; i < o.size(); ++i) o[i] = s * x[i];
  return out;
}

double SumOfSquares(const Plane& a) {
  double sum = 0.0;
  for (double v : a.data()) sum += v * v;
  return sum;
}

}  // namespace funque
