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

#ifndef FUNQUE_PLANE_H_
#define FUNQUE_PLANE_H_

#include <cstddef>
#include <span>
#include <vector>

namespace funque {

// Dense row-major 2-D array of real samples.
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, double fill = 0.0)
      : width_(width),
        height_(height),
        data_(static_cast<size_t>(width) * static_cast<size_t>(height), fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(int x, int y) { return data_[Index(x, y)]; }
  double at(int x, int y) const { return data_[Index(x, y)]; }

  std::span<double> row(int y) {
    return {data_.data() + Index(0, y), static_cast<size_t>(width_)};
  }
  std::span<const double> row(int y) const {
    return {data_.data() + Index(0, y), static_cast<size_t>(width_)};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool SameShape(const Plane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  size_t Index(int x, int y) const {
    return static_cast<size_t>(y) * static_cast<size_t>(width_) +
           static_cast<size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// Elementwise a - b. Shapes must match.
Plane Subtract(const Plane& a, const Plane& b);

// Elementwise s * a.
Plane Scale(const Plane& a, double s);

double SumOfSquares(const Plane& a);

}  // namespace funque

#endif  // FUNQUE_PLANE_H_
