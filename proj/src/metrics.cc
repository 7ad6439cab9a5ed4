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

#include "funque/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "funque/errors.h"

namespace funque {

namespace {

void CheckLengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatchError("metric inputs differ in length");
  }
  if (a.size() < 3) throw DomainError("metrics need at least 3 samples");
}

}  // namespace

double Pcc(std::span<const double> a, std::span<const double> b) {
  CheckLengths(a, b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw UndefinedCorrelationError("correlation of a constant vector");
  }
  return sab / std::sqrt(saa * sbb);
}

std::vector<double> MidRanks(std::span<const double> v) {
  std::vector<size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&v](size_t i, size_t j) { return v[i] < v[j]; });
  std::vector<double> ranks(v.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i + 1;
    while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + j + 1);
    for (size_t k = i; k < j; ++k) ranks[order[k]] = mid;
    i = j;
  }
  return ranks;
}

double Srocc(std::span<const double> a, std::span<const double> b) {
  CheckLengths(a, b);
  const std::vector<double> ra = MidRanks(a);
  const std::vector<double> rb = MidRanks(b);
  return Pcc(ra, rb);
}

double Rmse(std::span<const double> a, std::span<const double> b) {
  CheckLengths(a, b);
  double se = 0.0;
  for (size_t i = 0; i < a.size(); ++i) se += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(se / static_cast<double>(a.size()));
}

double LowerMedian(std::vector<double> v) {
  if (v.empty()) throw DomainError("median of an empty set");
  const size_t k = (v.size() - 1) / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k),
                   v.end());
  return v[k];
}

}  // namespace funque
