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

#ifndef FUNQUE_METRICS_H_
#define FUNQUE_METRICS_H_

#include <span>
#include <vector>

namespace funque {

// Accuracy statistics between predictions and subjective scores. All require
// equal lengths >= 3; correlations throw UndefinedCorrelationError when
// either input is constant.
double Pcc(std::span<const double> a, std::span<const double> b);
double Srocc(std::span<const double> a, std::span<const double> b);
double Rmse(std::span<const double> a, std::span<const double> b);

// 1-based ranks with ties assigned their mean rank.
std::vector<double> MidRanks(std::span<const double> v);

// Lower median: element (n-1)/2 of the sorted values.
double LowerMedian(std::vector<double> v);

}  // namespace funque

#endif  // FUNQUE_METRICS_H_
