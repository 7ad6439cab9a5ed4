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

#ifndef FUNQUE_SYNTH_H_
#define FUNQUE_SYNTH_H_

#include <cstdint>
#include <filesystem>

#include "funque/bench.h"

namespace funque {

struct SynthParams {
  int n_contents = 10;
  int n_levels = 5;  // distortion levels d = 0 .. n_levels - 1
  int frames = 8;
  int width = 96;
  int height = 96;
  uint64_t seed = 0;
  double mos_noise = 0.5;  // standard deviation of the proxy-MOS noise
};

// Blur sigma and quantization step (in 10-bit codes) at distortion level d.
double SynthBlurSigma(int level);
int SynthQuantStep(int level);

// Writes 10-bit 4:2:0 Y4M references and distorted versions plus
// `manifest.csv` into `out_dir`, returning the manifest. Level 0 is a
// bit-exact copy of the reference. Deterministic for a given seed.
DatasetManifest SynthesizeDataset(const SynthParams& params,
                                  const std::filesystem::path& out_dir);

}  // namespace funque

#endif  // FUNQUE_SYNTH_H_
