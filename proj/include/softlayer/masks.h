// Copyright 2026 The softlayer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOFTLAYER_MASKS_H_
#define SOFTLAYER_MASKS_H_

#include <cstdint>
#include <random>
#include <string_view>

#include "softlayer/image.h"
#include "softlayer/layering.h"

namespace softlayer {

// Deterministic for a given seed on every platform: the mask code derives
// its own uniform variates from raw engine output.
using MaskRng = std::mt19937_64;

template <typename T>
struct Range {
  T min;
  T max;
};

struct MaskDatasetOptions {
  DisocclusionParams occlusion_params;
  double mask_threshold = 0.5;
  Range<int> stroke_count{1, 4};
  Range<int> segments_per_stroke{2, 6};
  Range<double> stroke_width{6.0, 18.0};   // brush diameter, pixels
  Range<double> stroke_length{10.0, 40.0}; // per segment, pixels
  double max_turn = 1.5707963267948966;    // heading change per segment
  double mix_ratio = 0.5;  // probability of an occlusion-derived mask
  std::uint64_t seed = 0;

  void Validate() const;
};

enum class MaskKind { kOcclusion, kStroke, kStrokeFallback };

std::string_view MaskKindName(MaskKind kind);

// Union of random-walk brush strokes.
BinaryMask RandomStrokeMask(int width, int height, const MaskDatasetOptions& options,
                            MaskRng& rng);

struct TrainingMask {
  BinaryMask mask;
  MaskKind kind = MaskKind::kStroke;
};

// With probability mix_ratio, the thresholded occlusion map of `disparity`;
// otherwise (or when that mask is empty) a stroke mask.
TrainingMask GenerateTrainingMask(const DisparityMap& disparity,
                                  const MaskDatasetOptions& options, MaskRng& rng);

}  // namespace softlayer

#endif  // SOFTLAYER_MASKS_H_
