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

#ifndef SOFTLAYER_LAYERING_H_
#define SOFTLAYER_LAYERING_H_

#include "softlayer/image.h"

namespace softlayer {

struct VisibilityParams {
  // Penalty on the squared disparity gradient. Calibrated so a 0.5 disparity
  // step gives visibility ~0.002 on the pixels beside it.
  double beta = 100.0;

  void Validate() const;
};

struct DisocclusionParams {
  double rho = 0.005;        // disparity allowance per pixel of distance
  double gamma = 5.0;        // tanh steepness
  int neighborhood = 64;     // scanline half-extent m, in pixels
  int downsample_factor = 1; // compute at 1/f resolution, then upsample

  void Validate() const;
};

struct MatteInput {
  Raster matte;
  int dilation_radius = 5;
};

// Gaussian blur followed by max-pool dilation, clamped to [0, 1].
DisparityMap PreprocessDisparity(const DisparityMap& disparity, float sigma,
                                 int pool_radius);

// A = exp(-beta * |grad D|^2) with the 1/8-scaled Sobel gradient.
VisibilityMap ComputeVisibility(const DisparityMap& disparity,
                                const VisibilityParams& params);

// Soft disocclusion S = tanh(gamma * relu(max_k D(p) - D(p + k dir) - rho|k|))
// over k in [-m, m] \ {0} along the row and the column through p. Offsets
// leaving the image are skipped.
SoftMask DisocclusionMap(const DisparityMap& disparity,
                         const DisocclusionParams& params);

// Sign-flipped counterpart: high on the background side of a depth edge.
// Evaluated as DisocclusionMap(1 - D), so that identity holds bit-exactly.
SoftMask OcclusionMap(const DisparityMap& disparity,
                      const DisocclusionParams& params);

// A' = A * (1 - (dilate(M) - M) * (1 - S_hat)), clamped to [0, 1].
VisibilityMap FuseMatteVisibility(const VisibilityMap& visibility,
                                  const MatteInput& matte,
                                  const SoftMask& occlusion);

namespace internal {

// Full-resolution scanline reduction used by DisocclusionMap. Writes the
// unactivated maximum excess (or -inf where no offset is in range).
void ScanlineMaxExcess(const DisparityMap& disparity, double rho,
                       int neighborhood, std::span<double> excess);

}  // namespace internal
}  // namespace softlayer

#endif  // SOFTLAYER_LAYERING_H_
