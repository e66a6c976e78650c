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

#ifndef SOFTLAYER_FILTERS_H_
#define SOFTLAYER_FILTERS_H_

#include <vector>

#include "softlayer/image.h"

namespace softlayer {

// Normalized 1-D Gaussian taps of radius ceil(3 * sigma). sigma == 0 yields
// the single tap {1}.
std::vector<float> GaussianKernel(float sigma);

// Separable Gaussian blur with clamp-to-edge borders, applied per channel.
Image GaussianBlur(const Image& image, float sigma);

// Maximum over the (2r+1)x(2r+1) window, clamp-to-edge, per channel.
Image MaxPoolDilate(const Image& image, int radius);

// 3x3 Sobel scaled by 1/8, so a ramp of slope 1 per pixel has |gx| = 1.
// Requires width and height >= 3.
GradientField SobelGradient(const DisparityMap& disparity);

// Bilinear resampling on half-pixel-centered grids, clamp-to-edge.
Image ResizeBilinear(const Image& image, int new_width, int new_height);

// Role-preserving overloads.
template <typename Tag>
Plane<Tag> GaussianBlur(const Plane<Tag>& plane, float sigma) {
  return Plane<Tag>(GaussianBlur(static_cast<const Image&>(plane), sigma));
}

template <typename Tag>
Plane<Tag> MaxPoolDilate(const Plane<Tag>& plane, int radius) {
  return Plane<Tag>(MaxPoolDilate(static_cast<const Image&>(plane), radius));
}

template <typename Tag>
Plane<Tag> ResizeBilinear(const Plane<Tag>& plane, int new_width,
                          int new_height) {
  return Plane<Tag>(ResizeBilinear(static_cast<const Image&>(plane),
                                   new_width, new_height));
}

}  // namespace softlayer

#endif  // SOFTLAYER_FILTERS_H_
