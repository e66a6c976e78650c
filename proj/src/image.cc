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

#include "softlayer/image.h"

#include <algorithm>
#include <string>

#include "softlayer/error.h"

namespace softlayer {

Image::Image(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
  if (width < 0 || height < 0 || channels < 1 || channels > 4) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid image shape " + std::to_string(width) + "x" +
                    std::to_string(height) + "x" + std::to_string(channels));
  }
  data_.assign(plane_size() * channels, fill);
}

void Image::Clamp01() {
  for (float& v : data_) v = std::clamp(v, 0.0f, 1.0f);
}

void RequireSingleChannel(const Image& image) {
  if (image.channels() != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected a single-channel raster, got " +
                    std::to_string(image.channels()) + " channels");
  }
}

std::size_t BinaryMask::CountSet() const {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), 1));
}

Raster BinaryMask::ToRaster() const {
  Raster out(width_, height_);
  std::transform(data_.begin(), data_.end(), out.values().begin(),
                 [](std::uint8_t v) { return static_cast<float>(v); });
  return out;
}

}  // namespace softlayer
