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

#ifndef SOFTLAYER_IMAGE_IO_H_
#define SOFTLAYER_IMAGE_IO_H_

#include <filesystem>

#include "softlayer/image.h"

namespace softlayer {

// Reads an 8- or 16-bit PNG (gray, gray+alpha, RGB, RGBA, palette). Samples
// are divided by the bit-depth maximum. Gray+alpha expands to RGBA and
// palette images expand to RGB(A).
Image LoadImage(const std::filesystem::path& path);

// Writes a 1-, 3- or 4-channel image; samples are clamped to [0, 1] and
// rounded to the nearest code value. `bit_depth` is 8 or 16.
void SavePng(const std::filesystem::path& path, const Image& image,
             int bit_depth = 8);

void SaveMaskPng(const std::filesystem::path& path, const BinaryMask& mask);
// Any nonzero sample is treated as set.
BinaryMask LoadMaskPng(const std::filesystem::path& path);

// Portable float map. "Pf" is single channel, "PF" three channel. A negative
// scale field marks little-endian payload. Rows are stored bottom to top.
Image LoadPfm(const std::filesystem::path& path);
// Always writes little-endian with scale -1.
void SavePfm(const std::filesystem::path& path, const Image& image);

// PFM or grayscale PNG. With `normalize` the values are min-max mapped onto
// [0, 1]; otherwise they are clamped. Non-finite PFM samples are rejected.
DisparityMap LoadDisparity(const std::filesystem::path& path,
                           bool normalize = false);

}  // namespace softlayer

#endif  // SOFTLAYER_IMAGE_IO_H_
