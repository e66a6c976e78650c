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

#ifndef SOFTLAYER_IMAGE_H_
#define SOFTLAYER_IMAGE_H_

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace softlayer {

// Planar float raster: channel c occupies the contiguous range
// [c * width * height, (c + 1) * width * height), each plane row-major.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, float fill = 0.0f);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t plane_size() const {
    return static_cast<std::size_t>(width_) * height_;
  }
  bool empty() const { return data_.empty(); }

  float& at(int x, int y, int c = 0) {
    return data_[c * plane_size() + static_cast<std::size_t>(y) * width_ + x];
  }
  float at(int x, int y, int c = 0) const {
    return data_[c * plane_size() + static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<float> channel(int c) {
    return {data_.data() + c * plane_size(), plane_size()};
  }
  std::span<const float> channel(int c) const {
    return {data_.data() + c * plane_size(), plane_size()};
  }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  bool SameSize(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  // Clamps every sample into [0, 1].
  void Clamp01();

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

// Single-channel raster with a role tag, so a disparity map cannot be passed
// where a visibility map is expected.
template <typename Tag>
class Plane : public Image {
 public:
  Plane() = default;
  Plane(int width, int height, float fill = 0.0f)
      : Image(width, height, 1, fill) {}
  explicit Plane(Image image);

  std::span<float> values() { return channel(0); }
  std::span<const float> values() const { return channel(0); }

  template <typename OtherTag>
  Plane<OtherTag> As() const {
    return Plane<OtherTag>(static_cast<const Image&>(*this));
  }
};

struct DisparityTag {};
struct VisibilityTag {};
struct SoftMaskTag {};
struct RasterTag {};

using DisparityMap = Plane<DisparityTag>;
using VisibilityMap = Plane<VisibilityTag>;
using SoftMask = Plane<SoftMaskTag>;
// Generic single-channel data: mattes, alpha, coverage.
using Raster = Plane<RasterTag>;

// Per-pixel {0, 1}; 1 marks pixels to be filled.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, std::uint8_t fill = 0)
      : width_(width),
        height_(height),
        data_(static_cast<std::size_t>(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  std::uint8_t& at(int x, int y) {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::span<std::uint8_t> values() { return data_; }
  std::span<const std::uint8_t> values() const { return data_; }

  std::size_t CountSet() const;
  bool None() const { return CountSet() == 0; }
  bool All() const { return CountSet() == data_.size(); }

  // 0 / 1 as float samples.
  Raster ToRaster() const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// Sobel responses of a disparity map; magnitude_sq = gx^2 + gy^2.
struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<float> gx;
  std::vector<float> gy;
  std::vector<float> magnitude_sq;
};

template <typename T>
concept RasterType = std::derived_from<T, Image>;

void RequireSingleChannel(const Image& image);

template <typename Tag>
Plane<Tag>::Plane(Image image) : Image(std::move(image)) {
  RequireSingleChannel(*this);
}

}  // namespace softlayer

#endif  // SOFTLAYER_IMAGE_H_
