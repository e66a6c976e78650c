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

#include "softlayer/layering.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "softlayer/error.h"
#include "softlayer/filters.h"

namespace softlayer {
namespace {

constexpr double kNoOffset = -std::numeric_limits<double>::infinity();

// Monotone deque over indices for sliding-window minima.
class MinQueue {
 public:
  explicit MinQueue(int capacity) : index_(capacity) {}

  void Clear() { head_ = tail_ = 0; }
  bool Empty() const { return head_ == tail_; }

  void Push(int i, std::span<const double> key) {
    while (tail_ > head_ && key[index_[tail_ - 1]] >= key[i]) --tail_;
    index_[tail_++] = i;
  }
  void DropBefore(int lo) {
    while (head_ < tail_ && index_[head_] < lo) ++head_;
  }
  void DropAfter(int hi) {
    while (head_ < tail_ && index_[head_] > hi) ++head_;
  }
  int Front() const { return index_[head_]; }

 private:
  std::vector<int> index_;
  int head_ = 0;
  int tail_ = 0;
};

// For one line of `length` samples, folds max_k v[i] - v[i +- k] - rho*k,
// k in [1, m], into `excess`. Rewritten as v[i] -+ rho*i minus a sliding
// minimum of v[j] +- rho*j, giving O(length) per line.
struct LineScratch {
  explicit LineScratch(int length)
      : values(length), plus(length), minus(length), queue(length) {}
  std::vector<double> values;
  std::vector<double> plus;   // v[j] + rho*j
  std::vector<double> minus;  // v[j] - rho*j
  MinQueue queue;
};

void ReduceLine(LineScratch& s, int length, double rho, int m,
                double* excess, std::size_t stride) {
  for (int j = 0; j < length; ++j) {
    s.plus[j] = s.values[j] + rho * j;
    s.minus[j] = s.values[j] - rho * j;
  }
  // Offsets to the right: window [i + 1, i + m].
  s.queue.Clear();
  for (int i = length - 1; i >= 0; --i) {
    if (i + 1 < length) s.queue.Push(i + 1, s.plus);
    s.queue.DropAfter(i + m);
    if (!s.queue.Empty()) {
      const double e = s.values[i] + rho * i - s.plus[s.queue.Front()];
      double& out = excess[i * stride];
      out = std::max(out, e);
    }
  }
  // Offsets to the left: window [i - m, i - 1].
  s.queue.Clear();
  for (int i = 0; i < length; ++i) {
    if (i >= 1) s.queue.Push(i - 1, s.minus);
    s.queue.DropBefore(i - m);
    if (!s.queue.Empty()) {
      const double e = s.values[i] - rho * i - s.minus[s.queue.Front()];
      double& out = excess[i * stride];
      out = std::max(out, e);
    }
  }
}

SoftMask ActivateExcess(std::span<const double> excess, int width, int height,
                        double gamma) {
  SoftMask mask(width, height);
  auto out = mask.values();
  for (std::size_t i = 0; i < excess.size(); ++i) {
    out[i] = static_cast<float>(std::tanh(gamma * std::max(0.0, excess[i])));
  }
  return mask;
}

SoftMask ComputeAtFullResolution(const DisparityMap& disparity,
                                 const DisocclusionParams& params) {
  std::vector<double> excess(disparity.plane_size(), kNoOffset);
  internal::ScanlineMaxExcess(disparity, params.rho, params.neighborhood,
                              excess);
  return ActivateExcess(excess, disparity.width(), disparity.height(),
                        params.gamma);
}

void RequireSameSize(const Image& a, const Image& b, const char* what) {
  if (!a.SameSize(b)) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

}  // namespace

void VisibilityParams::Validate() const {
  if (!(beta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must be > 0");
  }
}

void DisocclusionParams::Validate() const {
  if (!(rho > 0.0) || !(gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "rho and gamma must be > 0");
  }
  if (neighborhood < 1) {
    throw Error(ErrorCode::kInvalidArgument, "neighborhood must be >= 1");
  }
  if (downsample_factor < 1) {
    throw Error(ErrorCode::kInvalidArgument, "downsample factor must be >= 1");
  }
}

DisparityMap PreprocessDisparity(const DisparityMap& disparity, float sigma,
                                 int pool_radius) {
  DisparityMap out = MaxPoolDilate(GaussianBlur(disparity, sigma), pool_radius);
  out.Clamp01();
  return out;
}

VisibilityMap ComputeVisibility(const DisparityMap& disparity,
                                const VisibilityParams& params) {
  params.Validate();
  const GradientField grad = SobelGradient(disparity);
  VisibilityMap visibility(disparity.width(), disparity.height());
  auto out = visibility.values();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<float>(
        std::exp(-params.beta * double{grad.magnitude_sq[i]}));
  }
  return visibility;
}

namespace internal {

void ScanlineMaxExcess(const DisparityMap& disparity, double rho,
                       int neighborhood, std::span<double> excess) {
  const int width = disparity.width();
  const int height = disparity.height();
  const auto d = disparity.values();

#pragma omp parallel
  {
    LineScratch scratch(std::max(width, height));
#pragma omp for schedule(static)
    for (int y = 0; y < height; ++y) {
      const std::size_t row = static_cast<std::size_t>(y) * width;
      for (int x = 0; x < width; ++x) scratch.values[x] = d[row + x];
      ReduceLine(scratch, width, rho, neighborhood, excess.data() + row, 1);
    }
    // Columns run after the implicit barrier, so each column owns its cells.
#pragma omp for schedule(static)
    for (int x = 0; x < width; ++x) {
      for (int y = 0; y < height; ++y) {
        scratch.values[y] = d[static_cast<std::size_t>(y) * width + x];
      }
      ReduceLine(scratch, height, rho, neighborhood, excess.data() + x, width);
    }
  }
}

}  // namespace internal

SoftMask DisocclusionMap(const DisparityMap& disparity,
                         const DisocclusionParams& params) {
  params.Validate();
  const int f = params.downsample_factor;
  if (f == 1) return ComputeAtFullResolution(disparity, params);
  const int small_width = (disparity.width() + f - 1) / f;
  const int small_height = (disparity.height() + f - 1) / f;
  const DisparityMap small =
      ResizeBilinear(disparity, small_width, small_height);
  const SoftMask coarse = ComputeAtFullResolution(small, params);
  SoftMask full =
      ResizeBilinear(coarse, disparity.width(), disparity.height());
  full.Clamp01();
  return full;
}

SoftMask OcclusionMap(const DisparityMap& disparity,
                      const DisocclusionParams& params) {
  DisparityMap flipped(disparity.width(), disparity.height());
  auto src = disparity.values();
  auto dst = flipped.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = 1.0f - src[i];
  return DisocclusionMap(flipped, params);
}

VisibilityMap FuseMatteVisibility(const VisibilityMap& visibility,
                                  const MatteInput& matte,
                                  const SoftMask& occlusion) {
  RequireSameSize(visibility, matte.matte, "matte size mismatch");
  RequireSameSize(visibility, occlusion, "occlusion map size mismatch");
  for (float v : matte.matte.values()) {
    if (!(v >= 0.0f && v <= 1.0f)) {
      throw Error(ErrorCode::kInvalidArgument, "matte values must be in [0, 1]");
    }
  }
  const Raster dilated = MaxPoolDilate(matte.matte, matte.dilation_radius);
  const auto a = visibility.values();
  const auto m = matte.matte.values();
  const auto m_bar = dilated.values();
  const auto s_hat = occlusion.values();

  VisibilityMap fused(visibility.width(), visibility.height());
  auto out = fused.values();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const float band = std::clamp(m_bar[i] - m[i], 0.0f, 1.0f);
    const float keep = 1.0f - band * (1.0f - s_hat[i]);
    out[i] = std::clamp(a[i] * keep, 0.0f, 1.0f);
  }
  return fused;
}

}  // namespace softlayer
