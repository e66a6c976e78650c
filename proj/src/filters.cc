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

#include "softlayer/filters.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "softlayer/error.h"

namespace softlayer {
namespace {

// Clamped 1-D pass along rows (horizontal) or columns (vertical).
template <typename Op>
void SeparablePass(std::span<const float> src, std::span<float> dst, int width,
                   int height, bool horizontal, Op op) {
  if (horizontal) {
#pragma omp parallel for schedule(static)
    for (int y = 0; y < height; ++y) {
      op(src.subspan(static_cast<std::size_t>(y) * width, width),
         dst.subspan(static_cast<std::size_t>(y) * width, width), 1);
    }
  } else {
#pragma omp parallel for schedule(static)
    for (int x = 0; x < width; ++x) {
      op(src.subspan(x), dst.subspan(x), width);
    }
  }
}

}  // namespace

std::vector<float> GaussianKernel(float sigma) {
  if (!(sigma >= 0.0f)) {
    throw Error(ErrorCode::kInvalidArgument,
                "blur sigma must be >= 0, got " + std::to_string(sigma));
  }
  if (sigma == 0.0f) return {1.0f};
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    taps[i + radius] = std::exp(-0.5 * i * i / (double{sigma} * sigma));
    sum += taps[i + radius];
  }
  std::vector<float> kernel(taps.size());
  for (std::size_t i = 0; i < taps.size(); ++i) {
    kernel[i] = static_cast<float>(taps[i] / sum);
  }
  return kernel;
}

Image GaussianBlur(const Image& image, float sigma) {
  const std::vector<float> kernel = GaussianKernel(sigma);
  if (kernel.size() == 1) return image;
  const int radius = static_cast<int>(kernel.size() / 2);
  const int width = image.width();
  const int height = image.height();

  auto convolve = [&](int length) {
    return [&, length](std::span<const float> src, std::span<float> dst,
                       std::size_t stride) {
      for (int i = 0; i < length; ++i) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          const int j = std::clamp(i + k, 0, length - 1);
          acc += double{kernel[k + radius]} * src[j * stride];
        }
        dst[i * stride] = static_cast<float>(acc);
      }
    };
  };

  Image tmp(width, height, image.channels());
  Image out(width, height, image.channels());
  for (int c = 0; c < image.channels(); ++c) {
    SeparablePass(image.channel(c), tmp.channel(c), width, height, true,
                  convolve(width));
    SeparablePass(tmp.channel(c), out.channel(c), width, height, false,
                  convolve(height));
  }
  return out;
}

Image MaxPoolDilate(const Image& image, int radius) {
  if (radius < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "dilation radius must be >= 0, got " + std::to_string(radius));
  }
  if (radius == 0) return image;
  const int width = image.width();
  const int height = image.height();

  // Clamp-to-edge only repeats samples already inside the clipped window, so
  // the clipped window maximum is exact and the 2-D max separates.
  auto pool = [radius](int length) {
    return [radius, length](std::span<const float> src, std::span<float> dst,
                            std::size_t stride) {
      for (int i = 0; i < length; ++i) {
        const int lo = std::max(0, i - radius);
        const int hi = std::min(length - 1, i + radius);
        float m = src[lo * stride];
        for (int j = lo + 1; j <= hi; ++j) m = std::max(m, src[j * stride]);
        dst[i * stride] = m;
      }
    };
  };

  Image tmp(width, height, image.channels());
  Image out(width, height, image.channels());
  for (int c = 0; c < image.channels(); ++c) {
    SeparablePass(image.channel(c), tmp.channel(c), width, height, true,
                  pool(width));
    SeparablePass(tmp.channel(c), out.channel(c), width, height, false,
                  pool(height));
  }
  return out;
}

GradientField SobelGradient(const DisparityMap& disparity) {
  const int width = disparity.width();
  const int height = disparity.height();
  if (width < 3 || height < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "Sobel gradient needs at least 3x3 pixels, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  GradientField field;
  field.width = width;
  field.height = height;
  const std::size_t n = disparity.plane_size();
  field.gx.resize(n);
  field.gy.resize(n);
  field.magnitude_sq.resize(n);

  auto d = [&](int x, int y) {
    return disparity.at(std::clamp(x, 0, width - 1),
                        std::clamp(y, 0, height - 1));
  };
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const float gx = ((d(x + 1, y - 1) + 2.0f * d(x + 1, y) +
                         d(x + 1, y + 1)) -
                        (d(x - 1, y - 1) + 2.0f * d(x - 1, y) +
                         d(x - 1, y + 1))) /
                       8.0f;
      const float gy = ((d(x - 1, y + 1) + 2.0f * d(x, y + 1) +
                         d(x + 1, y + 1)) -
                        (d(x - 1, y - 1) + 2.0f * d(x, y - 1) +
                         d(x + 1, y - 1))) /
                       8.0f;
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      field.gx[i] = gx;
      field.gy[i] = gy;
      field.magnitude_sq[i] = gx * gx + gy * gy;
    }
  }
  return field;
}

Image ResizeBilinear(const Image& image, int new_width, int new_height) {
  if (new_width < 1 || new_height < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "resize target must be at least 1x1, got " +
                    std::to_string(new_width) + "x" +
                    std::to_string(new_height));
  }
  if (new_width == image.width() && new_height == image.height()) {
    return image;
  }
  const int width = image.width();
  const int height = image.height();
  const double sx = static_cast<double>(width) / new_width;
  const double sy = static_cast<double>(height) / new_height;

  struct Tap {
    int i0, i1;
    float w1;
  };
  auto taps = [](int out_len, int in_len, double scale) {
    std::vector<Tap> t(out_len);
    for (int i = 0; i < out_len; ++i) {
      const double src =
          std::clamp((i + 0.5) * scale - 0.5, 0.0, double(in_len - 1));
      const int i0 = static_cast<int>(std::floor(src));
      const int i1 = std::min(i0 + 1, in_len - 1);
      t[i] = {i0, i1, static_cast<float>(src - i0)};
    }
    return t;
  };
  const std::vector<Tap> xt = taps(new_width, width, sx);
  const std::vector<Tap> yt = taps(new_height, height, sy);

  Image out(new_width, new_height, image.channels());
  for (int c = 0; c < image.channels(); ++c) {
#pragma omp parallel for schedule(static)
    for (int y = 0; y < new_height; ++y) {
      const Tap& ty = yt[y];
      for (int x = 0; x < new_width; ++x) {
        const Tap& tx = xt[x];
        const float top = image.at(tx.i0, ty.i0, c) * (1.0f - tx.w1) +
                          image.at(tx.i1, ty.i0, c) * tx.w1;
        const float bottom = image.at(tx.i0, ty.i1, c) * (1.0f - tx.w1) +
                             image.at(tx.i1, ty.i1, c) * tx.w1;
        out.at(x, y, c) = top * (1.0f - ty.w1) + bottom * ty.w1;
      }
    }
  }
  return out;
}

}  // namespace softlayer
