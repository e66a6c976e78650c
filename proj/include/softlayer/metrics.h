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

#ifndef SOFTLAYER_METRICS_H_
#define SOFTLAYER_METRICS_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "softlayer/image.h"

namespace softlayer {

inline constexpr double kPsnrCapDb = 99.0;
inline constexpr double kDefaultBorderCrop = 0.2;

// floor(border_crop * size) pixels are dropped from each side before either
// metric is evaluated. border_crop must be in [0, 0.5).

// 10 log10(1 / MSE) over all remaining samples and channels, capped at 99 dB.
double Psnr(const Image& a, const Image& b,
            double border_crop = kDefaultBorderCrop);

// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), C1 = 0.01^2,
// C2 = 0.03^2, averaged over every fully-inside window position and channel.
double Ssim(const Image& a, const Image& b,
            double border_crop = kDefaultBorderCrop);

struct PairMetrics {
  std::string name;
  double psnr = 0.0;
  double ssim = 0.0;
};

struct MetricsReport {
  double border_crop = kDefaultBorderCrop;
  std::vector<PairMetrics> pairs;
  std::vector<std::string> unmatched;  // present in only one directory
  double mean_psnr = 0.0;
  double mean_ssim = 0.0;

  // Arithmetic means over pairs.
  void Aggregate();
  // LPIPS is reported as null.
  nlohmann::json ToJson() const;
};

// Pairs PNG files by file name. Throws kUnmatchedFiles listing every name
// when no name is shared.
MetricsReport EvaluateDirectories(const std::filesystem::path& pred_dir,
                                  const std::filesystem::path& gt_dir,
                                  double border_crop = kDefaultBorderCrop);

}  // namespace softlayer

#endif  // SOFTLAYER_METRICS_H_
