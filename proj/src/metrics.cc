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

#include "softlayer/metrics.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iterator>
#include <set>

#include "softlayer/error.h"
#include "softlayer/filters.h"
#include "softlayer/image_io.h"

namespace softlayer {
namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

struct CropRect {
  int x0, y0, x1, y1;  // half-open
  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
};

CropRect Crop(const Image& a, const Image& b, double border_crop) {
  if (!a.SameSize(b) || a.channels() != b.channels()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "metric inputs differ: " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + "x" +
                    std::to_string(a.channels()) + " vs " +
                    std::to_string(b.width()) + "x" +
                    std::to_string(b.height()) + "x" +
                    std::to_string(b.channels()));
  }
  if (!(border_crop >= 0.0 && border_crop < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "border crop must be in [0, 0.5)");
  }
  const int cx = static_cast<int>(std::floor(border_crop * a.width()));
  const int cy = static_cast<int>(std::floor(border_crop * a.height()));
  CropRect r{cx, cy, a.width() - cx, a.height() - cy};
  if (r.width() < 1 || r.height() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "nothing left after border crop");
  }
  return r;
}

// Valid-mode separable filtering of a cropped plane.
std::vector<double> FilterValid(const std::vector<double>& src, int width,
                                int height, const std::vector<double>& taps) {
  const int k = static_cast<int>(taps.size());
  const int ow = width - k + 1;
  const int oh = height - k + 1;
  std::vector<double> tmp(static_cast<std::size_t>(ow) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int t = 0; t < k; ++t) acc += taps[t] * src[y * width + x + t];
      tmp[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int t = 0; t < k; ++t) acc += taps[t] * tmp[(y + t) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

double Psnr(const Image& a, const Image& b, double border_crop) {
  const CropRect r = Crop(a, b, border_crop);
  double sum = 0.0;
  for (int c = 0; c < a.channels(); ++c) {
    for (int y = r.y0; y < r.y1; ++y) {
      for (int x = r.x0; x < r.x1; ++x) {
        const double d = double{a.at(x, y, c)} - double{b.at(x, y, c)};
        sum += d * d;
      }
    }
  }
  const double mse =
      sum / (static_cast<double>(r.width()) * r.height() * a.channels());
  if (mse <= 0.0) return kPsnrCapDb;
  return std::min(kPsnrCapDb, 10.0 * std::log10(1.0 / mse));
}

double Ssim(const Image& a, const Image& b, double border_crop) {
  const CropRect r = Crop(a, b, border_crop);
  if (r.width() < kSsimWindow || r.height() < kSsimWindow) {
    throw Error(ErrorCode::kInvalidArgument,
                "SSIM needs at least 11x11 pixels after cropping");
  }
  std::vector<double> taps(kSsimWindow);
  double norm = 0.0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double t = i - kSsimWindow / 2;
    taps[i] = std::exp(-t * t / (2.0 * kSsimSigma * kSsimSigma));
    norm += taps[i];
  }
  for (double& t : taps) t /= norm;

  const int w = r.width();
  const int h = r.height();
  const std::size_t n = static_cast<std::size_t>(w) * h;
  double total = 0.0;
  std::size_t count = 0;
  for (int c = 0; c < a.channels(); ++c) {
    std::vector<double> pa(n), pb(n), paa(n), pbb(n), pab(n);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        pa[i] = a.at(r.x0 + x, r.y0 + y, c);
        pb[i] = b.at(r.x0 + x, r.y0 + y, c);
        paa[i] = pa[i] * pa[i];
        pbb[i] = pb[i] * pb[i];
        pab[i] = pa[i] * pb[i];
      }
    }
    const auto mu_a = FilterValid(pa, w, h, taps);
    const auto mu_b = FilterValid(pb, w, h, taps);
    const auto e_aa = FilterValid(paa, w, h, taps);
    const auto e_bb = FilterValid(pbb, w, h, taps);
    const auto e_ab = FilterValid(pab, w, h, taps);
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
      const double var_a = e_aa[i] - mu_a[i] * mu_a[i];
      const double var_b = e_bb[i] - mu_b[i] * mu_b[i];
      const double cov = e_ab[i] - mu_a[i] * mu_b[i];
      const double num = (2.0 * mu_a[i] * mu_b[i] + kC1) * (2.0 * cov + kC2);
      const double den = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + kC1) *
                         (var_a + var_b + kC2);
      total += num / den;
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

void MetricsReport::Aggregate() {
  mean_psnr = 0.0;
  mean_ssim = 0.0;
  if (pairs.empty()) return;
  for (const PairMetrics& p : pairs) {
    mean_psnr += p.psnr;
    mean_ssim += p.ssim;
  }
  mean_psnr /= static_cast<double>(pairs.size());
  mean_ssim /= static_cast<double>(pairs.size());
}

nlohmann::json MetricsReport::ToJson() const {
  nlohmann::json j;
  j["border_crop"] = border_crop;
  j["pairs"] = nlohmann::json::array();
  for (const PairMetrics& p : pairs) {
    j["pairs"].push_back(
        {{"name", p.name}, {"psnr", p.psnr}, {"ssim", p.ssim}, {"lpips", nullptr}});
  }
  j["unmatched"] = unmatched;
  j["mean"] = {{"psnr", mean_psnr}, {"ssim", mean_ssim}, {"lpips", nullptr}};
  return j;
}

MetricsReport EvaluateDirectories(const std::filesystem::path& pred_dir,
                                  const std::filesystem::path& gt_dir,
                                  double border_crop) {
  auto list_png = [](const std::filesystem::path& dir) {
    std::set<std::string> names;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".png") {
        names.insert(entry.path().filename().string());
      }
    }
    if (ec) {
      throw Error(ErrorCode::kIo,
                  "cannot list '" + dir.string() + "': " + ec.message());
    }
    return names;
  };
  const std::set<std::string> pred = list_png(pred_dir);
  const std::set<std::string> gt = list_png(gt_dir);

  MetricsReport report;
  report.border_crop = border_crop;
  std::vector<std::string> shared;
  std::set_intersection(pred.begin(), pred.end(), gt.begin(), gt.end(),
                        std::back_inserter(shared));
  std::set_symmetric_difference(pred.begin(), pred.end(), gt.begin(), gt.end(),
                                std::back_inserter(report.unmatched));
  if (shared.empty()) {
    std::string listed;
    for (const std::string& name : report.unmatched) listed += " " + name;
    throw Error(ErrorCode::kUnmatchedFiles,
                "no file names shared between '" + pred_dir.string() +
                    "' and '" + gt_dir.string() + "'; unmatched:" +
                    (listed.empty() ? " (none)" : listed));
  }
  report.pairs.resize(shared.size());
  std::vector<std::exception_ptr> failures(shared.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < static_cast<int>(shared.size()); ++i) {
    try {
      const Image a = LoadImage(pred_dir / shared[i]);
      const Image b = LoadImage(gt_dir / shared[i]);
      report.pairs[i] = {shared[i], Psnr(a, b, border_crop),
                         Ssim(a, b, border_crop)};
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  report.Aggregate();
  return report;
}

}  // namespace softlayer
