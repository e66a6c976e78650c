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

#include "softlayer/inpainting.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "softlayer/error.h"
#include "softlayer/image_io.h"

namespace softlayer {
namespace {

constexpr double kColorAnchorSlack = 1e-3;
// Below this many unknowns a level is relaxed directly.
constexpr std::size_t kMinUnknownsToCoarsen = 256;

enum class Cell : std::uint8_t { kExcluded, kAnchor, kUnknown };

// One level of the diffusion problem. `values` is planar by channel.
struct Level {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<Cell> cell;
  std::vector<double> values;
  std::vector<double> guide;  // empty: uniform edge weights

  std::size_t size() const {
    return static_cast<std::size_t>(width) * height;
  }
};

struct SolveStats {
  bool converged = true;
  int iterations = 0;
};

void RequireSameSize(int w0, int h0, int w1, int h1, const char* what) {
  if (w0 != w1 || h0 != h1) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(w0) + "x" +
                    std::to_string(h0) + " vs " + std::to_string(w1) + "x" +
                    std::to_string(h1));
  }
}

// Over-relaxation factor for a region whose unknowns lie at most
// `max_distance` steps from an anchor. One-sided Dirichlet data behaves like
// a strip of width 4 * max_distance under reflection.
double RelaxationFactor(int max_distance) {
  const double width = 4.0 * std::max(max_distance, 1) + 1.0;
  return 2.0 / (1.0 + std::sin(std::numbers::pi / width));
}

// Longest 4-connected path from an anchor to any reachable unknown cell.
int MaxAnchorDistance(const Level& level) {
  const std::size_t n = level.size();
  std::vector<int> dist(n, -1);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (level.cell[i] == Cell::kAnchor) {
      dist[i] = 0;
      queue.push_back(i);
    }
  }
  int farthest = 0;
  const int width = level.width;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    const int x = static_cast<int>(i % width);
    const int y = static_cast<int>(i / width);
    auto visit = [&](std::size_t j) {
      if (level.cell[j] != Cell::kUnknown || dist[j] >= 0) return;
      dist[j] = dist[i] + 1;
      farthest = std::max(farthest, dist[j]);
      queue.push_back(j);
    };
    if (y > 0) visit(i - width);
    if (x > 0) visit(i - 1);
    if (x + 1 < width) visit(i + 1);
    if (y + 1 < level.height) visit(i + width);
  }
  return farthest;
}

// Red-black successive over-relaxation on the unknown cells until the largest
// update in a sweep falls below `tol`. Cells of one color only read cells of
// the other color, so each half-sweep is order-independent. Updates are
// projected onto the anchor value range, which keeps every iterate inside it.
SolveStats Relax(Level& level, double lambda, int max_iterations, double tol) {
  const std::size_t n = level.size();
  std::array<std::vector<int>, 2> unknown;
  for (std::size_t i = 0; i < n; ++i) {
    if (level.cell[i] != Cell::kUnknown) continue;
    const int x = static_cast<int>(i % level.width);
    const int y = static_cast<int>(i / level.width);
    unknown[(x + y) & 1].push_back(static_cast<int>(i));
  }
  if (unknown[0].empty() && unknown[1].empty()) return {};

  struct Stencil {
    std::array<int, 4> neighbor;
    std::array<double, 4> weight;
    int count = 0;
    double total = 0.0;
  };
  const int width = level.width;
  const int height = level.height;
  auto build = [&](const std::vector<int>& cells) {
    std::vector<Stencil> stencils(cells.size());
    for (std::size_t u = 0; u < cells.size(); ++u) {
      const int i = cells[u];
      const int x = i % width;
      const int y = i / width;
      const std::array<std::pair<int, int>, 4> offsets = {
          {{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};
      Stencil& s = stencils[u];
      for (const auto& [dx, dy] : offsets) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
        const int j = ny * width + nx;
        if (level.cell[j] == Cell::kExcluded) continue;
        const double w =
            level.guide.empty()
                ? 1.0
                : std::exp(-lambda * std::abs(level.guide[i] - level.guide[j]));
        s.neighbor[s.count] = j;
        s.weight[s.count] = w;
        ++s.count;
        s.total += w;
      }
    }
    return stencils;
  };
  const std::array<std::vector<Stencil>, 2> stencils = {build(unknown[0]),
                                                        build(unknown[1])};

  const int channels = level.channels;
  std::vector<double> lo(channels, std::numeric_limits<double>::infinity());
  std::vector<double> hi(channels, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    if (level.cell[i] != Cell::kAnchor) continue;
    for (int c = 0; c < channels; ++c) {
      lo[c] = std::min(lo[c], level.values[c * n + i]);
      hi[c] = std::max(hi[c], level.values[c * n + i]);
    }
  }
  for (int c = 0; c < channels; ++c) {
    if (lo[c] > hi[c]) {  // no anchors at all: leave the range open
      lo[c] = -std::numeric_limits<double>::infinity();
      hi[c] = std::numeric_limits<double>::infinity();
    }
  }
  const double omega = RelaxationFactor(MaxAnchorDistance(level));

  for (int it = 0; it < max_iterations; ++it) {
    double change = 0.0;
    for (int color = 0; color < 2; ++color) {
      const std::vector<int>& cells = unknown[color];
      const std::vector<Stencil>& st = stencils[color];
      const int count = static_cast<int>(cells.size());
#pragma omp parallel for schedule(static) reduction(max : change)
      for (int u = 0; u < count; ++u) {
        const Stencil& s = st[u];
        if (s.total <= 0.0) continue;
        for (int c = 0; c < channels; ++c) {
          double* plane = level.values.data() + c * n;
          double acc = 0.0;
          for (int k = 0; k < s.count; ++k) {
            acc += s.weight[k] * plane[s.neighbor[k]];
          }
          const double old = plane[cells[u]];
          const double v = std::clamp(old + omega * (acc / s.total - old),
                                      lo[c], hi[c]);
          plane[cells[u]] = v;
          change = std::max(change, std::abs(v - old));
        }
      }
    }
    if (change < tol) return {true, it + 1};
  }
  return {false, max_iterations};
}

// 2x2 restriction. A coarse cell is an anchor if any child is (value: mean of
// anchor children), else unknown if any child is.
Level Coarsen(const Level& fine) {
  Level coarse;
  coarse.width = (fine.width + 1) / 2;
  coarse.height = (fine.height + 1) / 2;
  coarse.channels = fine.channels;
  const std::size_t n = coarse.size();
  const std::size_t fn = fine.size();
  coarse.cell.assign(n, Cell::kExcluded);
  coarse.values.assign(n * coarse.channels, 0.0);
  if (!fine.guide.empty()) coarse.guide.assign(n, 0.0);

  for (int y = 0; y < coarse.height; ++y) {
    for (int x = 0; x < coarse.width; ++x) {
      const std::size_t ci = static_cast<std::size_t>(y) * coarse.width + x;
      int anchors = 0;
      int unknowns = 0;
      int live = 0;
      std::vector<double> sum(coarse.channels, 0.0);
      double guide_sum = 0.0;
      for (int dy = 0; dy < 2; ++dy) {
        for (int dx = 0; dx < 2; ++dx) {
          const int fx = 2 * x + dx;
          const int fy = 2 * y + dy;
          if (fx >= fine.width || fy >= fine.height) continue;
          const std::size_t fi = static_cast<std::size_t>(fy) * fine.width + fx;
          const Cell c = fine.cell[fi];
          if (c == Cell::kExcluded) continue;
          ++live;
          if (!fine.guide.empty()) guide_sum += fine.guide[fi];
          if (c == Cell::kAnchor) {
            ++anchors;
            for (int ch = 0; ch < coarse.channels; ++ch) {
              sum[ch] += fine.values[ch * fn + fi];
            }
          } else {
            ++unknowns;
          }
        }
      }
      if (anchors > 0) {
        coarse.cell[ci] = Cell::kAnchor;
        for (int ch = 0; ch < coarse.channels; ++ch) {
          coarse.values[ch * n + ci] = sum[ch] / anchors;
        }
      } else if (unknowns > 0) {
        coarse.cell[ci] = Cell::kUnknown;
      }
      if (live > 0 && !coarse.guide.empty()) coarse.guide[ci] = guide_sum / live;
    }
  }
  return coarse;
}

void InitFromAnchorMean(Level& level) {
  const std::size_t n = level.size();
  for (int c = 0; c < level.channels; ++c) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (level.cell[i] == Cell::kAnchor) {
        sum += level.values[c * n + i];
        ++count;
      }
    }
    const double mean = count > 0 ? sum / count : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (level.cell[i] == Cell::kUnknown) level.values[c * n + i] = mean;
    }
  }
}

std::size_t CountUnknown(const Level& level) {
  return static_cast<std::size_t>(
      std::count(level.cell.begin(), level.cell.end(), Cell::kUnknown));
}

// Solves the coarsened problem first and uses it as the initial guess.
SolveStats SolveMultilevel(Level& level, double lambda,
                           const InpaintParams& params) {
  const std::size_t unknowns = CountUnknown(level);
  if (unknowns == 0) return {};
  if (unknowns > kMinUnknownsToCoarsen && level.width >= 4 &&
      level.height >= 4) {
    Level coarse = Coarsen(level);
    SolveMultilevel(coarse, lambda, params);
    const std::size_t n = level.size();
    const std::size_t cn = coarse.size();
    for (int y = 0; y < level.height; ++y) {
      for (int x = 0; x < level.width; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * level.width + x;
        if (level.cell[i] != Cell::kUnknown) continue;
        const std::size_t ci =
            static_cast<std::size_t>(y / 2) * coarse.width + x / 2;
        for (int c = 0; c < level.channels; ++c) {
          level.values[c * n + i] = coarse.values[c * cn + ci];
        }
      }
    }
  } else {
    InitFromAnchorMean(level);
  }
  return Relax(level, lambda, params.max_iterations, params.convergence_tol);
}

}  // namespace

void InpaintParams::Validate() const {
  if (!(mask_threshold > 0.0 && mask_threshold < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mask threshold must be in (0, 1)");
  }
  if (max_iterations < 1 || !(convergence_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_iterations must be >= 1 and convergence_tol > 0");
  }
  if (!(depth_guidance_strength >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "depth guidance strength must be >= 0");
  }
  if (!(background_quantile > 0.0 && background_quantile <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "background quantile must be in (0, 1]");
  }
}

BinaryMask BinarizeMask(const SoftMask& soft, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mask threshold must be in (0, 1)");
  }
  BinaryMask mask(soft.width(), soft.height());
  auto out = mask.values();
  auto in = soft.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = in[i] >= tau ? 1 : 0;
  if (!out.empty() && mask.All()) {
    throw Error(ErrorCode::kNoSourcePixels,
                "thresholded mask covers every pixel; nothing to inpaint from");
  }
  return mask;
}

InpaintAnchors FindAnchors(const DisparityMap& disparity,
                           const BinaryMask& mask, double background_quantile) {
  RequireSameSize(disparity.width(), disparity.height(), mask.width(),
                  mask.height(), "mask size mismatch");
  const int width = mask.width();
  const int height = mask.height();
  const auto m = mask.values();
  const auto d = disparity.values();
  const std::size_t n = m.size();

  InpaintAnchors anchors;
  auto for_neighbors = [&](std::size_t i, auto&& fn) {
    const int x = static_cast<int>(i % width);
    const int y = static_cast<int>(i / width);
    if (y > 0) fn(i - width);
    if (x > 0) fn(i - 1);
    if (x + 1 < width) fn(i + 1);
    if (y + 1 < height) fn(i + width);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i] != 0) continue;
    bool touches = false;
    for_neighbors(i, [&](std::size_t j) { touches |= m[j] != 0; });
    if (touches) anchors.boundary.push_back(i);
  }
  if (mask.None()) return anchors;
  if (anchors.boundary.empty()) {
    throw Error(ErrorCode::kNoSourcePixels,
                "mask has no source pixels on its boundary");
  }

  std::vector<float> sorted;
  sorted.reserve(anchors.boundary.size());
  for (std::size_t i : anchors.boundary) sorted.push_back(d[i]);
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(background_quantile * static_cast<double>(sorted.size())));
  anchors.background_disparity =
      sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
  const double d_bg = anchors.background_disparity;

  std::vector<std::uint8_t> role(n, 0);  // bit 0: depth, bit 1: color
  for (std::size_t i : anchors.boundary) {
    if (d[i] <= d_bg) role[i] |= 1;
    if (d[i] <= d_bg + kColorAnchorSlack) role[i] |= 2;
  }

  // A masked component with no depth anchor falls back to its
  // minimum-disparity boundary pixel, whose Dirichlet value is lowered to d_bg
  // so the component still fills at background depth.
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (m[seed] == 0 || visited[seed]) continue;
    bool anchored = false;
    std::size_t lowest = n;
    visited[seed] = 1;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for_neighbors(i, [&](std::size_t j) {
        if (m[j] == 0) {
          anchored |= (role[j] & 1) != 0;
          if (lowest == n || d[j] < d[lowest] ||
              (d[j] == d[lowest] && j < lowest)) {
            lowest = j;
          }
        } else if (!visited[j]) {
          visited[j] = 1;
          stack.push_back(j);
        }
      });
    }
    if (!anchored && lowest < n) {
      role[lowest] |= 3;
      anchors.lowered_anchors.push_back(lowest);
    }
  }

  for (std::size_t i : anchors.boundary) {
    if (role[i] & 1) anchors.depth_anchors.push_back(i);
    if (role[i] & 2) anchors.color_anchors.push_back(i);
  }
  return anchors;
}

InpaintedBackground InpaintRgbd(const Image& rgb, const DisparityMap& disparity,
                                const BinaryMask& mask,
                                const InpaintParams& params) {
  params.Validate();
  RequireSameSize(rgb.width(), rgb.height(), disparity.width(),
                  disparity.height(), "image and disparity size mismatch");
  RequireSameSize(rgb.width(), rgb.height(), mask.width(), mask.height(),
                  "mask size mismatch");
  if (mask.All()) {
    throw Error(ErrorCode::kNoSourcePixels, "mask covers every pixel");
  }

  InpaintedBackground out;
  out.rgb = rgb;
  out.disparity = disparity;
  if (mask.None()) return out;

  const InpaintAnchors anchors =
      FindAnchors(disparity, mask, params.background_quantile);
  out.background_disparity = anchors.background_disparity;
  const std::size_t n = mask.size();
  const auto m = mask.values();

  // Phase 1: disparity, uniform weights.
  Level depth;
  depth.width = mask.width();
  depth.height = mask.height();
  depth.channels = 1;
  depth.cell.assign(n, Cell::kExcluded);
  depth.values.assign(disparity.values().begin(), disparity.values().end());
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i]) depth.cell[i] = Cell::kUnknown;
  }
  for (std::size_t i : anchors.depth_anchors) depth.cell[i] = Cell::kAnchor;
  for (std::size_t i : anchors.lowered_anchors) {
    depth.values[i] = anchors.background_disparity;
  }
  const SolveStats depth_stats = SolveMultilevel(depth, 0.0, params);

  auto out_d = out.disparity.values();
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i]) out_d[i] = static_cast<float>(depth.values[i]);
  }

  // Phase 2: color, weighted by the solved disparity.
  Level color;
  color.width = depth.width;
  color.height = depth.height;
  color.channels = rgb.channels();
  color.cell.assign(n, Cell::kExcluded);
  color.values.assign(rgb.data().begin(), rgb.data().end());
  color.guide = depth.values;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i]) color.cell[i] = Cell::kUnknown;
  }
  for (std::size_t i : anchors.color_anchors) color.cell[i] = Cell::kAnchor;
  const SolveStats color_stats =
      SolveMultilevel(color, params.depth_guidance_strength, params);

  for (int c = 0; c < rgb.channels(); ++c) {
    auto plane = out.rgb.channel(c);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i]) plane[i] = static_cast<float>(color.values[c * n + i]);
    }
  }
  out.converged = depth_stats.converged && color_stats.converged;
  out.iterations = std::max(depth_stats.iterations, color_stats.iterations);
  return out;
}

InpaintedBackground SpliceInpaint(const Image& inpainted_rgb,
                                  const DisparityMap& inpainted_disparity,
                                  const BinaryMask& mask,
                                  const Image& original_rgb,
                                  const DisparityMap& original_disparity) {
  RequireSameSize(inpainted_rgb.width(), inpainted_rgb.height(),
                  original_rgb.width(), original_rgb.height(),
                  "external RGB size mismatch");
  RequireSameSize(inpainted_disparity.width(), inpainted_disparity.height(),
                  original_disparity.width(), original_disparity.height(),
                  "external disparity size mismatch");
  RequireSameSize(mask.width(), mask.height(), original_rgb.width(),
                  original_rgb.height(), "mask size mismatch");
  if (inpainted_rgb.channels() != original_rgb.channels()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "external RGB has " + std::to_string(inpainted_rgb.channels()) +
                    " channels, expected " +
                    std::to_string(original_rgb.channels()));
  }
  InpaintedBackground out;
  out.rgb = original_rgb;
  out.disparity = original_disparity;
  const auto m = mask.values();
  for (int c = 0; c < original_rgb.channels(); ++c) {
    auto dst = out.rgb.channel(c);
    auto src = inpainted_rgb.channel(c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i]) dst[i] = std::clamp(src[i], 0.0f, 1.0f);
    }
  }
  auto dst = out.disparity.values();
  auto src = inpainted_disparity.values();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i]) dst[i] = src[i];
  }
  return out;
}

InpaintedBackground InjectExternalInpaint(
    const std::filesystem::path& rgb_path,
    const std::filesystem::path& disparity_path, const BinaryMask& mask,
    const Image& original_rgb, const DisparityMap& original_disparity) {
  Image rgb = LoadImage(rgb_path);
  if (rgb.channels() == 4 && original_rgb.channels() == 3) {
    Image trimmed(rgb.width(), rgb.height(), 3);
    for (int c = 0; c < 3; ++c) {
      std::copy(rgb.channel(c).begin(), rgb.channel(c).end(),
                trimmed.channel(c).begin());
    }
    rgb = std::move(trimmed);
  }
  const DisparityMap disparity = LoadDisparity(disparity_path, false);
  return SpliceInpaint(rgb, disparity, mask, original_rgb, original_disparity);
}

}  // namespace softlayer
