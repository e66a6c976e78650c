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

#include "softlayer/reference.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "raster_internal.h"

namespace softlayer::reference {
namespace {

template <typename Difference>
SoftMask NaiveScan(const DisparityMap& disparity,
                   const DisocclusionParams& params, Difference difference) {
  params.Validate();
  const int width = disparity.width();
  const int height = disparity.height();
  const int m = params.neighborhood;
  SoftMask out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double best = -std::numeric_limits<double>::infinity();
      for (int k = -m; k <= m; ++k) {
        if (k == 0) continue;
        const double penalty = params.rho * std::abs(k);
        if (x + k >= 0 && x + k < width) {
          best = std::max(best, difference(disparity.at(x, y),
                                           disparity.at(x + k, y)) -
                                    penalty);
        }
        if (y + k >= 0 && y + k < height) {
          best = std::max(best, difference(disparity.at(x, y),
                                           disparity.at(x, y + k)) -
                                    penalty);
        }
      }
      out.at(x, y) =
          static_cast<float>(std::tanh(params.gamma * std::max(0.0, best)));
    }
  }
  return out;
}

}  // namespace

SoftMask DisocclusionMapNaive(const DisparityMap& disparity,
                              const DisocclusionParams& params) {
  return NaiveScan(disparity, params, [](double center, double neighbor) {
    return center - neighbor;
  });
}

SoftMask OcclusionMapNaive(const DisparityMap& disparity,
                           const DisocclusionParams& params) {
  return NaiveScan(disparity, params, [](double center, double neighbor) {
    return neighbor - center;
  });
}

RenderedLayer RenderLayerSerial(const TriangleMesh& mesh,
                                const Image& rgb_texture,
                                const VisibilityMap* alpha_texture,
                                const CameraPose& pose,
                                const CameraIntrinsics& intrinsics,
                                const RasterOptions& options) {
  intrinsics.Validate();
  const int width = intrinsics.width;
  const int height = intrinsics.height;
  const raster::TransformedMesh tm =
      raster::Transform(mesh, pose, intrinsics, options.z_near);
  raster::FragmentBuffers buffers(width, height);
  const raster::PixelRect whole{0, 0, width - 1, height - 1};
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    raster::ForEachPiece(mesh, tm, t, width, height,
                         [&](const raster::ScreenTriangle& tri) {
                           raster::RasterizeTriangle(tri, whole, buffers);
                         });
  }
  return raster::Shade(buffers, rgb_texture, alpha_texture);
}

}  // namespace softlayer::reference
