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

// Shared pieces of the tiled and serial rasterizers.

#ifndef SOFTLAYER_SRC_RASTER_INTERNAL_H_
#define SOFTLAYER_SRC_RASTER_INTERNAL_H_

#include <limits>
#include <vector>

#include "softlayer/rasterizer.h"

namespace softlayer::raster {

struct ScreenVertex {
  double sx = 0.0;
  double sy = 0.0;
  double inv_z = 0.0;
  double u_over_z = 0.0;
  double v_over_z = 0.0;
};

struct ScreenTriangle {
  ScreenVertex v[3];
  double inv_area = 0.0;
  int min_x = 0, max_x = -1, min_y = 0, max_y = -1;  // inclusive
};

struct PixelRect {
  int x0, y0, x1, y1;  // inclusive
};

struct FragmentBuffers {
  FragmentBuffers(int w, int h)
      : width(w),
        height(h),
        depth(static_cast<std::size_t>(w) * h,
              std::numeric_limits<float>::infinity()),
        u(depth.size(), 0.0),
        v(depth.size(), 0.0) {}
  int width;
  int height;
  std::vector<float> depth;
  std::vector<double> u;
  std::vector<double> v;
};

// Camera-space vertices plus their screen projections.
struct TransformedMesh {
  std::vector<Eigen::Vector3d> camera;
  std::vector<ScreenVertex> screen;
  // Per triangle: -1 if it needs no clipping, otherwise the first index into
  // `clipped`, followed by `clipped_count` pieces.
  std::vector<int> clipped_first;
  std::vector<unsigned char> clipped_count;
  std::vector<ScreenTriangle> clipped;
};

TransformedMesh Transform(const TriangleMesh& mesh, const CameraPose& pose,
                          const CameraIntrinsics& intrinsics, double z_near);

// Returns false for triangles with no area or no pixels inside the image.
bool Setup(const ScreenVertex& a, const ScreenVertex& b, const ScreenVertex& c,
           int width, int height, ScreenTriangle* out);

// Rasterizes the part of `tri` inside `rect`, depth-testing against `buffers`.
void RasterizeTriangle(const ScreenTriangle& tri, const PixelRect& rect,
                       FragmentBuffers& buffers);

// Visits the screen triangles of mesh triangle `t` in fixed order.
template <typename Fn>
void ForEachPiece(const TriangleMesh& mesh, const TransformedMesh& tm, int t,
                  int width, int height, Fn&& fn) {
  if (tm.clipped_first[t] < 0) {
    const auto& idx = mesh.triangles[t];
    ScreenTriangle tri;
    if (Setup(tm.screen[idx[0]], tm.screen[idx[1]], tm.screen[idx[2]], width,
              height, &tri)) {
      fn(tri);
    }
    return;
  }
  for (int k = 0; k < tm.clipped_count[t]; ++k) {
    fn(tm.clipped[tm.clipped_first[t] + k]);
  }
}

RenderedLayer Shade(const FragmentBuffers& buffers, const Image& rgb_texture,
                    const VisibilityMap* alpha_texture);

}  // namespace softlayer::raster

#endif  // SOFTLAYER_SRC_RASTER_INTERNAL_H_
