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

#ifndef SOFTLAYER_RASTERIZER_H_
#define SOFTLAYER_RASTERIZER_H_

#include <vector>

#include "softlayer/geometry.h"
#include "softlayer/image.h"

namespace softlayer {

struct RenderedLayer {
  Image rgb;       // texture channels; 0 where uncovered
  Raster alpha;    // resampled alpha texture (1 without one); 0 where uncovered
  Raster coverage; // 1 where some fragment landed
  std::vector<float> zbuffer;  // camera-space depth, +inf where uncovered
};

struct RasterOptions {
  double z_near = 1e-3;
  int tile_size = 64;
};

// Bilinear lookup with texel centers at ((i + 0.5) / W, (j + 0.5) / H),
// clamp-to-edge.
float SampleBilinear(const Image& texture, int channel, double u, double v);

// Z-buffered rasterization of `mesh` seen from `pose`, with perspective-correct
// texture coordinates. Nothing is culled; triangles crossing z_near are
// clipped. `alpha_texture` may be null. Tiles are rasterized in parallel, each
// in triangle order, so the result matches the serial reference exactly.
RenderedLayer RenderLayer(const TriangleMesh& mesh, const Image& rgb_texture,
                          const VisibilityMap* alpha_texture, const CameraPose& pose,
                          const CameraIntrinsics& intrinsics,
                          const RasterOptions& options = {});

}  // namespace softlayer

#endif  // SOFTLAYER_RASTERIZER_H_
