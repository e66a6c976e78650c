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

#ifndef SOFTLAYER_RENDER_H_
#define SOFTLAYER_RENDER_H_

#include <cstddef>

#include "softlayer/bundle.h"
#include "softlayer/geometry.h"
#include "softlayer/rasterizer.h"

namespace softlayer {

struct CompositeResult {
  Image image;
  std::size_t uncovered = 0;  // pixels hit by neither layer (left black)
};

// out = A * fg + (1 - A) * bg with A = fg.alpha * fg.coverage.
CompositeResult Composite(const RenderedLayer& fg, const RenderedLayer& bg);

struct FrameTiming {
  double fg_render_ms = 0.0;
  double bg_render_ms = 0.0;
  double composite_ms = 0.0;
};

// Both layer meshes, built once and rendered from any number of poses. The
// bundle must outlive the scene.
class LayeredScene {
 public:
  explicit LayeredScene(const LayerBundle& bundle, int mesh_downsample = 1,
                        RasterOptions options = {});

  CompositeResult Render(const CameraPose& pose,
                         FrameTiming* timing = nullptr) const;

  const TriangleMesh& foreground_mesh() const { return fg_mesh_; }
  const TriangleMesh& background_mesh() const { return bg_mesh_; }
  double mesh_build_ms() const { return mesh_build_ms_; }

 private:
  const LayerBundle& bundle_;
  RasterOptions options_;
  TriangleMesh fg_mesh_;
  TriangleMesh bg_mesh_;
  double mesh_build_ms_ = 0.0;
};

// Foreground textured with (I, A), background with the inpainted color and
// opaque alpha, composited over.
Image SynthesizeView(const LayerBundle& bundle, const CameraPose& pose);

}  // namespace softlayer

#endif  // SOFTLAYER_RENDER_H_
