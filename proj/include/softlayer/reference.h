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

#ifndef SOFTLAYER_REFERENCE_H_
#define SOFTLAYER_REFERENCE_H_

// Serial, unoptimized versions of the parallel kernels. They exist to check
// the fast paths in tests and to give the benchmark a baseline.

#include "softlayer/layering.h"
#include "softlayer/rasterizer.h"

namespace softlayer::reference {

// Direct double loop over every pixel and every scanline offset k in
// [-m, m] \ {0}; full resolution only (downsample_factor is ignored).
SoftMask DisocclusionMapNaive(const DisparityMap& disparity,
                              const DisocclusionParams& params);

// Evaluates D(p + k dir) - D(p) - rho|k| directly rather than by reflection.
SoftMask OcclusionMapNaive(const DisparityMap& disparity,
                           const DisocclusionParams& params);

// One thread, triangles in index order over their full bounding boxes.
RenderedLayer RenderLayerSerial(const TriangleMesh& mesh,
                                const Image& rgb_texture,
                                const VisibilityMap* alpha_texture,
                                const CameraPose& pose,
                                const CameraIntrinsics& intrinsics,
                                const RasterOptions& options = {});

}  // namespace softlayer::reference

#endif  // SOFTLAYER_REFERENCE_H_
