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

// Serial reference kernels against their parallel counterparts. Run with
// OMP_NUM_THREADS set to compare scaling.

#include <random>

#include <benchmark/benchmark.h>

#include "softlayer/filters.h"
#include "softlayer/geometry.h"
#include "softlayer/layering.h"
#include "softlayer/rasterizer.h"
#include "softlayer/reference.h"

namespace softlayer {
namespace {

DisparityMap Scene(int w, int h) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<float> u(0.1f, 1.0f);
  DisparityMap d(w, h);
  for (float& v : d.values()) v = u(rng);
  return GaussianBlur(d, 4.0f);
}

Image Texture(int w, int h) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  Image img(w, h, 3);
  for (float& v : img.data()) v = u(rng);
  return img;
}

void BM_DisocclusionNaive(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const DisparityMap d = Scene(size, size);
  DisocclusionParams p;
  p.neighborhood = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::DisocclusionMapNaive(d, p));
  }
  state.SetItemsProcessed(state.iterations() * size * size);
}

void BM_DisocclusionFast(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const DisparityMap d = Scene(size, size);
  DisocclusionParams p;
  p.neighborhood = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(DisocclusionMap(d, p));
  state.SetItemsProcessed(state.iterations() * size * size);
}

BENCHMARK(BM_DisocclusionNaive)->ArgsProduct({{256, 512}, {32, 128}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DisocclusionFast)->ArgsProduct({{256, 512}, {32, 128}})
    ->Unit(benchmark::kMillisecond);

struct RenderFixture {
  explicit RenderFixture(int size)
      : intrinsics(CameraIntrinsics::Default(size, size)),
        mesh(BuildMesh(Scene(size, size), intrinsics, DepthMapping{})),
        texture(Texture(size, size)),
        alpha(size, size, 1.0f) {
    CameraPathParams path;
    path.frame_count = 8;
    pose = CircularPath(path)[1];
  }

  CameraIntrinsics intrinsics;
  TriangleMesh mesh;
  Image texture;
  VisibilityMap alpha;
  CameraPose pose;
};

void BM_RasterSerial(benchmark::State& state) {
  const RenderFixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::RenderLayerSerial(
        f.mesh, f.texture, &f.alpha, f.pose, f.intrinsics));
  }
  state.SetItemsProcessed(state.iterations() * f.mesh.triangles.size());
}

void BM_RasterTiled(benchmark::State& state) {
  const RenderFixture f(static_cast<int>(state.range(0)));
  RasterOptions options;
  options.tile_size = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RenderLayer(f.mesh, f.texture, &f.alpha, f.pose, f.intrinsics, options));
  }
  state.SetItemsProcessed(state.iterations() * f.mesh.triangles.size());
}

BENCHMARK(BM_RasterSerial)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RasterTiled)->ArgsProduct({{256, 512}, {32, 64, 128}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace softlayer

BENCHMARK_MAIN();
