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

#include "softlayer/rasterizer.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "raster_internal.h"
#include "softlayer/error.h"

namespace softlayer {
namespace raster {
namespace {

// Inclusive edge test; admits samples exactly on shared or outer edges.
constexpr double kEdgeEpsilon = 1e-9;
constexpr double kMinArea = 1e-12;

struct ClipVertex {
  Eigen::Vector3d p;
  Eigen::Vector2d uv;
};

ScreenVertex ToScreen(const Eigen::Vector3d& p, const Eigen::Vector2d& uv,
                      const CameraIntrinsics& intr) {
  ScreenVertex s;
  const Eigen::Vector2d q = intr.Project(p);
  s.sx = q.x();
  s.sy = q.y();
  s.inv_z = 1.0 / p.z();
  s.u_over_z = uv.x() * s.inv_z;
  s.v_over_z = uv.y() * s.inv_z;
  return s;
}

// Sutherland-Hodgman against the plane z = z_near.
int ClipNear(const std::array<ClipVertex, 3>& in, double z_near,
             std::array<ClipVertex, 4>* out) {
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    const ClipVertex& a = in[i];
    const ClipVertex& b = in[(i + 1) % 3];
    const bool a_in = a.p.z() > z_near;
    const bool b_in = b.p.z() > z_near;
    if (a_in) (*out)[n++] = a;
    if (a_in != b_in) {
      const double t = (z_near - a.p.z()) / (b.p.z() - a.p.z());
      ClipVertex c;
      c.p = a.p + t * (b.p - a.p);
      c.p.z() = z_near;
      c.uv = a.uv + t * (b.uv - a.uv);
      (*out)[n++] = c;
    }
  }
  return n;
}

}  // namespace

TransformedMesh Transform(const TriangleMesh& mesh, const CameraPose& pose,
                          const CameraIntrinsics& intrinsics, double z_near) {
  TransformedMesh tm;
  const int nv = static_cast<int>(mesh.vertices.size());
  tm.camera.resize(nv);
  tm.screen.resize(nv);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nv; ++i) {
    tm.camera[i] = pose.Apply(mesh.vertices[i]);
    if (tm.camera[i].z() > z_near) {
      tm.screen[i] = ToScreen(tm.camera[i], mesh.texcoords[i], intrinsics);
    }
  }

  const int nt = static_cast<int>(mesh.triangles.size());
  tm.clipped_first.assign(nt, -1);
  tm.clipped_count.assign(nt, 0);
  for (int t = 0; t < nt; ++t) {
    const auto& idx = mesh.triangles[t];
    const bool all_in = tm.camera[idx[0]].z() > z_near &&
                        tm.camera[idx[1]].z() > z_near &&
                        tm.camera[idx[2]].z() > z_near;
    if (all_in) continue;
    std::array<ClipVertex, 3> in;
    for (int k = 0; k < 3; ++k) {
      in[k] = {tm.camera[idx[k]], mesh.texcoords[idx[k]]};
    }
    std::array<ClipVertex, 4> poly;
    const int n = ClipNear(in, z_near, &poly);
    tm.clipped_first[t] = static_cast<int>(tm.clipped.size());
    for (int k = 1; k + 1 < n; ++k) {
      ScreenTriangle tri;
      if (Setup(ToScreen(poly[0].p, poly[0].uv, intrinsics),
                ToScreen(poly[k].p, poly[k].uv, intrinsics),
                ToScreen(poly[k + 1].p, poly[k + 1].uv, intrinsics),
                intrinsics.width, intrinsics.height, &tri)) {
        tm.clipped.push_back(tri);
        ++tm.clipped_count[t];
      }
    }
  }
  return tm;
}

bool Setup(const ScreenVertex& a, const ScreenVertex& b, const ScreenVertex& c,
           int width, int height, ScreenTriangle* out) {
  const double area =
      (b.sx - a.sx) * (c.sy - a.sy) - (c.sx - a.sx) * (b.sy - a.sy);
  if (!(std::abs(area) > kMinArea)) return false;
  const double min_x = std::min({a.sx, b.sx, c.sx});
  const double max_x = std::max({a.sx, b.sx, c.sx});
  const double min_y = std::min({a.sy, b.sy, c.sy});
  const double max_y = std::max({a.sy, b.sy, c.sy});
  if (!(max_x >= 0.0 && max_y >= 0.0 && min_x <= width - 1.0 &&
        min_y <= height - 1.0)) {
    return false;
  }
  out->v[0] = a;
  out->v[1] = b;
  out->v[2] = c;
  out->inv_area = 1.0 / area;
  out->min_x = std::max(0, static_cast<int>(std::ceil(min_x - 1e-7)));
  out->max_x = std::min(width - 1, static_cast<int>(std::floor(max_x + 1e-7)));
  out->min_y = std::max(0, static_cast<int>(std::ceil(min_y - 1e-7)));
  out->max_y = std::min(height - 1, static_cast<int>(std::floor(max_y + 1e-7)));
  return out->min_x <= out->max_x && out->min_y <= out->max_y;
}

void RasterizeTriangle(const ScreenTriangle& tri, const PixelRect& rect,
                       FragmentBuffers& buffers) {
  const int x0 = std::max(rect.x0, tri.min_x);
  const int x1 = std::min(rect.x1, tri.max_x);
  const int y0 = std::max(rect.y0, tri.min_y);
  const int y1 = std::min(rect.y1, tri.max_y);
  const ScreenVertex& a = tri.v[0];
  const ScreenVertex& b = tri.v[1];
  const ScreenVertex& c = tri.v[2];
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double px = x;
      const double py = y;
      const double b0 =
          ((b.sx - px) * (c.sy - py) - (c.sx - px) * (b.sy - py)) *
          tri.inv_area;
      const double b1 =
          ((c.sx - px) * (a.sy - py) - (a.sx - px) * (c.sy - py)) *
          tri.inv_area;
      const double b2 =
          ((a.sx - px) * (b.sy - py) - (b.sx - px) * (a.sy - py)) *
          tri.inv_area;
      if (b0 < -kEdgeEpsilon || b1 < -kEdgeEpsilon || b2 < -kEdgeEpsilon) {
        continue;
      }
      const double inv_z = b0 * a.inv_z + b1 * b.inv_z + b2 * c.inv_z;
      if (!(inv_z > 0.0)) continue;
      const float depth = static_cast<float>(1.0 / inv_z);
      const std::size_t i = static_cast<std::size_t>(y) * buffers.width + x;
      if (!(depth < buffers.depth[i])) continue;
      buffers.depth[i] = depth;
      buffers.u[i] =
          (b0 * a.u_over_z + b1 * b.u_over_z + b2 * c.u_over_z) / inv_z;
      buffers.v[i] =
          (b0 * a.v_over_z + b1 * b.v_over_z + b2 * c.v_over_z) / inv_z;
    }
  }
}

RenderedLayer Shade(const FragmentBuffers& buffers, const Image& rgb_texture,
                    const VisibilityMap* alpha_texture) {
  const int width = buffers.width;
  const int height = buffers.height;
  RenderedLayer layer;
  layer.rgb = Image(width, height, rgb_texture.channels());
  layer.alpha = Raster(width, height);
  layer.coverage = Raster(width, height);
  layer.zbuffer = buffers.depth;
  const int channels = rgb_texture.channels();
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      if (!std::isfinite(buffers.depth[i])) continue;
      layer.coverage.at(x, y) = 1.0f;
      for (int c = 0; c < channels; ++c) {
        layer.rgb.at(x, y, c) =
            SampleBilinear(rgb_texture, c, buffers.u[i], buffers.v[i]);
      }
      layer.alpha.at(x, y) =
          alpha_texture == nullptr
              ? 1.0f
              : SampleBilinear(*alpha_texture, 0, buffers.u[i], buffers.v[i]);
    }
  }
  return layer;
}

}  // namespace raster

float SampleBilinear(const Image& texture, int channel, double u, double v) {
  const int w = texture.width();
  const int h = texture.height();
  const double x = std::clamp(u * w - 0.5, 0.0, w - 1.0);
  const double y = std::clamp(v * h - 0.5, 0.0, h - 1.0);
  const int x0 = static_cast<int>(x);
  const int y0 = static_cast<int>(y);
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double top = texture.at(x0, y0, channel) * (1.0 - fx) +
                     texture.at(x1, y0, channel) * fx;
  const double bottom = texture.at(x0, y1, channel) * (1.0 - fx) +
                        texture.at(x1, y1, channel) * fx;
  return static_cast<float>(top * (1.0 - fy) + bottom * fy);
}

RenderedLayer RenderLayer(const TriangleMesh& mesh, const Image& rgb_texture,
                          const VisibilityMap* alpha_texture, const CameraPose& pose,
                          const CameraIntrinsics& intrinsics,
                          const RasterOptions& options) {
  intrinsics.Validate();
  if (rgb_texture.empty() ||
      (alpha_texture != nullptr && alpha_texture->empty())) {
    throw Error(ErrorCode::kInvalidArgument, "textures must be non-empty");
  }
  if (options.tile_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "tile size must be >= 1");
  }
  const int width = intrinsics.width;
  const int height = intrinsics.height;
  const int tile = options.tile_size;
  const int tiles_x = (width + tile - 1) / tile;
  const int tiles_y = (height + tile - 1) / tile;

  const raster::TransformedMesh tm =
      raster::Transform(mesh, pose, intrinsics, options.z_near);

  // Bin in triangle order so every tile replays fragments in that order.
  std::vector<std::vector<int>> bins(static_cast<std::size_t>(tiles_x) *
                                     tiles_y);
  const int nt = static_cast<int>(mesh.triangles.size());
  for (int t = 0; t < nt; ++t) {
    int min_x = width, max_x = -1, min_y = height, max_y = -1;
    raster::ForEachPiece(mesh, tm, t, width, height,
                         [&](const raster::ScreenTriangle& tri) {
                           min_x = std::min(min_x, tri.min_x);
                           max_x = std::max(max_x, tri.max_x);
                           min_y = std::min(min_y, tri.min_y);
                           max_y = std::max(max_y, tri.max_y);
                         });
    if (max_x < min_x) continue;
    for (int ty = min_y / tile; ty <= max_y / tile; ++ty) {
      for (int tx = min_x / tile; tx <= max_x / tile; ++tx) {
        bins[static_cast<std::size_t>(ty) * tiles_x + tx].push_back(t);
      }
    }
  }

  raster::FragmentBuffers buffers(width, height);
#pragma omp parallel for schedule(dynamic)
  for (int b = 0; b < static_cast<int>(bins.size()); ++b) {
    const int tx = b % tiles_x;
    const int ty = b / tiles_x;
    const raster::PixelRect rect{tx * tile, ty * tile,
                                 std::min(width, (tx + 1) * tile) - 1,
                                 std::min(height, (ty + 1) * tile) - 1};
    for (int t : bins[b]) {
      raster::ForEachPiece(mesh, tm, t, width, height,
                           [&](const raster::ScreenTriangle& tri) {
                             raster::RasterizeTriangle(tri, rect, buffers);
                           });
    }
  }
  return raster::Shade(buffers, rgb_texture, alpha_texture);
}

}  // namespace softlayer
