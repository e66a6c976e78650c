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

#include "softlayer/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include "softlayer/error.h"

namespace softlayer {

CameraIntrinsics CameraIntrinsics::Default(int width, int height) {
  CameraIntrinsics intr;
  intr.fx = intr.fy = 0.8 * std::max(width, height);
  intr.cx = (width - 1) / 2.0;
  intr.cy = (height - 1) / 2.0;
  intr.width = width;
  intr.height = height;
  return intr;
}

void CameraIntrinsics::Validate() const {
  if (!(fx > 0.0 && fy > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "focal lengths must be > 0");
  }
  if (width < 1 || height < 1 || !(cx >= 0.0 && cx < width) ||
      !(cy >= 0.0 && cy < height)) {
    throw Error(ErrorCode::kInvalidArgument,
                "principal point must lie inside the " +
                    std::to_string(width) + "x" + std::to_string(height) +
                    " image");
  }
}

Eigen::Vector2d CameraIntrinsics::Project(const Eigen::Vector3d& p) const {
  return {fx * p.x() / p.z() + cx, fy * p.y() / p.z() + cy};
}

Eigen::Vector3d CameraIntrinsics::BackProject(double x, double y,
                                              double depth) const {
  return {depth * (x - cx) / fx, depth * (y - cy) / fy, depth};
}

CameraPose CameraPose::LookAt(const Eigen::Vector3d& center,
                              const Eigen::Vector3d& target) {
  const Eigen::Vector3d forward = (target - center).normalized();
  const Eigen::Vector3d right =
      Eigen::Vector3d::UnitY().cross(forward).normalized();
  const Eigen::Vector3d down = forward.cross(right);
  CameraPose pose;
  pose.rotation.row(0) = right.transpose();
  pose.rotation.row(1) = down.transpose();
  pose.rotation.row(2) = forward.transpose();
  pose.translation = -pose.rotation * center;
  return pose;
}

CameraPose CameraPose::Compose(const CameraPose& other) const {
  CameraPose out;
  out.rotation = rotation * other.rotation;
  out.translation = rotation * other.translation + translation;
  return out;
}

void CameraPose::Validate() const {
  const double ortho =
      (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
          .cwiseAbs()
          .maxCoeff();
  if (!(ortho <= 1e-6) || !(std::abs(rotation.determinant() - 1.0) <= 1e-6) ||
      !translation.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument,
                "camera rotation must be orthonormal with det +1");
  }
}

void DepthMapping::Validate() const {
  if (!(d_min > 0.0 && d_min < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "d_min must be in (0, 1)");
  }
}

double DepthMapping::DepthFromDisparity(double disparity) const {
  return 1.0 / std::max(disparity, d_min);
}

TriangleMesh BuildMesh(const DisparityMap& disparity,
                       const CameraIntrinsics& intrinsics,
                       const DepthMapping& mapping, int downsample) {
  intrinsics.Validate();
  mapping.Validate();
  if (downsample < 1) {
    throw Error(ErrorCode::kInvalidArgument, "mesh downsample must be >= 1");
  }
  const int width = disparity.width();
  const int height = disparity.height();
  if (width != intrinsics.width || height != intrinsics.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "disparity is " + std::to_string(width) + "x" +
                    std::to_string(height) + " but intrinsics are " +
                    std::to_string(intrinsics.width) + "x" +
                    std::to_string(intrinsics.height));
  }

  auto grid = [downsample](int length) {
    std::vector<int> coords;
    for (int i = 0; i < length; i += downsample) coords.push_back(i);
    if (coords.back() != length - 1) coords.push_back(length - 1);
    return coords;
  };
  const std::vector<int> xs = grid(width);
  const std::vector<int> ys = grid(height);
  const int cols = static_cast<int>(xs.size());
  const int rows = static_cast<int>(ys.size());

  TriangleMesh mesh;
  mesh.vertices.resize(static_cast<std::size_t>(rows) * cols);
  mesh.texcoords.resize(mesh.vertices.size());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int x = xs[c];
      const int y = ys[r];
      const double z = mapping.DepthFromDisparity(disparity.at(x, y));
      const std::size_t v = static_cast<std::size_t>(r) * cols + c;
      mesh.vertices[v] = intrinsics.BackProject(x, y, z);
      mesh.texcoords[v] = {(x + 0.5) / width, (y + 0.5) / height};
    }
  }
  if (rows < 2 || cols < 2) return mesh;
  mesh.triangles.reserve(static_cast<std::size_t>(rows - 1) * (cols - 1) * 2);
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      const int v00 = r * cols + c;
      const int v10 = v00 + 1;
      const int v01 = v00 + cols;
      const int v11 = v01 + 1;
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }
  return mesh;
}

std::vector<CameraPose> CircularPath(const CameraPathParams& params) {
  if (params.frame_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "frame count must be >= 1");
  }
  if (!(params.focus_depth > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "focus depth must be > 0");
  }
  const Eigen::Vector3d target(0.0, 0.0, params.focus_depth);
  std::vector<CameraPose> poses;
  poses.reserve(params.frame_count);
  for (int k = 0; k < params.frame_count; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / params.frame_count;
    const double r = params.radius;
    const Eigen::Vector3d center(r * std::cos(theta) - r, r * std::sin(theta),
                                 params.depth_offset * (1.0 - std::cos(theta)));
    poses.push_back(CameraPose::LookAt(center, target));
  }
  return poses;
}

}  // namespace softlayer
