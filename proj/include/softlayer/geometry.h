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

#ifndef SOFTLAYER_GEOMETRY_H_
#define SOFTLAYER_GEOMETRY_H_

#include <array>
#include <vector>

#include <Eigen/Core>

#include "softlayer/image.h"

namespace softlayer {

// Pinhole camera. Pixel (x, y) has its center at image coordinate (x, y).
struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 1;
  int height = 1;

  // fx = fy = 0.8 * max(width, height), principal point at the image center.
  static CameraIntrinsics Default(int width, int height);

  void Validate() const;
  Eigen::Vector2d Project(const Eigen::Vector3d& camera_point) const;
  Eigen::Vector3d BackProject(double x, double y, double depth) const;

  friend bool operator==(const CameraIntrinsics&,
                         const CameraIntrinsics&) = default;
};

// Camera-from-world rigid transform: p_camera = rotation * p_world + translation.
struct CameraPose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static CameraPose Identity() { return {}; }
  // Camera at `center` looking at `target`; the camera y axis follows +y.
  static CameraPose LookAt(const Eigen::Vector3d& center,
                           const Eigen::Vector3d& target);

  Eigen::Vector3d Apply(const Eigen::Vector3d& world) const {
    return rotation * world + translation;
  }
  // (this * other) applies `other` first.
  CameraPose Compose(const CameraPose& other) const;
  Eigen::Vector3d Center() const { return -rotation.transpose() * translation; }

  void Validate() const;
};

struct DepthMapping {
  double d_min = 0.01;

  void Validate() const;
  // z = 1 / max(d, d_min).
  double DepthFromDisparity(double disparity) const;
};

struct TriangleMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Eigen::Vector2d> texcoords;
  std::vector<std::array<int, 3>> triangles;
};

// One vertex per grid pixel (every `downsample`-th pixel, always including
// the last row and column). Cells are split along the top-left to
// bottom-right diagonal.
TriangleMesh BuildMesh(const DisparityMap& disparity,
                       const CameraIntrinsics& intrinsics,
                       const DepthMapping& mapping, int downsample = 1);

struct CameraPathParams {
  double radius = 0.05;
  double depth_offset = 0.05;
  int frame_count = 60;
  // Depth of the look-at target on the optical axis.
  double focus_depth = 2.0;
};

// Pose k has its center at (r cos t - r, r sin t, depth_offset (1 - cos t)),
// t = 2 pi k / frame_count, and looks at (0, 0, focus_depth).
std::vector<CameraPose> CircularPath(const CameraPathParams& params);

}  // namespace softlayer

#endif  // SOFTLAYER_GEOMETRY_H_
