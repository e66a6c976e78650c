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

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include <gtest/gtest.h>

#include "softlayer/error.h"
#include "softlayer/geometry.h"

namespace softlayer {
namespace {

TEST(DepthMappingTest, Reciprocal) {
  const DepthMapping m;
  EXPECT_DOUBLE_EQ(m.DepthFromDisparity(1.0), 1.0);
  EXPECT_DOUBLE_EQ(m.DepthFromDisparity(0.0), 100.0);
  EXPECT_DOUBLE_EQ(m.DepthFromDisparity(0.5), 2.0);
  EXPECT_DOUBLE_EQ(m.DepthFromDisparity(0.005), 100.0);
  EXPECT_THROW(DepthMapping{0.0}.Validate(), Error);
}

TEST(IntrinsicsTest, DefaultsAndRoundTrip) {
  const CameraIntrinsics k = CameraIntrinsics::Default(200, 100);
  EXPECT_DOUBLE_EQ(k.fx, 160.0);
  EXPECT_DOUBLE_EQ(k.fy, 160.0);
  EXPECT_DOUBLE_EQ(k.cx, 99.5);
  EXPECT_DOUBLE_EQ(k.cy, 49.5);
  const Eigen::Vector3d p = k.BackProject(13.0, 71.0, 3.5);
  const Eigen::Vector2d q = k.Project(p);
  EXPECT_NEAR(q.x(), 13.0, 1e-12);
  EXPECT_NEAR(q.y(), 71.0, 1e-12);
  CameraIntrinsics bad = k;
  bad.fx = 0.0;
  EXPECT_THROW(bad.Validate(), Error);
}

TEST(MeshTest, SingleCell) {
  const DisparityMap d(2, 2, 0.5f);
  const TriangleMesh mesh =
      BuildMesh(d, CameraIntrinsics::Default(2, 2), DepthMapping{}, 1);
  EXPECT_EQ(mesh.vertices.size(), 4u);
  EXPECT_EQ(mesh.triangles.size(), 2u);
}

TEST(MeshTest, TriangleCountAndIndexRange) {
  const DisparityMap d(17, 11, 0.3f);
  const TriangleMesh mesh =
      BuildMesh(d, CameraIntrinsics::Default(17, 11), DepthMapping{}, 1);
  EXPECT_EQ(mesh.triangles.size(), 16u * 10u * 2u);
  for (const auto& t : mesh.triangles) {
    for (int v : t) {
      EXPECT_GE(v, 0);
      EXPECT_LT(v, static_cast<int>(mesh.vertices.size()));
    }
  }
}

TEST(MeshTest, PrincipalPointVertexOnAxis) {
  // Odd size puts the principal point on a pixel center.
  const DisparityMap d(9, 7, 0.5f);
  const CameraIntrinsics k = CameraIntrinsics::Default(9, 7);
  const TriangleMesh mesh = BuildMesh(d, k, DepthMapping{}, 1);
  const Eigen::Vector3d& v = mesh.vertices[3 * 9 + 4];
  EXPECT_DOUBLE_EQ(v.x(), 0.0);
  EXPECT_DOUBLE_EQ(v.y(), 0.0);
  EXPECT_DOUBLE_EQ(v.z(), 2.0);
  EXPECT_DOUBLE_EQ(mesh.texcoords[3 * 9 + 4].x(), 4.5 / 9.0);
}

TEST(MeshTest, VerticesProjectToTheirPixels) {
  DisparityMap d(6, 5);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 6; ++x) d.at(x, y) = 0.1f + 0.1f * x + 0.05f * y;
  }
  const CameraIntrinsics k = CameraIntrinsics::Default(6, 5);
  const TriangleMesh mesh = BuildMesh(d, k, DepthMapping{}, 1);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 6; ++x) {
      const Eigen::Vector3d& v = mesh.vertices[y * 6 + x];
      const Eigen::Vector2d p = k.Project(v);
      EXPECT_NEAR(p.x(), x, 1e-9);
      EXPECT_NEAR(p.y(), y, 1e-9);
      EXPECT_NEAR(v.z(), 1.0 / d.at(x, y), 1e-6);
    }
  }
}

TEST(MeshTest, DownsampleKeepsLastRowAndColumn) {
  const DisparityMap d(10, 7, 0.5f);
  const CameraIntrinsics k = CameraIntrinsics::Default(10, 7);
  const TriangleMesh mesh = BuildMesh(d, k, DepthMapping{}, 4);
  // Columns 0,4,8,9 and rows 0,4,6.
  EXPECT_EQ(mesh.vertices.size(), 12u);
  EXPECT_EQ(mesh.triangles.size(), 3u * 2u * 2u);
  const Eigen::Vector2d last = k.Project(mesh.vertices.back());
  EXPECT_NEAR(last.x(), 9.0, 1e-9);
  EXPECT_NEAR(last.y(), 6.0, 1e-9);
  EXPECT_THROW(BuildMesh(d, k, DepthMapping{}, 0), Error);
  EXPECT_THROW(BuildMesh(d, CameraIntrinsics::Default(9, 7), DepthMapping{}, 1),
               Error);
}

TEST(PoseTest, LookAtForwardIsIdentity) {
  const CameraPose p = CameraPose::LookAt({0, 0, 0}, {0, 0, 5});
  EXPECT_TRUE(p.rotation.isApprox(Eigen::Matrix3d::Identity(), 1e-15));
  EXPECT_TRUE(p.translation.isZero());
}

TEST(PoseTest, ApplyComposeAndCenter) {
  const CameraPose a = CameraPose::LookAt({0.1, -0.2, 0.05}, {0, 0, 2});
  const CameraPose b = CameraPose::LookAt({-0.3, 0.1, 0.0}, {0.5, 0, 3});
  const Eigen::Vector3d x(0.3, -0.7, 2.2);
  EXPECT_TRUE(a.Compose(b).Apply(x).isApprox(a.Apply(b.Apply(x)), 1e-12));
  EXPECT_TRUE(a.Center().isApprox(Eigen::Vector3d(0.1, -0.2, 0.05), 1e-12));
  EXPECT_TRUE(a.Apply(a.Center()).isZero(1e-12));
  CameraPose bad;
  bad.rotation(0, 0) = 2.0;
  EXPECT_THROW(bad.Validate(), Error);
  bad = {};
  bad.rotation(2, 2) = -1.0;  // reflection
  EXPECT_THROW(bad.Validate(), Error);
}

TEST(CircularPathTest, FirstFrameIsIdentity) {
  CameraPathParams p;
  p.depth_offset = 0.0;
  const std::vector<CameraPose> path = CircularPath(p);
  ASSERT_EQ(path.size(), 60u);
  EXPECT_TRUE(path[0].rotation.isApprox(Eigen::Matrix3d::Identity(), 1e-15));
  EXPECT_TRUE(path[0].translation.isZero(1e-15));
}

TEST(CircularPathTest, FourFramesHitCardinalPoints) {
  CameraPathParams p;
  p.radius = 0.1;
  p.depth_offset = 0.0;
  p.frame_count = 4;
  const std::vector<CameraPose> path = CircularPath(p);
  ASSERT_EQ(path.size(), 4u);
  const Eigen::Vector3d expected[4] = {
      {0.0, 0.0, 0.0}, {-0.1, 0.1, 0.0}, {-0.2, 0.0, 0.0}, {-0.1, -0.1, 0.0}};
  for (int k = 0; k < 4; ++k) {
    EXPECT_TRUE(path[k].Center().isApprox(expected[k], 1e-12) ||
                (path[k].Center() - expected[k]).norm() < 1e-12)
        << k;
  }
}

TEST(CircularPathTest, RotationsOrthonormalAndLookAtFocus) {
  CameraPathParams p;
  p.radius = 0.3;
  p.depth_offset = 0.2;
  p.frame_count = 37;
  p.focus_depth = 1.5;
  for (const CameraPose& pose : CircularPath(p)) {
    const Eigen::Matrix3d rtr = pose.rotation.transpose() * pose.rotation;
    EXPECT_LE((rtr - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_NEAR(pose.rotation.determinant(), 1.0, 1e-6);
    const Eigen::Vector3d focus = pose.Apply({0.0, 0.0, 1.5});
    EXPECT_NEAR(focus.x(), 0.0, 1e-12);
    EXPECT_NEAR(focus.y(), 0.0, 1e-12);
    EXPECT_GT(focus.z(), 0.0);
  }
  p.frame_count = 0;
  EXPECT_THROW(CircularPath(p), Error);
}

}  // namespace
}  // namespace softlayer
