#include "objmap/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace objmap {

std::optional<PixelPoint> project_point(const WorldPoint& p,
                                        const CameraPose& pose,
                                        const CameraIntrinsics& intr) {
  const Eigen::Vector3d p_cam = pose.to_camera(p);
  if (p_cam.z() <= kMinCameraDepth) {
    return std::nullopt;
  }
  const double inv_z = 1.0 / p_cam.z();
  return PixelPoint{intr.fx * p_cam.x() * inv_z + intr.cx,
                    intr.fy * p_cam.y() * inv_z + intr.cy};
}

WorldPoint back_project(const PixelPoint& pixel, double depth,
                        const CameraPose& pose, const CameraIntrinsics& intr) {
  if (!(depth > 0.0)) {
    throw std::invalid_argument("back_project: depth must be positive");
  }
  const Eigen::Vector3d p_cam((pixel.u - intr.cx) * depth / intr.fx,
                              (pixel.v - intr.cy) * depth / intr.fy, depth);
  return pose.to_world(p_cam);
}

std::optional<BoundingBox2D> reconstruct_bbox(const WorldPoint& center,
                                              const MetricExtent& extent,
                                              const CameraPose& pose,
                                              const CameraIntrinsics& intr) {
  const Eigen::Vector3d p_cam = pose.to_camera(center);
  if (p_cam.z() <= kMinCameraDepth) {
    return std::nullopt;
  }
  const double inv_z = 1.0 / p_cam.z();
  const PixelPoint px{intr.fx * p_cam.x() * inv_z + intr.cx,
                      intr.fy * p_cam.y() * inv_z + intr.cy};
  const double half_w = 0.5 * extent.width_m * intr.fx * inv_z;
  const double half_h = 0.5 * extent.height_m * intr.fy * inv_z;
  const BoundingBox2D box{px.u - half_w, px.v - half_h, px.u + half_w,
                          px.v + half_h};
  if (!box.intersects_image(intr)) {
    return std::nullopt;
  }
  return box;
}

double compute_iou(const BoundingBox2D& a, const BoundingBox2D& b) {
  const double iw =
      std::min(a.u_max, b.u_max) - std::max(a.u_min, b.u_min);
  const double ih =
      std::min(a.v_max, b.v_max) - std::max(a.v_min, b.v_min);
  const double inter = (iw > 0.0 && ih > 0.0) ? iw * ih : 0.0;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

}  // namespace objmap
