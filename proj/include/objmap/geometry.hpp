#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <optional>

namespace objmap {

/// 3D point in world coordinates, meters.
using WorldPoint = Eigen::Vector3d;

/// 2D point in image coordinates, pixels. May lie outside the image bounds;
/// callers test containment where it matters.
struct PixelPoint {
  double u = 0.0;
  double v = 0.0;
};

/// Pinhole camera internals. Focal lengths and principal point in pixels.
struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  bool valid() const noexcept {
    return fx > 0.0 && fy > 0.0 && width > 0 && height > 0 && cx > 0.0 &&
           cx < width && cy > 0.0 && cy < height;
  }
};

/// Rigid world-to-camera transform: p_cam = R * p_world + t.
/// Camera frame convention: x right, y down, z along the optical axis.
struct CameraPose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static CameraPose identity() { return {}; }

  /// R orthonormal and det(R) = +1 within tol.
  bool orthonormal(double tol = 1e-9) const {
    const Eigen::Matrix3d err =
        rotation.transpose() * rotation - Eigen::Matrix3d::Identity();
    return err.cwiseAbs().maxCoeff() <= tol &&
           std::abs(rotation.determinant() - 1.0) <= tol;
  }

  Eigen::Vector3d to_camera(const Eigen::Vector3d& p_world) const {
    return rotation * p_world + translation;
  }
  Eigen::Vector3d to_world(const Eigen::Vector3d& p_cam) const {
    return rotation.transpose() * (p_cam - translation);
  }
  /// Camera center expressed in world coordinates.
  Eigen::Vector3d center() const {
    return -(rotation.transpose() * translation);
  }
};

/// Axis-aligned box in image coordinates.
struct BoundingBox2D {
  double u_min = 0.0;
  double v_min = 0.0;
  double u_max = 0.0;
  double v_max = 0.0;

  double width() const noexcept { return u_max - u_min; }
  double height() const noexcept { return v_max - v_min; }
  double area() const noexcept { return width() * height(); }
  PixelPoint center() const noexcept {
    return {0.5 * (u_min + u_max), 0.5 * (v_min + v_max)};
  }
  bool valid() const noexcept {
    return std::isfinite(u_min) && std::isfinite(v_min) &&
           std::isfinite(u_max) && std::isfinite(v_max) && u_min <= u_max &&
           v_min <= v_max;
  }
  bool intersects_image(const CameraIntrinsics& intr) const noexcept {
    return u_max >= 0.0 && v_max >= 0.0 && u_min <= intr.width &&
           v_min <= intr.height;
  }
};

/// Object extent perpendicular to the optical axis at detection time, meters.
/// Stored instead of a pixel box so the box can be re-synthesized at any
/// depth in a later view.
struct MetricExtent {
  double width_m = 0.0;
  double height_m = 0.0;

  bool valid() const noexcept {
    return std::isfinite(width_m) && std::isfinite(height_m) &&
           width_m > 0.0 && height_m > 0.0;
  }
};

/// Depth guard: camera-frame z at or below this counts as behind the camera.
inline constexpr double kMinCameraDepth = 1e-6;

/// Projects a world point through K[R|t]. Empty when the point is behind the
/// camera (z_c <= kMinCameraDepth); the caller treats that as not observable.
std::optional<PixelPoint> project_point(const WorldPoint& p,
                                        const CameraPose& pose,
                                        const CameraIntrinsics& intr);

/// Inverse projection of a pixel at a known depth (camera-frame z, meters).
/// Throws std::invalid_argument when depth <= 0.
WorldPoint back_project(const PixelPoint& pixel, double depth,
                        const CameraPose& pose, const CameraIntrinsics& intr);

/// Re-synthesizes the 2D box of a stored object in the given view: projects
/// the center and scales the metric extent by fx/z_c, fy/z_c. Empty when the
/// center is behind the camera or the box misses the image rectangle.
std::optional<BoundingBox2D> reconstruct_bbox(const WorldPoint& center,
                                              const MetricExtent& extent,
                                              const CameraPose& pose,
                                              const CameraIntrinsics& intr);

/// Intersection over union of two boxes; 0 when the union has zero area.
double compute_iou(const BoundingBox2D& a, const BoundingBox2D& b);

}  // namespace objmap
