#pragma once

#include <optional>
#include <vector>

namespace sarbox {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(Vec2 a, double k) { return {a.x * k, a.y * k}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Simple polygon, vertices in counter-clockwise order. Empty means no area.
using Polygon = std::vector<Vec2>;

/// Oriented box in the long-edge convention: h is the long side, w the short
/// side, theta the angle (radians, counter-clockwise from +x) of the long
/// axis, canonically wrapped into [-pi/2, pi/2). The angle space is
/// pi-periodic since the box is symmetric under a half turn.
struct ObbBox {
    double cx = 0.0;
    double cy = 0.0;
    double h = 0.0;  // long side
    double w = 0.0;  // short side
    double theta = 0.0;
    std::optional<double> score;
};

/// Wraps an angle into [-pi/2, pi/2), modulo pi.
double wrap_angle(double theta);

/// Builds a canonical box from raw sides (a, b) and angle: the longer side
/// becomes h; when a < b the angle is shifted by pi/2 before wrapping so the
/// stored angle always refers to the long axis.
/// Throws std::invalid_argument on non-positive sides, non-finite angle, or
/// an out-of-range score.
ObbBox canonicalize_obb(double cx, double cy, double a, double b, double theta_raw,
                        std::optional<double> score = std::nullopt);

/// Throws std::invalid_argument unless h >= w > 0 and theta is canonical.
void validate_box(const ObbBox& box);

/// Four corners, counter-clockwise; the h-long sides run parallel to
/// (cos theta, sin theta).
Polygon obb_to_polygon(const ObbBox& box);

/// Shoelace area; empty or degenerate polygons yield 0.
double polygon_area(const Polygon& p);

/// Sutherland-Hodgman clip of one convex CCW polygon by another. Points
/// exactly on a clip edge count as inside, so clipping a polygon by itself
/// returns it unchanged. Empty result means no intersection.
Polygon convex_clip(const Polygon& subject, const Polygon& clip);

/// True when the point lies inside or on the boundary of the box.
bool point_in_obb(const ObbBox& box, Vec2 p);

/// Exact intersection-over-union via polygon clipping. Symmetric in its
/// arguments bit-for-bit (operands are ordered deterministically before
/// clipping). Result clamped to [0, 1].
double obb_iou(const ObbBox& a, const ObbBox& b);

/// Monte-Carlo-free IoU estimate: rasterizes both boxes on a resolution x
/// resolution grid of cell centers spanning their joint bounding region and
/// counts membership. Converges to obb_iou as resolution grows; useful as an
/// independent cross-check of the clipping path. Requires resolution >= 64.
double obb_iou_raster(const ObbBox& a, const ObbBox& b, int resolution);

}  // namespace sarbox
