#pragma once

#include <span>
#include <vector>

#include "sarbox/geometry.hpp"
#include "sarbox/grid.hpp"

namespace sarbox {

/// Covariance control factors of the rotated Gaussian mask. 1.0 leaves the
/// printed form untouched; larger values tighten the falloff along the
/// corresponding term.
struct GaussParams {
    double lambda_w = 1.0;
    double lambda_h = 1.0;
};

/// Rasterizes the per-pixel confidence field of a box: pixel offsets are
/// rotated into the box frame and weighted by
///   exp(-(lambda_w * along^2 / (2 w^2) + lambda_h * across^2 / (2 h^2)))
/// where `along` follows the long axis. Values lie in (0, 1], peaking at the
/// pixel nearest the center. Pixels are sampled at integer coordinates.
Grid rotated_gaussian_mask(const ObbBox& box, int width, int height,
                           const GaussParams& params = {});

/// 1.0 where g >= tau, else 0.0. Requires tau in (0, 1).
Grid threshold_mask(const Grid& g, double tau);

struct PixelCoord {
    int x = 0;
    int y = 0;
    bool operator==(const PixelCoord&) const = default;
};

/// One 8-connected foreground region: its full pixel set plus the outer
/// boundary as traced in order around the region.
struct Component {
    std::vector<PixelCoord> pixels;
    std::vector<PixelCoord> boundary;
};

/// 8-connected component extraction with border following for the outer
/// contour. Components are reported in raster order of their first pixel.
std::vector<Component> extract_components(const Grid& binary);

/// Minimum-area oriented rectangle over a pixel set: convex hull of the
/// pixel centers, rotating calipers over hull edges (plus the axis-aligned
/// candidate), then one pixel of padding per axis so unit pixel footprints
/// are covered. Degenerate sets get the short side floored at one pixel.
/// Throws std::invalid_argument on an empty set.
ObbBox min_area_rect(std::span<const PixelCoord> points);

/// Thresholds a probability grid, extracts components with at least min_area
/// pixels, and fits a minimum-area rectangle to each. The box score is the
/// mean probability over the component's pixels.
std::vector<ObbBox> mask_to_obbs(const Grid& p, double tau, double min_area);

}  // namespace sarbox
