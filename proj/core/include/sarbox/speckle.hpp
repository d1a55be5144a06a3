#pragma once

#include <cstdint>

#include "sarbox/grid.hpp"

namespace sarbox {

/// Rectangular pixel window on a grid, bounds inclusive.
struct RegionSpec {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;
};

struct EnlResult {
    double value = 0.0;
    bool is_infinite = false;  // zero-variance (perfectly flat) region
};

/// Equivalent number of looks: mean^2 / population variance over the region.
/// Larger means smoother. A constant region reports +infinity with the flag
/// set. Requires at least two pixels in the region.
EnlResult enl(const Grid& img, const RegionSpec& region);

enum class EpdDirection { horizontal, vertical };

struct EpdResult {
    double value = 0.0;
    int pairs_used = 0;
    int pairs_skipped = 0;  // pairs whose divisor pixel was zero in either image
};

/// Edge preservation degree (ratio of averages): the sum of absolute
/// adjacent-pixel ratios in the denoised image divided by the same sum in the
/// original, over sliding pairs along the given direction inside the region.
/// 1 means edges perfectly preserved. Throws if every pair is skipped.
EpdResult epd_roa(const Grid& original, const Grid& denoised, const RegionSpec& region,
                  EpdDirection direction);

/// Multiplicative L-look speckle: each pixel is scaled by an independent
/// Gamma(shape = looks, scale = 1/looks) draw (unit mean, variance 1/looks).
/// Deterministic for a fixed seed; draws are consumed in row-major order.
Grid simulate_speckle(const Grid& clean, int looks, uint64_t seed);

}  // namespace sarbox
