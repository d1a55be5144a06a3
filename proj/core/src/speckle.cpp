#include "sarbox/speckle.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace sarbox {

namespace {

void validate_region(const Grid& img, const RegionSpec& r, const char* who) {
    if (r.x0 > r.x1 || r.y0 > r.y1 || r.x0 < 0 || r.y0 < 0 || r.x1 >= img.width ||
        r.y1 >= img.height)
        throw std::invalid_argument(std::string(who) + ": region empty or out of bounds");
}

}  // namespace

EnlResult enl(const Grid& img, const RegionSpec& region) {
    validate_region(img, region, "enl");
    const long long count = static_cast<long long>(region.x1 - region.x0 + 1) *
                            (region.y1 - region.y0 + 1);
    if (count < 2) throw std::invalid_argument("enl: region must contain at least 2 pixels");

    double sum = 0.0;
    for (int y = region.y0; y <= region.y1; ++y)
        for (int x = region.x0; x <= region.x1; ++x) sum += img.at(x, y);
    const double mean = sum / static_cast<double>(count);

    double sq = 0.0;
    for (int y = region.y0; y <= region.y1; ++y)
        for (int x = region.x0; x <= region.x1; ++x) {
            const double d = img.at(x, y) - mean;
            sq += d * d;
        }
    const double variance = sq / static_cast<double>(count);  // population variance

    if (variance == 0.0) return {std::numeric_limits<double>::infinity(), true};
    return {mean * mean / variance, false};
}

EpdResult epd_roa(const Grid& original, const Grid& denoised, const RegionSpec& region,
                  EpdDirection direction) {
    if (!original.same_shape(denoised)) throw std::invalid_argument("epd_roa: shape mismatch");
    validate_region(original, region, "epd_roa");
    const bool horizontal = direction == EpdDirection::horizontal;
    const int span = horizontal ? region.x1 - region.x0 : region.y1 - region.y0;
    if (span < 1)
        throw std::invalid_argument("epd_roa: region needs >= 2 pixels along the direction");

    double num = 0.0, den = 0.0;
    int used = 0, skipped = 0;
    const int dx = horizontal ? 1 : 0;
    const int dy = horizontal ? 0 : 1;
    for (int y = region.y0; y <= region.y1 - dy; ++y) {
        for (int x = region.x0; x <= region.x1 - dx; ++x) {
            const double o2 = original.at(x + dx, y + dy);
            const double d2 = denoised.at(x + dx, y + dy);
            if (o2 == 0.0 || d2 == 0.0) {
                ++skipped;
                continue;
            }
            num += std::abs(denoised.at(x, y) / d2);
            den += std::abs(original.at(x, y) / o2);
            ++used;
        }
    }
    if (used == 0) throw std::runtime_error("epd_roa: every pixel pair had a zero divisor");
    if (den == 0.0) throw std::runtime_error("epd_roa: original ratios sum to zero");
    return {num / den, used, skipped};
}

Grid simulate_speckle(const Grid& clean, int looks, uint64_t seed) {
    if (looks < 1) throw std::invalid_argument("simulate_speckle: looks must be >= 1");
    for (double v : clean.data)
        if (v < 0.0) throw std::invalid_argument("simulate_speckle: clean image must be >= 0");

    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> gamma(static_cast<double>(looks), 1.0 / looks);
    Grid out(clean.width, clean.height);
    for (size_t k = 0; k < clean.data.size(); ++k) out.data[k] = clean.data[k] * gamma(rng);
    return out;
}

}  // namespace sarbox
