#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sarbox {

/// Dense 2-D scalar field, row-major with the top row first. Pixel (x, y)
/// sits at integer coordinates; x indexes columns, y indexes rows.
struct Grid {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Grid() = default;
    Grid(int w, int h, double fill = 0.0) : width(w), height(h) {
        if (w < 0 || h < 0) throw std::invalid_argument("Grid: negative dimensions");
        data.assign(static_cast<size_t>(w) * static_cast<size_t>(h), fill);
    }

    double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

    size_t size() const { return data.size(); }
    bool empty() const { return data.empty(); }
    bool same_shape(const Grid& o) const { return width == o.width && height == o.height; }
};

}  // namespace sarbox
