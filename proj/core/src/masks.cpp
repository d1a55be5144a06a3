#include "sarbox/masks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

namespace sarbox {

Grid rotated_gaussian_mask(const ObbBox& box, int width, int height, const GaussParams& params) {
    validate_box(box);
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("rotated_gaussian_mask: dimensions must be positive");
    if (!(params.lambda_w > 0.0) || !(params.lambda_h > 0.0))
        throw std::invalid_argument("rotated_gaussian_mask: covariance factors must be positive");

    const double c = std::cos(box.theta);
    const double s = std::sin(box.theta);
    const double kw = params.lambda_w / (2.0 * box.w * box.w);
    const double kh = params.lambda_h / (2.0 * box.h * box.h);

    Grid g(width, height);
    for (int y = 0; y < height; ++y) {
        const double dy = y - box.cy;
        for (int x = 0; x < width; ++x) {
            const double dx = x - box.cx;
            const double along = c * dx + s * dy;    // long-axis coordinate
            const double across = -s * dx + c * dy;  // short-axis coordinate
            g.at(x, y) = std::exp(-(kw * along * along + kh * across * across));
        }
    }
    return g;
}

Grid threshold_mask(const Grid& g, double tau) {
    if (!(tau > 0.0 && tau < 1.0))
        throw std::invalid_argument("threshold_mask: tau must lie in (0, 1)");
    Grid out(g.width, g.height);
    for (size_t k = 0; k < g.data.size(); ++k) out.data[k] = g.data[k] >= tau ? 1.0 : 0.0;
    return out;
}

namespace {

// Clockwise Moore neighborhood with y growing downward, starting west.
constexpr std::array<PixelCoord, 8> kDirs = {{
    {-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1},
}};

// Border following around one component: walk the Moore neighborhood
// clockwise from the last background cell; the trace state (pixel, backtrack)
// is deterministic, so the contour is closed once a state repeats.
std::vector<PixelCoord> trace_boundary(const std::vector<int>& labels, int width, int height,
                                       int label, PixelCoord start) {
    auto in_component = [&](PixelCoord p) {
        return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height &&
               labels[static_cast<size_t>(p.y) * width + p.x] == label;
    };

    std::vector<PixelCoord> boundary{start};
    PixelCoord cur = start;
    PixelCoord back{start.x - 1, start.y};  // raster-first pixel: west neighbor is outside

    std::set<std::tuple<int, int, int, int>> seen;
    seen.insert({cur.x, cur.y, back.x, back.y});

    while (true) {
        int k = 0;
        for (int d = 0; d < 8; ++d) {
            if (cur.x + kDirs[d].x == back.x && cur.y + kDirs[d].y == back.y) {
                k = d;
                break;
            }
        }
        bool moved = false;
        for (int i = 1; i <= 8; ++i) {
            const int d = (k + i) % 8;
            const PixelCoord nb{cur.x + kDirs[d].x, cur.y + kDirs[d].y};
            if (in_component(nb)) {
                const int before = (k + i - 1) % 8;
                back = {cur.x + kDirs[before].x, cur.y + kDirs[before].y};
                cur = nb;
                moved = true;
                break;
            }
        }
        if (!moved) break;  // isolated pixel
        if (!seen.insert({cur.x, cur.y, back.x, back.y}).second) break;
        boundary.push_back(cur);
    }
    return boundary;
}

}  // namespace

std::vector<Component> extract_components(const Grid& binary) {
    const int w = binary.width;
    const int h = binary.height;
    std::vector<int> labels(static_cast<size_t>(w) * h, 0);
    auto foreground = [&](int x, int y) { return binary.at(x, y) > 0.5; };

    std::vector<Component> components;
    std::vector<PixelCoord> stack;
    int next_label = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!foreground(x, y) || labels[static_cast<size_t>(y) * w + x] != 0) continue;
            const int label = ++next_label;
            Component comp;
            stack.assign(1, {x, y});
            labels[static_cast<size_t>(y) * w + x] = label;
            while (!stack.empty()) {
                const PixelCoord p = stack.back();
                stack.pop_back();
                comp.pixels.push_back(p);
                for (const PixelCoord& d : kDirs) {
                    const int nx = p.x + d.x;
                    const int ny = p.y + d.y;
                    if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                    size_t idx = static_cast<size_t>(ny) * w + nx;
                    if (labels[idx] == 0 && foreground(nx, ny)) {
                        labels[idx] = label;
                        stack.push_back({nx, ny});
                    }
                }
            }
            comp.boundary = trace_boundary(labels, w, h, label, {x, y});
            components.push_back(std::move(comp));
        }
    }
    return components;
}

namespace {

// Monotone-chain convex hull, CCW, collinear points dropped.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(),
              [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Vec2> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
        while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

ObbBox min_area_rect(std::span<const PixelCoord> points) {
    if (points.empty()) throw std::invalid_argument("min_area_rect: empty point set");
    std::vector<Vec2> pts;
    pts.reserve(points.size());
    for (const PixelCoord& p : points)
        pts.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
    const std::vector<Vec2> hull = convex_hull(std::move(pts));

    // Candidate orientations: every hull edge plus the axis-aligned frame.
    std::vector<double> angles{0.0};
    for (size_t i = 0, n = hull.size(); n >= 2 && i < n; ++i) {
        const Vec2 e = hull[(i + 1) % n] - hull[i];
        angles.push_back(std::atan2(e.y, e.x));
    }

    double best_area = 0.0;
    double best_cx = 0.0, best_cy = 0.0, best_su = 1.0, best_sv = 1.0, best_angle = 0.0;
    bool have_best = false;
    for (double t : angles) {
        const Vec2 u{std::cos(t), std::sin(t)};
        const Vec2 v{-u.y, u.x};
        double umin = 0.0, umax = 0.0, vmin = 0.0, vmax = 0.0;
        for (size_t i = 0; i < hull.size(); ++i) {
            const double pu = dot(hull[i], u);
            const double pv = dot(hull[i], v);
            if (i == 0) {
                umin = umax = pu;
                vmin = vmax = pv;
            } else {
                umin = std::min(umin, pu);
                umax = std::max(umax, pu);
                vmin = std::min(vmin, pv);
                vmax = std::max(vmax, pv);
            }
        }
        // +1 per axis: hull spans pixel centers, the rectangle must cover the
        // unit pixel footprints. Also enforces the 1-pixel floor for
        // degenerate (collinear or single-pixel) sets.
        const double su = (umax - umin) + 1.0;
        const double sv = (vmax - vmin) + 1.0;
        const double area = su * sv;
        if (!have_best || area < best_area) {
            have_best = true;
            best_area = area;
            const double cu = 0.5 * (umin + umax);
            const double cv = 0.5 * (vmin + vmax);
            best_cx = cu * u.x + cv * v.x;
            best_cy = cu * u.y + cv * v.y;
            best_su = su;
            best_sv = sv;
            best_angle = t;
        }
    }
    return canonicalize_obb(best_cx, best_cy, best_su, best_sv, best_angle);
}

std::vector<ObbBox> mask_to_obbs(const Grid& p, double tau, double min_area) {
    if (min_area < 0.0) throw std::invalid_argument("mask_to_obbs: min_area must be >= 0");
    const Grid binary = threshold_mask(p, tau);
    std::vector<ObbBox> boxes;
    for (const Component& comp : extract_components(binary)) {
        if (static_cast<double>(comp.pixels.size()) < min_area) continue;
        double sum = 0.0;
        for (const PixelCoord& px : comp.pixels) sum += p.at(px.x, px.y);
        ObbBox box = min_area_rect(comp.pixels);
        box.score = sum / static_cast<double>(comp.pixels.size());
        boxes.push_back(box);
    }
    return boxes;
}

}  // namespace sarbox
