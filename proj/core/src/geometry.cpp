#include "sarbox/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace sarbox {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;
}  // namespace

double wrap_angle(double theta) {
    double x = std::fmod(theta + kHalfPi, kPi);
    if (x < 0.0) x += kPi;
    return x - kHalfPi;
}

ObbBox canonicalize_obb(double cx, double cy, double a, double b, double theta_raw,
                        std::optional<double> score) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("canonicalize_obb: box sides must be positive");
    if (!std::isfinite(theta_raw))
        throw std::invalid_argument("canonicalize_obb: angle must be finite");
    if (score && !(*score >= 0.0 && *score <= 1.0))
        throw std::invalid_argument("canonicalize_obb: score must lie in [0, 1]");
    double h = a;
    double w = b;
    double t = theta_raw;
    if (a < b) {
        std::swap(h, w);
        t += kHalfPi;
    }
    return ObbBox{cx, cy, h, w, wrap_angle(t), score};
}

void validate_box(const ObbBox& box) {
    if (!(box.w > 0.0) || !(box.h >= box.w))
        throw std::invalid_argument("box is not canonical: requires h >= w > 0");
    if (!(box.theta >= -kHalfPi && box.theta < kHalfPi))
        throw std::invalid_argument("box is not canonical: theta outside [-pi/2, pi/2)");
}

Polygon obb_to_polygon(const ObbBox& box) {
    validate_box(box);
    const double c = std::cos(box.theta);
    const double s = std::sin(box.theta);
    const Vec2 half_long{0.5 * box.h * c, 0.5 * box.h * s};
    const Vec2 half_short{-0.5 * box.w * s, 0.5 * box.w * c};
    const Vec2 ctr{box.cx, box.cy};
    return {ctr + half_long + half_short, ctr - half_long + half_short,
            ctr - half_long - half_short, ctr + half_long - half_short};
}

double polygon_area(const Polygon& p) {
    if (p.size() < 3) return 0.0;
    double twice = 0.0;
    for (size_t i = 0, n = p.size(); i < n; ++i) {
        const Vec2& a = p[i];
        const Vec2& b = p[(i + 1) % n];
        twice += cross(a, b);
    }
    return std::abs(twice) * 0.5;
}

Polygon convex_clip(const Polygon& subject, const Polygon& clip) {
    if (subject.empty() || clip.size() < 3) return {};
    Polygon out = subject;
    for (size_t i = 0, n = clip.size(); i < n && !out.empty(); ++i) {
        const Vec2 a = clip[i];
        const Vec2 b = clip[(i + 1) % n];
        const Vec2 edge = b - a;
        Polygon in;
        in.swap(out);
        for (size_t j = 0, m = in.size(); j < m; ++j) {
            const Vec2 p = in[j];
            const Vec2 q = in[(j + 1) % m];
            const double dp = cross(edge, p - a);
            const double dq = cross(edge, q - a);
            const bool p_in = dp >= 0.0;  // on-edge counts as inside
            const bool q_in = dq >= 0.0;
            if (p_in) out.push_back(p);
            if (p_in != q_in) {
                const double t = dp / (dp - dq);
                out.push_back(p + (q - p) * t);
            }
        }
    }
    if (out.size() < 3) out.clear();
    return out;
}

bool point_in_obb(const ObbBox& box, Vec2 p) {
    const double c = std::cos(box.theta);
    const double s = std::sin(box.theta);
    const Vec2 d{p.x - box.cx, p.y - box.cy};
    const double along = d.x * c + d.y * s;
    const double across = -d.x * s + d.y * c;
    return std::abs(along) <= 0.5 * box.h && std::abs(across) <= 0.5 * box.w;
}

namespace {

bool box_less(const ObbBox& a, const ObbBox& b) {
    return std::tie(a.cx, a.cy, a.h, a.w, a.theta) < std::tie(b.cx, b.cy, b.h, b.w, b.theta);
}

}  // namespace

double obb_iou(const ObbBox& a, const ObbBox& b) {
    validate_box(a);
    validate_box(b);
    // Fixed operand order makes obb_iou(a, b) and obb_iou(b, a) run the exact
    // same float operations.
    const ObbBox* first = &a;
    const ObbBox* second = &b;
    if (box_less(b, a)) std::swap(first, second);
    const Polygon pa = obb_to_polygon(*first);
    const Polygon pb = obb_to_polygon(*second);
    const double inter = polygon_area(convex_clip(pa, pb));
    const double uni = first->h * first->w + second->h * second->w - inter;
    return std::clamp(inter / uni, 0.0, 1.0);
}

double obb_iou_raster(const ObbBox& a, const ObbBox& b, int resolution) {
    validate_box(a);
    validate_box(b);
    if (resolution < 64)
        throw std::invalid_argument("obb_iou_raster: resolution must be >= 64");

    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
    bool init = false;
    for (const ObbBox* box : {&a, &b}) {
        for (const Vec2& v : obb_to_polygon(*box)) {
            if (!init) {
                min_x = max_x = v.x;
                min_y = max_y = v.y;
                init = true;
            } else {
                min_x = std::min(min_x, v.x);
                max_x = std::max(max_x, v.x);
                min_y = std::min(min_y, v.y);
                max_y = std::max(max_y, v.y);
            }
        }
    }

    const double step_x = (max_x - min_x) / resolution;
    const double step_y = (max_y - min_y) / resolution;

    // Membership in a rotated box is |dot(p-c, axis)| <= half side; both dot
    // products advance by a constant per cell along a row, so the inner loop
    // is add-and-compare only.
    struct Frame {
        double ux, uy, vx, vy, hh, hw, cx, cy;
    };
    auto make_frame = [](const ObbBox& box) {
        Frame f;
        f.ux = std::cos(box.theta);
        f.uy = std::sin(box.theta);
        f.vx = -f.uy;
        f.vy = f.ux;
        f.hh = 0.5 * box.h;
        f.hw = 0.5 * box.w;
        f.cx = box.cx;
        f.cy = box.cy;
        return f;
    };
    const Frame fa = make_frame(a);
    const Frame fb = make_frame(b);

    long long na = 0, nb = 0, nab = 0;
    for (int iy = 0; iy < resolution; ++iy) {
        const double py = min_y + (iy + 0.5) * step_y;
        const double px0 = min_x + 0.5 * step_x;
        double ua = (px0 - fa.cx) * fa.ux + (py - fa.cy) * fa.uy;
        double va = (px0 - fa.cx) * fa.vx + (py - fa.cy) * fa.vy;
        double ub = (px0 - fb.cx) * fb.ux + (py - fb.cy) * fb.uy;
        double vb = (px0 - fb.cx) * fb.vx + (py - fb.cy) * fb.vy;
        const double dua = step_x * fa.ux, dva = step_x * fa.vx;
        const double dub = step_x * fb.ux, dvb = step_x * fb.vx;
        for (int ix = 0; ix < resolution; ++ix) {
            const bool in_a = std::abs(ua) <= fa.hh && std::abs(va) <= fa.hw;
            const bool in_b = std::abs(ub) <= fb.hh && std::abs(vb) <= fb.hw;
            na += in_a;
            nb += in_b;
            nab += in_a && in_b;
            ua += dua;
            va += dva;
            ub += dub;
            vb += dvb;
        }
    }

    const long long uni = na + nb - nab;
    return uni > 0 ? static_cast<double>(nab) / static_cast<double>(uni) : 0.0;
}

}  // namespace sarbox
