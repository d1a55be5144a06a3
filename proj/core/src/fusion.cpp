#include "sarbox/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sarbox {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_scored(std::span<const ObbBox> boxes, const char* who) {
    for (const ObbBox& b : boxes) {
        validate_box(b);
        if (!b.score) throw std::invalid_argument(std::string(who) + ": box without score");
    }
}

void validate_thr(double iou_thr, const char* who) {
    if (!(iou_thr > 0.0 && iou_thr < 1.0))
        throw std::invalid_argument(std::string(who) + ": iou_thr must lie in (0, 1)");
}

std::vector<size_t> score_order(std::span<const ObbBox> boxes) {
    std::vector<size_t> order(boxes.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return *boxes[a].score > *boxes[b].score; });
    return order;
}

}  // namespace

std::vector<ObbBox> rotated_nms(std::span<const ObbBox> boxes, double iou_thr) {
    validate_thr(iou_thr, "rotated_nms");
    validate_scored(boxes, "rotated_nms");
    std::vector<ObbBox> kept;
    for (size_t i : score_order(boxes)) {
        bool suppressed = false;
        for (const ObbBox& k : kept) {
            if (obb_iou(boxes[i], k) >= iou_thr) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) kept.push_back(boxes[i]);
    }
    return kept;
}

std::vector<ObbBox> soft_nms(std::span<const ObbBox> boxes, double iou_thr, double score_floor) {
    validate_thr(iou_thr, "soft_nms");
    if (!(score_floor >= 0.0 && score_floor < 1.0))
        throw std::invalid_argument("soft_nms: score_floor must lie in [0, 1)");
    validate_scored(boxes, "soft_nms");

    std::vector<ObbBox> work(boxes.begin(), boxes.end());
    std::vector<ObbBox> out;
    while (!work.empty()) {
        size_t best = 0;
        for (size_t i = 1; i < work.size(); ++i)
            if (*work[i].score > *work[best].score) best = i;
        const ObbBox top = work[best];
        out.push_back(top);
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));

        std::vector<ObbBox> survivors;
        survivors.reserve(work.size());
        for (ObbBox& b : work) {
            const double o = obb_iou(top, b);
            if (o >= iou_thr) b.score = *b.score * (1.0 - o);
            if (*b.score >= score_floor && *b.score > 0.0) survivors.push_back(b);
        }
        work.swap(survivors);
    }
    return out;
}

namespace {

// Shift an angle by whole half-turns until it lands within pi/2 of the
// reference; box angles are pi-periodic so this changes nothing geometric.
double normalize_to(double theta, double reference) {
    double t = theta;
    while (t - reference > kPi / 2.0) t -= kPi;
    while (t - reference < -kPi / 2.0) t += kPi;
    return t;
}

ObbBox refuse_cluster(const std::vector<ClusterMember>& members) {
    if (members.size() == 1) return members.front().box;  // exact singleton identity
    const double seed_theta = members.front().box.theta;
    double sum_c = 0.0, sx = 0.0, sy = 0.0, sh = 0.0, sw = 0.0, ssin = 0.0, scos = 0.0;
    for (const ClusterMember& m : members) {
        const double c = *m.box.score;
        sum_c += c;
        sx += c * m.box.cx;
        sy += c * m.box.cy;
        sh += c * m.box.h;
        sw += c * m.box.w;
        const double t = normalize_to(m.box.theta, seed_theta);
        ssin += c * std::sin(t);
        scos += c * std::cos(t);
    }
    ObbBox fused;
    fused.cx = sx / sum_c;
    fused.cy = sy / sum_c;
    fused.h = sh / sum_c;
    fused.w = sw / sum_c;
    fused.theta = wrap_angle(std::atan2(ssin, scos));
    fused.score = sum_c / static_cast<double>(members.size());
    return fused;
}

}  // namespace

std::vector<FusionCluster> wrbf_clusters(std::span<const ObbBox> det_boxes,
                                         std::span<const ObbBox> seg_boxes, double iou_thr) {
    validate_thr(iou_thr, "wrbf");
    validate_scored(det_boxes, "wrbf");
    validate_scored(seg_boxes, "wrbf");

    std::vector<ClusterMember> pool;
    pool.reserve(det_boxes.size() + seg_boxes.size());
    for (const ObbBox& b : det_boxes) pool.push_back({b, BoxSource::detection});
    for (const ObbBox& b : seg_boxes) pool.push_back({b, BoxSource::segmentation});
    std::stable_sort(pool.begin(), pool.end(), [](const ClusterMember& a, const ClusterMember& b) {
        return *a.box.score > *b.box.score;
    });

    std::vector<FusionCluster> clusters;
    for (const ClusterMember& m : pool) {
        FusionCluster* target = nullptr;
        for (FusionCluster& cl : clusters) {
            if (obb_iou(m.box, cl.fused) >= iou_thr) {
                target = &cl;
                break;
            }
        }
        if (target) {
            target->members.push_back(m);
            target->fused = refuse_cluster(target->members);
        } else {
            clusters.push_back({{m}, m.box});
        }
    }
    return clusters;
}

std::vector<ObbBox> wrbf(std::span<const ObbBox> det_boxes, std::span<const ObbBox> seg_boxes,
                         double iou_thr) {
    std::vector<FusionCluster> clusters = wrbf_clusters(det_boxes, seg_boxes, iou_thr);
    std::vector<ObbBox> fused;
    fused.reserve(clusters.size());
    for (const FusionCluster& cl : clusters) fused.push_back(cl.fused);
    std::stable_sort(fused.begin(), fused.end(),
                     [](const ObbBox& a, const ObbBox& b) { return *a.score > *b.score; });
    return fused;
}

}  // namespace sarbox
