#include "sarbox/eval.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace sarbox {

MatchResult match_detections(std::span<const ObbBox> preds, std::span<const ObbBox> gts,
                             double iou_thr) {
    if (!(iou_thr > 0.0 && iou_thr < 1.0))
        throw std::invalid_argument("match_detections: iou_thr must lie in (0, 1)");
    for (const ObbBox& p : preds) {
        validate_box(p);
        if (!p.score) throw std::invalid_argument("match_detections: prediction without score");
    }
    for (const ObbBox& g : gts) validate_box(g);

    std::vector<size_t> order(preds.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return *preds[a].score > *preds[b].score; });

    MatchResult result;
    result.predictions.resize(preds.size());
    std::vector<bool> gt_taken(gts.size(), false);
    for (size_t i : order) {
        double best_iou = -1.0;
        size_t best_gt = gts.size();
        for (size_t j = 0; j < gts.size(); ++j) {
            if (gt_taken[j]) continue;
            const double o = obb_iou(preds[i], gts[j]);
            if (o > best_iou) {
                best_iou = o;
                best_gt = j;
            }
        }
        const bool tp = best_gt < gts.size() && best_iou >= iou_thr;
        if (tp) gt_taken[best_gt] = true;
        result.predictions[i] = {*preds[i].score, tp};
        tp ? ++result.num_tp : ++result.num_fp;
    }
    result.num_fn = static_cast<int>(gts.size()) - result.num_tp;
    return result;
}

PrecisionRecallF1 precision_recall_f1(const MatchResult& m) {
    PrecisionRecallF1 out;
    const int pred_total = m.num_tp + m.num_fp;
    const int gt_total = m.num_tp + m.num_fn;
    out.precision = pred_total > 0 ? static_cast<double>(m.num_tp) / pred_total : 0.0;
    out.recall = gt_total > 0 ? static_cast<double>(m.num_tp) / gt_total : 0.0;
    const double pr = out.precision + out.recall;
    out.f1 = pr > 0.0 ? 2.0 * out.precision * out.recall / pr : 0.0;
    return out;
}

PRCurve pr_curve(std::span<const ImageDetections> images, double iou_thr) {
    struct Entry {
        double score;
        bool is_tp;
        const std::string* image_id;
        size_t index;
    };
    std::vector<Entry> entries;
    int total_gts = 0;
    for (const ImageDetections& img : images) {
        total_gts += static_cast<int>(img.ground_truths.size());
        const MatchResult m = match_detections(img.predictions, img.ground_truths, iou_thr);
        for (size_t i = 0; i < m.predictions.size(); ++i)
            entries.push_back({m.predictions[i].score, m.predictions[i].is_tp, &img.image_id, i});
    }
    if (total_gts == 0) throw std::invalid_argument("pr_curve: no ground truths, recall undefined");

    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.score != b.score) return a.score > b.score;
        if (*a.image_id != *b.image_id) return *a.image_id < *b.image_id;
        return a.index < b.index;
    });

    PRCurve curve;
    curve.total_gts = total_gts;
    curve.points.reserve(entries.size());
    int ctp = 0, cfp = 0;
    for (const Entry& e : entries) {
        e.is_tp ? ++ctp : ++cfp;
        curve.points.push_back({static_cast<double>(ctp) / total_gts,
                                static_cast<double>(ctp) / (ctp + cfp), e.score});
    }
    return curve;
}

double average_precision(const PRCurve& c) {
    const auto& pts = c.points;
    if (pts.empty()) return 0.0;
    double ap = 0.0;
    double envelope = 0.0;
    for (size_t i = pts.size(); i-- > 0;) {
        envelope = std::max(envelope, pts[i].precision);
        const double r_prev = i == 0 ? 0.0 : pts[i - 1].recall;
        ap += (pts[i].recall - r_prev) * envelope;
    }
    return ap;
}

}  // namespace sarbox
