#pragma once

#include <span>
#include <string>
#include <vector>

#include "sarbox/geometry.hpp"

namespace sarbox {

/// Per-prediction match outcome, in the input order of the predictions.
struct PredictionOutcome {
    double score = 0.0;
    bool is_tp = false;
};

struct MatchResult {
    std::vector<PredictionOutcome> predictions;
    int num_tp = 0;
    int num_fp = 0;
    int num_fn = 0;
};

/// Greedy matching: predictions in descending score (ties keep input order)
/// claim their best-IoU unmatched ground truth (ties: lower index). A
/// prediction is a true positive iff that best IoU reaches iou_thr; each
/// ground truth matches at most once, leftovers are false negatives.
MatchResult match_detections(std::span<const ObbBox> preds, std::span<const ObbBox> gts,
                             double iou_thr);

struct PrecisionRecallF1 {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Precision, recall, F1 from the tallies. Zero denominators yield 0.
PrecisionRecallF1 precision_recall_f1(const MatchResult& m);

struct PRPoint {
    double recall = 0.0;
    double precision = 0.0;
    double score = 0.0;  // threshold that produced this point
};

/// Precision-recall samples ordered by descending score threshold; recall is
/// non-decreasing along the list.
struct PRCurve {
    std::vector<PRPoint> points;
    int total_gts = 0;
};

struct ImageDetections {
    std::string image_id;
    std::vector<ObbBox> predictions;    // scored
    std::vector<ObbBox> ground_truths;  // unscored
};

/// Global score-descending sweep across all images: predictions are matched
/// per image, merged by (score desc, image_id, index) and accumulated into
/// cumulative precision/recall points. Throws if there are no ground truths.
PRCurve pr_curve(std::span<const ImageDetections> images, double iou_thr);

/// Area under the precision envelope (all-points interpolation): precision
/// at recall r is the maximum precision at any recall >= r; integrated over
/// [0, 1]. Empty curve yields 0.
double average_precision(const PRCurve& c);

}  // namespace sarbox
