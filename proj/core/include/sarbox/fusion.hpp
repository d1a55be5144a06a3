#pragma once

#include <span>
#include <vector>

#include "sarbox/geometry.hpp"

namespace sarbox {

/// Which branch a box came from. Carried for diagnostics only; fusion weights
/// boxes purely by confidence.
enum class BoxSource { detection, segmentation };

struct ClusterMember {
    ObbBox box;
    BoxSource source = BoxSource::detection;
};

/// One fused cluster: the contributing boxes in join order plus the running
/// fused box (confidence = mean of member confidences, geometry =
/// confidence-weighted mean, angle recombined via atan2 of weighted
/// sin/cos after normalizing members to the seed's half-turn branch).
struct FusionCluster {
    std::vector<ClusterMember> members;
    ObbBox fused;
};

/// Greedy NMS over scored boxes: descending score, a box is kept only if its
/// IoU with every kept box is below iou_thr. Output sorted by score
/// descending; ties keep input order.
std::vector<ObbBox> rotated_nms(std::span<const ObbBox> boxes, double iou_thr);

/// Linear soft-NMS: each round the best remaining box is emitted and every
/// remaining box with IoU >= iou_thr against it has its score multiplied by
/// (1 - IoU). Boxes whose score falls below score_floor (or to zero) are
/// dropped. Output ordered by decayed score at selection time.
std::vector<ObbBox> soft_nms(std::span<const ObbBox> boxes, double iou_thr, double score_floor);

/// Weighted rotated boxes fusion over the union of the detection-branch and
/// segmentation-branch boxes. Boxes are processed in descending confidence
/// (ties: detection list first, then input order); each joins the first
/// existing cluster whose fused box overlaps it at IoU >= iou_thr, otherwise
/// it seeds a new cluster. Returns the clusters in creation order.
std::vector<FusionCluster> wrbf_clusters(std::span<const ObbBox> det_boxes,
                                         std::span<const ObbBox> seg_boxes, double iou_thr);

/// Fused boxes only, canonicalized and sorted by fused confidence descending
/// (ties keep cluster creation order).
std::vector<ObbBox> wrbf(std::span<const ObbBox> det_boxes, std::span<const ObbBox> seg_boxes,
                         double iou_thr);

}  // namespace sarbox
