#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sarbox/geometry.hpp"
#include "sarbox/grid.hpp"

namespace sarbox {

/// Shared knobs for the loss kernels.
struct LossConfig {
    double aspect_ratio_thr = 1.5;  // r: alpha switches from 2 to 1 above this h/w
    double gamma = 2.0;             // focal exponent
    double lambda1 = 1.0;           // joint-loss weight on the denoise term
    double lambda2 = 1.0;           // joint-loss weight on the segmentation term
    double lambda3 = 1.0;           // joint-loss weight on the detection term
};

/// Regression offsets for one anchor: (tx, ty, tw, th) plus the box angle in
/// radians.
struct RegressionTarget {
    double tx = 0.0;
    double ty = 0.0;
    double tw = 0.0;
    double th = 0.0;
    double theta = 0.0;
};

/// Probabilities are clamped into [kProbClamp, 1 - kProbClamp] before any log.
constexpr double kProbClamp = 1e-7;

/// 0.5 x^2 for |x| < 1, |x| - 0.5 otherwise.
double smooth_l1(double x);
double smooth_l1_grad(double x);

/// Aspect-ratio weighting exponent: 1 when h/w > r (elongated), 2 otherwise
/// (square-like, halving the angle period).
int arw_alpha(double h, double w, double aspect_ratio_thr);

/// Angle loss |sin(alpha * d)| * smooth_l1(d) with d the difference of the
/// canonically wrapped angles. The sine factor zeroes the loss whenever the
/// angle difference is a multiple of the box's effective period.
double arw_angle_loss(double theta_gt, double theta_pred, double h, double w,
                      const LossConfig& cfg = {});
/// d(arw_angle_loss)/d(theta_pred); undefined exactly at the kinks of |sin|
/// and smooth_l1 (returns the one-sided value there).
double arw_angle_loss_grad_pred(double theta_gt, double theta_pred, double h, double w,
                                const LossConfig& cfg = {});

/// Focal classification loss -(1 - pt)^gamma * log(pt) with
/// pt = p_pred for positives and 1 - p_pred for negatives.
double focal_cls_loss(int class_gt, double p_pred, const LossConfig& cfg = {});
/// d(focal_cls_loss)/d(p_pred); 0 inside the clamp region.
double focal_cls_grad_pred(int class_gt, double p_pred, const LossConfig& cfg = {});

/// Full detection loss: mean smooth-L1 over the four box offsets, plus mean
/// angle loss (aspect ratio taken from gt_boxes), plus mean focal
/// classification loss. All spans must have equal nonzero length.
double detection_loss(std::span<const RegressionTarget> targets, std::span<const int> cls_gt,
                      std::span<const RegressionTarget> preds, std::span<const double> cls_pred,
                      std::span<const ObbBox> gt_boxes, const LossConfig& cfg = {});

/// Mean squared error over two equally shaped grids.
double denoise_mse(const Grid& y, const Grid& y_hat);
/// Gradient of denoise_mse with respect to y_hat.
Grid denoise_mse_grad(const Grid& y, const Grid& y_hat);

/// Gaussian-weighted focal segmentation loss:
///   mean over pixels of -g * (1 - phat)^gamma * log(phat),
/// phat = p where y == 1 and 1 - p elsewhere. p must lie in [0, 1].
double segmentation_loss(const Grid& p, const Grid& y, const Grid& g,
                         const LossConfig& cfg = {});
/// Per-pixel gradient of segmentation_loss with respect to p.
Grid segmentation_loss_grad(const Grid& p, const Grid& y, const Grid& g,
                            const LossConfig& cfg = {});

/// lambda1 * l_denoise + lambda2 * l_segment + lambda3 * l_object.
double joint_loss(double l_denoise, double l_segment, double l_object,
                  const LossConfig& cfg = {});

/// Central-difference gradient, one coordinate at a time.
std::vector<double> finite_diff_grad(const std::function<double(std::span<const double>)>& f,
                                     std::span<const double> x, double eps);

}  // namespace sarbox
