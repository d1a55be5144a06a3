#include "sarbox/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sarbox {

double smooth_l1(double x) {
    const double ax = std::abs(x);
    return ax < 1.0 ? 0.5 * x * x : ax - 0.5;
}

double smooth_l1_grad(double x) {
    return std::abs(x) < 1.0 ? x : (x > 0.0 ? 1.0 : -1.0);
}

int arw_alpha(double h, double w, double aspect_ratio_thr) {
    if (!(h > 0.0) || !(w > 0.0))
        throw std::invalid_argument("arw_alpha: box sides must be positive");
    return (h / w) > aspect_ratio_thr ? 1 : 2;
}

double arw_angle_loss(double theta_gt, double theta_pred, double h, double w,
                      const LossConfig& cfg) {
    const int alpha = arw_alpha(h, w, cfg.aspect_ratio_thr);
    const double d = wrap_angle(theta_gt) - wrap_angle(theta_pred);
    return std::abs(std::sin(alpha * d)) * smooth_l1(d);
}

double arw_angle_loss_grad_pred(double theta_gt, double theta_pred, double h, double w,
                                const LossConfig& cfg) {
    const int alpha = arw_alpha(h, w, cfg.aspect_ratio_thr);
    const double d = wrap_angle(theta_gt) - wrap_angle(theta_pred);
    const double s = std::sin(alpha * d);
    const double sign_s = s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
    const double dl_dd =
        sign_s * alpha * std::cos(alpha * d) * smooth_l1(d) + std::abs(s) * smooth_l1_grad(d);
    return -dl_dd;  // d(d)/d(theta_pred) = -1 away from the wrap seam
}

namespace {

double clamp_prob(double p) { return std::clamp(p, kProbClamp, 1.0 - kProbClamp); }

double focal_term(double pt, double gamma) {
    return -std::pow(1.0 - pt, gamma) * std::log(pt);
}

double focal_term_grad(double pt, double gamma) {
    const double one_minus = 1.0 - pt;
    double g = -std::pow(one_minus, gamma) / pt;
    if (gamma > 0.0) g += gamma * std::pow(one_minus, gamma - 1.0) * std::log(pt);
    return g;
}

}  // namespace

double focal_cls_loss(int class_gt, double p_pred, const LossConfig& cfg) {
    const double pt = clamp_prob(class_gt == 1 ? p_pred : 1.0 - p_pred);
    return focal_term(pt, cfg.gamma);
}

double focal_cls_grad_pred(int class_gt, double p_pred, const LossConfig& cfg) {
    const double raw = class_gt == 1 ? p_pred : 1.0 - p_pred;
    if (raw <= kProbClamp || raw >= 1.0 - kProbClamp) return 0.0;  // flat once clamped
    const double dpt_dp = class_gt == 1 ? 1.0 : -1.0;
    return focal_term_grad(raw, cfg.gamma) * dpt_dp;
}

double detection_loss(std::span<const RegressionTarget> targets, std::span<const int> cls_gt,
                      std::span<const RegressionTarget> preds, std::span<const double> cls_pred,
                      std::span<const ObbBox> gt_boxes, const LossConfig& cfg) {
    const size_t n = targets.size();
    if (n == 0) throw std::invalid_argument("detection_loss: empty batch");
    if (cls_gt.size() != n || preds.size() != n || cls_pred.size() != n || gt_boxes.size() != n)
        throw std::invalid_argument("detection_loss: input length mismatch");

    double reg = 0.0, ang = 0.0, cls = 0.0;
    for (size_t i = 0; i < n; ++i) {
        reg += smooth_l1(targets[i].tx - preds[i].tx) + smooth_l1(targets[i].ty - preds[i].ty) +
               smooth_l1(targets[i].tw - preds[i].tw) + smooth_l1(targets[i].th - preds[i].th);
        ang += arw_angle_loss(targets[i].theta, preds[i].theta, gt_boxes[i].h, gt_boxes[i].w, cfg);
        cls += focal_cls_loss(cls_gt[i], cls_pred[i], cfg);
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    return reg * inv_n + ang * inv_n + cls * inv_n;
}

double denoise_mse(const Grid& y, const Grid& y_hat) {
    if (!y.same_shape(y_hat)) throw std::invalid_argument("denoise_mse: shape mismatch");
    if (y.empty()) throw std::invalid_argument("denoise_mse: empty grids");
    double acc = 0.0;
    for (size_t k = 0; k < y.data.size(); ++k) {
        const double d = y.data[k] - y_hat.data[k];
        acc += d * d;
    }
    return acc / static_cast<double>(y.data.size());
}

Grid denoise_mse_grad(const Grid& y, const Grid& y_hat) {
    if (!y.same_shape(y_hat)) throw std::invalid_argument("denoise_mse_grad: shape mismatch");
    if (y.empty()) throw std::invalid_argument("denoise_mse_grad: empty grids");
    Grid g(y.width, y.height);
    const double scale = 2.0 / static_cast<double>(y.data.size());
    for (size_t k = 0; k < y.data.size(); ++k) g.data[k] = scale * (y_hat.data[k] - y.data[k]);
    return g;
}

double segmentation_loss(const Grid& p, const Grid& y, const Grid& g, const LossConfig& cfg) {
    if (!p.same_shape(y) || !p.same_shape(g))
        throw std::invalid_argument("segmentation_loss: shape mismatch");
    if (p.empty()) throw std::invalid_argument("segmentation_loss: empty grids");
    double acc = 0.0;
    for (size_t k = 0; k < p.data.size(); ++k) {
        const double pk = p.data[k];
        if (!(pk >= 0.0 && pk <= 1.0))
            throw std::invalid_argument("segmentation_loss: probability outside [0, 1]");
        const double phat = clamp_prob(y.data[k] > 0.5 ? pk : 1.0 - pk);
        acc += g.data[k] * focal_term(phat, cfg.gamma);
    }
    return acc / static_cast<double>(p.data.size());
}

Grid segmentation_loss_grad(const Grid& p, const Grid& y, const Grid& g, const LossConfig& cfg) {
    if (!p.same_shape(y) || !p.same_shape(g))
        throw std::invalid_argument("segmentation_loss_grad: shape mismatch");
    if (p.empty()) throw std::invalid_argument("segmentation_loss_grad: empty grids");
    Grid out(p.width, p.height);
    const double inv_n = 1.0 / static_cast<double>(p.data.size());
    for (size_t k = 0; k < p.data.size(); ++k) {
        const double pk = p.data[k];
        if (!(pk >= 0.0 && pk <= 1.0))
            throw std::invalid_argument("segmentation_loss_grad: probability outside [0, 1]");
        const bool positive = y.data[k] > 0.5;
        const double raw = positive ? pk : 1.0 - pk;
        if (raw <= kProbClamp || raw >= 1.0 - kProbClamp) {
            out.data[k] = 0.0;
            continue;
        }
        const double dphat_dp = positive ? 1.0 : -1.0;
        out.data[k] = g.data[k] * focal_term_grad(raw, cfg.gamma) * dphat_dp * inv_n;
    }
    return out;
}

double joint_loss(double l_denoise, double l_segment, double l_object, const LossConfig& cfg) {
    return cfg.lambda1 * l_denoise + cfg.lambda2 * l_segment + cfg.lambda3 * l_object;
}

std::vector<double> finite_diff_grad(const std::function<double(std::span<const double>)>& f,
                                     std::span<const double> x, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("finite_diff_grad: eps must be positive");
    std::vector<double> work(x.begin(), x.end());
    std::vector<double> grad(x.size());
    for (size_t i = 0; i < work.size(); ++i) {
        const double xi = work[i];
        work[i] = xi + eps;
        const double fp = f(work);
        work[i] = xi - eps;
        const double fm = f(work);
        work[i] = xi;
        grad[i] = (fp - fm) / (2.0 * eps);
    }
    return grad;
}

}  // namespace sarbox
