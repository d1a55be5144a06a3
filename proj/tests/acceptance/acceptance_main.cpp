// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Needs --cli <path-to-sarbox> for the determinism check and
// --workdir <scratch dir> for generated fixtures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "sarbox/eval.hpp"
#include "sarbox/fusion.hpp"
#include "sarbox/geometry.hpp"
#include "sarbox/io.hpp"
#include "sarbox/losses.hpp"
#include "sarbox/masks.hpp"
#include "sarbox/speckle.hpp"

namespace fs = std::filesystem;
using namespace sarbox;
using sarbox::testing::uniform;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& why) {
        if (!cond && ok) {
            ok = false;
            detail = why;
        }
    }
};

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------- 1

Check criterion_iou_oracle() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260811);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const ObbBox a =
            canonicalize_obb(uniform(rng, -20, 20), uniform(rng, -20, 20), uniform(rng, 2, 50),
                             uniform(rng, 2, 50), uniform(rng, -4, 4));
        const ObbBox b =
            canonicalize_obb(a.cx + uniform(rng, -25, 25), a.cy + uniform(rng, -25, 25),
                             uniform(rng, 2, 50), uniform(rng, 2, 50), uniform(rng, -4, 4));
        const double diff = std::abs(obb_iou(a, b) - obb_iou_raster(a, b, 1024));
        worst = std::max(worst, diff);
    }
    c.expect(worst < 0.01, "worst |exact - raster| = " + fmt(worst));

    const double deg = kPi / 180.0;
    const ObbBox gt = canonicalize_obb(50, 50, 20, 20, -70.6 * deg);
    const ObbBox pred = canonicalize_obb(50, 50, 20, 20, 19.7 * deg);
    const double iou = obb_iou(gt, pred);
    c.expect(iou >= 0.95, "square-like pair IoU = " + fmt(iou));
    const double weight = std::abs(std::sin(2.0 * (wrap_angle(gt.theta) - wrap_angle(pred.theta))));
    c.expect(weight <= 0.02, "square-like pair ARW weight = " + fmt(weight));

    const double secs = elapsed_s(t0);
    c.expect(secs < 30.0, "runtime " + fmt(secs) + "s exceeds 30s");
    if (c.ok) c.detail = "worst diff " + fmt(worst) + ", " + fmt(secs) + "s";
    return c;
}

// ---------------------------------------------------------------- 2

Check criterion_arw_zeros() {
    Check c;
    for (double base : {0.35, -0.8, 0.0}) {
        for (double d : {0.0, kPi / 2.0, kPi}) {
            const double sq = arw_angle_loss(base, base - d, 1.2, 1.0);
            c.expect(sq <= 1e-12, "alpha=2 loss at offset " + fmt(d) + " is " + fmt(sq));
            const double bd = arw_angle_loss(base, base - d, 1.5, 1.0);
            c.expect(bd <= 1e-12, "alpha=2 boundary-ratio loss at " + fmt(d) + " is " + fmt(bd));
        }
        for (double d : {0.0, kPi}) {
            const double el = arw_angle_loss(base, base - d, 3.0, 1.0);
            c.expect(el <= 1e-12, "alpha=1 loss at offset " + fmt(d) + " is " + fmt(el));
        }
    }
    c.expect(arw_alpha(1.5, 1.0, 1.5) == 2, "alpha at h/w = r must be 2");
    c.expect(arw_alpha(1.5 + 1e-6, 1.0, 1.5) == 1, "alpha just above r must be 1");
    if (c.ok) c.detail = "zeros exact, switch at h/w = 1.5";
    return c;
}

// ---------------------------------------------------------------- 3

Check criterion_gradients() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(7771);
    const double eps = 1e-6;
    const double tol = 1e-4;

    auto rel_ok = [&](double analytic, double fd) {
        return std::abs(analytic - fd) <= tol * std::max(std::abs(analytic), 1e-12);
    };

    int n = 0;
    while (n < 100) {  // smooth-L1
        const double x = uniform(rng, -3, 3);
        if (std::abs(std::abs(x) - 1.0) < 0.05 || std::abs(x) < 1e-3) continue;
        auto f = [](std::span<const double> v) { return smooth_l1(v[0]); };
        std::vector<double> at{x};
        if (!rel_ok(smooth_l1_grad(x), finite_diff_grad(f, at, eps)[0])) {
            c.expect(false, "smooth_l1 grad mismatch at x=" + fmt(x));
            break;
        }
        ++n;
    }

    n = 0;
    while (n < 100) {  // focal
        const double p = uniform(rng, 0.05, 0.95);
        const int cls = n % 2;
        LossConfig cfg;
        cfg.gamma = (n % 3 == 0) ? 0.0 : 2.0;
        const double an = focal_cls_grad_pred(cls, p, cfg);
        if (std::abs(an) < 1e-3) continue;
        auto f = [&](std::span<const double> v) { return focal_cls_loss(cls, v[0], cfg); };
        std::vector<double> at{p};
        if (!rel_ok(an, finite_diff_grad(f, at, eps)[0])) {
            c.expect(false, "focal grad mismatch at p=" + fmt(p));
            break;
        }
        ++n;
    }

    n = 0;
    while (n < 100) {  // arw, non-kink points
        const double tg = uniform(rng, -1.3, 1.3);
        const double tp = uniform(rng, -1.3, 1.3);
        const double h = uniform(rng, 1.0, 5.0);
        LossConfig cfg;
        const int alpha = arw_alpha(h, 1.0, cfg.aspect_ratio_thr);
        const double d = wrap_angle(tg) - wrap_angle(tp);
        if (std::abs(std::sin(alpha * d)) < 0.05 || std::abs(std::abs(d) - 1.0) < 0.05) continue;
        const double an = arw_angle_loss_grad_pred(tg, tp, h, 1.0, cfg);
        if (std::abs(an) < 1e-3) continue;
        auto f = [&](std::span<const double> v) { return arw_angle_loss(tg, v[0], h, 1.0, cfg); };
        std::vector<double> at{tp};
        if (!rel_ok(an, finite_diff_grad(f, at, eps)[0])) {
            c.expect(false, "arw grad mismatch at d=" + fmt(d));
            break;
        }
        ++n;
    }

    {  // mse: a 10x10 grid gives 100 coordinates
        Grid y(10, 10), yh(10, 10);
        for (auto& v : y.data) v = uniform(rng, 0, 2);
        for (auto& v : yh.data) v = uniform(rng, 0, 2);
        const Grid an = denoise_mse_grad(y, yh);
        auto f = [&](std::span<const double> v) {
            Grid g = yh;
            g.data.assign(v.begin(), v.end());
            return denoise_mse(y, g);
        };
        const std::vector<double> fd = finite_diff_grad(f, yh.data, eps);
        for (size_t k = 0; k < fd.size(); ++k) {
            if (!rel_ok(an.data[k], fd[k])) {
                c.expect(false, "mse grad mismatch at cell " + std::to_string(k));
                break;
            }
        }
    }

    {  // segmentation: another 100 coordinates
        Grid y(10, 10), p(10, 10), g(10, 10);
        for (auto& v : y.data) v = uniform(rng, 0, 1) < 0.5 ? 0.0 : 1.0;
        for (auto& v : p.data) v = uniform(rng, 0.1, 0.9);
        for (auto& v : g.data) v = uniform(rng, 0.2, 1.0);
        LossConfig cfg;
        const Grid an = segmentation_loss_grad(p, y, g, cfg);
        auto f = [&](std::span<const double> v) {
            Grid q = p;
            q.data.assign(v.begin(), v.end());
            return segmentation_loss(q, y, g, cfg);
        };
        const std::vector<double> fd = finite_diff_grad(f, p.data, eps);
        for (size_t k = 0; k < fd.size(); ++k) {
            if (!rel_ok(an.data[k], fd[k])) {
                c.expect(false, "segmentation grad mismatch at cell " + std::to_string(k));
                break;
            }
        }
    }

    const double secs = elapsed_s(t0);
    c.expect(secs < 10.0, "runtime " + fmt(secs) + "s exceeds 10s");
    if (c.ok) c.detail = "5 loss families x 100 points, " + fmt(secs) + "s";
    return c;
}

// ---------------------------------------------------------------- 4

Check criterion_gaussian_mask() {
    Check c;
    const ObbBox box = canonicalize_obb(40, 40, 24, 10, 0.0);
    const Grid g = rotated_gaussian_mask(box, 96, 96);
    c.expect(std::abs(g.at(40, 40) - 1.0) <= 1e-9, "center value != 1");
    c.expect(std::abs(g.at(40 + 10, 40) - std::exp(-0.5)) <= 1e-9, "long-axis one-sigma point");
    c.expect(std::abs(g.at(40, 40 + 24) - std::exp(-0.5)) <= 1e-9, "short-axis one-sigma point");

    const double theta = kPi / 4.0;
    const Grid gr = rotated_gaussian_mask(canonicalize_obb(64, 64, 40, 24, theta), 128, 128);
    const Grid g0 = rotated_gaussian_mask(canonicalize_obb(64, 64, 40, 24, 0.0), 128, 128);
    const double cs = std::cos(theta), sn = std::sin(theta);
    double worst = 0.0;
    for (int y = 16; y < 112; ++y) {
        for (int x = 16; x < 112; ++x) {
            const double dx = x - 64.0, dy = y - 64.0;
            const double rx = 64.0 + (cs * dx + sn * dy);
            const double ry = 64.0 + (-sn * dx + cs * dy);
            if (rx < 1 || ry < 1 || rx > 126 || ry > 126) continue;
            worst = std::max(worst, std::abs(gr.at(x, y) - testing::bilinear_sample(g0, rx, ry)));
        }
    }
    c.expect(worst <= 1e-3, "rotation-resample worst error " + fmt(worst));
    if (c.ok) c.detail = "analytic points exact, resample err " + fmt(worst);
    return c;
}

// ---------------------------------------------------------------- 5

Check criterion_mask_roundtrip() {
    Check c;
    std::mt19937_64 rng(42);
    double worst_center = 0.0, worst_angle = 0.0, worst_side = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double w = uniform(rng, 90, 120);
        const double h = w * uniform(rng, 5.5, 7.0);
        const int dim = static_cast<int>(h) + 48;
        const double cx = dim / 2 + uniform(rng, -0.5, 0.5);
        const double cy = dim / 2 + uniform(rng, -0.5, 0.5);
        const ObbBox src = canonicalize_obb(cx, cy, h, w, uniform(rng, -kPi / 2, kPi / 2 - 1e-9));

        // covariance factors chosen so the tau = 0.5 level set is the
        // ellipse inscribed in the box (half: exp(-(8 ln 2) x^2 / (2 s^2))
        // crosses 0.5 at x = s/2)
        const double k = 8.0 * std::log(2.0);
        const GaussParams params{k * (w * w) / (h * h), k * (h * h) / (w * w)};
        const Grid mask = rotated_gaussian_mask(src, dim, dim, params);

        const std::vector<ObbBox> boxes = mask_to_obbs(mask, 0.5, 25.0);
        if (boxes.size() != 1) {
            c.expect(false, "box " + std::to_string(i) + ": expected 1 component");
            break;
        }
        const ObbBox& rec = boxes[0];
        const double ec = std::hypot(rec.cx - src.cx, rec.cy - src.cy);
        const double ea = std::abs(wrap_angle(rec.theta - src.theta)) * 180.0 / kPi;
        const double es = std::max(std::abs(rec.h - src.h), std::abs(rec.w - src.w));
        worst_center = std::max(worst_center, ec);
        worst_angle = std::max(worst_angle, ea);
        worst_side = std::max(worst_side, es);
    }
    c.expect(worst_center <= 1.5, "worst center error " + fmt(worst_center));
    c.expect(worst_angle <= 2.0, "worst angle error " + fmt(worst_angle) + " deg");
    c.expect(worst_side <= 2.0, "worst side error " + fmt(worst_side));
    if (c.ok)
        c.detail = "center " + fmt(worst_center) + "px, angle " + fmt(worst_angle) + "deg, side " +
                   fmt(worst_side) + "px";
    return c;
}

// ---------------------------------------------------------------- 6

Check criterion_wrbf_oracle() {
    Check c;
    std::mt19937_64 rng(600);
    auto random_boxes = [&](int n) {
        std::vector<ObbBox> out;
        for (int i = 0; i < n; ++i)
            out.push_back(canonicalize_obb(uniform(rng, 0, 40), uniform(rng, 0, 40),
                                           uniform(rng, 4, 20), uniform(rng, 4, 20),
                                           uniform(rng, -1.5, 1.5), uniform(rng, 0.05, 1.0)));
        return out;
    };

    for (int trial = 0; trial < 200 && c.ok; ++trial) {
        const int nd = 1 + static_cast<int>(uniform(rng, 0, 3.999));
        const int ns = static_cast<int>(uniform(rng, 0, 2.999));
        const auto det = random_boxes(nd);
        const auto seg = random_boxes(ns);
        const double thr = uniform(rng, 0.2, 0.7);

        const auto got = wrbf(det, seg, thr);
        const auto want = testing::wrbf_reference(det, seg, thr);
        c.expect(got.size() == want.size(), "trial " + std::to_string(trial) + ": cluster count");
        for (size_t i = 0; i < got.size() && c.ok; ++i) {
            c.expect(*got[i].score == *want[i].score,
                     "trial " + std::to_string(trial) + ": confidence not bit-exact");
            const double gd = std::max(
                {std::abs(got[i].cx - want[i].cx), std::abs(got[i].cy - want[i].cy),
                 std::abs(got[i].h - want[i].h), std::abs(got[i].w - want[i].w),
                 std::abs(got[i].theta - want[i].theta)});
            c.expect(gd <= 1e-9, "trial " + std::to_string(trial) + ": geometry off by " + fmt(gd));
        }
    }

    const ObbBox solo = canonicalize_obb(17.25, -2.5, 23.0, 7.0, 0.3125, 0.4375);
    const auto out = wrbf(std::vector<ObbBox>{solo}, {}, 0.5);
    c.expect(out.size() == 1 && out[0].cx == solo.cx && out[0].cy == solo.cy &&
                 out[0].h == solo.h && out[0].w == solo.w && out[0].theta == solo.theta &&
                 *out[0].score == *solo.score,
             "singleton not returned bit-for-bit");
    if (c.ok) c.detail = "200 instances bit-exact on confidence, 1e-9 on geometry";
    return c;
}

// ---------------------------------------------------------------- 7

std::vector<ImageDetections> random_eval_instance(std::mt19937_64& rng) {
    std::vector<ImageDetections> images(1 + static_cast<int>(uniform(rng, 0, 1.999)));
    bool has_gt = false;
    for (size_t ii = 0; ii < images.size(); ++ii) {
        ImageDetections& img = images[ii];
        img.image_id = "img" + std::to_string(ii);
        const int gts = static_cast<int>(uniform(rng, has_gt ? 0 : 1, 5.999));
        for (int g = 0; g < gts; ++g)
            img.ground_truths.push_back(
                canonicalize_obb(uniform(rng, 10, 90), uniform(rng, 10, 90), uniform(rng, 6, 24),
                                 uniform(rng, 6, 24), uniform(rng, -1.5, 1.5)));
        has_gt = has_gt || gts > 0;
        const int preds = static_cast<int>(uniform(rng, 0, 9.999));
        for (int p = 0; p < preds; ++p) {
            if (!img.ground_truths.empty() && uniform(rng, 0, 1) < 0.6) {
                const ObbBox& base = img.ground_truths[static_cast<size_t>(
                    uniform(rng, 0, 0.999) * img.ground_truths.size())];
                img.predictions.push_back(canonicalize_obb(
                    base.cx + uniform(rng, -3, 3), base.cy + uniform(rng, -3, 3), base.h, base.w,
                    base.theta + uniform(rng, -0.2, 0.2), uniform(rng, 0.05, 1.0)));
            } else {
                img.predictions.push_back(
                    canonicalize_obb(uniform(rng, 10, 90), uniform(rng, 10, 90),
                                     uniform(rng, 6, 24), uniform(rng, 6, 24),
                                     uniform(rng, -1.5, 1.5), uniform(rng, 0.05, 1.0)));
            }
        }
    }
    return images;
}

Check criterion_eval_oracle() {
    Check c;
    std::mt19937_64 rng(700);
    for (int trial = 0; trial < 200 && c.ok; ++trial) {
        const auto images = random_eval_instance(rng);
        for (const double thr : {0.5, 0.75}) {
            const double got = average_precision(pr_curve(images, thr));
            const double want = testing::ap_reference(images, thr);
            c.expect(std::abs(got - want) <= 1e-9,
                     "trial " + std::to_string(trial) + ": AP@" + fmt(thr) + " off by " +
                         fmt(std::abs(got - want)));

            for (const ImageDetections& img : images) {
                const MatchResult m = match_detections(img.predictions, img.ground_truths, thr);
                c.expect(m.num_tp + m.num_fn == static_cast<int>(img.ground_truths.size()),
                         "tally identity tp+fn");
                c.expect(m.num_tp + m.num_fp == static_cast<int>(img.predictions.size()),
                         "tally identity tp+fp");
                const PrecisionRecallF1 prf = precision_recall_f1(m);
                const int pt = m.num_tp + m.num_fp;
                const int gt = m.num_tp + m.num_fn;
                if (pt > 0)
                    c.expect(prf.precision == static_cast<double>(m.num_tp) / pt, "precision id");
                if (gt > 0)
                    c.expect(prf.recall == static_cast<double>(m.num_tp) / gt, "recall id");
                if (prf.precision + prf.recall > 0)
                    c.expect(prf.f1 == 2.0 * prf.precision * prf.recall /
                                           (prf.precision + prf.recall),
                             "f1 id");
            }
        }
    }
    if (c.ok) c.detail = "200 instances, AP@0.5/0.75 within 1e-9, identities exact";
    return c;
}

// ---------------------------------------------------------------- 8

Check criterion_despeckle() {
    Check c;
    for (const int looks : {1, 4, 16}) {
        Grid scene(256, 256, 7.5);
        const Grid noisy = simulate_speckle(scene, looks, 1000 + looks);
        const EnlResult r = enl(noisy, {0, 0, 255, 255});
        c.expect(!r.is_infinite && std::abs(r.value - looks) / looks <= 0.10,
                 "ENL for L=" + std::to_string(looks) + " is " + fmt(r.value));

        const EpdResult self = epd_roa(noisy, noisy, {0, 0, 255, 255}, EpdDirection::horizontal);
        c.expect(self.value == 1.0, "epd_roa(img, img) != 1 exactly");

        Grid scaled = noisy;
        for (auto& v : scaled.data) v *= 4.0;
        c.expect(enl(scaled, {0, 0, 255, 255}).value == r.value, "ENL scale invariance not exact");
    }
    if (c.ok) c.detail = "ENL within 10% at L=1,4,16; identities exact";
    return c;
}

// ---------------------------------------------------------------- 9

struct CliEnv {
    std::string cli;
    fs::path workdir;
};

int run_cmd(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return status < 0 ? status : WEXITSTATUS(status);
}

std::string slurp_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Check criterion_cli_determinism(const CliEnv& env,
                                std::chrono::steady_clock::time_point suite_start) {
    Check c;
    if (env.cli.empty()) {
        c.expect(false, "no --cli path given");
        return c;
    }
    fs::remove_all(env.workdir);
    fs::create_directories(env.workdir);

    // fixture corpus
    std::mt19937_64 rng(900);
    const auto images = [&] {
        std::vector<ImageDetections> all;
        for (int i = 0; i < 12; ++i)
            for (auto& img : random_eval_instance(rng)) {
                img.image_id = "scene" + std::to_string(all.size());
                all.push_back(img);
            }
        return all;
    }();
    const fs::path pred_path = env.workdir / "pred.jsonl";
    const fs::path gt_path = env.workdir / "gt.jsonl";
    const fs::path seg_path = env.workdir / "seg.jsonl";
    {
        std::ofstream pred(pred_path), gt(gt_path), seg(seg_path);
        std::mt19937_64 seg_rng(901);
        for (const ImageDetections& img : images) {
            write_detections(pred, img.image_id, img.predictions);
            write_detections(gt, img.image_id, img.ground_truths);
            std::vector<ObbBox> seg_boxes;
            for (const ObbBox& g : img.ground_truths) {
                if (uniform(seg_rng, 0, 1) < 0.5) continue;
                seg_boxes.push_back(canonicalize_obb(g.cx + uniform(seg_rng, -2, 2),
                                                     g.cy + uniform(seg_rng, -2, 2), g.h, g.w,
                                                     g.theta, uniform(seg_rng, 0.3, 1.0)));
            }
            write_detections(seg, img.image_id, seg_boxes);
        }
    }

    auto battery = [&](const fs::path& out) {
        fs::create_directories(out);
        const std::string o = out.string() + "/";
        const std::string p = pred_path.string(), g = gt_path.string(), s = seg_path.string();
        std::vector<std::string> cmds = {
            env.cli + " eval --pred " + p + " --gt " + g + " --records " + o + "eval.jsonl > " +
                o + "eval.txt",
            env.cli + " fuse --det " + p + " --seg " + s + " --method wrbf --iou-thr 0.4 --out " +
                o + "wrbf.jsonl > " + o + "wrbf.txt",
            env.cli + " fuse --det " + p + " --method nms --iou-thr 0.5 --out " + o +
                "nms.jsonl > " + o + "nms.txt",
            env.cli + " fuse --det " + p + " --method softnms --iou-thr 0.4 --score-floor 0.1 " +
                "--out " + o + "softnms.jsonl > " + o + "softnms.txt",
            env.cli + " gaussmask --boxes " + g + " --image-id scene0 --width 96 --height 96 " +
                "--out " + o + "mask.f32grid > " + o + "gaussmask.txt",
            env.cli + " mask2obb --grid " + o + "mask.f32grid --tau 0.5 --min-area 4 --out " + o +
                "m2o.jsonl > " + o + "m2o.txt",
            env.cli + " speckle-sim --width 128 --height 128 --value 6 --looks 4 --seed 17 " +
                "--out " + o + "noisy.f32grid --out-clean " + o + "clean.f32grid > " + o +
                "sim.txt",
            env.cli + " despeckle-eval --original " + o + "noisy.f32grid --denoised " + o +
                "clean.f32grid --region 4,4,120,120 --region 10,10,60,60 --records " + o +
                "dsp.jsonl > " + o + "dsp.txt",
            env.cli + " loss-check --records " + o + "lc.jsonl > " + o + "lc.txt",
            env.cli + " iou --boxes " + p + " --records " + o + "iou.jsonl > " + o + "iou.txt",
        };
        for (const std::string& cmd : cmds) {
            const int code = run_cmd(cmd);
            if (code != 0) return "exit " + std::to_string(code) + " from: " + cmd;
        }
        return std::string();
    };

    const std::string err1 = battery(env.workdir / "out1");
    c.expect(err1.empty(), err1);
    const std::string err2 = battery(env.workdir / "out2");
    c.expect(err2.empty(), err2);

    if (c.ok) {
        for (const auto& entry : fs::directory_iterator(env.workdir / "out1")) {
            const fs::path twin = env.workdir / "out2" / entry.path().filename();
            if (slurp_file(entry.path()) != slurp_file(twin)) {
                c.expect(false, "outputs differ: " + entry.path().filename().string());
                break;
            }
        }
    }

    // exact-match fixtures score perfectly end to end
    if (c.ok) {
        const fs::path exact_gt = env.workdir / "exact_gt.jsonl";
        const fs::path exact_pred = env.workdir / "exact_pred.jsonl";
        {
            std::ofstream gt(exact_gt), pred(exact_pred);
            std::mt19937_64 xrng(902);
            for (int i = 0; i < 5; ++i) {
                const ObbBox box = canonicalize_obb(uniform(xrng, 20, 80), uniform(xrng, 20, 80),
                                                    uniform(xrng, 10, 30), uniform(xrng, 5, 9),
                                                    uniform(xrng, -1.5, 1.5));
                ObbBox scored = box;
                scored.score = 0.5 + 0.1 * i;
                write_detections(gt, "img" + std::to_string(i), {box});
                write_detections(pred, "img" + std::to_string(i), {scored});
            }
        }
        const fs::path mrec = env.workdir / "exact_metrics.jsonl";
        const int code = run_cmd(env.cli + " eval --pred " + exact_pred.string() + " --gt " +
                                 exact_gt.string() + " --records " + mrec.string() +
                                 " > /dev/null");
        c.expect(code == 0, "exact-match eval exited " + std::to_string(code));
        std::ifstream in(mrec);
        std::string line;
        int metrics_seen = 0;
        while (std::getline(in, line)) {
            const auto j = nlohmann::json::parse(line);
            if (j.at("type") != "metrics") continue;
            ++metrics_seen;
            for (const char* key : {"precision", "recall", "f1", "ap"})
                c.expect(j.at(key).get<double>() == 1.0,
                         std::string("exact-match ") + key + " != 1");
        }
        c.expect(metrics_seen == 2, "expected metrics records at both thresholds");
    }

    // the two-box fusion fixture lands at the mean confidence
    if (c.ok) {
        const fs::path fd = env.workdir / "pair_det.jsonl";
        const fs::path fsg = env.workdir / "pair_seg.jsonl";
        {
            ObbBox det_box = canonicalize_obb(30, 30, 18, 8, 0.4, 0.8);
            ObbBox seg_box = canonicalize_obb(30, 30, 18, 8, 0.4, 0.6);
            std::ofstream d(fd), s(fsg);
            write_detections(d, "img0", {det_box});
            write_detections(s, "img0", {seg_box});
        }
        const fs::path fused = env.workdir / "pair_fused.jsonl";
        const int code = run_cmd(env.cli + " fuse --det " + fd.string() + " --seg " + fsg.string() +
                                 " --method wrbf --iou-thr 0.5 --out " + fused.string() +
                                 " > /dev/null");
        c.expect(code == 0, "pair fuse exited " + std::to_string(code));
        const DetectionSet out = parse_detections(fused, RecordKind::prediction);
        c.expect(out.size() == 1 && out.at("img0").size() == 1, "pair fuse output shape");
        if (c.ok) {
            const double score = *out.at("img0")[0].box.score;
            c.expect(std::abs(score - 0.7) <= 1e-12, "fused confidence " + fmt(score));
        }
    }

    // input errors exit with code 1
    const int missing = run_cmd(env.cli + " eval --pred " + (env.workdir / "nope.jsonl").string() +
                                " --gt " + gt_path.string() + " > /dev/null 2>&1");
    c.expect(missing == 1, "missing-file exit code was " + std::to_string(missing));

    const double total = elapsed_s(suite_start);
    c.expect(total < 150.0, "suite total " + fmt(total) + "s endangers the 3-minute budget");
    if (c.ok) c.detail = "two runs byte-identical across 20 artifacts";
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CliEnv env;
    env.workdir = fs::temp_directory_path() / "sarbox-acceptance";
    for (int i = 1; i + 1 < argc; ++i) {
        const std::string flag = argv[i];
        if (flag == "--cli") env.cli = argv[i + 1];
        if (flag == "--workdir") env.workdir = argv[i + 1];
    }

    const auto t0 = std::chrono::steady_clock::now();
    struct Row {
        const char* name;
        std::function<Check()> run;
    };
    const std::vector<Row> rows = {
        {"IoU oracle suite (1000 pairs vs raster@1024, square-like pair)", criterion_iou_oracle},
        {"ARW loss zeros and aspect-ratio switch", criterion_arw_zeros},
        {"gradient suite (analytic vs finite differences, 100 points each)", criterion_gradients},
        {"gaussian mask analytic points and rotation consistency", criterion_gaussian_mask},
        {"mask-to-box round trip (100 seeded boxes)", criterion_mask_roundtrip},
        {"weighted fusion matches the step-by-step reference", criterion_wrbf_oracle},
        {"evaluation pipeline matches brute-force envelope integration", criterion_eval_oracle},
        {"despeckle metrics (ENL of L-look speckle, EPD identities)", criterion_despeckle},
    };

    int failed = 0;
    int id = 1;
    for (const Row& row : rows) {
        Check c;
        try {
            c = row.run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %d: %s%s%s\n", c.ok ? "PASS" : "FAIL", id, row.name,
                    c.detail.empty() ? "" : " -- ", c.detail.c_str());
        failed += c.ok ? 0 : 1;
        ++id;
    }

    Check c9;
    try {
        c9 = criterion_cli_determinism(env, t0);
    } catch (const std::exception& e) {
        c9.ok = false;
        c9.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: CLI determinism and suite runtime%s%s\n",
                c9.ok ? "PASS" : "FAIL", id, c9.detail.empty() ? "" : " -- ", c9.detail.c_str());
    failed += c9.ok ? 0 : 1;

    std::printf("%d/9 criteria passed (%.1fs)\n", 9 - failed, elapsed_s(t0));
    return failed;
}
