#pragma once

#include <vector>

namespace sarbox {

/// Dense H x W x C tensor, row-major with channels fastest:
/// data[((y * W) + x) * C + c].
struct Tensor3 {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<double> data;

    Tensor3() = default;
    Tensor3(int h, int w, int c, double fill = 0.0);

    double& at(int y, int x, int c) {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    double at(int y, int x, int c) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    bool same_shape(const Tensor3& o) const {
        return height == o.height && width == o.width && channels == o.channels;
    }
};

/// Pointwise (1x1) convolution weights mapping in_channels to out_channels.
/// weights[o * in_channels + i]; bias empty or of length out_channels.
struct Conv1x1Weights {
    int in_channels = 0;
    int out_channels = 0;
    std::vector<double> weights;
    std::vector<double> bias;
};

/// Per-channel mean over the spatial dimensions.
std::vector<double> spatial_avg_pool(const Tensor3& f);

/// Dual-feature fusion attention forward pass: each input is scaled by the
/// sigmoid of its own spatially pooled channel vector, the two refined maps
/// are concatenated along channels (f2 block first), and a 1x1 convolution
/// mixes them down to out_channels. No trailing nonlinearity.
Tensor3 dfa_fuse(const Tensor3& f2, const Tensor3& f2de, const Conv1x1Weights& wts);

}  // namespace sarbox
