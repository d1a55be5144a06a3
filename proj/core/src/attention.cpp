#include "sarbox/attention.hpp"

#include <cmath>
#include <stdexcept>

namespace sarbox {

Tensor3::Tensor3(int h, int w, int c, double fill) : height(h), width(w), channels(c) {
    if (h < 0 || w < 0 || c < 0) throw std::invalid_argument("Tensor3: negative dimensions");
    data.assign(static_cast<size_t>(h) * w * c, fill);
}

std::vector<double> spatial_avg_pool(const Tensor3& f) {
    if (f.height <= 0 || f.width <= 0 || f.channels <= 0)
        throw std::invalid_argument("spatial_avg_pool: empty tensor");
    std::vector<double> pooled(f.channels, 0.0);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x)
            for (int c = 0; c < f.channels; ++c) pooled[c] += f.at(y, x, c);
    const double inv = 1.0 / (static_cast<double>(f.height) * f.width);
    for (double& v : pooled) v *= inv;
    return pooled;
}

namespace {
double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
}  // namespace

Tensor3 dfa_fuse(const Tensor3& f2, const Tensor3& f2de, const Conv1x1Weights& wts) {
    if (!f2.same_shape(f2de)) throw std::invalid_argument("dfa_fuse: input shape mismatch");
    const int ch = f2.channels;
    if (wts.in_channels != 2 * ch)
        throw std::invalid_argument("dfa_fuse: weights expect 2x input channels");
    if (wts.out_channels <= 0 ||
        wts.weights.size() != static_cast<size_t>(wts.in_channels) * wts.out_channels)
        throw std::invalid_argument("dfa_fuse: inconsistent weight matrix");
    if (!wts.bias.empty() && wts.bias.size() != static_cast<size_t>(wts.out_channels))
        throw std::invalid_argument("dfa_fuse: inconsistent bias length");

    std::vector<double> m2 = spatial_avg_pool(f2);
    std::vector<double> m2de = spatial_avg_pool(f2de);
    for (double& v : m2) v = sigmoid(v);
    for (double& v : m2de) v = sigmoid(v);

    Tensor3 out(f2.height, f2.width, wts.out_channels);
    std::vector<double> concat(static_cast<size_t>(2) * ch);
    for (int y = 0; y < f2.height; ++y) {
        for (int x = 0; x < f2.width; ++x) {
            for (int c = 0; c < ch; ++c) {
                concat[c] = m2[c] * f2.at(y, x, c);
                concat[ch + c] = m2de[c] * f2de.at(y, x, c);
            }
            for (int o = 0; o < wts.out_channels; ++o) {
                double acc = wts.bias.empty() ? 0.0 : wts.bias[o];
                const double* row = &wts.weights[static_cast<size_t>(o) * wts.in_channels];
                for (int i = 0; i < 2 * ch; ++i) acc += row[i] * concat[i];
                out.at(y, x, o) = acc;
            }
        }
    }
    return out;
}

}  // namespace sarbox
