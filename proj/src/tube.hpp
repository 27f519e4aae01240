#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "video.hpp"

namespace stud {

// One 3D tube kernel: shape, stride and offset along (t, h, w).
struct TubeConfig {
    std::array<int, 3> kernel{8, 8, 8};
    std::array<int, 3> stride{16, 16, 16};
    std::array<int, 3> offset{0, 0, 0};
    std::string label;
};

// Image tubes sample single frames, video tubes cover multi-frame context,
// plus a temporally elongated and a spatially focused variant. Strides are
// large so the token budget on a 64x224x224 clip stays under 10% of dense
// per-frame patching.
std::vector<TubeConfig> default_tube_configs();

// Placements along one axis with floor semantics: the kernel must fit.
int64_t token_count_axis(int dim, int kernel, int stride, int offset);
int64_t token_count(const std::array<int, 3>& dims, const TubeConfig& config);
int64_t token_count(const std::array<int, 3>& dims, std::span<const TubeConfig> configs);

// All tube kernels are derived from a single learnable base kernel of extent
// 8x8x8 (per input channel and embedding dim), resampled by trilinear
// interpolation to each config's extent.
struct TubeSet {
    static constexpr int kBaseExtent = 8;

    std::vector<TubeConfig> configs;
    int embed_dim = 16;
    int in_channels = 1;
    std::vector<float> base_kernel;  // [8][8][8][in_channels][embed_dim]

    int64_t base_kernel_numel() const {
        return static_cast<int64_t>(kBaseExtent) * kBaseExtent * kBaseExtent * in_channels *
               embed_dim;
    }
};

TubeSet make_tube_set(std::vector<TubeConfig> configs, int embed_dim, int in_channels,
                      std::vector<float> base_kernel);

// Per-axis trilinear resampling weights from the 8-point base grid onto a
// target grid (align-corners mapping; target size 1 samples the grid center).
struct AxisTap {
    int i0;
    double w0;
    int i1;
    double w1;
};
std::vector<AxisTap> axis_resize_taps(int from, int to);

// Resamples the base kernel onto `target` extents. Output layout
// [kt][kh][kw][in_channels][embed_dim], double precision.
std::vector<double> resize_kernel(const TubeSet& tubes, const std::array<int, 3>& target);

// Adjoint of resize_kernel: scatters a gradient w.r.t. the resized kernel
// back onto the base grid. Accumulates into `base_grad`.
void resize_kernel_adjoint(std::span<const double> resized_grad, const std::array<int, 3>& target,
                           int in_channels, int embed_dim, std::span<double> base_grad);

// Fixed sinusoidal encoding of a normalized tube center in [0,1]^3.
void positional_encoding(const std::array<double, 3>& center, int dim, double* out);

struct TokenSequence {
    int64_t count = 0;
    int dim = 0;
    std::vector<float> tokens;     // count x dim
    std::vector<float> positions;  // count x 3, normalized centers
    std::vector<std::string> source_labels;
};

// Inner product of each (resized) tube kernel with the clip patch at every
// placement, plus the positional encoding of the tube center. Tokens from
// successive configs are concatenated in config order.
TokenSequence tokenize(const VideoTensor& clip, const TubeSet& tubes, bool add_positions = true);

// Enumerates placements of `config` in `dims`; fn(placement index, t0, h0, w0).
template <typename Fn>
void for_each_placement(const std::array<int, 3>& dims, const TubeConfig& config, Fn&& fn) {
    int64_t nt = token_count_axis(dims[0], config.kernel[0], config.stride[0], config.offset[0]);
    int64_t nh = token_count_axis(dims[1], config.kernel[1], config.stride[1], config.offset[1]);
    int64_t nw = token_count_axis(dims[2], config.kernel[2], config.stride[2], config.offset[2]);
    int64_t idx = 0;
    for (int64_t it = 0; it < nt; ++it) {
        for (int64_t ih = 0; ih < nh; ++ih) {
            for (int64_t iw = 0; iw < nw; ++iw, ++idx) {
                fn(idx, config.offset[0] + static_cast<int>(it) * config.stride[0],
                   config.offset[1] + static_cast<int>(ih) * config.stride[1],
                   config.offset[2] + static_cast<int>(iw) * config.stride[2]);
            }
        }
    }
}

// Normalized center of a tube placed at origin (t0,h0,w0) in a clip of `dims`.
std::array<double, 3> tube_center(const std::array<int, 3>& dims, const TubeConfig& config, int t0,
                                  int h0, int w0);

// Space-to-depth: each factor x factor spatial block becomes channels
// (block-position-major), shrinking H and W by `factor`.
VideoTensor space_to_depth_rearrange(const VideoTensor& feat, int factor);

// Rearrangement followed by a fixed averaging projection of channel pairs,
// so the channel count ends at factor^2 * c / 2 (net factor-2 reduction
// relative to the rearranged tensor).
VideoTensor space_to_depth(const VideoTensor& feat, int factor = 2);

}  // namespace stud
