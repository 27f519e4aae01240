#include "tube.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace stud {

std::vector<TubeConfig> default_tube_configs() {
    return {
        TubeConfig{{1, 16, 16}, {16, 16, 16}, {0, 0, 0}, "image"},
        TubeConfig{{8, 8, 8}, {32, 16, 16}, {0, 0, 0}, "video"},
        TubeConfig{{16, 4, 4}, {64, 112, 112}, {0, 0, 0}, "elongated"},
        TubeConfig{{2, 16, 16}, {64, 112, 112}, {0, 0, 0}, "spatial"},
    };
}

int64_t token_count_axis(int dim, int kernel, int stride, int offset) {
    if (kernel < 1 || stride < 1) fail(ErrorCode::invalid_argument, "kernel and stride must be >= 1");
    if (offset < 0) fail(ErrorCode::invalid_argument, "offset must be >= 0");
    if (offset + kernel > dim) {
        fail(ErrorCode::invalid_argument,
             "tube kernel does not fit: offset " + std::to_string(offset) + " + kernel " +
                 std::to_string(kernel) + " > dim " + std::to_string(dim));
    }
    return (dim - offset - kernel) / stride + 1;
}

int64_t token_count(const std::array<int, 3>& dims, const TubeConfig& config) {
    int64_t n = 1;
    for (int a = 0; a < 3; ++a) {
        n *= token_count_axis(dims[a], config.kernel[a], config.stride[a], config.offset[a]);
    }
    return n;
}

int64_t token_count(const std::array<int, 3>& dims, std::span<const TubeConfig> configs) {
    int64_t n = 0;
    for (const auto& c : configs) n += token_count(dims, c);
    return n;
}

TubeSet make_tube_set(std::vector<TubeConfig> configs, int embed_dim, int in_channels,
                      std::vector<float> base_kernel) {
    if (embed_dim < 1) fail(ErrorCode::invalid_argument, "embed_dim must be >= 1");
    if (in_channels < 1) fail(ErrorCode::invalid_argument, "in_channels must be >= 1");
    if (configs.empty()) fail(ErrorCode::invalid_argument, "tube set needs at least one config");
    TubeSet set;
    set.configs = std::move(configs);
    set.embed_dim = embed_dim;
    set.in_channels = in_channels;
    if (static_cast<int64_t>(base_kernel.size()) != set.base_kernel_numel()) {
        fail(ErrorCode::invalid_argument,
             "base kernel length " + std::to_string(base_kernel.size()) + " != expected " +
                 std::to_string(set.base_kernel_numel()));
    }
    set.base_kernel = std::move(base_kernel);
    return set;
}

std::vector<AxisTap> axis_resize_taps(int from, int to) {
    if (to < 1) fail(ErrorCode::invalid_argument, "resize target must be >= 1");
    std::vector<AxisTap> taps(static_cast<size_t>(to));
    for (int i = 0; i < to; ++i) {
        double src = (to == 1) ? (from - 1) / 2.0
                               : static_cast<double>(i) * (from - 1) / (to - 1);
        int i0 = static_cast<int>(std::floor(src));
        if (i0 >= from - 1) i0 = from - 2;  // keep i1 in range; exact at src = from-1
        if (i0 < 0) i0 = 0;
        double frac = src - i0;
        taps[static_cast<size_t>(i)] = AxisTap{i0, 1.0 - frac, i0 + 1, frac};
    }
    if (from == 1) {
        for (auto& t : taps) t = AxisTap{0, 1.0, 0, 0.0};
    }
    return taps;
}

namespace {

struct ResizePlan {
    std::vector<AxisTap> t, h, w;
};

ResizePlan make_plan(const std::array<int, 3>& target) {
    return ResizePlan{axis_resize_taps(TubeSet::kBaseExtent, target[0]),
                      axis_resize_taps(TubeSet::kBaseExtent, target[1]),
                      axis_resize_taps(TubeSet::kBaseExtent, target[2])};
}

}  // namespace

std::vector<double> resize_kernel(const TubeSet& tubes, const std::array<int, 3>& target) {
    const int B = TubeSet::kBaseExtent;
    const int C = tubes.in_channels;
    const int D = tubes.embed_dim;
    const int64_t inner = static_cast<int64_t>(C) * D;
    ResizePlan plan = make_plan(target);
    std::vector<double> out(static_cast<size_t>(target[0]) * target[1] * target[2] * inner, 0.0);
    auto base_at = [&](int t, int h, int w, int64_t cd) -> double {
        return tubes.base_kernel[((static_cast<size_t>(t) * B + h) * B + w) * inner + cd];
    };
    size_t o = 0;
    for (int it = 0; it < target[0]; ++it) {
        const AxisTap& tt = plan.t[static_cast<size_t>(it)];
        for (int ih = 0; ih < target[1]; ++ih) {
            const AxisTap& th = plan.h[static_cast<size_t>(ih)];
            for (int iw = 0; iw < target[2]; ++iw, o += static_cast<size_t>(inner)) {
                const AxisTap& tw = plan.w[static_cast<size_t>(iw)];
                for (int64_t cd = 0; cd < inner; ++cd) {
                    double v = tt.w0 * (th.w0 * (tw.w0 * base_at(tt.i0, th.i0, tw.i0, cd) +
                                                 tw.w1 * base_at(tt.i0, th.i0, tw.i1, cd)) +
                                        th.w1 * (tw.w0 * base_at(tt.i0, th.i1, tw.i0, cd) +
                                                 tw.w1 * base_at(tt.i0, th.i1, tw.i1, cd))) +
                               tt.w1 * (th.w0 * (tw.w0 * base_at(tt.i1, th.i0, tw.i0, cd) +
                                                 tw.w1 * base_at(tt.i1, th.i0, tw.i1, cd)) +
                                        th.w1 * (tw.w0 * base_at(tt.i1, th.i1, tw.i0, cd) +
                                                 tw.w1 * base_at(tt.i1, th.i1, tw.i1, cd)));
                    out[o + static_cast<size_t>(cd)] = v;
                }
            }
        }
    }
    return out;
}

void resize_kernel_adjoint(std::span<const double> resized_grad, const std::array<int, 3>& target,
                           int in_channels, int embed_dim, std::span<double> base_grad) {
    const int B = TubeSet::kBaseExtent;
    const int64_t inner = static_cast<int64_t>(in_channels) * embed_dim;
    ResizePlan plan = make_plan(target);
    auto scatter = [&](int t, int h, int w, int64_t cd, double v) {
        base_grad[((static_cast<size_t>(t) * B + h) * B + w) * inner + static_cast<size_t>(cd)] += v;
    };
    size_t o = 0;
    for (int it = 0; it < target[0]; ++it) {
        const AxisTap& tt = plan.t[static_cast<size_t>(it)];
        for (int ih = 0; ih < target[1]; ++ih) {
            const AxisTap& th = plan.h[static_cast<size_t>(ih)];
            for (int iw = 0; iw < target[2]; ++iw, o += static_cast<size_t>(inner)) {
                const AxisTap& tw = plan.w[static_cast<size_t>(iw)];
                for (int64_t cd = 0; cd < inner; ++cd) {
                    double g = resized_grad[o + static_cast<size_t>(cd)];
                    if (g == 0.0) continue;
                    scatter(tt.i0, th.i0, tw.i0, cd, g * tt.w0 * th.w0 * tw.w0);
                    scatter(tt.i0, th.i0, tw.i1, cd, g * tt.w0 * th.w0 * tw.w1);
                    scatter(tt.i0, th.i1, tw.i0, cd, g * tt.w0 * th.w1 * tw.w0);
                    scatter(tt.i0, th.i1, tw.i1, cd, g * tt.w0 * th.w1 * tw.w1);
                    scatter(tt.i1, th.i0, tw.i0, cd, g * tt.w1 * th.w0 * tw.w0);
                    scatter(tt.i1, th.i0, tw.i1, cd, g * tt.w1 * th.w0 * tw.w1);
                    scatter(tt.i1, th.i1, tw.i0, cd, g * tt.w1 * th.w1 * tw.w0);
                    scatter(tt.i1, th.i1, tw.i1, cd, g * tt.w1 * th.w1 * tw.w1);
                }
            }
        }
    }
}

void positional_encoding(const std::array<double, 3>& center, int dim, double* out) {
    // Interleaved sin/cos over the three axes with geometrically growing
    // frequencies; parameter-free and deterministic.
    for (int j = 0; j < dim; ++j) {
        int axis = (j / 2) % 3;
        int level = j / 6;
        double angle = center[axis] * std::numbers::pi * std::pow(2.0, level);
        out[j] = (j % 2 == 0) ? std::sin(angle) : std::cos(angle);
    }
}

std::array<double, 3> tube_center(const std::array<int, 3>& dims, const TubeConfig& config, int t0,
                                  int h0, int w0) {
    std::array<int, 3> origin{t0, h0, w0};
    std::array<double, 3> center;
    for (int a = 0; a < 3; ++a) {
        double c = origin[a] + (config.kernel[a] - 1) / 2.0;
        center[a] = dims[a] > 1 ? c / (dims[a] - 1) : 0.5;
    }
    return center;
}

TokenSequence tokenize(const VideoTensor& clip, const TubeSet& tubes, bool add_positions) {
    const std::array<int, 3> dims{clip.t, clip.h, clip.w};
    if (clip.c != tubes.in_channels) {
        fail(ErrorCode::invalid_argument,
             "clip has " + std::to_string(clip.c) + " channels, tube set expects " +
                 std::to_string(tubes.in_channels));
    }
    const int D = tubes.embed_dim;
    const int C = tubes.in_channels;

    TokenSequence seq;
    seq.dim = D;
    seq.count = token_count(dims, tubes.configs);
    seq.tokens.resize(static_cast<size_t>(seq.count) * D);
    seq.positions.resize(static_cast<size_t>(seq.count) * 3);
    seq.source_labels.resize(static_cast<size_t>(seq.count));

    std::vector<double> token(static_cast<size_t>(D));
    std::vector<double> pe(static_cast<size_t>(D));
    int64_t base = 0;
    for (const auto& config : tubes.configs) {
        std::vector<double> kernel = resize_kernel(tubes, config.kernel);
        const int kt = config.kernel[0], kh = config.kernel[1], kw = config.kernel[2];
        for_each_placement(dims, config, [&](int64_t idx, int t0, int h0, int w0) {
            std::fill(token.begin(), token.end(), 0.0);
            size_t k = 0;
            for (int dt = 0; dt < kt; ++dt) {
                for (int dy = 0; dy < kh; ++dy) {
                    for (int dx = 0; dx < kw; ++dx) {
                        for (int ch = 0; ch < C; ++ch, k += static_cast<size_t>(D)) {
                            double v = clip.at(t0 + dt, h0 + dy, w0 + dx, ch);
                            if (v == 0.0) continue;
                            for (int e = 0; e < D; ++e) token[static_cast<size_t>(e)] += v * kernel[k + static_cast<size_t>(e)];
                        }
                    }
                }
            }
            auto center = tube_center(dims, config, t0, h0, w0);
            if (add_positions) {
                positional_encoding(center, D, pe.data());
                for (int e = 0; e < D; ++e) token[static_cast<size_t>(e)] += pe[static_cast<size_t>(e)];
            }
            int64_t row = base + idx;
            for (int e = 0; e < D; ++e) {
                seq.tokens[static_cast<size_t>(row) * D + e] = static_cast<float>(token[static_cast<size_t>(e)]);
            }
            for (int a = 0; a < 3; ++a) {
                seq.positions[static_cast<size_t>(row) * 3 + a] = static_cast<float>(center[static_cast<size_t>(a)]);
            }
            seq.source_labels[static_cast<size_t>(row)] = config.label;
        });
        base += token_count(dims, config);
    }
    return seq;
}

VideoTensor space_to_depth_rearrange(const VideoTensor& feat, int factor) {
    if (factor < 1) fail(ErrorCode::invalid_argument, "space_to_depth factor must be >= 1");
    if (feat.h % factor != 0 || feat.w % factor != 0) {
        fail(ErrorCode::invalid_argument,
             "space_to_depth: H and W must be divisible by factor " + std::to_string(factor));
    }
    VideoTensor out(feat.t, feat.h / factor, feat.w / factor, feat.c * factor * factor);
    for (int ti = 0; ti < feat.t; ++ti) {
        for (int hi = 0; hi < out.h; ++hi) {
            for (int wi = 0; wi < out.w; ++wi) {
                for (int dy = 0; dy < factor; ++dy) {
                    for (int dx = 0; dx < factor; ++dx) {
                        for (int ch = 0; ch < feat.c; ++ch) {
                            int oc = (dy * factor + dx) * feat.c + ch;
                            out.at(ti, hi, wi, oc) =
                                feat.at(ti, hi * factor + dy, wi * factor + dx, ch);
                        }
                    }
                }
            }
        }
    }
    return out;
}

VideoTensor space_to_depth(const VideoTensor& feat, int factor) {
    VideoTensor re = space_to_depth_rearrange(feat, factor);
    if (re.c % 2 != 0) fail(ErrorCode::invalid_argument, "space_to_depth: rearranged channels must be even");
    VideoTensor out(re.t, re.h, re.w, re.c / 2);
    for (int ti = 0; ti < re.t; ++ti) {
        for (int hi = 0; hi < re.h; ++hi) {
            for (int wi = 0; wi < re.w; ++wi) {
                for (int oc = 0; oc < out.c; ++oc) {
                    out.at(ti, hi, wi, oc) =
                        0.5f * (re.at(ti, hi, wi, 2 * oc) + re.at(ti, hi, wi, 2 * oc + 1));
                }
            }
        }
    }
    return out;
}

}  // namespace stud
