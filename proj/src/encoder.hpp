#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "param_map.hpp"
#include "tube.hpp"
#include "video.hpp"

namespace stud {

// Tube tokenizer -> mean pooling -> two affine layers with tanh between.
// All learnable weights live in one ParamMap so site models stay aligned
// for merging:
//   tube.base_kernel [8,8,8,C,d]
//   head.w1 [hidden,d]   head.b1 [hidden]
//   head.w2 [K,hidden]   head.b2 [K]
struct EncoderConfig {
    int embed_dim = 16;
    int hidden_dim = 32;
    int prototypes = 8;  // K, output logits
    int in_channels = 1;
    std::vector<TubeConfig> tubes = default_tube_configs();
    bool add_positions = true;
};

namespace param_names {
inline constexpr const char* kBaseKernel = "tube.base_kernel";
inline constexpr const char* kHeadW1 = "head.w1";
inline constexpr const char* kHeadB1 = "head.b1";
inline constexpr const char* kHeadW2 = "head.w2";
inline constexpr const char* kHeadB2 = "head.b2";
}  // namespace param_names

ParamMap init_encoder_params(const EncoderConfig& cfg, uint64_t seed);

// Throws a config error if `params` does not match `cfg`'s shapes.
void validate_encoder_params(const EncoderConfig& cfg, const ParamMap& params);

struct EncoderOutput {
    std::vector<double> embedding;  // pooled pre-head features, length d
    std::vector<double> hidden;     // tanh activations, length hidden_dim
    std::vector<double> logits;     // length K
};

EncoderOutput encoder_forward(const EncoderConfig& cfg, const ParamMap& params,
                              const VideoTensor& clip);

// Double-precision gradient buffer aligned with a ParamMap. Gradients are
// accumulated here across views and batch clips, then converted once.
class GradAccum {
public:
    explicit GradAccum(const ParamMap& reference);

    std::span<double> of(std::string_view name);
    void add_scaled(const GradAccum& other, double scale);
    ParamMap to_param_map(double scale = 1.0) const;
    void reset();

private:
    const ParamMap* ref_;
    std::vector<std::vector<double>> buffers_;
};

// Reverse-mode pass for d(loss)/d(params) given d(loss)/d(logits); recomputes
// the forward internally and accumulates into `grads`.
void encoder_backward(const EncoderConfig& cfg, const ParamMap& params, const VideoTensor& clip,
                      std::span<const double> dlogits, GradAccum& grads);

}  // namespace stud
