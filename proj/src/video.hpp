#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "error.hpp"

namespace stud {

// One clip: frames x height x width x channels, row-major, values in [0, 1].
struct VideoTensor {
    int32_t t = 0;
    int32_t h = 0;
    int32_t w = 0;
    int32_t c = 0;
    std::vector<float> data;

    VideoTensor() = default;
    VideoTensor(int32_t t_, int32_t h_, int32_t w_, int32_t c_)
        : t(t_), h(h_), w(w_), c(c_),
          data(static_cast<size_t>(t_) * h_ * w_ * c_, 0.0f) {}

    int64_t numel() const { return static_cast<int64_t>(t) * h * w * c; }

    size_t index(int ti, int hi, int wi, int ci) const {
        return ((static_cast<size_t>(ti) * h + hi) * w + wi) * c + ci;
    }

    float at(int ti, int hi, int wi, int ci) const { return data[index(ti, hi, wi, ci)]; }
    float& at(int ti, int hi, int wi, int ci) { return data[index(ti, hi, wi, ci)]; }

    bool same_shape(const VideoTensor& o) const {
        return t == o.t && h == o.h && w == o.w && c == o.c;
    }
};

// Raw clip file: "STUDCLIP" magic, version, dims, little-endian f32 payload,
// trailing FNV-1a checksum. Layout table in the README.
void save_clip(const VideoTensor& clip, const std::filesystem::path& path);
VideoTensor load_clip(const std::filesystem::path& path);

std::vector<uint8_t> serialize_clip(const VideoTensor& clip);
VideoTensor parse_clip(const std::vector<uint8_t>& bytes);

}  // namespace stud
