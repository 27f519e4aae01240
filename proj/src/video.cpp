#include "video.hpp"

#include "binio.hpp"

namespace stud {

namespace {
constexpr char kClipMagic[8] = {'S', 'T', 'U', 'D', 'C', 'L', 'I', 'P'};
constexpr uint32_t kClipVersion = 1;
}  // namespace

std::vector<uint8_t> serialize_clip(const VideoTensor& clip) {
    if (clip.t < 1 || clip.h < 1 || clip.w < 1 || clip.c < 1) {
        fail(ErrorCode::invalid_argument, "clip dims must be positive");
    }
    if (clip.numel() != static_cast<int64_t>(clip.data.size())) {
        fail(ErrorCode::invalid_argument, "clip data length does not match dims");
    }
    binio::Writer w;
    w.bytes(kClipMagic, sizeof(kClipMagic));
    w.u32(kClipVersion);
    w.u32(static_cast<uint32_t>(clip.t));
    w.u32(static_cast<uint32_t>(clip.h));
    w.u32(static_cast<uint32_t>(clip.w));
    w.u32(static_cast<uint32_t>(clip.c));
    for (float v : clip.data) w.f32(v);
    uint64_t checksum = binio::fnv1a(w.data().data() + sizeof(kClipMagic),
                                     w.size() - sizeof(kClipMagic));
    binio::Writer out;
    out.bytes(w.data().data(), w.size());
    out.u64(checksum);
    return out.data();
}

VideoTensor parse_clip(const std::vector<uint8_t>& bytes) {
    binio::Reader r(bytes);
    std::string magic = r.str(sizeof(kClipMagic));
    if (magic != std::string(kClipMagic, sizeof(kClipMagic))) {
        fail(ErrorCode::format, "bad clip magic");
    }
    uint32_t version = r.u32();
    if (version != kClipVersion) {
        fail(ErrorCode::format, "unsupported clip version " + std::to_string(version));
    }
    VideoTensor clip;
    clip.t = static_cast<int32_t>(r.u32());
    clip.h = static_cast<int32_t>(r.u32());
    clip.w = static_cast<int32_t>(r.u32());
    clip.c = static_cast<int32_t>(r.u32());
    if (clip.t < 1 || clip.h < 1 || clip.w < 1 || clip.c < 1) {
        fail(ErrorCode::format, "clip header has non-positive dims");
    }
    int64_t n = clip.numel();
    if (r.remaining() != static_cast<size_t>(n) * 4 + 8) {
        fail(ErrorCode::format, "clip payload size mismatch");
    }
    clip.data.resize(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) clip.data[static_cast<size_t>(i)] = r.f32();
    uint64_t stored = r.u64();
    uint64_t actual =
        binio::fnv1a(bytes.data() + sizeof(kClipMagic), bytes.size() - 8 - sizeof(kClipMagic));
    if (stored != actual) fail(ErrorCode::format, "clip checksum mismatch");
    return clip;
}

void save_clip(const VideoTensor& clip, const std::filesystem::path& path) {
    binio::write_file(path, serialize_clip(clip));
}

VideoTensor load_clip(const std::filesystem::path& path) {
    return parse_clip(binio::read_file(path));
}

}  // namespace stud
