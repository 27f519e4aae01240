#include "checkpoint.hpp"

#include "binio.hpp"

namespace stud {

namespace {
constexpr char kMagic[8] = {'S', 'T', 'U', 'D', 'C', 'K', 'P', 'T'};
constexpr uint32_t kVersion = 1;
}  // namespace

std::vector<uint8_t> serialize_checkpoint(const ParamMap& map) {
    binio::Writer w;
    w.bytes(kMagic, sizeof(kMagic));
    w.u32(kVersion);
    w.u64(map.size());
    for (const auto& e : map) {
        w.u32(static_cast<uint32_t>(e.name.size()));
        w.str(e.name);
        w.u32(static_cast<uint32_t>(e.shape.size()));
        for (int64_t d : e.shape) w.u64(static_cast<uint64_t>(d));
        for (float v : e.data) w.f32(v);
    }
    uint64_t checksum = binio::fnv1a(w.data().data() + sizeof(kMagic), w.size() - sizeof(kMagic));
    binio::Writer out;
    out.bytes(w.data().data(), w.size());
    out.u64(checksum);
    return out.data();
}

uint64_t checkpoint_checksum(const ParamMap& map) {
    auto bytes = serialize_checkpoint(map);
    binio::Reader tail(bytes.data() + bytes.size() - 8, 8);
    return tail.u64();
}

ParamMap parse_checkpoint(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < sizeof(kMagic) + 4 + 8 + 8) {
        fail(ErrorCode::format, "checkpoint too short to be valid");
    }
    binio::Reader r(bytes);
    std::string magic = r.str(sizeof(kMagic));
    if (magic != std::string(kMagic, sizeof(kMagic))) {
        fail(ErrorCode::format, "bad checkpoint magic");
    }
    uint64_t stored_checksum;
    {
        binio::Reader tail(bytes.data() + bytes.size() - 8, 8);
        stored_checksum = tail.u64();
    }
    uint64_t actual_checksum =
        binio::fnv1a(bytes.data() + sizeof(kMagic), bytes.size() - 8 - sizeof(kMagic));
    if (stored_checksum != actual_checksum) {
        fail(ErrorCode::format, "checkpoint checksum mismatch");
    }
    uint32_t version = r.u32();
    if (version != kVersion) {
        fail(ErrorCode::format, "unsupported checkpoint version " + std::to_string(version));
    }
    uint64_t count = r.u64();
    ParamMap map;
    std::string prev_name;
    for (uint64_t i = 0; i < count; ++i) {
        uint32_t name_len = r.u32();
        std::string name = r.str(name_len);
        if (i > 0 && !(prev_name < name)) {
            fail(ErrorCode::format, "checkpoint entries not in canonical order at '" + name + "'");
        }
        prev_name = name;
        uint32_t rank = r.u32();
        std::vector<int64_t> shape(rank);
        int64_t n = 1;
        for (uint32_t d = 0; d < rank; ++d) {
            shape[d] = static_cast<int64_t>(r.u64());
            if (shape[d] < 1) fail(ErrorCode::format, "checkpoint entry '" + name + "' has dim < 1");
            n *= shape[d];
        }
        std::vector<float> data(static_cast<size_t>(n));
        for (int64_t j = 0; j < n; ++j) data[static_cast<size_t>(j)] = r.f32();
        map.add(std::move(name), std::move(shape), std::move(data));
    }
    if (r.remaining() != 8) fail(ErrorCode::format, "trailing bytes after checkpoint entries");
    return map;
}

void save_checkpoint(const ParamMap& map, const std::filesystem::path& path) {
    binio::write_file(path, serialize_checkpoint(map));
}

ParamMap load_checkpoint(const std::filesystem::path& path) {
    return parse_checkpoint(binio::read_file(path));
}

}  // namespace stud
