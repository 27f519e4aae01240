#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "param_map.hpp"

namespace stud {

// Checkpoint byte layout (all integers little-endian):
//
//   offset  size  field
//   0       8     magic "STUDCKPT"
//   8       4     u32 format version (currently 1)
//   12      8     u64 entry count
//   --- per entry, in lexicographic name order ---
//           4     u32 name length L
//           L     name bytes (UTF-8)
//           4     u32 rank R
//           8*R   u64 dims
//           4*n   f32 data, n = product of dims
//   --- trailer ---
//           8     u64 FNV-1a checksum of bytes [8, end-8)
//
// Writing is canonical: the same ParamMap always produces identical bytes.
// Readers reject bad magic, unknown versions, out-of-order entries,
// truncation and checksum mismatches, each with a distinct message.

void save_checkpoint(const ParamMap& map, const std::filesystem::path& path);
ParamMap load_checkpoint(const std::filesystem::path& path);

std::vector<uint8_t> serialize_checkpoint(const ParamMap& map);
ParamMap parse_checkpoint(const std::vector<uint8_t>& bytes);

// The checksum the trailer would carry; doubles as a content hash.
uint64_t checkpoint_checksum(const ParamMap& map);

}  // namespace stud
