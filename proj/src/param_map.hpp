#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace stud {

struct ParamEntry {
    std::string name;
    std::vector<int64_t> shape;
    std::vector<float> data;

    int64_t numel() const {
        int64_t n = 1;
        for (int64_t d : shape) n *= d;
        return n;
    }
};

// A model's parameters as an ordered set of named float32 tensors. Entries
// are kept in lexicographic name order, which fixes the flattened-vector
// embedding used by norms, distances and merging. Immutable use after
// construction is the expected pattern; arithmetic returns new maps.
class ParamMap {
public:
    ParamMap() = default;

    // Inserts keeping lexicographic order. Rejects duplicate or empty names
    // and shape/data length mismatches.
    void add(std::string name, std::vector<int64_t> shape, std::vector<float> data);

    size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const ParamEntry& entry(size_t i) const { return entries_[i]; }
    ParamEntry& entry(size_t i) { return entries_[i]; }

    const ParamEntry* find(std::string_view name) const;
    ParamEntry* find(std::string_view name);
    const ParamEntry& at(std::string_view name) const;

    int64_t total_elements() const;

    // Same names and shapes, in the same order. On mismatch, if `why` is
    // non-null it receives a description naming the first offending entry.
    bool aligned_with(const ParamMap& other, std::string* why = nullptr) const;

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

private:
    std::vector<ParamEntry> entries_;
};

void require_aligned(const ParamMap& a, const ParamMap& b, const char* op);

// Entrywise a*x + y.
ParamMap axpy(float a, const ParamMap& x, const ParamMap& y);
// y += a*x.
void axpy_inplace(float a, const ParamMap& x, ParamMap& y);
ParamMap scaled(const ParamMap& x, float c);
ParamMap subtract(const ParamMap& x, const ParamMap& y);
ParamMap zeros_like(const ParamMap& x);

// Euclidean norm over the canonical flattening; accumulates in double.
double l2_norm(const ParamMap& x);
double distance(const ParamMap& x, const ParamMap& y);

bool bitwise_equal(const ParamMap& a, const ParamMap& b);

// FNV-1a over the canonical serialized bytes (same value the checkpoint
// trailer stores). Used to tie feature banks to the model that produced them.
uint64_t content_checksum(const ParamMap& map);

}  // namespace stud
