#include "param_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "checkpoint.hpp"

namespace stud {

void ParamMap::add(std::string name, std::vector<int64_t> shape, std::vector<float> data) {
    if (name.empty()) fail(ErrorCode::invalid_argument, "parameter name must be non-empty");
    int64_t n = 1;
    for (int64_t d : shape) {
        if (d < 1) fail(ErrorCode::invalid_argument, "parameter '" + name + "' has dim < 1");
        n *= d;
    }
    if (n != static_cast<int64_t>(data.size())) {
        fail(ErrorCode::invalid_argument,
             "parameter '" + name + "': shape product " + std::to_string(n) +
                 " != data length " + std::to_string(data.size()));
    }
    auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                               [](const ParamEntry& e, const std::string& n_) { return e.name < n_; });
    if (it != entries_.end() && it->name == name) {
        fail(ErrorCode::invalid_argument, "duplicate parameter name '" + name + "'");
    }
    entries_.insert(it, ParamEntry{std::move(name), std::move(shape), std::move(data)});
}

const ParamEntry* ParamMap::find(std::string_view name) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                               [](const ParamEntry& e, std::string_view n) { return e.name < n; });
    if (it == entries_.end() || it->name != name) return nullptr;
    return &*it;
}

ParamEntry* ParamMap::find(std::string_view name) {
    return const_cast<ParamEntry*>(static_cast<const ParamMap*>(this)->find(name));
}

const ParamEntry& ParamMap::at(std::string_view name) const {
    const ParamEntry* e = find(name);
    if (!e) fail(ErrorCode::invalid_argument, "no parameter named '" + std::string(name) + "'");
    return *e;
}

int64_t ParamMap::total_elements() const {
    int64_t n = 0;
    for (const auto& e : entries_) n += e.numel();
    return n;
}

bool ParamMap::aligned_with(const ParamMap& other, std::string* why) const {
    size_t n = std::min(entries_.size(), other.entries_.size());
    for (size_t i = 0; i < n; ++i) {
        const auto& a = entries_[i];
        const auto& b = other.entries_[i];
        if (a.name != b.name) {
            if (why) *why = "entry " + std::to_string(i) + ": name '" + a.name + "' vs '" + b.name + "'";
            return false;
        }
        if (a.shape != b.shape) {
            if (why) *why = "entry '" + a.name + "': shape mismatch";
            return false;
        }
    }
    if (entries_.size() != other.entries_.size()) {
        const auto& longer = entries_.size() > other.entries_.size() ? *this : other;
        if (why) *why = "entry count mismatch; first extra entry '" + longer.entries_[n].name + "'";
        return false;
    }
    return true;
}

void require_aligned(const ParamMap& a, const ParamMap& b, const char* op) {
    std::string why;
    if (!a.aligned_with(b, &why)) {
        fail(ErrorCode::alignment, std::string(op) + ": parameter maps not aligned: " + why);
    }
}

ParamMap axpy(float a, const ParamMap& x, const ParamMap& y) {
    require_aligned(x, y, "axpy");
    ParamMap out = y;
    for (size_t i = 0; i < out.size(); ++i) {
        const auto& xs = x.entry(i).data;
        auto& ys = out.entry(i).data;
        for (size_t j = 0; j < ys.size(); ++j) ys[j] += a * xs[j];
    }
    return out;
}

void axpy_inplace(float a, const ParamMap& x, ParamMap& y) {
    require_aligned(x, y, "axpy");
    for (size_t i = 0; i < y.size(); ++i) {
        const auto& xs = x.entry(i).data;
        auto& ys = y.entry(i).data;
        for (size_t j = 0; j < ys.size(); ++j) ys[j] += a * xs[j];
    }
}

ParamMap scaled(const ParamMap& x, float c) {
    ParamMap out = x;
    for (size_t i = 0; i < out.size(); ++i) {
        for (auto& v : out.entry(i).data) v *= c;
    }
    return out;
}

ParamMap subtract(const ParamMap& x, const ParamMap& y) {
    require_aligned(x, y, "subtract");
    ParamMap out = x;
    for (size_t i = 0; i < out.size(); ++i) {
        const auto& ys = y.entry(i).data;
        auto& xs = out.entry(i).data;
        for (size_t j = 0; j < xs.size(); ++j) xs[j] -= ys[j];
    }
    return out;
}

ParamMap zeros_like(const ParamMap& x) {
    ParamMap out = x;
    for (size_t i = 0; i < out.size(); ++i) {
        std::fill(out.entry(i).data.begin(), out.entry(i).data.end(), 0.0f);
    }
    return out;
}

double l2_norm(const ParamMap& x) {
    double acc = 0.0;
    for (const auto& e : x) {
        for (float v : e.data) acc += static_cast<double>(v) * static_cast<double>(v);
    }
    return std::sqrt(acc);
}

double distance(const ParamMap& x, const ParamMap& y) {
    require_aligned(x, y, "distance");
    double acc = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const auto& xs = x.entry(i).data;
        const auto& ys = y.entry(i).data;
        for (size_t j = 0; j < xs.size(); ++j) {
            double d = static_cast<double>(xs[j]) - static_cast<double>(ys[j]);
            acc += d * d;
        }
    }
    return std::sqrt(acc);
}

bool bitwise_equal(const ParamMap& a, const ParamMap& b) {
    if (!a.aligned_with(b)) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        const auto& xs = a.entry(i).data;
        const auto& ys = b.entry(i).data;
        if (std::memcmp(xs.data(), ys.data(), xs.size() * sizeof(float)) != 0) return false;
    }
    return true;
}

uint64_t content_checksum(const ParamMap& map) {
    return checkpoint_checksum(map);
}

}  // namespace stud
