#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace latcheb {

inline constexpr int kMaxDim = 16;
inline constexpr std::int64_t kMaxMirrorCard = 10'000'000;

// Point of N_0^d. Ordering is ascending lexicographic, which is the canonical
// member order used by every enumeration and serialization in this library.
struct MultiIndex {
    std::vector<int> c;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> coords) : c(std::move(coords)) {
        for (int v : c)
            if (v < 0) throw std::invalid_argument("MultiIndex: negative coordinate");
    }

    int dim() const { return static_cast<int>(c.size()); }
    int operator[](int j) const { return c[static_cast<std::size_t>(j)]; }
    bool is_zero() const { return std::all_of(c.begin(), c.end(), [](int v) { return v == 0; }); }

    auto operator<=>(const MultiIndex&) const = default;
};

// Point of Z^d.
struct SignedMultiIndex {
    std::vector<int> c;

    SignedMultiIndex() = default;
    explicit SignedMultiIndex(std::vector<int> coords) : c(std::move(coords)) {}

    int dim() const { return static_cast<int>(c.size()); }
    int operator[](int j) const { return c[static_cast<std::size_t>(j)]; }
    bool is_zero() const { return std::all_of(c.begin(), c.end(), [](int v) { return v == 0; }); }

    auto operator<=>(const SignedMultiIndex&) const = default;
};

inline SignedMultiIndex to_signed(const MultiIndex& k) { return SignedMultiIndex(k.c); }

inline MultiIndex abs(const SignedMultiIndex& h) {
    std::vector<int> a(h.c.size());
    for (std::size_t j = 0; j < h.c.size(); ++j) a[j] = h.c[j] < 0 ? -h.c[j] : h.c[j];
    return MultiIndex(std::move(a));
}

// |k|_0, the number of nonzero coordinates.
inline int support_size(const MultiIndex& k) {
    return static_cast<int>(std::count_if(k.c.begin(), k.c.end(), [](int v) { return v != 0; }));
}
inline int support_size(const SignedMultiIndex& h) {
    return static_cast<int>(std::count_if(h.c.begin(), h.c.end(), [](int v) { return v != 0; }));
}

// {sigma(k) : sigma in S_k}: all 2^{|k|_0} component-wise sign flips, with the
// sign fixed to + on zero coordinates. Sorted ascending lexicographically.
inline std::vector<SignedMultiIndex> sign_flips(const MultiIndex& k) {
    std::vector<int> support;
    for (int j = 0; j < k.dim(); ++j)
        if (k[j] != 0) support.push_back(j);
    if (support.size() > 30) throw std::length_error("sign_flips: support too large");
    const std::size_t count = std::size_t{1} << support.size();
    std::vector<SignedMultiIndex> out;
    out.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        std::vector<int> v = k.c;
        for (std::size_t b = 0; b < support.size(); ++b)
            if (mask & (std::size_t{1} << b)) v[static_cast<std::size_t>(support[b])] = -v[static_cast<std::size_t>(support[b])];
        out.emplace_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Component-wise 2|h_j| - [h_j < 0]; injective on Z^d and maps M(Lambda) into
// Lambda + Lambda for every lower Lambda.
inline MultiIndex embed_to_sum(const SignedMultiIndex& h) {
    std::vector<int> v(h.c.size());
    for (std::size_t j = 0; j < h.c.size(); ++j) {
        const int a = h.c[j] < 0 ? -h.c[j] : h.c[j];
        v[j] = 2 * a - (h.c[j] < 0 ? 1 : 0);
    }
    return MultiIndex(std::move(v));
}

// Finite subset of Z^d; members sorted ascending lexicographically, no duplicates.
struct IndexSet {
    int dim = 0;
    std::vector<SignedMultiIndex> members;

    IndexSet() = default;
    IndexSet(int d, std::vector<SignedMultiIndex> m) : dim(d), members(std::move(m)) {
        for (const auto& h : members)
            if (h.dim() != dim) throw std::invalid_argument("IndexSet: dimension mismatch among members");
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }

    std::size_t size() const { return members.size(); }
    bool contains(const SignedMultiIndex& h) const {
        return std::binary_search(members.begin(), members.end(), h);
    }
};

} // namespace latcheb
