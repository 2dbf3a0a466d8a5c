#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "latcheb/checked.hpp"
#include "latcheb/multi_index.hpp"
#include "latcheb/rational.hpp"

namespace latcheb {

// Positive weights w_1..w_d and radius u of the anisotropic simplex S_{w,u}.
// Exact rationals, so membership <w,h> <= u never depends on float rounding.
struct Weights {
    std::vector<Rational> w;
    Rational u{1};

    Weights() = default;
    Weights(std::vector<Rational> weights, Rational radius) : w(std::move(weights)), u(radius) {
        validate();
        if (!u.positive()) throw std::invalid_argument("Weights: u must be positive");
    }
    explicit Weights(std::vector<Rational> weights) : w(std::move(weights)) { validate(); }

    int dim() const { return static_cast<int>(w.size()); }

private:
    void validate() const {
        if (w.empty() || static_cast<int>(w.size()) > kMaxDim)
            throw std::invalid_argument("Weights: dimension out of range");
        for (const auto& wj : w)
            if (!wj.positive()) throw std::invalid_argument("Weights: weights must be positive");
    }
};

namespace detail {

// Weights scaled to a common denominator: membership becomes sum h_j*W_j <= U
// in plain 64-bit integers.
struct ScaledWeights {
    std::vector<std::int64_t> w;
    std::int64_t u = 0;
};

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    return checked_mul(a / std::gcd(a, b), b);
}

inline ScaledWeights scale(const Weights& weights, bool with_u = true) {
    std::int64_t den = with_u ? weights.u.den : 1;
    for (const auto& wj : weights.w) den = lcm64(den, wj.den);
    ScaledWeights s;
    s.w.reserve(weights.w.size());
    for (const auto& wj : weights.w) s.w.push_back(checked_mul(wj.num, den / wj.den));
    if (with_u) s.u = checked_mul(weights.u.num, den / weights.u.den);
    return s;
}

} // namespace detail

// true iff the set is downward closed: k in s and k_j >= 1 imply k - e_j in s.
inline bool is_lower(const std::vector<MultiIndex>& members) {
    if (members.empty()) return false;
    const int d = members.front().dim();
    for (const auto& k : members)
        if (k.dim() != d) throw std::invalid_argument("is_lower: dimension mismatch among members");
    std::vector<MultiIndex> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& k : sorted) {
        for (int j = 0; j < d; ++j) {
            if (k[j] == 0) continue;
            MultiIndex below = k;
            --below.c[static_cast<std::size_t>(j)];
            if (!std::binary_search(sorted.begin(), sorted.end(), below)) return false;
        }
    }
    return true;
}

// A validated finite lower (downward closed) set in N_0^d. Always contains 0.
class LowerSet {
public:
    LowerSet(int dim, std::vector<MultiIndex> members) : dim_(dim), members_(std::move(members)) {
        if (dim_ < 1 || dim_ > kMaxDim) throw std::invalid_argument("LowerSet: dimension out of range");
        for (const auto& k : members_)
            if (k.dim() != dim_) throw std::invalid_argument("LowerSet: dimension mismatch among members");
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        if (!is_lower(members_)) throw std::invalid_argument("LowerSet: set is not downward closed");
    }

    int dim() const { return dim_; }
    std::size_t size() const { return members_.size(); }
    const std::vector<MultiIndex>& members() const { return members_; }
    bool contains(const MultiIndex& k) const {
        return std::binary_search(members_.begin(), members_.end(), k);
    }

private:
    int dim_;
    std::vector<MultiIndex> members_;
};

// #M(Lambda) without materializing the mirror.
inline std::int64_t mirror_cardinality(const LowerSet& lam) {
    std::int64_t total = 0;
    for (const auto& k : lam.members())
        total = checked_add(total, std::int64_t{1} << support_size(k));
    return total;
}

// M(Lambda): all sign flips of all members, as a subset of Z^d.
inline IndexSet mirror(const LowerSet& lam) {
    if (mirror_cardinality(lam) > kMaxMirrorCard)
        throw std::length_error("mirror: mirrored cardinality cap (1e7) exceeded");
    std::vector<SignedMultiIndex> out;
    for (const auto& k : lam.members())
        for (auto& flip : sign_flips(k)) out.push_back(std::move(flip));
    return IndexSet(lam.dim(), std::move(out));
}

// Lambda + Lambda' = {h + k}; a lower set whenever both operands are.
inline LowerSet sum_sets(const LowerSet& a, const LowerSet& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("sum_sets: dimension mismatch");
    std::set<MultiIndex> out;
    for (const auto& h : a.members())
        for (const auto& k : b.members()) {
            std::vector<int> v(static_cast<std::size_t>(a.dim()));
            for (int j = 0; j < a.dim(); ++j) v[static_cast<std::size_t>(j)] = h[j] + k[j];
            out.insert(MultiIndex(std::move(v)));
        }
    return LowerSet(a.dim(), std::vector<MultiIndex>(out.begin(), out.end()));
}

// Element-wise sum of two signed sets.
inline IndexSet sum_signed(const IndexSet& a, const IndexSet& b) {
    if (a.dim != b.dim) throw std::invalid_argument("sum_signed: dimension mismatch");
    std::set<SignedMultiIndex> out;
    for (const auto& h : a.members)
        for (const auto& k : b.members) {
            std::vector<int> v(static_cast<std::size_t>(a.dim));
            for (int j = 0; j < a.dim; ++j) v[static_cast<std::size_t>(j)] = h[j] + k[j];
            out.insert(SignedMultiIndex(std::move(v)));
        }
    return IndexSet(a.dim, std::vector<SignedMultiIndex>(out.begin(), out.end()));
}

// E_<=(Lambda): members k with k + e_i outside Lambda for every direction i.
inline std::vector<MultiIndex> maximal_elements(const LowerSet& lam) {
    std::vector<MultiIndex> out;
    for (const auto& k : lam.members()) {
        bool maximal = true;
        for (int j = 0; j < lam.dim() && maximal; ++j) {
            MultiIndex up = k;
            ++up.c[static_cast<std::size_t>(j)];
            if (lam.contains(up)) maximal = false;
        }
        if (maximal) out.push_back(k);
    }
    return out;
}

// E(Lambda): members that are not the midpoint of two distinct members.
// Pairwise midpoint scan, with the shortcut that k is not extremal whenever
// k + e_j stays in Lambda for some j in supp(k).
inline std::vector<MultiIndex> extremal_elements(const LowerSet& lam) {
    std::vector<MultiIndex> out;
    for (const auto& k : lam.members()) {
        bool skip = false;
        for (int j = 0; j < lam.dim() && !skip; ++j) {
            if (k[j] == 0) continue;
            MultiIndex up = k;
            ++up.c[static_cast<std::size_t>(j)];
            if (lam.contains(up)) skip = true;
        }
        if (skip) continue;
        bool extremal = true;
        for (const auto& h : lam.members()) {
            if (h == k) continue;
            std::vector<int> other(static_cast<std::size_t>(lam.dim()));
            bool valid = true;
            for (int j = 0; j < lam.dim(); ++j) {
                other[static_cast<std::size_t>(j)] = 2 * k[j] - h[j];
                if (other[static_cast<std::size_t>(j)] < 0) { valid = false; break; }
            }
            if (valid && lam.contains(MultiIndex(other))) { extremal = false; break; }
        }
        if (extremal) out.push_back(k);
    }
    return out;
}

// Lambda_[j] = {(k_1..k_j) : k in Lambda}, a lower set in dimension j.
inline LowerSet projection(const LowerSet& lam, int j) {
    if (j < 1 || j > lam.dim()) throw std::out_of_range("projection: j out of range");
    std::set<MultiIndex> out;
    for (const auto& k : lam.members())
        out.insert(MultiIndex(std::vector<int>(k.c.begin(), k.c.begin() + j)));
    return LowerSet(j, std::vector<MultiIndex>(out.begin(), out.end()));
}

// ---- standard families ---------------------------------------------------

// B_k = {h : h <= k componentwise}.
inline LowerSet make_block(const MultiIndex& k) {
    const int d = k.dim();
    std::int64_t card = 1;
    for (int j = 0; j < d; ++j) card = checked_mul(card, k[j] + 1);
    if (card > kMaxMirrorCard) throw std::length_error("make_block: cardinality cap exceeded");
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(card));
    std::vector<int> cur(static_cast<std::size_t>(d), 0);
    while (true) {
        out.emplace_back(cur);
        int j = d - 1;
        while (j >= 0 && cur[static_cast<std::size_t>(j)] == k[j]) { cur[static_cast<std::size_t>(j)] = 0; --j; }
        if (j < 0) break;
        ++cur[static_cast<std::size_t>(j)];
    }
    return LowerSet(d, std::move(out));
}

// C_k = {h_j e_j : 0 <= h_j <= k_j}, the axis cross.
inline LowerSet make_cross(const MultiIndex& k) {
    const int d = k.dim();
    std::vector<MultiIndex> out;
    out.emplace_back(std::vector<int>(static_cast<std::size_t>(d), 0));
    for (int j = 0; j < d; ++j)
        for (int v = 1; v <= k[j]; ++v) {
            std::vector<int> c(static_cast<std::size_t>(d), 0);
            c[static_cast<std::size_t>(j)] = v;
            out.emplace_back(std::move(c));
        }
    return LowerSet(d, std::move(out));
}

namespace detail {

inline void enumerate_simplex(const ScaledWeights& sw, int j, std::int64_t budget,
                              std::vector<int>& cur, std::vector<MultiIndex>& out) {
    const int d = static_cast<int>(sw.w.size());
    if (j == d) {
        out.emplace_back(cur);
        if (static_cast<std::int64_t>(out.size()) > kMaxMirrorCard)
            throw std::length_error("make_simplex: cardinality cap exceeded");
        return;
    }
    for (int v = 0; checked_mul(v, sw.w[static_cast<std::size_t>(j)]) <= budget; ++v) {
        cur[static_cast<std::size_t>(j)] = v;
        enumerate_simplex(sw, j + 1, budget - v * sw.w[static_cast<std::size_t>(j)], cur, out);
    }
    cur[static_cast<std::size_t>(j)] = 0;
}

} // namespace detail

// S_{w,u} = {h : sum w_j h_j <= u}, membership decided in exact arithmetic.
inline LowerSet make_simplex(const Weights& weights) {
    const auto sw = detail::scale(weights);
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(weights.dim()), 0);
    detail::enumerate_simplex(sw, 0, sw.u, cur, out);
    return LowerSet(weights.dim(), std::move(out));
}

// S_{1,k}, the isotropic simplex of total degree k. k = 0 yields {0}.
inline LowerSet make_simplex_iso(int d, int k) {
    if (k < 0) throw std::invalid_argument("make_simplex_iso: k must be non-negative");
    if (k == 0)
        return LowerSet(d, {MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0))});
    return make_simplex(Weights(std::vector<Rational>(static_cast<std::size_t>(d), Rational(1)),
                                Rational(k)));
}

// Hyperbolic cross {k : prod (1 + k_j) <= N}.
inline LowerSet make_hyperbolic(int d, std::int64_t N) {
    if (N < 1) throw std::invalid_argument("make_hyperbolic: N must be >= 1");
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("make_hyperbolic: dimension out of range");
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(d), 0);
    const auto recurse = [&](auto&& self, int j, std::int64_t budget) -> void {
        if (j == d) {
            out.emplace_back(cur);
            if (static_cast<std::int64_t>(out.size()) > kMaxMirrorCard)
                throw std::length_error("make_hyperbolic: cardinality cap exceeded");
            return;
        }
        for (int v = 0; v + 1 <= budget; ++v) {
            cur[static_cast<std::size_t>(j)] = v;
            self(self, j + 1, budget / (v + 1));
        }
        cur[static_cast<std::size_t>(j)] = 0;
    };
    recurse(recurse, 0, N);
    return LowerSet(d, std::move(out));
}

// The N multi-indices with smallest <h,w>, ties broken by ascending
// lexicographic order. Best-first expansion from 0 along +e_j edges.
inline LowerSet make_simplex_by_cardinality(const std::vector<Rational>& w, std::int64_t N) {
    if (N < 1) throw std::invalid_argument("make_simplex_by_cardinality: N must be >= 1");
    Weights weights(w);
    const auto sw = detail::scale(weights, /*with_u=*/false);
    const int d = weights.dim();

    using Entry = std::pair<std::int64_t, std::vector<int>>; // (key, coords)
    const auto cmp = [](const Entry& a, const Entry& b) {
        if (a.first != b.first) return a.first > b.first; // min-heap on key
        return a.second > b.second;                       // then ascending lex
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> frontier(cmp);
    std::set<std::vector<int>> seen;

    std::vector<int> zero(static_cast<std::size_t>(d), 0);
    frontier.emplace(0, zero);
    seen.insert(zero);

    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(N));
    while (static_cast<std::int64_t>(out.size()) < N) {
        auto [key, coords] = frontier.top();
        frontier.pop();
        out.emplace_back(coords);
        for (int j = 0; j < d; ++j) {
            std::vector<int> next = coords;
            ++next[static_cast<std::size_t>(j)];
            if (seen.insert(next).second)
                frontier.emplace(checked_add(key, sw.w[static_cast<std::size_t>(j)]), std::move(next));
        }
    }
    return LowerSet(d, std::move(out));
}

// #M(S_{1,k}) in dimension d via the recurrence
//   #M(S_k^1) = 2k+1,   #M(S_k^{d+1}) = #M(S_k^d) + 2 sum_{l<k} #M(S_l^d),
// without enumerating the set.
inline std::int64_t mirror_simplex_cardinality(int d, int k) {
    if (d < 1 || k < 0) throw std::invalid_argument("mirror_simplex_cardinality: bad arguments");
    std::vector<std::int64_t> row(static_cast<std::size_t>(k) + 1);
    for (int l = 0; l <= k; ++l) row[static_cast<std::size_t>(l)] = 2 * std::int64_t{l} + 1;
    for (int dd = 2; dd <= d; ++dd) {
        std::vector<std::int64_t> next(static_cast<std::size_t>(k) + 1);
        std::int64_t prefix = 0; // sum_{l=0}^{cur-1} row[l]
        for (int l = 0; l <= k; ++l) {
            next[static_cast<std::size_t>(l)] = checked_add(row[static_cast<std::size_t>(l)], checked_mul(2, prefix));
            prefix = checked_add(prefix, row[static_cast<std::size_t>(l)]);
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(k)];
}

} // namespace latcheb
