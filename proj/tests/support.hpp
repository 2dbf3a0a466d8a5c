#pragma once

// Shared test helpers: seeded random generators for lower sets and lattice
// configurations, the exhaustive d=2 lower-set family, and slow
// definition-level reference checkers kept independent of the library's
// implementation paths.

#include "latcheb/latcheb.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace testsupport {

using namespace latcheb;

// Grows a random lower set from {0} by repeatedly attaching k + e_j whose
// predecessors are all present.
inline LowerSet random_lower_set(std::mt19937_64& rng, int dim, int max_card) {
    std::vector<MultiIndex> members = {MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0))};
    const int target = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_card));
    for (int attempt = 0; attempt < 50 * max_card && static_cast<int>(members.size()) < target; ++attempt) {
        const MultiIndex& seed = members[rng() % members.size()];
        MultiIndex up = seed;
        ++up.c[rng() % static_cast<std::size_t>(dim)];
        if (std::find(members.begin(), members.end(), up) != members.end()) continue;
        bool closed = true;
        for (int j = 0; j < dim && closed; ++j) {
            if (up[j] == 0) continue;
            MultiIndex down = up;
            --down.c[static_cast<std::size_t>(j)];
            closed = std::find(members.begin(), members.end(), down) != members.end();
        }
        if (closed) members.push_back(std::move(up));
    }
    return LowerSet(dim, std::move(members));
}

inline LatticeConfig random_config(std::mt19937_64& rng, int dim, std::int64_t n_max) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n_max));
    std::vector<std::int64_t> z(static_cast<std::size_t>(dim));
    for (auto& v : z) v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
    return LatticeConfig(n, std::move(z));
}

// All lower sets in d=2 with cardinality <= max_card: staircases with weakly
// decreasing column heights.
inline std::vector<LowerSet> all_lower_sets_2d(int max_card) {
    std::vector<LowerSet> out;
    std::vector<int> heights;
    const auto emit = [&]() {
        std::vector<MultiIndex> members;
        for (int i = 0; i < static_cast<int>(heights.size()); ++i)
            for (int j = 0; j < heights[static_cast<std::size_t>(i)]; ++j)
                members.push_back(MultiIndex({i, j}));
        out.emplace_back(2, std::move(members));
    };
    const auto recurse = [&](auto&& self, int bound, int remaining) -> void {
        if (!heights.empty()) emit();
        for (int h = 1; h <= std::min(bound, remaining); ++h) {
            heights.push_back(h);
            self(self, h, remaining - h);
            heights.pop_back();
        }
    };
    recurse(recurse, max_card, max_card);
    return out;
}

// Definition-level admissibility: literal quantifier sweep over sigma, h, h'.
// Deliberately naive; the library must agree with this on every input.
inline bool reference_admissible(const LowerSet& lam, const LatticeConfig& cfg, Plan plan) {
    const auto r = [&](std::int64_t x) { return residue(x, cfg.n); };
    if (plan == Plan::Zero || plan == Plan::A) {
        const IndexSet m = mirror(lam);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (plan == Plan::Zero) {
                if (!m.members[i].is_zero() && r(dot(m.members[i], cfg.z)) == 0) return false;
                continue;
            }
            for (std::size_t j = i + 1; j < m.size(); ++j)
                if (r(dot(m.members[i], cfg.z)) == r(dot(m.members[j], cfg.z))) return false;
        }
        return true;
    }
    for (const auto& h : lam.members())
        for (const auto& flip : sign_flips(h))
            for (const auto& hp : lam.members()) {
                const bool excluded = (plan == Plan::B) ? flip == to_signed(hp) : h == hp;
                if (excluded) continue;
                if (r(dot(flip, cfg.z)) == r(dot(to_signed(hp), cfg.z))) return false;
            }
    return true;
}

// Brute-force n* via the definition checker: the reference for oracle tests.
inline std::pair<std::int64_t, std::vector<std::int64_t>> reference_optimum(const LowerSet& lam,
                                                                            Plan plan,
                                                                            std::int64_t n_hi) {
    for (std::int64_t n = 1; n <= n_hi; ++n) {
        std::vector<std::int64_t> z(static_cast<std::size_t>(lam.dim()), 0);
        while (true) {
            if (reference_admissible(lam, LatticeConfig(n, z), plan)) return {n, z};
            int j = lam.dim() - 1;
            while (j >= 0 && z[static_cast<std::size_t>(j)] == n - 1) {
                z[static_cast<std::size_t>(j)] = 0;
                --j;
            }
            if (j < 0) break;
            ++z[static_cast<std::size_t>(j)];
        }
    }
    return {0, {}};
}

} // namespace testsupport
