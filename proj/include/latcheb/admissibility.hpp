#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "latcheb/checked.hpp"
#include "latcheb/lower_set.hpp"
#include "latcheb/multi_index.hpp"

namespace latcheb {

// The four admissibility regimes: exact integration (Zero), full mirrored
// non-aliasing (A), bi-orthonormal non-aliasing (B), and bi-orthonormal with
// the aliasing-count correction c_k (C).
enum class Plan { Zero, A, B, C };

inline const char* plan_name(Plan p) {
    switch (p) {
        case Plan::Zero: return "0";
        case Plan::A: return "A";
        case Plan::B: return "B";
        case Plan::C: return "C";
    }
    return "?";
}

inline Plan parse_plan(const std::string& s) {
    if (s == "0" || s == "zero" || s == "Zero") return Plan::Zero;
    if (s == "A" || s == "a") return Plan::A;
    if (s == "B" || s == "b") return Plan::B;
    if (s == "C" || s == "c") return Plan::C;
    throw std::invalid_argument("unknown plan '" + s + "'");
}

// The pair (n, z): modulus and generating vector of a rank-1 lattice.
struct LatticeConfig {
    std::int64_t n = 1;
    std::vector<std::int64_t> z;

    LatticeConfig() = default;
    LatticeConfig(std::int64_t modulus, std::vector<std::int64_t> generator)
        : n(modulus), z(std::move(generator)) {
        if (n < 1) throw std::invalid_argument("LatticeConfig: n must be >= 1");
    }

    int dim() const { return static_cast<int>(z.size()); }
};

// h . z with checked 64-bit arithmetic.
inline std::int64_t dot(const SignedMultiIndex& h, const std::vector<std::int64_t>& z) {
    if (static_cast<std::size_t>(h.dim()) != z.size())
        throw std::invalid_argument("dot: dimension mismatch");
    std::int64_t acc = 0;
    for (int j = 0; j < h.dim(); ++j)
        acc = checked_add(acc, checked_mul(h[j], z[static_cast<std::size_t>(j)]));
    return acc;
}

// Canonical non-negative remainder in [0, n).
inline std::int64_t residue(std::int64_t x, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("residue: n must be >= 1");
    const std::int64_t r = x % n;
    return r < 0 ? r + n : r;
}

// The first aliasing found by a failed check: sigma(h) . z == h' . z (mod n).
struct Violation {
    SignedMultiIndex lhs; // sigma(h)
    SignedMultiIndex rhs; // h'; the zero index for Plan 0 failures
};

namespace detail {

// Core direct checker. `identities` lists Lambda itself (as signed vectors);
// for Plans B/C the sign-flip classes are regenerated per member.
inline bool admissible_members(int dim, const std::vector<SignedMultiIndex>& identities,
                               const LatticeConfig& cfg, Plan plan, Violation* why) {
    if (cfg.dim() != dim) throw std::invalid_argument("check_direct: dimension mismatch");
    const std::int64_t n = cfg.n;

    if (plan == Plan::Zero || plan == Plan::A) {
        std::unordered_map<std::int64_t, SignedMultiIndex> seen;
        for (const auto& id : identities) {
            for (const auto& flip : sign_flips(abs(id))) {
                // For signed inputs the flip classes of distinct members can
                // overlap; dedupe through the map below for Plan A.
                const std::int64_t r = residue(dot(flip, cfg.z), n);
                if (plan == Plan::Zero) {
                    if (!flip.is_zero() && r == 0) {
                        if (why) *why = {flip, SignedMultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0))};
                        return false;
                    }
                } else {
                    auto [it, inserted] = seen.emplace(r, flip);
                    if (!inserted && it->second != flip) {
                        if (why) *why = {flip, it->second};
                        return false;
                    }
                }
            }
        }
        return true;
    }

    // Plans B and C: forbidden collisions are sigma(h) . z == h' . z with
    // h' ranging over Lambda and sigma(h) != h' (B) resp. h != h' (C).
    std::unordered_map<std::int64_t, std::vector<std::size_t>> identity_buckets;
    std::vector<std::int64_t> identity_residue(identities.size());
    for (std::size_t i = 0; i < identities.size(); ++i) {
        identity_residue[i] = residue(dot(identities[i], cfg.z), n);
        identity_buckets[identity_residue[i]].push_back(i);
    }
    for (std::size_t i = 0; i < identities.size(); ++i) {
        for (const auto& flip : sign_flips(abs(identities[i]))) {
            const std::int64_t r = residue(dot(flip, cfg.z), n);
            const auto it = identity_buckets.find(r);
            if (it == identity_buckets.end()) continue;
            for (std::size_t other : it->second) {
                const bool collide = (plan == Plan::B) ? (flip != identities[other])
                                                       : (i != other);
                if (collide) {
                    if (why) *why = {flip, identities[other]};
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace detail

// Plan admissibility straight from the definitions. For Plans 0/A the mirrored
// set is enumerated internally; Plans B/C work on Lambda with its sign-flip
// classes. `why` (optional) receives the first violating pair.
inline bool check_direct(const LowerSet& lam, const LatticeConfig& cfg, Plan plan,
                         Violation* why = nullptr) {
    std::vector<SignedMultiIndex> ids;
    ids.reserve(lam.size());
    for (const auto& k : lam.members()) ids.push_back(to_signed(k));
    return detail::admissible_members(lam.dim(), ids, cfg, plan, why);
}

// Same check over an arbitrary finite subset of N_0^d (no lower validation).
inline bool check_direct(int dim, const std::vector<MultiIndex>& members,
                         const LatticeConfig& cfg, Plan plan, Violation* why = nullptr) {
    std::vector<SignedMultiIndex> ids;
    ids.reserve(members.size());
    for (const auto& k : members) ids.push_back(to_signed(k));
    return detail::admissible_members(dim, ids, cfg, plan, why);
}

// Same check over an already-signed set (e.g. a mirrored union).
inline bool check_direct(const IndexSet& set, const LatticeConfig& cfg, Plan plan,
                         Violation* why = nullptr) {
    return detail::admissible_members(set.dim, set.members, cfg, plan, why);
}

// c_k = #{sigma in S_k : sigma(k) . z == k . z (mod n)}; at least 1 (identity).
inline std::int64_t aliasing_count_ck(const MultiIndex& k, const LatticeConfig& cfg) {
    const std::int64_t r_id = residue(dot(to_signed(k), cfg.z), cfg.n);
    std::int64_t count = 0;
    for (const auto& flip : sign_flips(k))
        if (residue(dot(flip, cfg.z), cfg.n) == r_id) ++count;
    return count;
}

// ---- incremental admissibility (the dictionary mechanism) -----------------

// Per-key record: the identity product h . z and the raw (unreduced) products
// of the non-identity sign flips. Raw storage lets one table serve many
// candidate moduli; reduction happens at check time.
struct AliasEntry {
    std::int64_t v_id = 0;
    std::vector<std::int64_t> v_other; // sorted multiset, size 2^{|h|_0} - 1
};

// D_j(Lambda): keys are exactly Lambda_[j] in ascending lexicographic order.
struct AliasTable {
    int dim = 0;
    std::map<MultiIndex, AliasEntry> entries;
};

// Accumulating membership sets of the dictionary algorithm: V holds identity
// products, V* the sign-flipped ones, both already reduced.
struct ResidueSets {
    std::unordered_set<std::int64_t> v;
    std::unordered_set<std::int64_t> vstar;
};

namespace detail {

inline std::int64_t reduce_or_raw(std::int64_t x, const std::optional<std::int64_t>& n) {
    return n.has_value() ? residue(x, *n) : x;
}

} // namespace detail

// The per-key inadmissibility test of the dictionary algorithm. `n` empty
// means exact-integer comparison. The key-0 exemption applies to Plan 0 only
// (its condition targets nonzero indices).
inline bool rejection_condition(Plan plan, const AliasEntry& entry, const ResidueSets& seen,
                                const std::optional<std::int64_t>& n, bool zero_key) {
    const std::int64_t vid = detail::reduce_or_raw(entry.v_id, n);
    std::vector<std::int64_t> other;
    other.reserve(entry.v_other.size());
    for (std::int64_t w : entry.v_other) other.push_back(detail::reduce_or_raw(w, n));

    if (plan == Plan::Zero) {
        if (!zero_key && vid == 0) return true;
        return std::find(other.begin(), other.end(), 0) != other.end();
    }

    // Plan C: v_id in V u V*, or V_other meeting V.
    if (seen.v.count(vid) || seen.vstar.count(vid)) return true;
    for (std::int64_t w : other)
        if (seen.v.count(w)) return true;
    if (plan == Plan::C) return false;

    // Plan B additionally forbids v_id inside its own V_other.
    if (std::find(other.begin(), other.end(), vid) != other.end()) return true;
    if (plan == Plan::B) return false;

    // Plan A: any repetition at all, including inside V_other and against V*.
    for (std::int64_t w : other)
        if (seen.vstar.count(w)) return true;
    std::sort(other.begin(), other.end());
    return std::adjacent_find(other.begin(), other.end()) != other.end();
}

// Extends the dictionary from dimension j-1 to j and decides admissibility of
// (n, [z, zeta]) for Lambda_[j]. With `n` empty all comparisons are exact
// integer equality (the two-step mode). Keys are processed in canonical order;
// returns {false, {}} as soon as the plan condition fires.
inline std::pair<bool, AliasTable> table_extend(const LowerSet& lambda_j, const AliasTable& prev,
                                                const std::optional<std::int64_t>& n,
                                                const std::vector<std::int64_t>& z,
                                                std::int64_t zeta, Plan plan) {
    const int j = lambda_j.dim();
    if (static_cast<int>(z.size()) != j - 1)
        throw std::invalid_argument("table_extend: z must have dimension j-1");
    if (j > 1 && prev.dim != j - 1)
        throw std::invalid_argument("table_extend: prev table has wrong dimension");
    if (n.has_value() && *n < 1) throw std::invalid_argument("table_extend: n must be >= 1");

    AliasTable out;
    out.dim = j;
    ResidueSets seen;

    for (const auto& key : lambda_j.members()) {
        const int last = key[j - 1];
        AliasEntry entry;
        if (j == 1) {
            entry = AliasEntry{}; // extraction convention (0, {}) for the empty prefix
        } else {
            const MultiIndex prefix(std::vector<int>(key.c.begin(), key.c.end() - 1));
            const auto it = prev.entries.find(prefix);
            if (it == prev.entries.end())
                throw std::invalid_argument("table_extend: prev table missing projected key");
            entry = it->second;
        }
        if (last != 0) {
            const std::int64_t step = checked_mul(last, zeta);
            const std::int64_t old_vid = entry.v_id;
            std::vector<std::int64_t> grown;
            grown.reserve(2 * entry.v_other.size() + 1);
            grown.push_back(checked_sub(old_vid, step));
            for (std::int64_t w : entry.v_other) {
                grown.push_back(checked_add(w, step));
                grown.push_back(checked_sub(w, step));
            }
            std::sort(grown.begin(), grown.end());
            entry.v_id = checked_add(old_vid, step);
            entry.v_other = std::move(grown);
        }
        if (rejection_condition(plan, entry, seen, n, key.is_zero()))
            return {false, AliasTable{}};
        seen.v.insert(detail::reduce_or_raw(entry.v_id, n));
        for (std::int64_t w : entry.v_other) seen.vstar.insert(detail::reduce_or_raw(w, n));
        out.entries.emplace(key, std::move(entry));
    }
    return {true, std::move(out)};
}

// ---- reduced Plan-A checks for simplex-type sets ---------------------------

enum class SimplexReduction {
    MaximalShell, // collisions against the mirrored maximal elements only
    NormBand,     // collisions among pairs with close weighted norms only
};

namespace detail {

inline std::int64_t weighted_norm(const SignedMultiIndex& h, const std::vector<std::int64_t>& w) {
    std::int64_t acc = 0;
    for (int j = 0; j < h.dim(); ++j) {
        const std::int64_t a = h[j] < 0 ? -h[j] : h[j];
        acc = checked_add(acc, checked_mul(a, w[static_cast<std::size_t>(j)]));
    }
    return acc;
}

} // namespace detail

// Plan-A admissibility for Lambda = S_{w,u} evaluated on the reduced collision
// set instead of all pairs of M(Lambda). Agrees with check_direct(., Plan A).
inline bool simplex_reduced_check_planA(const LowerSet& lam, const Weights& weights,
                                        const LatticeConfig& cfg, SimplexReduction mode) {
    if (weights.dim() != lam.dim()) throw std::invalid_argument("simplex_reduced_check_planA: dimension mismatch");
    const IndexSet mirrored = mirror(lam);
    const auto sw = detail::scale(weights, /*with_u=*/false);

    if (mode == SimplexReduction::MaximalShell) {
        const std::vector<MultiIndex> shell = maximal_elements(lam);
        std::unordered_map<std::int64_t, std::vector<SignedMultiIndex>> shell_buckets;
        for (const auto& k : shell)
            for (const auto& flip : sign_flips(k))
                shell_buckets[residue(dot(flip, cfg.z), cfg.n)].push_back(flip);
        for (const auto& h : mirrored.members) {
            const auto it = shell_buckets.find(residue(dot(h, cfg.z), cfg.n));
            if (it == shell_buckets.end()) continue;
            for (const auto& hp : it->second)
                if (hp != h) return false;
        }
        return true;
    }

    // NormBand: only pairs with | ||h'||_w - ||h||_w | <= alpha_{h,h'} can
    // witness inadmissibility, where alpha is the largest weight on the
    // union of supports.
    std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets;
    std::vector<std::int64_t> norms(mirrored.size());
    for (std::size_t i = 0; i < mirrored.size(); ++i) {
        norms[i] = detail::weighted_norm(mirrored.members[i], sw.w);
        buckets[residue(dot(mirrored.members[i], cfg.z), cfg.n)].push_back(i);
    }
    for (const auto& [r, idxs] : buckets) {
        for (std::size_t a = 0; a < idxs.size(); ++a) {
            for (std::size_t b = a + 1; b < idxs.size(); ++b) {
                const auto& ha = mirrored.members[idxs[a]];
                const auto& hb = mirrored.members[idxs[b]];
                std::int64_t alpha = 0;
                for (int j = 0; j < lam.dim(); ++j)
                    if (ha[j] != 0 || hb[j] != 0) alpha = std::max(alpha, sw.w[static_cast<std::size_t>(j)]);
                const std::int64_t diff = norms[idxs[a]] > norms[idxs[b]]
                                              ? norms[idxs[a]] - norms[idxs[b]]
                                              : norms[idxs[b]] - norms[idxs[a]];
                if (diff <= alpha) return false;
            }
        }
    }
    return true;
}

} // namespace latcheb
