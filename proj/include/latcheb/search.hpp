#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latcheb/admissibility.hpp"
#include "latcheb/lower_set.hpp"

namespace latcheb {

struct SearchBounds {
    std::int64_t n_min = 1;
    std::int64_t n_max = 1;
};

struct SearchResult {
    bool found = false;
    std::int64_t n = 0;
    std::vector<std::int64_t> z;
    Plan plan = Plan::A;
    std::string algorithm;
    double elapsed_ms = 0.0;
    std::optional<AliasTable> table;

    LatticeConfig config() const { return LatticeConfig(n, z); }
};

// Smallest prime >= m (trial division; desk-scale inputs).
inline std::int64_t smallest_prime_geq(std::int64_t m) {
    if (m < 2) throw std::invalid_argument("smallest_prime_geq: m must be >= 2");
    const auto is_prime = [](std::int64_t p) {
        if (p < 4) return p >= 2;
        if (p % 2 == 0) return false;
        for (std::int64_t q = 3; q * q <= p; q += 2)
            if (p % q == 0) return false;
        return true;
    };
    std::int64_t p = m;
    while (!is_prime(p)) ++p;
    return p;
}

// l*: the proven floor under each plan (0 in Lambda, so the indicator terms
// vanish). Plan 0 keeps the trivial floor of 2.
inline std::int64_t lower_bound(const LowerSet& lam, Plan plan) {
    const auto card = static_cast<std::int64_t>(lam.size());
    switch (plan) {
        case Plan::Zero: return 2;
        case Plan::A: return mirror_cardinality(lam);
        case Plan::B: return std::max<std::int64_t>(1, 2 * card - 1);
        case Plan::C: return std::max<std::int64_t>(1, 2 * card - 2);
    }
    return 1;
}

namespace detail {

inline std::int64_t max_abs_coord(const LowerSet& lam) {
    std::int64_t q = 0;
    for (const auto& k : lam.members())
        for (int v : k.c) q = std::max<std::int64_t>(q, v);
    return q;
}

// Smallest prime p with p > a and 2p > b.
inline std::int64_t prime_above(std::int64_t a, std::int64_t b) {
    const std::int64_t start = std::max<std::int64_t>({2, a + 1, b / 2 + 1});
    return smallest_prime_geq(start);
}

} // namespace detail

// p*: prime upper bounds. The set sums are enumerated exactly.
inline std::int64_t upper_bound(const LowerSet& lam, Plan plan) {
    const std::int64_t q = detail::max_abs_coord(lam);
    const IndexSet mirrored = mirror(lam);
    switch (plan) {
        case Plan::Zero:
            // p > ||Lambda||_inf and 2p > #(M \ {0}) + 2
            return detail::prime_above(q, static_cast<std::int64_t>(mirrored.size()) + 1);
        case Plan::A: {
            const IndexSet mm = sum_signed(mirrored, mirrored);
            return detail::prime_above(2 * q, static_cast<std::int64_t>(mm.size()) + 1);
        }
        case Plan::B: {
            std::vector<SignedMultiIndex> ids;
            for (const auto& k : lam.members()) ids.push_back(to_signed(k));
            const IndexSet lm = sum_signed(IndexSet(lam.dim(), std::move(ids)), mirrored);
            return detail::prime_above(std::max(2 * q, static_cast<std::int64_t>(lm.size())), 0);
        }
        case Plan::C:
            return detail::prime_above(
                std::max(2 * q, checked_mul(static_cast<std::int64_t>(lam.size()),
                                            static_cast<std::int64_t>(mirrored.size()))),
                0);
    }
    return 2;
}

inline SearchBounds default_bounds(const LowerSet& lam, Plan plan) {
    return {lower_bound(lam, plan), upper_bound(lam, plan)};
}

namespace detail {

// Direct-addressed membership over residues [0, n) with O(1) reset.
class StampSet {
public:
    void prepare(std::int64_t n) {
        if (static_cast<std::size_t>(n) > gen_.size()) {
            gen_.assign(static_cast<std::size_t>(n), 0);
            val_.resize(static_cast<std::size_t>(n));
            cur_ = 0;
        }
        if (++cur_ == 0) {
            std::fill(gen_.begin(), gen_.end(), 0);
            cur_ = 1;
        }
    }
    bool contains(std::int64_t r) const { return gen_[static_cast<std::size_t>(r)] == cur_; }
    std::int32_t value(std::int64_t r) const { return val_[static_cast<std::size_t>(r)]; }
    void put(std::int64_t r, std::int32_t v) {
        gen_[static_cast<std::size_t>(r)] = cur_;
        val_[static_cast<std::size_t>(r)] = v;
    }

private:
    std::vector<std::uint32_t> gen_;
    std::vector<std::int32_t> val_;
    std::uint32_t cur_ = 0;
};

// Flattened mirror of Lambda_[j] with parent links into level j-1, enabling
// incremental scalar products during the z scan.
struct OracleLevel {
    std::vector<std::int32_t> parent;
    std::vector<std::int32_t> last;
    std::vector<std::int32_t> base;        // which unsigned member this flip belongs to
    std::vector<std::uint8_t> is_identity; // flip == its unsigned member
    std::vector<std::size_t> identity_pos;
    std::ptrdiff_t zero_pos = -1;
    std::size_t size = 0;
};

class ExhaustiveOracle {
public:
    ExhaustiveOracle(const LowerSet& lam, Plan plan) : plan_(plan), dim_(lam.dim()) {
        levels_.resize(static_cast<std::size_t>(dim_));
        std::map<std::vector<int>, std::int32_t> prev_pos;
        for (int j = 1; j <= dim_; ++j) {
            const LowerSet proj = projection(lam, j);
            OracleLevel& lv = levels_[static_cast<std::size_t>(j - 1)];
            std::map<std::vector<int>, std::int32_t> cur_pos;
            std::int32_t member_id = 0;
            for (const auto& k : proj.members()) {
                for (const auto& flip : sign_flips(k)) {
                    if (j > 1) {
                        const std::vector<int> prefix(flip.c.begin(), flip.c.end() - 1);
                        lv.parent.push_back(prev_pos.at(prefix));
                    } else {
                        lv.parent.push_back(0);
                    }
                    lv.last.push_back(flip[j - 1]);
                    lv.base.push_back(member_id);
                    const bool ident = flip == to_signed(k);
                    lv.is_identity.push_back(ident ? 1 : 0);
                    if (ident) lv.identity_pos.push_back(lv.parent.size() - 1);
                    if (flip.is_zero()) lv.zero_pos = static_cast<std::ptrdiff_t>(lv.parent.size() - 1);
                    cur_pos.emplace(flip.c, static_cast<std::int32_t>(lv.parent.size() - 1));
                }
                ++member_id;
            }
            lv.size = lv.parent.size();
            prev_pos = std::move(cur_pos);
        }
        dots_.resize(static_cast<std::size_t>(dim_));
        for (int j = 0; j < dim_; ++j)
            dots_[static_cast<std::size_t>(j)].resize(levels_[static_cast<std::size_t>(j)].size);
    }

    // Lexicographically smallest admissible z in {0..n-1}^d, if any.
    std::optional<std::vector<std::int64_t>> find_z(std::int64_t n) {
        n_ = n;
        z_.assign(static_cast<std::size_t>(dim_), 0);
        if (descend(0)) return z_;
        return std::nullopt;
    }

private:
    bool descend(int level) {
        for (std::int64_t zeta = 0; zeta < n_; ++zeta) {
            if (!extend_and_check(level, zeta)) continue;
            z_[static_cast<std::size_t>(level)] = zeta;
            if (level == dim_ - 1 || descend(level + 1)) return true;
        }
        return false;
    }

    // Fills the level's scalar products for this zeta and applies the plan
    // condition in a single pass, bailing out at the first collision.
    bool extend_and_check(int level, std::int64_t zeta) {
        const OracleLevel& lv = levels_[static_cast<std::size_t>(level)];
        auto& dots = dots_[static_cast<std::size_t>(level)];
        const std::int64_t* prev =
            level > 0 ? dots_[static_cast<std::size_t>(level - 1)].data() : nullptr;
        const auto dot_of = [&](std::size_t i) {
            const std::int64_t base = prev ? prev[static_cast<std::size_t>(lv.parent[i])] : 0;
            return base + static_cast<std::int64_t>(lv.last[i]) * zeta;
        };
        const auto res_of = [&](std::int64_t v) {
            const std::int64_t r = v % n_;
            return r < 0 ? r + n_ : r;
        };

        switch (plan_) {
            case Plan::Zero:
                for (std::size_t i = 0; i < lv.size; ++i) {
                    dots[i] = dot_of(i);
                    if (res_of(dots[i]) == 0 && static_cast<std::ptrdiff_t>(i) != lv.zero_pos) return false;
                }
                return true;
            case Plan::A:
                stamp_.prepare(n_);
                for (std::size_t i = 0; i < lv.size; ++i) {
                    dots[i] = dot_of(i);
                    const std::int64_t r = res_of(dots[i]);
                    if (stamp_.contains(r)) return false;
                    stamp_.put(r, 0);
                }
                return true;
            case Plan::B:
                // a residue class holding an identity member must be a singleton
                stamp_.prepare(n_);    // any member at this residue
                stamp_id_.prepare(n_); // identity member at this residue
                for (std::size_t i = 0; i < lv.size; ++i) {
                    dots[i] = dot_of(i);
                    const std::int64_t r = res_of(dots[i]);
                    if (lv.is_identity[i]) {
                        if (stamp_.contains(r)) return false;
                        stamp_id_.put(r, 0);
                    } else if (stamp_id_.contains(r)) {
                        return false;
                    }
                    stamp_.put(r, 0);
                }
                return true;
            case Plan::C:
                // a residue class holding an identity member must stay within
                // that member's own sign-flip class
                stamp_.prepare(n_);    // payload: first base seen (kMixed once two differ)
                stamp_id_.prepare(n_); // payload: base of the identity member
                for (std::size_t i = 0; i < lv.size; ++i) {
                    dots[i] = dot_of(i);
                    const std::int64_t r = res_of(dots[i]);
                    const std::int32_t b = lv.base[i];
                    if (stamp_id_.contains(r) && stamp_id_.value(r) != b) return false;
                    if (lv.is_identity[i]) {
                        if (stamp_.contains(r) && stamp_.value(r) != b) return false;
                        stamp_id_.put(r, b);
                    }
                    if (!stamp_.contains(r)) stamp_.put(r, b);
                    else if (stamp_.value(r) != b) stamp_.put(r, kMixedBases);
                }
                return true;
        }
        return false;
    }

    static constexpr std::int32_t kMixedBases = -2;

    Plan plan_;
    int dim_;
    std::int64_t n_ = 1;
    std::vector<OracleLevel> levels_;
    std::vector<std::vector<std::int64_t>> dots_;
    std::vector<std::int64_t> z_;
    StampSet stamp_;
    StampSet stamp_id_;
};

inline double elapsed_ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace detail

// The optimality oracle: smallest n in [n_lower, n_upper] admitting some
// z in {0..n-1}^d, with the lexicographically smallest such z. Lower inputs
// use the dimensionwise prefix pruning justified by the projection chain.
inline SearchResult exhaustive_search(const LowerSet& lam, Plan plan,
                                      std::int64_t n_lower, std::int64_t n_upper) {
    if (n_lower > n_upper) throw std::invalid_argument("exhaustive_search: n_lower > n_upper");
    const auto t0 = std::chrono::steady_clock::now();
    detail::ExhaustiveOracle oracle(lam, plan);
    SearchResult result;
    result.plan = plan;
    result.algorithm = "exhaustive";
    for (std::int64_t n = std::max<std::int64_t>(1, n_lower); n <= n_upper; ++n) {
        if (auto z = oracle.find_z(n)) {
            result.found = true;
            result.n = n;
            result.z = std::move(*z);
            break;
        }
    }
    result.elapsed_ms = detail::elapsed_ms_since(t0);
    return result;
}

inline SearchResult exhaustive_search(const LowerSet& lam, Plan plan) {
    const auto b = default_bounds(lam, plan);
    return exhaustive_search(lam, plan, b.n_min, b.n_max);
}

// Oracle over an arbitrary finite subset of N_0^d: plain odometer scan, no
// prefix pruning (the projection chain needs downward closure).
inline SearchResult exhaustive_search(int dim, const std::vector<MultiIndex>& members, Plan plan,
                                      std::int64_t n_lower, std::int64_t n_upper) {
    if (n_lower > n_upper) throw std::invalid_argument("exhaustive_search: n_lower > n_upper");
    const auto t0 = std::chrono::steady_clock::now();
    SearchResult result;
    result.plan = plan;
    result.algorithm = "exhaustive";
    for (std::int64_t n = std::max<std::int64_t>(1, n_lower); n <= n_upper && !result.found; ++n) {
        std::vector<std::int64_t> z(static_cast<std::size_t>(dim), 0);
        while (true) {
            if (check_direct(dim, members, LatticeConfig(n, z), plan)) {
                result.found = true;
                result.n = n;
                result.z = z;
                break;
            }
            int j = dim - 1;
            while (j >= 0 && z[static_cast<std::size_t>(j)] == n - 1) { z[static_cast<std::size_t>(j)] = 0; --j; }
            if (j < 0) break;
            ++z[static_cast<std::size_t>(j)];
        }
    }
    result.elapsed_ms = detail::elapsed_ms_since(t0);
    return result;
}

// Dimensionwise generator construction: per dimension j, scan zeta in [0, n)
// against Lambda_[j] through the dictionary; exhaust the scan, grow n, rescan.
// Entering a dimension re-tests the current n (the n-1 / n+1 re-entry of the
// loop structure).
inline SearchResult cbc_search(const LowerSet& lam, Plan plan, std::int64_t n_min) {
    const auto t0 = std::chrono::steady_clock::now();
    const int d = lam.dim();
    std::vector<LowerSet> proj;
    proj.reserve(static_cast<std::size_t>(d));
    for (int j = 1; j <= d; ++j) proj.push_back(projection(lam, j));

    std::int64_t n = std::max<std::int64_t>(1, n_min);
    std::vector<std::int64_t> z;
    AliasTable table;
    for (int j = 1; j <= d; ++j) {
        --n;
        bool found = false;
        while (!found) {
            ++n;
            for (std::int64_t zeta = 0; zeta < n; ++zeta) {
                auto [ok, next] = table_extend(proj[static_cast<std::size_t>(j - 1)], table, n, z, zeta, plan);
                if (ok) {
                    table = std::move(next);
                    z.push_back(zeta);
                    found = true;
                    break;
                }
            }
        }
    }
    SearchResult result;
    result.found = true;
    result.n = n;
    result.z = std::move(z);
    result.plan = plan;
    result.algorithm = "cbc";
    result.table = std::move(table);
    result.elapsed_ms = detail::elapsed_ms_since(t0);
    return result;
}

inline SearchResult cbc_search(const LowerSet& lam, Plan plan) {
    return cbc_search(lam, plan, lower_bound(lam, plan));
}

inline constexpr std::int64_t kVectorSearchZetaCap = 1'000'000'000;

// Step 1 of the two-step heuristic: per dimension, the smallest zeta >= 0
// passing the modulo-free (exact integer) admissibility check.
inline std::pair<std::vector<std::int64_t>, AliasTable> vector_search(const LowerSet& lam, Plan plan) {
    const int d = lam.dim();
    std::vector<std::int64_t> z;
    AliasTable table;
    for (int j = 1; j <= d; ++j) {
        const LowerSet proj = projection(lam, j);
        bool found = false;
        for (std::int64_t zeta = 0; zeta <= kVectorSearchZetaCap; ++zeta) {
            auto [ok, next] = table_extend(proj, table, std::nullopt, z, zeta, plan);
            if (ok) {
                table = std::move(next);
                z.push_back(zeta);
                found = true;
                break;
            }
        }
        if (!found)
            throw std::runtime_error("vector_search: no admissible component below the 1e9 cap at dimension " +
                                     std::to_string(j));
    }
    return {std::move(z), std::move(table)};
}

// Largest |sigma(h) . z| stored in a dictionary; 2*max + 1 bounds the modulus search.
inline std::int64_t max_abs_product(const AliasTable& table) {
    std::int64_t m = 0;
    for (const auto& [key, entry] : table.entries) {
        m = std::max(m, entry.v_id < 0 ? -entry.v_id : entry.v_id);
        for (std::int64_t w : entry.v_other) m = std::max(m, w < 0 ? -w : w);
    }
    return m;
}

// Verifies one modulus against a finished dictionary (CheckModulus).
inline bool check_modulus(const AliasTable& table, std::int64_t n, Plan plan) {
    ResidueSets seen;
    for (const auto& [key, entry] : table.entries) {
        if (rejection_condition(plan, entry, seen, n, key.is_zero())) return false;
        seen.v.insert(residue(entry.v_id, n));
        for (std::int64_t w : entry.v_other) seen.vstar.insert(residue(w, n));
    }
    return true;
}

// Step 2: smallest n >= n_min (odd only, if requested) under which the stored
// products violate no plan condition. Termination is guaranteed at
// 2 max|h . z| + 1, where no aliasing is possible.
inline std::int64_t modulus_search(const AliasTable& table, std::int64_t n_min, Plan plan,
                                   bool odd_only = false) {
    std::int64_t n = std::max<std::int64_t>(1, n_min);
    if (odd_only && n % 2 == 0) ++n;
    while (!check_modulus(table, n, plan)) n += odd_only ? 2 : 1;
    return n;
}

inline SearchResult two_step_search(const LowerSet& lam, Plan plan, bool odd_only,
                                    std::int64_t n_min) {
    const auto t0 = std::chrono::steady_clock::now();
    auto [z, table] = vector_search(lam, plan);
    const std::int64_t n = modulus_search(table, n_min, plan, odd_only);
    SearchResult result;
    result.found = true;
    result.n = n;
    result.z = std::move(z);
    result.plan = plan;
    result.algorithm = "two-step";
    result.table = std::move(table);
    result.elapsed_ms = detail::elapsed_ms_since(t0);
    return result;
}

inline SearchResult two_step_search(const LowerSet& lam, Plan plan, bool odd_only = false) {
    return two_step_search(lam, plan, odd_only, lower_bound(lam, plan));
}

// ---- closed-form constructions ---------------------------------------------

// Block B_k: n = #M(B_k) = prod (2k_j + 1), z_i = prod_{j<i} (2k_j + 1).
inline LatticeConfig closed_form_block(const MultiIndex& k) {
    std::int64_t n = 1;
    std::vector<std::int64_t> z;
    z.reserve(static_cast<std::size_t>(k.dim()));
    for (int j = 0; j < k.dim(); ++j) {
        z.push_back(n);
        n = checked_mul(n, 2 * std::int64_t{k[j]} + 1);
    }
    return LatticeConfig(n, std::move(z));
}

// Isotropic simplex S_{1,k} in d = 2: n = #M = 2k^2 + 2k + 1, z = (1, 2k+1).
inline LatticeConfig closed_form_simplex2d(int k) {
    if (k < 0) throw std::invalid_argument("closed_form_simplex2d: k must be >= 0");
    const std::int64_t n = 2 * std::int64_t{k} * k + 2 * std::int64_t{k} + 1;
    return LatticeConfig(n, {1, 2 * std::int64_t{k} + 1});
}

// Same modulus with z = (k, k+1): the lattice whose tent/cosine image is the
// Padua point set.
inline LatticeConfig closed_form_padua(int k) {
    if (k < 0) throw std::invalid_argument("closed_form_padua: k must be >= 0");
    const std::int64_t n = 2 * std::int64_t{k} * k + 2 * std::int64_t{k} + 1;
    return LatticeConfig(n, {std::int64_t{k}, std::int64_t{k} + 1});
}

// Cross C_k in d = 2: n = #B_k + 1 = (k1+1)(k2+1) + 1, z = (1, k1+1).
inline LatticeConfig closed_form_cross2d(const MultiIndex& k) {
    if (k.dim() != 2) throw std::invalid_argument("closed_form_cross2d: k must be 2-dimensional");
    const std::int64_t n = checked_mul(std::int64_t{k[0]} + 1, std::int64_t{k[1]} + 1) + 1;
    return LatticeConfig(n, {1, std::int64_t{k[0]} + 1});
}

} // namespace latcheb
