#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace latcheb;
using testsupport::all_lower_sets_2d;
using testsupport::random_lower_set;

namespace {

MultiIndex mi(std::vector<int> c) { return MultiIndex(std::move(c)); }
SignedMultiIndex si(std::vector<int> c) { return SignedMultiIndex(std::move(c)); }

// brute-force hyperbolic cross membership, independent of make_hyperbolic
std::set<MultiIndex> hyperbolic_by_filter(int d, std::int64_t N) {
    std::set<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(d), 0);
    const auto rec = [&](auto&& self, int j) -> void {
        if (j == d) {
            std::int64_t prod = 1;
            for (int v : cur) prod *= v + 1;
            if (prod <= N) out.insert(MultiIndex(cur));
            return;
        }
        for (int v = 0; v <= N; ++v) {
            cur[static_cast<std::size_t>(j)] = v;
            self(self, j + 1);
        }
        cur[static_cast<std::size_t>(j)] = 0;
    };
    rec(rec, 0);
    return out;
}

} // namespace

TEST_CASE("is_lower") {
    CHECK(is_lower({mi({0, 0}), mi({1, 0}), mi({0, 1})}));
    CHECK_FALSE(is_lower({mi({0, 0}), mi({1, 1})}));
    CHECK(is_lower({mi({0, 0}), mi({1, 0}), mi({2, 0}), mi({0, 1}), mi({1, 1})}));
    CHECK_THROWS_AS(is_lower({mi({0, 0}), mi({0})}), std::invalid_argument);
    CHECK_THROWS_AS(LowerSet(2, {mi({0, 0}), mi({1, 1})}), std::invalid_argument);
}

TEST_CASE("sign_flips") {
    CHECK(sign_flips(mi({0, 0})) == std::vector<SignedMultiIndex>{si({0, 0})});
    CHECK(sign_flips(mi({1, 0})) == std::vector<SignedMultiIndex>{si({-1, 0}), si({1, 0})});
    const auto f = sign_flips(mi({2, 3}));
    CHECK(f == std::vector<SignedMultiIndex>{si({-2, -3}), si({-2, 3}), si({2, -3}), si({2, 3})});
}

TEST_CASE("mirror of standard sets") {
    const auto b11 = mirror(make_block(mi({1, 1})));
    CHECK(b11.size() == 9);
    for (int a : {-1, 0, 1})
        for (int b : {-1, 0, 1}) CHECK(b11.contains(si({a, b})));

    const auto s11 = mirror(make_simplex_iso(2, 1));
    CHECK(s11.size() == 5);
    CHECK(s11.contains(si({0, 0})));
    CHECK(s11.contains(si({-1, 0})));
    CHECK(s11.contains(si({0, -1})));

    const LowerSet trivial(1, {mi({0})});
    CHECK(mirror(trivial).members == std::vector<SignedMultiIndex>{si({0})});
}

TEST_CASE("mirror cardinality identity") {
    std::mt19937_64 rng(7);
    for (const auto& lam : all_lower_sets_2d(8))
        CHECK(static_cast<std::int64_t>(mirror(lam).size()) == mirror_cardinality(lam));
    for (int t = 0; t < 20; ++t) {
        const auto lam = random_lower_set(rng, 3, 10);
        CHECK(static_cast<std::int64_t>(mirror(lam).size()) == mirror_cardinality(lam));
    }
}

TEST_CASE("sum_sets") {
    CHECK(sum_sets(make_block(mi({1, 1})), make_block(mi({1, 1}))).members() ==
          make_block(mi({2, 2})).members());
    CHECK(sum_sets(make_simplex_iso(2, 1), make_simplex_iso(2, 2)).members() ==
          make_simplex_iso(2, 3).members());

    std::mt19937_64 rng(11);
    const LowerSet zero(2, {mi({0, 0})});
    for (int t = 0; t < 10; ++t) {
        const auto lam = random_lower_set(rng, 2, 8);
        CHECK(sum_sets(lam, zero).members() == lam.members());
    }
    CHECK_THROWS_AS(sum_sets(make_block(mi({1})), make_block(mi({1, 1}))), std::invalid_argument);
}

TEST_CASE("mirror distributes over sums") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 15; ++t) {
        const auto a = random_lower_set(rng, 2, 7);
        const auto b = random_lower_set(rng, 2, 7);
        CHECK(mirror(sum_sets(a, b)).members == sum_signed(mirror(a), mirror(b)).members);
    }
}

TEST_CASE("maximal elements") {
    CHECK(maximal_elements(make_block(mi({2, 3}))) == std::vector<MultiIndex>{mi({2, 3})});
    CHECK(maximal_elements(make_simplex_iso(2, 2)) ==
          std::vector<MultiIndex>{mi({0, 2}), mi({1, 1}), mi({2, 0})});
    const LowerSet zero(2, {mi({0, 0})});
    CHECK(maximal_elements(zero) == std::vector<MultiIndex>{mi({0, 0})});
}

TEST_CASE("union of blocks over maximal elements reconstructs the set") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
        const auto lam = random_lower_set(rng, 3, 9);
        std::set<MultiIndex> rebuilt;
        for (const auto& k : maximal_elements(lam)) {
            const auto block = make_block(k);
            for (const auto& h : block.members()) rebuilt.insert(h);
        }
        CHECK(std::vector<MultiIndex>(rebuilt.begin(), rebuilt.end()) == lam.members());
    }
}

TEST_CASE("extremal elements") {
    CHECK(extremal_elements(make_block(mi({1, 1}))) ==
          std::vector<MultiIndex>{mi({0, 0}), mi({0, 1}), mi({1, 0}), mi({1, 1})});
    CHECK(extremal_elements(make_simplex_iso(2, 2)) ==
          std::vector<MultiIndex>{mi({0, 0}), mi({0, 2}), mi({2, 0})});
    CHECK(extremal_elements(make_cross(mi({2, 2}))) ==
          std::vector<MultiIndex>{mi({0, 0}), mi({0, 2}), mi({2, 0})});
}

TEST_CASE("extremal elements of isotropic simplexes") {
    for (int d = 1; d <= 4; ++d)
        for (int k = 1; k <= 4; ++k) {
            if (d == 4 && k == 4) continue; // keep runtime small
            std::set<MultiIndex> expected = {MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0))};
            for (int j = 0; j < d; ++j) {
                std::vector<int> c(static_cast<std::size_t>(d), 0);
                c[static_cast<std::size_t>(j)] = k;
                expected.insert(mi(c));
            }
            const auto got = extremal_elements(make_simplex_iso(d, k));
            CHECK(got == std::vector<MultiIndex>(expected.begin(), expected.end()));
        }
}

TEST_CASE("extremal two-support band filter for anisotropic simplexes") {
    // elements of E with >= 2 nonzero coordinates satisfy u - delta < <w,h> <= u
    const std::vector<Rational> w = {parse_rational("0.9"), parse_rational("0.6"),
                                     parse_rational("0.5")};
    const Rational u = parse_rational("2.3");
    const auto lam = make_simplex(Weights(w, u));
    const Rational delta = w[0] - w[2]; // max - min
    for (const auto& h : extremal_elements(lam)) {
        if (support_size(h) < 2) continue;
        Rational norm(0);
        for (int j = 0; j < 3; ++j) norm = norm + w[static_cast<std::size_t>(j)] * Rational(h[j]);
        CHECK(norm <= u);
        CHECK(u - delta < norm);
    }
}

TEST_CASE("projection") {
    CHECK(projection(make_simplex_iso(3, 2), 1).members() ==
          std::vector<MultiIndex>{mi({0}), mi({1}), mi({2})});
    CHECK(projection(make_block(mi({2, 3})), 1).members() ==
          std::vector<MultiIndex>{mi({0}), mi({1}), mi({2})});
    const auto lam = make_hyperbolic(3, 4);
    CHECK(projection(lam, 3).members() == lam.members());
    CHECK_THROWS_AS(projection(lam, 0), std::out_of_range);

    // chain: Lambda_[j] x {0} inside Lambda_[j+1]
    for (int j = 1; j < 3; ++j) {
        const auto pj = projection(lam, j);
        const auto pj1 = projection(lam, j + 1);
        for (const auto& k : pj.members()) {
            std::vector<int> ext = k.c;
            ext.push_back(0);
            CHECK(pj1.contains(mi(ext)));
        }
    }
}

TEST_CASE("families") {
    CHECK(make_block(mi({2, 1})).size() == 6);
    CHECK(make_cross(mi({1, 1})).members() ==
          std::vector<MultiIndex>{mi({0, 0}), mi({0, 1}), mi({1, 0})});

    const auto hyp = make_hyperbolic(2, 3);
    CHECK(hyp.members() == std::vector<MultiIndex>{mi({0, 0}), mi({0, 1}), mi({0, 2}), mi({1, 0}),
                                                   mi({2, 0})});
    const auto brute = hyperbolic_by_filter(2, 3);
    CHECK(hyp.members() == std::vector<MultiIndex>(brute.begin(), brute.end()));

    for (int d = 2; d <= 3; ++d)
        for (int N : {1, 4, 9}) {
            const auto got = make_hyperbolic(d, N);
            const auto ref = hyperbolic_by_filter(d, N);
            CHECK(got.members() == std::vector<MultiIndex>(ref.begin(), ref.end()));
        }
}

TEST_CASE("simplex membership is exact at the boundary") {
    // 3 * 0.1 + 0.7 == 1.0 exactly; float arithmetic would wobble here
    const auto lam = make_simplex(Weights({parse_rational("0.1"), parse_rational("0.7")},
                                          parse_rational("1.0")));
    CHECK(lam.contains(mi({3, 1})));
    CHECK_FALSE(lam.contains(mi({4, 1})));
    CHECK(lam.contains(mi({10, 0})));
}

TEST_CASE("simplex by cardinality") {
    const std::vector<Rational> w = {parse_rational("0.9"), parse_rational("0.8"),
                                     parse_rational("0.7")};
    CHECK(make_simplex_by_cardinality(w, 1).members() == std::vector<MultiIndex>{mi({0, 0, 0})});
    CHECK(make_simplex_by_cardinality(w, 4).members() ==
          std::vector<MultiIndex>{mi({0, 0, 0}), mi({0, 0, 1}), mi({0, 1, 0}), mi({1, 0, 0})});

    // Any selection of the 40 smallest keys contains the 39 indices with
    // <h,w> < 3.8 plus one of the two tied at 3.8; the ascending-lex choice is
    // (0,3,2), giving mirrored cardinality 147 (exhaustively recounted below).
    const auto lam40 = make_simplex_by_cardinality(w, 40);
    CHECK(lam40.size() == 40);
    CHECK(lam40.contains(mi({0, 3, 2})));
    CHECK_FALSE(lam40.contains(mi({1, 1, 3})));
    CHECK(mirror_cardinality(lam40) == 147);
    std::int64_t recount = 0;
    for (const auto& k : lam40.members()) recount += std::int64_t{1} << support_size(k);
    CHECK(recount == 147);

    // prefix property: the first N members are a prefix of the first N+1
    const auto lam41 = make_simplex_by_cardinality(w, 41);
    CHECK(std::includes(lam41.members().begin(), lam41.members().end(), lam40.members().begin(),
                        lam40.members().end()));
}

TEST_CASE("mirror simplex cardinality recurrence") {
    CHECK(mirror_simplex_cardinality(1, 3) == 7);
    CHECK(mirror_simplex_cardinality(2, 2) == 13);
    CHECK(mirror_simplex_cardinality(6, 1) == 13); // 2d + 1
    for (int d = 1; d <= 4; ++d)
        for (int k = 0; k <= 4; ++k)
            CHECK(mirror_simplex_cardinality(d, k) == mirror_cardinality(make_simplex_iso(d, k)));
}

TEST_CASE("embed_to_sum") {
    CHECK(embed_to_sum(si({0, 0})) == mi({0, 0}));
    CHECK(embed_to_sum(si({-1, 2})) == mi({1, 4}));
    CHECK(embed_to_sum(si({-2, -1})) == mi({3, 1}));

    std::mt19937_64 rng(23);
    for (int t = 0; t < 10; ++t) {
        const auto lam = random_lower_set(rng, 2, 8);
        const auto sum = sum_sets(lam, lam);
        std::set<MultiIndex> images;
        const auto mirrored = mirror(lam);
        for (const auto& h : mirrored.members) {
            const auto img = embed_to_sum(h);
            CHECK(images.insert(img).second); // injective
            CHECK(sum.contains(img));         // lands inside Lambda + Lambda
        }
    }
}

TEST_CASE("mirror upper bounds") {
    std::mt19937_64 rng(29);
    const double exponent = std::log(3.0) / std::log(2.0);
    for (int t = 0; t < 25; ++t) {
        const auto lam = random_lower_set(rng, 1 + static_cast<int>(t % 3), 10);
        const double m = static_cast<double>(mirror_cardinality(lam));
        const double c = static_cast<double>(lam.size());
        CHECK(m <= std::pow(2.0, lam.dim()) * c);
        CHECK(std::log(m) <= exponent * std::log(c) + 1e-9);
    }
}

TEST_CASE("simplex sum sandwich") {
    const std::vector<Rational> w = {parse_rational("0.9"), parse_rational("0.7")};
    const Rational u1 = parse_rational("1.8"), u2 = parse_rational("2.3");
    const auto s1 = make_simplex(Weights(w, u1));
    const auto s2 = make_simplex(Weights(w, u2));
    const auto sum = sum_sets(s1, s2);
    const auto inner = make_simplex(Weights(w, u1 + u2 - w[0])); // max w = 0.9
    const auto outer = make_simplex(Weights(w, u1 + u2));
    for (const auto& k : inner.members()) CHECK(sum.contains(k));
    for (const auto& k : sum.members()) CHECK(outer.contains(k));
}

TEST_CASE("mirror cardinality vs sum cardinality, equality only on blocks") {
    for (const auto& lam : all_lower_sets_2d(8)) {
        const auto m = mirror_cardinality(lam);
        const auto s = static_cast<std::int64_t>(sum_sets(lam, lam).size());
        CHECK(m <= s);
        const auto maxima = maximal_elements(lam);
        const bool is_block = maxima.size() == 1;
        CHECK((m == s) == is_block);
    }
    std::mt19937_64 rng(31);
    for (int t = 0; t < 25; ++t) {
        const auto lam = random_lower_set(rng, 3, 10);
        const auto m = mirror_cardinality(lam);
        const auto s = static_cast<std::int64_t>(sum_sets(lam, lam).size());
        CHECK(m <= s);
        CHECK((m == s) == (maximal_elements(lam).size() == 1));
    }
}

TEST_CASE("caps") {
    CHECK_THROWS_AS(LowerSet(17, {MultiIndex(std::vector<int>(17, 0))}), std::invalid_argument);
    // #M(B_k) = 3^16 for k = ones(16): past the 1e7 mirrored-point cap
    const auto big = make_block(MultiIndex(std::vector<int>(16, 1)));
    CHECK_THROWS_AS(mirror(big), std::length_error);
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("0.9") == Rational(9, 10));
    CHECK(parse_rational("2") == Rational(2));
    CHECK(parse_rational("12.25") == Rational(49, 4));
    CHECK(parse_rational("9/10") == Rational(9, 10));
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Weights({Rational(0)}), std::invalid_argument);
    CHECK_THROWS_AS(Weights({Rational(1)}, Rational(0)), std::invalid_argument);
}
