#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace latcheb;
using testsupport::random_lower_set;

namespace {

MultiIndex mi(std::vector<int> c) { return MultiIndex(std::move(c)); }
SignedMultiIndex si(std::vector<int> c) { return SignedMultiIndex(std::move(c)); }

// reference Chebyshev evaluation through the three-term recurrence
double cheb_recurrence(int k, double x) {
    double prev = 1.0, cur = x;
    if (k == 0) return prev;
    for (int i = 1; i < k; ++i) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

ChebSeries random_series(std::mt19937_64& rng, const LowerSet& lam) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    ChebSeries f;
    f.dim = lam.dim();
    for (const auto& k : lam.members()) f.coeff[k] = unit(rng);
    return f;
}

double max_coeff_error(const ChebSeries& got, const ChebSeries& want) {
    double m = 0.0;
    for (const auto& [k, c] : want.coeff) m = std::max(m, std::abs(got.coeff.at(k) - c));
    return m;
}

} // namespace

TEST_CASE("nodes") {
    const Rank1Lattice two(LatticeConfig(2, {1}));
    const auto pts = nodes(two);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].coord(0) == 0.0);
    CHECK(pts[1].coord(0) == 0.5);

    const Rank1Lattice five(LatticeConfig(5, {1, 3}));
    const auto t2 = five.node(2);
    CHECK(t2.coord(0) == Catch::Approx(0.4));
    CHECK(t2.coord(1) == Catch::Approx(0.2)); // 2*3 mod 5 = 1

    const Rank1Lattice one(LatticeConfig(1, {7, 9}));
    const auto only = nodes(one);
    REQUIRE(only.size() == 1);
    CHECK(only[0].num == std::vector<std::int64_t>{0, 0});
}

TEST_CASE("node symmetry is exact in the rational representation") {
    for (const auto cfg : {LatticeConfig(7, {1, 3}), LatticeConfig(12, {5, 9}), LatticeConfig(9, {2, 6})}) {
        const Rank1Lattice lat(cfg);
        for (std::int64_t i = 1; i < cfg.n; ++i) {
            const auto a = lat.node(i);
            const auto b = lat.node(cfg.n - i);
            for (int j = 0; j < lat.dim(); ++j)
                CHECK(residue(a.num[static_cast<std::size_t>(j)] + b.num[static_cast<std::size_t>(j)], cfg.n) == 0);
        }
    }
}

TEST_CASE("tent") {
    CHECK(tent(0.0) == 0.0);
    CHECK(tent(0.5) == 1.0);
    CHECK(tent(0.25) == 0.5);
    CHECK(tent(1.0) == 0.0);
    CHECK_THROWS_AS(tent(1.5), std::domain_error);
}

TEST_CASE("character_sum examples") {
    const LatticeConfig cfg(5, {1, 3});
    CHECK(std::abs(character_sum(si({0, 0}), cfg) - 1.0) < 1e-12);
    CHECK(std::abs(character_sum(si({1, 0}), cfg)) < 1e-12);
    CHECK(std::abs(character_sum(si({5, 0}), cfg) - 1.0) < 1e-12);
}

TEST_CASE("character_sum equals the aliasing indicator") {
    for (std::int64_t n = 1; n <= 50; ++n) {
        for (const std::vector<std::int64_t> z : {std::vector<std::int64_t>{1, 3},
                                                  std::vector<std::int64_t>{4, 9}}) {
            const LatticeConfig cfg(n, z);
            for (int a = -5; a <= 5; ++a)
                for (int b = -5; b <= 5; ++b) {
                    const SignedMultiIndex h({a, b});
                    const double expect = residue(dot(h, cfg.z), n) == 0 ? 1.0 : 0.0;
                    CHECK(std::abs(character_sum(h, cfg) - expect) <= 1e-12);
                }
        }
    }
}

TEST_CASE("eval_cheb_basis") {
    CHECK(eval_cheb_basis(mi({0, 0}), {0.3, -0.7}) == 1.0);
    CHECK(eval_cheb_basis(mi({1}), {0.5}) == Catch::Approx(std::numbers::sqrt2 * 0.5));
    CHECK(eval_cheb_basis(mi({2, 0}), {1.0, -1.0}) == Catch::Approx(std::numbers::sqrt2));
    CHECK_THROWS_AS(eval_cheb_basis(mi({1}), {1.1}), std::domain_error);
    CHECK_THROWS_AS(eval_cheb_basis(mi({1, 1}), {0.5}), std::invalid_argument);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const int k = static_cast<int>(rng() % 9);
        const double x = unit(rng);
        const double via_cos = eval_cheb_basis(mi({k}), {x});
        const double via_rec = (k == 0 ? 1.0 : std::numbers::sqrt2) * cheb_recurrence(k, x);
        CHECK(via_cos == Catch::Approx(via_rec).margin(1e-10));
    }
}

TEST_CASE("cubature basics") {
    const Rank1Lattice lat(LatticeConfig(7, {1, 3}));
    CHECK(cubature(lat, [](const std::vector<double>&) { return 1.0; }) == Catch::Approx(1.0));

    // matches the real part of the character sum for exponential integrands
    for (const auto h : {si({1, 2}), si({0, 3}), si({7, 0})}) {
        const double via_cub = cubature(lat, [&](const std::vector<double>& t) {
            return std::cos(2.0 * std::numbers::pi * (h[0] * t[0] + h[1] * t[1]));
        });
        CHECK(via_cub == Catch::Approx(character_sum(h, lat.cfg).real()).margin(1e-12));
    }
}

TEST_CASE("half-point cubature agrees on symmetric integrands") {
    for (const auto cfg : {LatticeConfig(9, {1, 4}), LatticeConfig(10, {1, 3})}) {
        const Rank1Lattice lat(cfg);
        const auto g = [](const std::vector<double>& t) {
            // g(t) = g(1 - t): a cosine-space integrand
            return std::cos(2.0 * std::numbers::pi * (2.0 * t[0] + t[1])) +
                   0.5 * std::cos(2.0 * std::numbers::pi * t[0]);
        };
        CHECK(cubature_halved(lat, g) == Catch::Approx(cubature(lat, g)).margin(1e-12));
    }
}

TEST_CASE("exact integration under plan 0") {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 15; ++t) {
        const int d = 1 + static_cast<int>(rng() % 2);
        const auto lam = random_lower_set(rng, d, 6);
        const auto res = exhaustive_search(lam, Plan::Zero);
        REQUIRE(res.found);
        const Rank1Lattice lat(res.config());
        const auto f = random_series(rng, lam);
        const double integral = cubature(lat, [&](const std::vector<double>& tt) {
            std::vector<double> x(tt.size());
            for (std::size_t j = 0; j < tt.size(); ++j) x[j] = std::cos(2.0 * std::numbers::pi * tt[j]);
            return f(x);
        });
        CHECK(std::abs(integral - f.coeff.at(MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0)))) <=
              1e-10);
    }
}

TEST_CASE("reconstruct the constant basis function") {
    const auto lam = make_simplex_iso(2, 1);
    const Rank1Lattice lat(LatticeConfig(5, {1, 3}));
    ChebSeries one;
    one.dim = 2;
    one.coeff[mi({0, 0})] = 1.0;
    const auto rec = reconstruct(lat, to_function(one), lam, ReconstructionMode::A);
    for (const auto& [k, c] : rec.coeff)
        CHECK(std::abs(c - (k.is_zero() ? 1.0 : 0.0)) <= 1e-10);
}

TEST_CASE("exact recovery on an admissible lattice") {
    std::mt19937_64 rng(41);
    const auto lam = make_simplex_iso(2, 1);
    const Rank1Lattice lat(LatticeConfig(5, {1, 3})); // plan A admissible
    for (int t = 0; t < 5; ++t) {
        const auto f = random_series(rng, lam);
        for (ReconstructionMode mode :
             {ReconstructionMode::A, ReconstructionMode::B, ReconstructionMode::C})
            CHECK(max_coeff_error(reconstruct(lat, to_function(f), lam, mode), f) <= 1e-10);
    }
}

TEST_CASE("plan-C-only pair: mode b aliases, mode c recovers") {
    const LowerSet seg(1, {mi({0}), mi({1})});
    const LatticeConfig cfg(2, {1});
    REQUIRE(check_direct(seg, cfg, Plan::C));
    REQUIRE_FALSE(check_direct(seg, cfg, Plan::B));
    const Rank1Lattice lat(cfg);

    std::mt19937_64 rng(43);
    const auto f = random_series(rng, seg);
    CHECK(max_coeff_error(reconstruct(lat, to_function(f), seg, ReconstructionMode::C), f) <= 1e-10);

    // mode b must go wrong on some basis function
    double worst = 0.0;
    for (const auto& kp : seg.members()) {
        ChebSeries basis;
        basis.dim = 1;
        basis.coeff[kp] = 1.0;
        const auto rec = reconstruct(lat, to_function(basis), seg, ReconstructionMode::B);
        for (const auto& k : seg.members())
            worst = std::max(worst, std::abs(rec.coeff.at(k) - (k == kp ? 1.0 : 0.0)));
    }
    CHECK(worst > 1e-6);
}

TEST_CASE("aliasing witness for an inadmissible pair") {
    const auto lam = make_simplex_iso(2, 1);
    const LatticeConfig bad(4, {1, 3}); // below l*_A
    REQUIRE_FALSE(check_direct(lam, bad, Plan::A));
    const Rank1Lattice lat(bad);
    double worst = 0.0;
    for (const auto& kp : lam.members()) {
        ChebSeries basis;
        basis.dim = 2;
        basis.coeff[kp] = 1.0;
        const auto rec = reconstruct(lat, to_function(basis), lam, ReconstructionMode::A);
        for (const auto& k : lam.members())
            worst = std::max(worst, std::abs(rec.coeff.at(k) - (k == kp ? 1.0 : 0.0)));
    }
    CHECK(worst > 1e-6);
}
