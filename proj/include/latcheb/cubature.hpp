#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "latcheb/admissibility.hpp"
#include "latcheb/lower_set.hpp"
#include "latcheb/multi_index.hpp"

namespace latcheb {

// One lattice node t_i = (i z mod n) / n. Coordinates are kept as exact
// rationals (numerator over n) and materialized to double at evaluation.
struct Node {
    std::vector<std::int64_t> num;
    std::int64_t den = 1;

    int dim() const { return static_cast<int>(num.size()); }
    double coord(int j) const {
        return static_cast<double>(num[static_cast<std::size_t>(j)]) / static_cast<double>(den);
    }
    std::vector<double> coords() const {
        std::vector<double> x(num.size());
        for (int j = 0; j < dim(); ++j) x[static_cast<std::size_t>(j)] = coord(j);
        return x;
    }
};

struct Rank1Lattice {
    LatticeConfig cfg;

    explicit Rank1Lattice(LatticeConfig c) : cfg(std::move(c)) {}
    int dim() const { return cfg.dim(); }
    std::int64_t n() const { return cfg.n; }

    Node node(std::int64_t i) const {
        Node t;
        t.den = cfg.n;
        t.num.resize(cfg.z.size());
        for (std::size_t j = 0; j < cfg.z.size(); ++j)
            t.num[j] = residue(checked_mul(i, cfg.z[j]), cfg.n);
        return t;
    }
};

// All n nodes, i = 0 .. n-1.
inline std::vector<Node> nodes(const Rank1Lattice& lat) {
    std::vector<Node> out;
    out.reserve(static_cast<std::size_t>(lat.n()));
    for (std::int64_t i = 0; i < lat.n(); ++i) out.push_back(lat.node(i));
    return out;
}

// The tent transformation 1 - |2x - 1| on [0, 1].
inline double tent(double x) {
    if (x < 0.0 || x > 1.0) throw std::domain_error("tent: argument outside [0,1]");
    return 1.0 - std::abs(2.0 * x - 1.0);
}

// (1/n) sum_i exp(2 pi i * i * (h.z) / n) by direct complex summation; equals
// the indicator of h.z == 0 (mod n) up to roundoff.
inline std::complex<double> character_sum(const SignedMultiIndex& h, const LatticeConfig& cfg) {
    const std::int64_t r = residue(dot(h, cfg.z), cfg.n);
    std::complex<double> acc(0.0, 0.0);
    for (std::int64_t i = 0; i < cfg.n; ++i) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(residue(checked_mul(i, r), cfg.n)) /
                             static_cast<double>(cfg.n);
        acc += std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return acc / static_cast<double>(cfg.n);
}

inline constexpr double kDomainTolerance = 1e-12;

// eta_k(x) = sqrt(2)^{|k|_0} prod_j T_{k_j}(x_j) on [-1,1]^d, with T_k
// evaluated through the cosine identity.
inline double eval_cheb_basis(const MultiIndex& k, const std::vector<double>& x) {
    if (static_cast<std::size_t>(k.dim()) != x.size())
        throw std::invalid_argument("eval_cheb_basis: dimension mismatch");
    double value = 1.0;
    for (int j = 0; j < k.dim(); ++j) {
        double xj = x[static_cast<std::size_t>(j)];
        if (xj < -1.0 - kDomainTolerance || xj > 1.0 + kDomainTolerance)
            throw std::domain_error("eval_cheb_basis: point outside [-1,1]^d");
        xj = std::clamp(xj, -1.0, 1.0);
        if (k[j] != 0) value *= std::numbers::sqrt2 * std::cos(k[j] * std::acos(xj));
    }
    return value;
}

// (1/n) sum_{i=0}^{n-1} g(t_i), summed in index order.
inline double cubature(const Rank1Lattice& lat, const std::function<double(const std::vector<double>&)>& g) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < lat.n(); ++i) acc += g(lat.node(i).coords());
    return acc / static_cast<double>(lat.n());
}

// Half-point variant: floor(n/2 + 1) evaluations, doubling the interior
// weights. Agrees with the full sum whenever g(t) = g(1 - t).
inline double cubature_halved(const Rank1Lattice& lat,
                              const std::function<double(const std::vector<double>&)>& g) {
    const std::int64_t n = lat.n();
    double acc = g(lat.node(0).coords());
    for (std::int64_t i = 1; 2 * i < n; ++i) acc += 2.0 * g(lat.node(i).coords());
    if (n % 2 == 0) acc += g(lat.node(n / 2).coords());
    return acc / static_cast<double>(n);
}

// Finitely supported Chebyshev coefficient map.
struct ChebSeries {
    int dim = 0;
    std::map<MultiIndex, double> coeff;

    double operator()(const std::vector<double>& x) const {
        double acc = 0.0;
        for (const auto& [k, c] : coeff) acc += c * eval_cheb_basis(k, x);
        return acc;
    }
};

// A black-box evaluator for a ChebSeries, as handed to reconstruct().
inline std::function<double(const std::vector<double>&)> to_function(const ChebSeries& f) {
    return [f](const std::vector<double>& x) { return f(x); };
}

enum class ReconstructionMode { A, B, C };

inline ReconstructionMode parse_mode(const std::string& s) {
    if (s == "a" || s == "A") return ReconstructionMode::A;
    if (s == "b" || s == "B") return ReconstructionMode::B;
    if (s == "c" || s == "C") return ReconstructionMode::C;
    throw std::invalid_argument("unknown reconstruction mode '" + s + "'");
}

inline Plan plan_for_mode(ReconstructionMode m) {
    switch (m) {
        case ReconstructionMode::A: return Plan::A;
        case ReconstructionMode::B: return Plan::B;
        case ReconstructionMode::C: return Plan::C;
    }
    return Plan::A;
}

// Chebyshev coefficient recovery over the support Lambda:
//   mode a:  f^a_k = Q( f(cos 2pi t) * eta_k(cos 2pi t) )
//   mode b:  f^b_k = Q( f(cos 2pi t) * sqrt(2)^{|k|_0} cos(2 pi k.t) )
//   mode c:  f^c_k = f^b_k / c_k
// Per-coefficient sums run over i = 0..n-1 so output is order-deterministic.
inline ChebSeries reconstruct(const Rank1Lattice& lat,
                              const std::function<double(const std::vector<double>&)>& f,
                              const LowerSet& lam, ReconstructionMode mode) {
    if (lam.dim() != lat.dim()) throw std::invalid_argument("reconstruct: dimension mismatch");
    const std::int64_t n = lat.n();

    // f and the node-dependent factors are shared across coefficients
    std::vector<std::vector<double>> ts;     // t_i in [0,1)^d
    std::vector<std::vector<double>> xs;     // cos(2 pi t_i)
    std::vector<double> fx(static_cast<std::size_t>(n));
    ts.reserve(static_cast<std::size_t>(n));
    xs.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        ts.push_back(lat.node(i).coords());
        std::vector<double> x(ts.back().size());
        for (std::size_t j = 0; j < x.size(); ++j)
            x[j] = std::cos(2.0 * std::numbers::pi * ts.back()[j]);
        xs.push_back(std::move(x));
        fx[static_cast<std::size_t>(i)] = f(xs.back());
    }

    ChebSeries out;
    out.dim = lam.dim();
    for (const auto& k : lam.members()) {
        const double scale = std::pow(std::numbers::sqrt2, support_size(k));
        double acc = 0.0;
        if (mode == ReconstructionMode::A) {
            for (std::int64_t i = 0; i < n; ++i)
                acc += fx[static_cast<std::size_t>(i)] * eval_cheb_basis(k, xs[static_cast<std::size_t>(i)]);
        } else {
            for (std::int64_t i = 0; i < n; ++i) {
                double kt = 0.0;
                for (int j = 0; j < lam.dim(); ++j) kt += k[j] * ts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                acc += fx[static_cast<std::size_t>(i)] * scale * std::cos(2.0 * std::numbers::pi * kt);
            }
        }
        acc /= static_cast<double>(n);
        if (mode == ReconstructionMode::C)
            acc /= static_cast<double>(aliasing_count_ck(k, lat.cfg));
        out.coeff[k] = acc;
    }
    return out;
}

} // namespace latcheb
