// Command-line surface for the latcheb library: set generation, admissible
// lattice search, verification, bounds, a reconstruction demo, and a CSV
// benchmark harness.
//
// Exit codes: 0 success/admissible, 1 inadmissible/not found, 2 usage/parse.

#include "latcheb/latcheb.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

using namespace latcheb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotAdmissible = 1;
constexpr int kExitUsage = 2;

std::vector<Rational> parse_weight_list(const std::vector<std::string>& raw) {
    std::vector<Rational> out;
    out.reserve(raw.size());
    for (const auto& s : raw) out.push_back(parse_rational(s));
    return out;
}

MultiIndex parse_k_list(const std::vector<int>& raw) {
    for (int v : raw)
        if (v < 0) throw std::invalid_argument("--k entries must be non-negative");
    return MultiIndex(raw);
}

std::string set_id_from_path(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

void print_violation(const Violation& why) {
    std::cout << "violation: (";
    for (int j = 0; j < why.lhs.dim(); ++j) std::cout << (j ? "," : "") << why.lhs[j];
    std::cout << ") . z == (";
    for (int j = 0; j < why.rhs.dim(); ++j) std::cout << (j ? "," : "") << why.rhs[j];
    std::cout << ") . z  (mod n)\n";
}

BenchRecord make_record(const std::string& set_id, const LowerSet& lam, Plan plan,
                        const SearchResult& res) {
    BenchRecord rec;
    rec.set_id = set_id;
    rec.d = lam.dim();
    rec.card_lambda = static_cast<std::int64_t>(lam.size());
    rec.card_mirror = mirror_cardinality(lam);
    rec.plan = plan_name(plan);
    rec.algo = res.algorithm;
    rec.n = res.n;
    rec.elapsed_ms = res.elapsed_ms;
    return rec;
}

int cmd_gen_set(const std::string& family, const std::vector<int>& k,
                const std::vector<std::string>& w, const std::string& u, std::int64_t n, int d,
                const std::string& out_path) {
    LowerSet lam = [&]() -> LowerSet {
        if (family == "block") {
            if (k.empty()) throw std::invalid_argument("block family needs --k");
            return make_block(parse_k_list(k));
        }
        if (family == "cross") {
            if (k.empty()) throw std::invalid_argument("cross family needs --k");
            return make_cross(parse_k_list(k));
        }
        if (family == "simplex") {
            if (w.empty() || u.empty()) throw std::invalid_argument("simplex family needs --w and --u");
            return make_simplex(Weights(parse_weight_list(w), parse_rational(u)));
        }
        if (family == "simplex-card") {
            if (w.empty() || n < 1) throw std::invalid_argument("simplex-card family needs --w and --n");
            return make_simplex_by_cardinality(parse_weight_list(w), n);
        }
        if (family == "hyperbolic") {
            if (d < 1 || n < 1) throw std::invalid_argument("hyperbolic family needs --d and --n");
            return make_hyperbolic(d, n);
        }
        throw std::invalid_argument("unknown family '" + family + "'");
    }();
    if (out_path.empty())
        write_index_set(std::cout, lam);
    else
        write_index_set_file(out_path, lam);
    return kExitOk;
}

int cmd_search(const std::string& set_path, Plan plan, const std::string& algo, bool odd_only,
               std::optional<std::int64_t> n_min, std::optional<std::int64_t> n_max,
               const std::string& out_path) {
    const ParsedIndexSet parsed = read_index_set_file(set_path);

    SearchResult res;
    std::int64_t card_mirror = 0;
    int dim = parsed.dim;
    std::int64_t card_lambda = static_cast<std::int64_t>(parsed.members.size());

    if (parsed.lower()) {
        const LowerSet lam = parsed.to_lower();
        card_mirror = mirror_cardinality(lam);
        const std::int64_t lo = n_min.value_or(lower_bound(lam, plan));
        if (algo == "exhaustive") {
            res = exhaustive_search(lam, plan, lo, n_max.value_or(upper_bound(lam, plan)));
        } else if (algo == "cbc") {
            res = cbc_search(lam, plan, lo);
        } else if (algo == "two-step") {
            res = two_step_search(lam, plan, odd_only, lo);
        } else {
            throw std::invalid_argument("unknown algorithm '" + algo + "'");
        }
    } else {
        if (algo != "exhaustive")
            throw std::invalid_argument("algorithm '" + algo + "' requires a lower set; '" + set_path +
                                        "' is not downward closed");
        for (const auto& m : parsed.members)
            card_mirror += std::int64_t{1} << support_size(m);
        if (!n_min || !n_max)
            throw std::invalid_argument("non-lower input: give explicit --n-min and --n-max");
        res = exhaustive_search(parsed.dim, parsed.members, plan, *n_min, *n_max);
    }

    if (!res.found) {
        std::cerr << "no admissible (n, z) within bounds\n";
        return kExitNotAdmissible;
    }

    write_lattice(std::cout, res.config());
    BenchRecord rec;
    rec.set_id = set_id_from_path(set_path);
    rec.d = dim;
    rec.card_lambda = card_lambda;
    rec.card_mirror = card_mirror;
    rec.plan = plan_name(plan);
    rec.algo = res.algorithm;
    rec.n = res.n;
    rec.elapsed_ms = res.elapsed_ms;
    std::cout << to_csv_row(rec) << "\n";
    if (!out_path.empty()) write_lattice_file(out_path, res.config());
    return kExitOk;
}

int cmd_verify(const std::string& set_path, const std::string& lattice_path, Plan plan, bool verbose) {
    const ParsedIndexSet parsed = read_index_set_file(set_path);
    const LatticeConfig cfg = read_lattice_file(lattice_path);
    if (cfg.dim() != parsed.dim)
        throw std::invalid_argument("set and lattice dimensions disagree");
    Violation why;
    const bool ok = check_direct(parsed.dim, parsed.members, cfg, plan, &why);
    if (ok) {
        std::cout << "admissible (plan " << plan_name(plan) << ")\n";
        return kExitOk;
    }
    std::cout << "NOT admissible (plan " << plan_name(plan) << ")\n";
    if (verbose) print_violation(why);
    return kExitNotAdmissible;
}

int cmd_bounds(const std::string& set_path, Plan plan, bool oracle) {
    const LowerSet lam = read_index_set_file(set_path).to_lower();
    std::cout << "l* " << lower_bound(lam, plan) << "\n";
    std::cout << "p* " << upper_bound(lam, plan) << "\n";
    if (oracle) {
        const auto res = exhaustive_search(lam, plan);
        if (!res.found) {
            std::cerr << "oracle found nothing within [l*, p*]\n";
            return kExitNotAdmissible;
        }
        std::cout << "n* " << res.n << "\n";
    }
    return kExitOk;
}

int cmd_reconstruct_demo(const std::string& set_path, const std::string& lattice_path,
                         const std::string& mode_name, std::uint64_t seed) {
    const LowerSet lam = read_index_set_file(set_path).to_lower();
    const LatticeConfig cfg = read_lattice_file(lattice_path);
    if (cfg.dim() != lam.dim()) throw std::invalid_argument("set and lattice dimensions disagree");
    const ReconstructionMode mode = parse_mode(mode_name);
    const Plan plan = plan_for_mode(mode);
    if (!check_direct(lam, cfg, plan)) {
        std::cerr << "refused: (n, z) is not admissible for plan " << plan_name(plan) << "\n";
        return kExitNotAdmissible;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    ChebSeries truth;
    truth.dim = lam.dim();
    for (const auto& k : lam.members()) truth.coeff[k] = unit(rng);

    const Rank1Lattice lat(cfg);
    const ChebSeries recovered = reconstruct(lat, to_function(truth), lam, mode);
    double max_err = 0.0;
    for (const auto& k : lam.members())
        max_err = std::max(max_err, std::abs(recovered.coeff.at(k) - truth.coeff.at(k)));
    std::cout << "max coefficient error " << format_coefficient(max_err) << "\n";
    return max_err <= 1e-10 ? kExitOk : kExitNotAdmissible;
}

int cmd_bench(const std::string& family, const std::vector<std::string>& w, int d,
              const std::vector<std::int64_t>& sizes, const std::vector<std::string>& plans,
              const std::vector<std::string>& algos, bool odd_only, const std::string& out_path) {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write CSV file '" + out_path + "'");
    out << kBenchCsvHeader << "\n";

    // oracle n* per (size, plan), for the MAPE summary
    std::map<std::pair<std::int64_t, std::string>, std::int64_t> oracle_n;
    std::map<std::pair<std::string, std::string>, std::vector<double>> ape; // (algo, plan) -> |n-n*|/n*

    for (std::int64_t size : sizes) {
        std::string set_id;
        std::optional<LowerSet> lam;
        try {
            if (family == "simplex-card") {
                if (w.empty()) throw std::invalid_argument("bench simplex-card needs --w");
                lam = make_simplex_by_cardinality(parse_weight_list(w), size);
                std::string wid;
                for (const auto& s : w) wid += (wid.empty() ? "" : ";") + s;
                set_id = "simplex-card[w=" + wid + "][N=" + std::to_string(size) + "]";
            } else if (family == "hyperbolic") {
                if (d < 1) throw std::invalid_argument("bench hyperbolic needs --d");
                lam = make_hyperbolic(d, size);
                set_id = "hyperbolic[d=" + std::to_string(d) + "][N=" + std::to_string(size) + "]";
            } else {
                throw std::invalid_argument("unknown bench family '" + family + "'");
            }
        } catch (const std::exception& e) {
            BenchRecord rec;
            rec.set_id = "size=" + std::to_string(size);
            rec.error = e.what();
            out << to_csv_row(rec) << "\n";
            continue;
        }
        for (const auto& plan_str : plans) {
            const Plan plan = parse_plan(plan_str);
            for (const auto& algo : algos) {
                BenchRecord rec;
                try {
                    SearchResult res;
                    if (algo == "exhaustive")
                        res = exhaustive_search(*lam, plan);
                    else if (algo == "cbc")
                        res = cbc_search(*lam, plan);
                    else if (algo == "two-step")
                        res = two_step_search(*lam, plan, odd_only);
                    else
                        throw std::invalid_argument("unknown algorithm '" + algo + "'");
                    if (!res.found) throw std::runtime_error("not found within bounds");
                    rec = make_record(set_id, *lam, plan, res);
                    if (algo == "exhaustive") oracle_n[{size, plan_str}] = res.n;
                } catch (const std::exception& e) {
                    rec.set_id = set_id;
                    rec.d = lam->dim();
                    rec.plan = plan_name(plan);
                    rec.algo = algo;
                    rec.error = e.what();
                }
                out << to_csv_row(rec) << "\n";
                if (rec.error.empty() && algo != "exhaustive") {
                    const auto it = oracle_n.find({size, plan_str});
                    if (it != oracle_n.end())
                        ape[{algo, plan_str}].push_back(
                            100.0 * std::abs(static_cast<double>(rec.n - it->second)) /
                            static_cast<double>(it->second));
                }
            }
        }
    }

    for (const auto& [key, values] : ape) {
        double mape = 0.0;
        for (double v : values) mape += v;
        mape /= static_cast<double>(values.size());
        char line[128];
        std::snprintf(line, sizeof(line), "# MAPE algo=%s plan=%s %.2f%%", key.first.c_str(),
                      key.second.c_str(), mape);
        out << line << "\n";
        std::cout << line << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-1 lattices for exact Chebyshev integration and reconstruction on lower sets"};
    app.require_subcommand(1);

    // gen-set
    auto* gen = app.add_subcommand("gen-set", "generate an index-set file for a standard family");
    std::string gen_family, gen_u, gen_out;
    std::vector<int> gen_k;
    std::vector<std::string> gen_w;
    std::int64_t gen_n = 0;
    int gen_d = 0;
    gen->add_option("--family", gen_family, "block|cross|simplex|simplex-card|hyperbolic")->required();
    gen->add_option("--k", gen_k, "corner multi-index (block/cross)")->delimiter(',');
    gen->add_option("--w", gen_w, "weights as decimal literals (simplex/simplex-card)")->delimiter(',');
    gen->add_option("--u", gen_u, "simplex radius as a decimal literal");
    gen->add_option("--n", gen_n, "cardinality (simplex-card) or budget (hyperbolic)");
    gen->add_option("--d", gen_d, "dimension (hyperbolic)");
    gen->add_option("-o,--out", gen_out, "output path (default: stdout)");

    // search
    auto* search = app.add_subcommand("search", "find an admissible (n, z) for a set file");
    std::string search_set, search_plan, search_algo = "exhaustive", search_out;
    bool search_odd = false;
    std::optional<std::int64_t> search_nmin, search_nmax;
    search->add_option("set", search_set, "index-set file")->required();
    search->add_option("--plan", search_plan, "0|A|B|C")->required();
    search->add_option("--algo", search_algo, "exhaustive|cbc|two-step");
    search->add_flag("--odd-only", search_odd, "restrict the two-step modulus scan to odd n");
    search->add_option("--n-min", search_nmin, "override the lower bound");
    search->add_option("--n-max", search_nmax, "override the upper bound (exhaustive)");
    search->add_option("-o,--out", search_out, "write the lattice file here");

    // verify
    auto* verify = app.add_subcommand("verify", "check admissibility of a lattice file for a set file");
    std::string verify_set, verify_lattice, verify_plan;
    bool verify_verbose = false;
    verify->add_option("set", verify_set)->required();
    verify->add_option("lattice", verify_lattice)->required();
    verify->add_option("--plan", verify_plan, "0|A|B|C")->required();
    verify->add_flag("-v,--verbose", verify_verbose, "print the first violating pair");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "print l*, p*, and optionally the oracle n*");
    std::string bounds_set, bounds_plan;
    bool bounds_oracle = false;
    bounds->add_option("set", bounds_set)->required();
    bounds->add_option("--plan", bounds_plan, "0|A|B|C")->required();
    bounds->add_flag("--oracle", bounds_oracle, "also run the exhaustive oracle (may be slow)");

    // reconstruct-demo
    auto* demo = app.add_subcommand("reconstruct-demo", "synthesize, reconstruct, report max error");
    std::string demo_set, demo_lattice, demo_mode;
    std::uint64_t demo_seed = 0;
    demo->add_option("set", demo_set)->required();
    demo->add_option("lattice", demo_lattice)->required();
    demo->add_option("--mode", demo_mode, "a|b|c")->required();
    demo->add_option("--seed", demo_seed, "RNG seed (default 0)");

    // bench
    auto* bench = app.add_subcommand("bench", "emit one CSV row per (set, plan, algorithm)");
    std::string bench_family = "simplex-card", bench_out;
    std::vector<std::string> bench_w, bench_plans = {"A", "B", "C"},
                             bench_algos = {"exhaustive", "two-step"};
    std::vector<std::int64_t> bench_sizes;
    int bench_d = 0;
    bool bench_odd = false;
    bench->add_option("--family", bench_family, "simplex-card|hyperbolic");
    bench->add_option("--w", bench_w, "weights (simplex-card)")->delimiter(',');
    bench->add_option("--d", bench_d, "dimension (hyperbolic)");
    bench->add_option("--sizes", bench_sizes, "set sizes")->delimiter(',');
    bench->add_option("--plans", bench_plans, "plans to run")->delimiter(',');
    bench->add_option("--algos", bench_algos, "algorithms to run")->delimiter(',');
    bench->add_flag("--odd-only", bench_odd, "odd moduli in two-step");
    bench->add_option("-o,--out", bench_out, "CSV output path")->required();

    try {
        app.parse(argc, argv);
        if (gen->parsed())
            return cmd_gen_set(gen_family, gen_k, gen_w, gen_u, gen_n, gen_d, gen_out);
        if (search->parsed())
            return cmd_search(search_set, parse_plan(search_plan), search_algo, search_odd,
                              search_nmin, search_nmax, search_out);
        if (verify->parsed())
            return cmd_verify(verify_set, verify_lattice, parse_plan(verify_plan), verify_verbose);
        if (bounds->parsed()) return cmd_bounds(bounds_set, parse_plan(bounds_plan), bounds_oracle);
        if (demo->parsed()) return cmd_reconstruct_demo(demo_set, demo_lattice, demo_mode, demo_seed);
        if (bench->parsed())
            return cmd_bench(bench_family, bench_w, bench_d, bench_sizes, bench_plans, bench_algos,
                             bench_odd, bench_out);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
