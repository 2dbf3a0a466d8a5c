#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "latcheb/admissibility.hpp"
#include "latcheb/cubature.hpp"
#include "latcheb/lower_set.hpp"
#include "latcheb/multi_index.hpp"

namespace latcheb {

// Text formats. Index sets: line 1 "d <dim>", then one index per line as
// <dim> space-separated integers, '#' starting a comment line, members in
// ascending lexicographic order. Signed sets use the same layout.
// Lattices: a single line "n z1 ... zd".
// ChebSeries: "d <dim>", then "<k1 ... kd> <coefficient>" per line.

namespace detail {

inline std::vector<std::string> content_lines(std::istream& in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        out.push_back(line);
    }
    return out;
}

inline int parse_dim_header(const std::string& line) {
    std::istringstream ss(line);
    std::string tag;
    int dim = 0;
    if (!(ss >> tag >> dim) || tag != "d" || dim < 1)
        throw std::invalid_argument("index-set format: expected header 'd <dim>'");
    return dim;
}

} // namespace detail

struct ParsedIndexSet {
    int dim = 0;
    std::vector<MultiIndex> members;

    bool lower() const { return !members.empty() && is_lower(members); }
    LowerSet to_lower() const { return LowerSet(dim, members); }
};

inline ParsedIndexSet read_index_set(std::istream& in) {
    const auto lines = detail::content_lines(in);
    if (lines.empty()) throw std::invalid_argument("index-set format: empty input");
    ParsedIndexSet set;
    set.dim = detail::parse_dim_header(lines.front());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream ss(lines[i]);
        std::vector<int> coords(static_cast<std::size_t>(set.dim));
        for (int j = 0; j < set.dim; ++j)
            if (!(ss >> coords[static_cast<std::size_t>(j)]))
                throw std::invalid_argument("index-set format: bad member line '" + lines[i] + "'");
        int extra;
        if (ss >> extra) throw std::invalid_argument("index-set format: too many coordinates on a line");
        set.members.emplace_back(std::move(coords));
    }
    return set;
}

inline ParsedIndexSet read_index_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open index-set file '" + path + "'");
    return read_index_set(in);
}

inline void write_index_set(std::ostream& out, const LowerSet& lam) {
    out << "d " << lam.dim() << "\n";
    for (const auto& k : lam.members()) {
        for (int j = 0; j < lam.dim(); ++j) out << (j ? " " : "") << k[j];
        out << "\n";
    }
}

inline void write_index_set_file(const std::string& path, const LowerSet& lam) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write index-set file '" + path + "'");
    write_index_set(out, lam);
}

inline IndexSet read_signed_set(std::istream& in) {
    const auto lines = detail::content_lines(in);
    if (lines.empty()) throw std::invalid_argument("index-set format: empty input");
    const int dim = detail::parse_dim_header(lines.front());
    std::vector<SignedMultiIndex> members;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream ss(lines[i]);
        std::vector<int> coords(static_cast<std::size_t>(dim));
        for (int j = 0; j < dim; ++j)
            if (!(ss >> coords[static_cast<std::size_t>(j)]))
                throw std::invalid_argument("index-set format: bad member line '" + lines[i] + "'");
        members.emplace_back(std::move(coords));
    }
    return IndexSet(dim, std::move(members));
}

inline void write_signed_set(std::ostream& out, const IndexSet& set) {
    out << "d " << set.dim << "\n";
    for (const auto& h : set.members) {
        for (int j = 0; j < set.dim; ++j) out << (j ? " " : "") << h[j];
        out << "\n";
    }
}

inline LatticeConfig read_lattice(std::istream& in) {
    const auto lines = detail::content_lines(in);
    if (lines.empty()) throw std::invalid_argument("lattice format: empty input");
    std::istringstream ss(lines.front());
    std::int64_t n = 0;
    if (!(ss >> n) || n < 1) throw std::invalid_argument("lattice format: bad modulus");
    std::vector<std::int64_t> z;
    std::int64_t v;
    while (ss >> v) z.push_back(v);
    if (z.empty()) throw std::invalid_argument("lattice format: empty generating vector");
    return LatticeConfig(n, std::move(z));
}

inline LatticeConfig read_lattice_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open lattice file '" + path + "'");
    return read_lattice(in);
}

inline void write_lattice(std::ostream& out, const LatticeConfig& cfg) {
    out << cfg.n;
    for (std::int64_t v : cfg.z) out << " " << v;
    out << "\n";
}

inline void write_lattice_file(const std::string& path, const LatticeConfig& cfg) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write lattice file '" + path + "'");
    write_lattice(out, cfg);
}

// Round-trips doubles at 17 significant digits.
inline std::string format_coefficient(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

inline void write_cheb_series(std::ostream& out, const ChebSeries& f) {
    out << "d " << f.dim << "\n";
    for (const auto& [k, c] : f.coeff) {
        for (int j = 0; j < f.dim; ++j) out << k[j] << " ";
        out << format_coefficient(c) << "\n";
    }
}

inline ChebSeries read_cheb_series(std::istream& in) {
    const auto lines = detail::content_lines(in);
    if (lines.empty()) throw std::invalid_argument("series format: empty input");
    ChebSeries f;
    f.dim = detail::parse_dim_header(lines.front());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream ss(lines[i]);
        std::vector<int> coords(static_cast<std::size_t>(f.dim));
        for (int j = 0; j < f.dim; ++j)
            if (!(ss >> coords[static_cast<std::size_t>(j)]))
                throw std::invalid_argument("series format: bad line '" + lines[i] + "'");
        double c;
        if (!(ss >> c)) throw std::invalid_argument("series format: missing coefficient");
        f.coeff[MultiIndex(std::move(coords))] = c;
    }
    return f;
}

// One row of the benchmark CSV. Header is fixed:
//   set_id,d,card_lambda,card_mirror,plan,algo,n,elapsed_ms,error
struct BenchRecord {
    std::string set_id;
    int d = 0;
    std::int64_t card_lambda = 0;
    std::int64_t card_mirror = 0;
    std::string plan;
    std::string algo;
    std::int64_t n = 0;
    double elapsed_ms = 0.0;
    std::string error;
};

inline const char* kBenchCsvHeader = "set_id,d,card_lambda,card_mirror,plan,algo,n,elapsed_ms,error";

inline std::string to_csv_row(const BenchRecord& r) {
    char ms[32];
    std::snprintf(ms, sizeof(ms), "%.3f", r.elapsed_ms);
    std::ostringstream out;
    out << r.set_id << "," << r.d << "," << r.card_lambda << "," << r.card_mirror << ","
        << r.plan << "," << r.algo << "," << r.n << "," << ms << "," << r.error;
    return out.str();
}

} // namespace latcheb
