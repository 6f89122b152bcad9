// Sparse parity-check codes over GF(2^q): variable degree profiles,
// progressive edge-growth construction with concentrated check degrees,
// random nonzero edge labels, and a plain-text code file format.
#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nbldpc/gf.hpp"
#include "nbldpc/rng.hpp"

namespace nbldpc {

// Edge-perspective variable degree distribution: lambda[i] is the fraction
// of edges attached to degree-i variable nodes.
struct DegreeDistribution {
    std::map<unsigned, double> lambda;

    explicit DegreeDistribution(std::map<unsigned, double> l) : lambda(std::move(l)) {
        if (lambda.empty())
            throw std::invalid_argument("DegreeDistribution: empty");
        double total = 0.0;
        for (const auto& [deg, frac] : lambda) {
            if (deg < 2 || deg > 64)
                throw std::invalid_argument("DegreeDistribution: degrees must be in [2,64]");
            if (!(frac > 0.0))
                throw std::invalid_argument("DegreeDistribution: fractions must be positive");
            total += frac;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw std::invalid_argument("DegreeDistribution: fractions must sum to 1");
    }

    static DegreeDistribution regular(unsigned dv) { return DegreeDistribution({{dv, 1.0}}); }

    bool is_regular() const { return lambda.size() == 1; }

    unsigned max_degree() const { return lambda.rbegin()->first; }
};

// Per-variable node degrees realized from an edge-perspective distribution.
// Node fractions are proportional to lambda_i / i; counts are rounded with
// largest remainders so they sum to n exactly. Returned ascending.
inline std::vector<unsigned> node_degrees(const DegreeDistribution& dist, std::uint32_t n) {
    if (n == 0)
        throw std::invalid_argument("node_degrees: n must be positive");
    double wsum = 0.0;
    for (const auto& [deg, frac] : dist.lambda)
        wsum += frac / deg;
    std::vector<std::pair<unsigned, double>> exact;
    for (const auto& [deg, frac] : dist.lambda)
        exact.emplace_back(deg, n * (frac / deg) / wsum);

    std::vector<std::uint32_t> count(exact.size());
    std::uint32_t assigned = 0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        count[i] = static_cast<std::uint32_t>(exact[i].second);
        assigned += count[i];
    }
    std::vector<std::size_t> order(exact.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double ra = exact[a].second - count[a];
        double rb = exact[b].second - count[b];
        if (ra != rb)
            return ra > rb;
        return exact[a].first < exact[b].first;
    });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned)
        ++count[order[i % order.size()]];

    std::vector<unsigned> degrees;
    degrees.reserve(n);
    for (std::size_t i = 0; i < exact.size(); ++i)
        degrees.insert(degrees.end(), count[i], exact[i].first);
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

// A named profile is the distribution plus its canonical spelling, which is
// what code files carry.
struct CodeProfile {
    std::string name;
    DegreeDistribution dist;

    static CodeProfile regular(unsigned dv) {
        return {"regular dv=" + std::to_string(dv), DegreeDistribution::regular(dv)};
    }

    static const std::vector<std::string>& builtin_names() {
        static const std::vector<std::string> names = {"gf16-r085", "gf32-r09", "gf64-r09"};
        return names;
    }

    static CodeProfile builtin(const std::string& name) {
        if (name == "gf16-r085")
            return {name, DegreeDistribution({{2, 0.62755},
                                              {6, 0.03896},
                                              {10, 0.02497},
                                              {11, 0.01158},
                                              {14, 0.00598},
                                              {15, 0.03557},
                                              {17, 0.20497},
                                              {19, 0.05042}})};
        if (name == "gf32-r09")
            return {name, DegreeDistribution({{2, 0.67173},
                                              {6, 0.00164},
                                              {7, 0.00481},
                                              {8, 0.01342},
                                              {14, 0.02081},
                                              {16, 0.28759}})};
        if (name == "gf64-r09")
            return {name, DegreeDistribution({{2, 0.81173},
                                              {5, 0.00710},
                                              {8, 0.01004},
                                              {15, 0.17113}})};
        throw std::invalid_argument("unknown builtin profile: " + name);
    }

    // Accepts a builtin name, "regular dv=<k>", or an explicit list of
    // "degree:fraction" pairs separated by spaces.
    static CodeProfile parse(const std::string& text) {
        for (const auto& name : builtin_names())
            if (text == name)
                return builtin(name);
        std::istringstream in(text);
        std::string tok;
        if (!(in >> tok))
            throw std::invalid_argument("empty profile");
        if (tok == "regular") {
            std::string spec;
            if (!(in >> spec) || spec.rfind("dv=", 0) != 0)
                throw std::invalid_argument("regular profile needs dv=<k>");
            return regular(static_cast<unsigned>(std::stoul(spec.substr(3))));
        }
        std::map<unsigned, double> lambda;
        std::string canonical;
        do {
            auto slash = tok.find(':');
            if (slash == std::string::npos)
                throw std::invalid_argument("bad profile term '" + tok + "', want degree:fraction");
            unsigned deg = static_cast<unsigned>(std::stoul(tok.substr(0, slash)));
            double frac = std::stod(tok.substr(slash + 1));
            if (lambda.count(deg))
                throw std::invalid_argument("duplicate degree in profile");
            lambda[deg] = frac;
        } while (in >> tok);
        DegreeDistribution dist(lambda);
        std::ostringstream out;
        bool first = true;
        for (const auto& [deg, frac] : dist.lambda) {
            if (!first)
                out << ' ';
            out << deg << ':' << frac;
            first = false;
        }
        return {out.str(), dist};
    }
};

// Parity-check matrix in row-compressed form. Rows are checks; within a row
// column indices are strictly ascending. labels[e] multiplies the variable
// col_idx[e] in check equations over the stored field.
struct SparseParityCheck {
    GaloisField field;
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    std::vector<std::uint32_t> row_ptr;
    std::vector<std::uint32_t> col_idx;
    std::vector<gf_sym> labels;
    std::string profile;
    std::uint64_t peg_seed = 0;
    std::uint64_t label_seed = 0;

    std::size_t edges() const { return col_idx.size(); }

    double design_rate() const { return 1.0 - static_cast<double>(m) / n; }

    unsigned row_degree(std::uint32_t r) const { return row_ptr[r + 1] - row_ptr[r]; }

    // s_r = sum over the row of label * x[col], addition in the field.
    std::vector<gf_sym> syndrome(const std::vector<gf_sym>& x) const {
        if (x.size() != n)
            throw std::invalid_argument("syndrome: word length mismatch");
        for (gf_sym v : x)
            if (!field.contains(v))
                throw std::invalid_argument("syndrome: symbol out of field");
        std::vector<gf_sym> s(m, 0);
        for (std::uint32_t r = 0; r < m; ++r) {
            gf_sym acc = 0;
            for (std::uint32_t e = row_ptr[r]; e < row_ptr[r + 1]; ++e)
                acc = field.add(acc, field.mul(labels[e], x[col_idx[e]]));
            s[r] = acc;
        }
        return s;
    }

    void serialize(std::ostream& out) const;
    static SparseParityCheck deserialize(std::istream& in);
    void save(const std::string& path) const;
    static SparseParityCheck load(const std::string& path);
};

namespace detail {

// One growth step: among checks passing `eligible` and not adjacent to the
// current variable, prefer those unreached by the BFS tree, then maximal
// depth, then minimal current degree; remaining ties break by seeded draw.
class PegState {
public:
    PegState(std::uint32_t n, std::uint32_t m, std::uint64_t seed)
        : n_(n), m_(m), var_adj_(n), chk_adj_(m), chk_deg_(m, 0),
          var_gen_(n, 0), chk_gen_(m, 0), chk_dist_(m, 0), adj_gen_(m, 0), eng_(seed) {}

    std::uint32_t check_degree(std::uint32_t c) const { return chk_deg_[c]; }

    template <typename Eligible>
    std::uint32_t place_edge(std::uint32_t j, Eligible eligible) {
        bfs_from(j);
        ++adj_stamp_;
        for (std::uint32_t c : var_adj_[j])
            adj_gen_[c] = adj_stamp_;

        std::uint32_t best = pick(j, eligible);
        if (best == m_)
            best = pick(j, [](std::uint32_t) { return true; });
        if (best == m_)
            throw std::invalid_argument("peg_construct: variable degree exceeds check count");

        var_adj_[j].push_back(best);
        chk_adj_[best].push_back(j);
        ++chk_deg_[best];
        return best;
    }

    std::vector<std::vector<std::uint32_t>>& check_rows() { return chk_adj_; }

private:
    static constexpr std::uint32_t unreached = std::numeric_limits<std::uint32_t>::max();

    std::uint32_t dist_of(std::uint32_t c) const {
        return chk_gen_[c] == bfs_stamp_ ? chk_dist_[c] : unreached;
    }

    // Breadth-first expansion of the tree rooted at variable j; stops once
    // every check has a final distance.
    void bfs_from(std::uint32_t j) {
        ++bfs_stamp_;
        frontier_.clear();
        frontier_.push_back(j);
        var_gen_[j] = bfs_stamp_;
        std::uint32_t reached = 0, depth = 0;
        while (!frontier_.empty() && reached < m_) {
            depth += 2;
            next_checks_.clear();
            for (std::uint32_t v : frontier_)
                for (std::uint32_t c : var_adj_[v])
                    if (chk_gen_[c] != bfs_stamp_) {
                        chk_gen_[c] = bfs_stamp_;
                        chk_dist_[c] = depth - 1;
                        next_checks_.push_back(c);
                        ++reached;
                    }
            next_vars_.clear();
            for (std::uint32_t c : next_checks_)
                for (std::uint32_t v : chk_adj_[c])
                    if (var_gen_[v] != bfs_stamp_) {
                        var_gen_[v] = bfs_stamp_;
                        next_vars_.push_back(v);
                    }
            frontier_.swap(next_vars_);
        }
    }

    template <typename Eligible>
    std::uint32_t pick(std::uint32_t j, Eligible eligible) {
        (void)j;
        std::uint32_t best_dist = 0, best_deg = 0;
        candidates_.clear();
        for (std::uint32_t c = 0; c < m_; ++c) {
            if (adj_gen_[c] == adj_stamp_ || !eligible(c))
                continue;
            std::uint32_t dist = dist_of(c);
            if (candidates_.empty() || dist > best_dist ||
                (dist == best_dist && chk_deg_[c] < best_deg)) {
                candidates_.clear();
                best_dist = dist;
                best_deg = chk_deg_[c];
                candidates_.push_back(c);
            } else if (dist == best_dist && chk_deg_[c] == best_deg) {
                candidates_.push_back(c);
            }
        }
        if (candidates_.empty())
            return m_;
        return candidates_[pick_index(eng_, candidates_.size())];
    }

    std::uint32_t n_, m_;
    std::vector<std::vector<std::uint32_t>> var_adj_, chk_adj_;
    std::vector<std::uint32_t> chk_deg_;
    std::vector<std::uint32_t> var_gen_, chk_gen_, chk_dist_, adj_gen_;
    std::uint32_t bfs_stamp_ = 0, adj_stamp_ = 0;
    std::vector<std::uint32_t> frontier_, next_checks_, next_vars_, candidates_;
    rng_engine eng_;
};

} // namespace detail

// Progressive edge growth. Variables are processed in ascending degree
// order; check degrees are capped so the final row degrees differ by at
// most one. Returns the binary skeleton (all labels 1 over GF(2)).
inline SparseParityCheck peg_construct(std::uint32_t n, std::uint32_t m, const CodeProfile& profile,
                                       std::uint64_t seed) {
    if (n == 0 || m == 0)
        throw std::invalid_argument("peg_construct: n and m must be positive");
    std::vector<unsigned> degrees = node_degrees(profile.dist, n);
    if (degrees.back() > m)
        throw std::invalid_argument("peg_construct: variable degree exceeds check count");

    std::size_t total_edges = 0;
    for (unsigned d : degrees)
        total_edges += d;
    const std::uint32_t base = static_cast<std::uint32_t>(total_edges / m);
    const std::uint32_t extra = static_cast<std::uint32_t>(total_edges % m);

    detail::PegState state(n, m, seed);
    std::uint32_t over_count = 0;
    for (std::uint32_t j = 0; j < n; ++j) {
        for (unsigned t = 0; t < degrees[j]; ++t) {
            std::uint32_t c = state.place_edge(j, [&](std::uint32_t cand) {
                std::uint32_t deg = state.check_degree(cand);
                return deg < base || (deg == base && over_count < extra);
            });
            if (state.check_degree(c) == base + 1)
                ++over_count;
        }
    }

    SparseParityCheck code{GaloisField(1, 0x3)};
    code.n = n;
    code.m = m;
    code.profile = profile.name;
    code.peg_seed = seed;
    code.row_ptr.assign(m + 1, 0);
    auto& rows = state.check_rows();
    for (std::uint32_t r = 0; r < m; ++r)
        code.row_ptr[r + 1] = code.row_ptr[r] + static_cast<std::uint32_t>(rows[r].size());
    code.col_idx.reserve(total_edges);
    for (std::uint32_t r = 0; r < m; ++r)
        code.col_idx.insert(code.col_idx.end(), rows[r].begin(), rows[r].end());
    code.labels.assign(total_edges, 1);
    return code;
}

// Replaces the skeleton's field and draws each edge label uniformly from
// the nonzero field elements, in row-major edge order.
inline SparseParityCheck assign_labels(const SparseParityCheck& skeleton, const GaloisField& field,
                                       std::uint64_t seed) {
    SparseParityCheck code = skeleton;
    code.field = field;
    code.label_seed = seed;
    rng_engine eng(seed);
    const std::uint32_t nonzero = field.order() - 1;
    for (auto& label : code.labels)
        label = 1 + static_cast<gf_sym>(eng() % nonzero);
    return code;
}

// PEG skeleton plus labels from one root seed.
inline SparseParityCheck construct_code(std::uint32_t n, std::uint32_t m, const CodeProfile& profile,
                                        const GaloisField& field, std::uint64_t seed) {
    SparseParityCheck skeleton = peg_construct(n, m, profile, derive_seed(seed, streams::peg));
    return assign_labels(skeleton, field, derive_seed(seed, streams::labels));
}

inline void SparseParityCheck::serialize(std::ostream& out) const {
    out << "nbldpc-code v1\n";
    out << "q " << field.q() << "\n";
    out << "poly 0x" << std::hex << field.poly() << std::dec << "\n";
    out << "n " << n << "\n";
    out << "m " << m << "\n";
    out << "profile " << profile << "\n";
    out << "seed peg=" << peg_seed << " labels=" << label_seed << "\n";
    out << "edges " << edges() << "\n";
    for (std::uint32_t r = 0; r < m; ++r) {
        out << r << ':';
        for (std::uint32_t e = row_ptr[r]; e < row_ptr[r + 1]; ++e)
            out << ' ' << col_idx[e] << '/' << labels[e];
        out << '\n';
    }
}

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
    throw std::runtime_error("code file line " + std::to_string(line) + ": " + what);
}

} // namespace detail

inline SparseParityCheck SparseParityCheck::deserialize(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() {
        if (!std::getline(in, line))
            detail::parse_fail(lineno + 1, "unexpected end of file");
        ++lineno;
    };

    next_line();
    if (line != "nbldpc-code v1")
        detail::parse_fail(lineno, "bad magic, want 'nbldpc-code v1'");

    unsigned q = 0;
    gf_sym poly = 0;
    std::uint64_t n64 = 0, m64 = 0, edge_count = 0, peg = 0, lab = 0;
    std::string profile_str;
    bool have_q = false, have_poly = false, have_n = false, have_m = false, have_edges = false;

    while (!have_edges) {
        next_line();
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "q") {
            if (!(ls >> q))
                detail::parse_fail(lineno, "bad q");
            have_q = true;
        } else if (key == "poly") {
            std::string hex;
            if (!(ls >> hex) || hex.rfind("0x", 0) != 0)
                detail::parse_fail(lineno, "poly must be hex with 0x prefix");
            poly = static_cast<gf_sym>(std::stoul(hex.substr(2), nullptr, 16));
            have_poly = true;
        } else if (key == "n") {
            if (!(ls >> n64) || n64 == 0)
                detail::parse_fail(lineno, "bad n");
            have_n = true;
        } else if (key == "m") {
            if (!(ls >> m64) || m64 == 0)
                detail::parse_fail(lineno, "bad m");
            have_m = true;
        } else if (key == "profile") {
            std::getline(ls >> std::ws, profile_str);
        } else if (key == "seed") {
            std::string tok;
            while (ls >> tok) {
                if (tok.rfind("peg=", 0) == 0)
                    peg = std::stoull(tok.substr(4));
                else if (tok.rfind("labels=", 0) == 0)
                    lab = std::stoull(tok.substr(7));
                else
                    detail::parse_fail(lineno, "bad seed field '" + tok + "'");
            }
        } else if (key == "edges") {
            if (!(ls >> edge_count))
                detail::parse_fail(lineno, "bad edge count");
            have_edges = true;
        } else {
            detail::parse_fail(lineno, "unknown header key '" + key + "'");
        }
    }
    if (!have_q || !have_poly || !have_n || !have_m)
        detail::parse_fail(lineno, "missing header field (need q, poly, n, m)");

    SparseParityCheck code{GaloisField(q, poly)};
    code.n = static_cast<std::uint32_t>(n64);
    code.m = static_cast<std::uint32_t>(m64);
    code.profile = profile_str;
    code.peg_seed = peg;
    code.label_seed = lab;
    code.row_ptr.assign(code.m + 1, 0);
    code.col_idx.reserve(edge_count);
    code.labels.reserve(edge_count);

    for (std::uint32_t r = 0; r < code.m; ++r) {
        next_line();
        std::istringstream ls(line);
        std::uint64_t row = 0;
        char colon = 0;
        if (!(ls >> row >> colon) || colon != ':' || row != r)
            detail::parse_fail(lineno, "expected row " + std::to_string(r));
        std::string tok;
        std::int64_t prev_col = -1;
        while (ls >> tok) {
            auto slash = tok.find('/');
            if (slash == std::string::npos)
                detail::parse_fail(lineno, "bad entry '" + tok + "', want col/label");
            std::uint64_t col = std::stoull(tok.substr(0, slash));
            std::uint64_t label = std::stoull(tok.substr(slash + 1));
            if (col >= code.n)
                detail::parse_fail(lineno, "column out of range");
            if (static_cast<std::int64_t>(col) <= prev_col)
                detail::parse_fail(lineno, "columns must be strictly ascending");
            if (label == 0 || label >= code.field.order())
                detail::parse_fail(lineno, "label out of field");
            prev_col = static_cast<std::int64_t>(col);
            code.col_idx.push_back(static_cast<std::uint32_t>(col));
            code.labels.push_back(static_cast<gf_sym>(label));
        }
        code.row_ptr[r + 1] = static_cast<std::uint32_t>(code.col_idx.size());
    }
    if (code.edges() != edge_count)
        detail::parse_fail(lineno, "edge count mismatch");
    return code;
}

inline void SparseParityCheck::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    serialize(out);
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

inline SparseParityCheck SparseParityCheck::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    return deserialize(in);
}

} // namespace nbldpc
