// Experiment engine: Monte-Carlo FER sweeps over SNR grids, threshold
// search at a target FER, the d-saturation and cutoff studies, CSV output,
// and canned setups that reproduce the published curves at selectable scale.
//
// Reproducibility contract: every frame's seed is derived from (root seed,
// probe index, frame index), and stopping decisions are made on ordered
// frame prefixes, so results are byte-identical for any worker count.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nbldpc/parallel.hpp"
#include "nbldpc/protocol.hpp"

namespace nbldpc {

struct ExperimentSpec {
    unsigned q = 5;
    std::string profile = "regular dv=2";
    double rate = 0.7;
    std::uint32_t n = 1000;
    double alpha = 8.0;
    unsigned d = 3;
    std::vector<double> snr_db;
    std::uint32_t min_frames = 100;
    std::uint32_t max_frames = 100000;
    std::uint32_t max_frame_errors = 100;
    unsigned max_iterations = 50;
    double damping = 1.0;
    std::uint64_t seed = 1;
    std::size_t mc_entropy_samples = 20000;
    unsigned workers = 0;
    Direction direction = Direction::direct;

    std::uint32_t checks() const {
        return n - static_cast<std::uint32_t>(std::llround(n * rate));
    }

    void validate() const {
        if (q < 1 || q > 8)
            throw std::invalid_argument("ExperimentSpec: q must be in [1,8]");
        if (!(rate > 0.0) || !(rate < 1.0))
            throw std::invalid_argument("ExperimentSpec: rate must be in (0,1)");
        if (n < 2 || checks() == 0 || checks() >= n)
            throw std::invalid_argument("ExperimentSpec: n and rate give no usable m");
        if (!(alpha > 0.0))
            throw std::invalid_argument("ExperimentSpec: alpha must be positive");
        if (q + d > 24)
            throw std::invalid_argument("ExperimentSpec: q + d too large");
        if (snr_db.empty())
            throw std::invalid_argument("ExperimentSpec: empty SNR grid");
        for (std::size_t i = 1; i < snr_db.size(); ++i)
            if (!(snr_db[i] > snr_db[i - 1]))
                throw std::invalid_argument("ExperimentSpec: SNR grid must be strictly increasing");
        if (min_frames < 1 || max_frames < min_frames)
            throw std::invalid_argument("ExperimentSpec: need max_frames >= min_frames >= 1");
        if (max_frame_errors < 1)
            throw std::invalid_argument("ExperimentSpec: max_frame_errors must be >= 1");
        if (max_iterations < 1 || max_iterations > 10000)
            throw std::invalid_argument("ExperimentSpec: max_iterations out of range");
        if (mc_entropy_samples < 2)
            throw std::invalid_argument("ExperimentSpec: mc_entropy_samples too small");
    }
};

struct Interval {
    double lo;
    double hi;
};

// Wilson score interval for a binomial proportion, default 95%.
inline Interval wilson_ci(std::uint64_t successes, std::uint64_t trials,
                          double z = 1.959963984540054)
{
    if (trials == 0)
        return {0.0, 1.0};
    const double nt = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / nt;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nt;
    const double center = (ph + z2 / (2.0 * nt)) / denom;
    const double half = (z / denom) * std::sqrt(ph * (1.0 - ph) / nt + z2 / (4.0 * nt * nt));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct PointResult {
    double snr_db = 0.0;
    double rho = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t undetected_errors = 0;
    double fer = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double iters_mean = 0.0;
    double beta = 0.0;
    double beta_q = 0.0;
    double beta_code = 0.0;
    double r_source = 0.0;
};

struct SweepResult {
    std::vector<PointResult> points;
};

// Shared immutable state for all probes of one experiment; the code is
// constructed once and reused.
class Simulator {
public:
    explicit Simulator(ExperimentSpec spec)
        : Simulator(std::move(spec), nullptr) {}

    Simulator(ExperimentSpec spec, std::shared_ptr<const SparseParityCheck> code)
        : spec_(std::move(spec)), grid_(spec_.alpha, spec_.q + spec_.d), split_(spec_.q, spec_.d) {
        spec_.validate();
        if (code) {
            if (code->n != spec_.n || code->field.q() != spec_.q)
                throw std::invalid_argument("Simulator: supplied code does not match spec");
            code_ = std::move(code);
        } else {
            code_ = std::make_shared<SparseParityCheck>(construct_code(
                spec_.n, spec_.checks(), CodeProfile::parse(spec_.profile),
                GaloisField(spec_.q), spec_.seed));
        }
        dec_.max_iterations = spec_.max_iterations;
        dec_.damping = spec_.damping;
    }

    const ExperimentSpec& spec() const { return spec_; }
    const std::shared_ptr<const SparseParityCheck>& code() const { return code_; }

    // One SNR point. probe_idx feeds the seed stream: distinct probes of one
    // experiment must use distinct indices, and the same index replays the
    // same frames.
    PointResult point(std::size_t probe_idx, double snr_db) const {
        const double rho = snr_to_rho(snr_db_to_linear(snr_db));
        const EntropyContext ent(grid_, rho, spec_.mc_entropy_samples,
                                 derive_seed(spec_.seed, streams::entropy, probe_idx));
        const ProtocolParams params(grid_, split_, code_, rho);

        struct Outcome {
            std::uint8_t error = 0;
            std::uint8_t undetected = 0;
            std::uint16_t iters = 0;
        };
        std::vector<Outcome> outcomes;
        const std::uint64_t probe_tag = static_cast<std::uint64_t>(probe_idx) << 40;

        auto run_frame = [&](std::size_t f) {
            FramePair pair = sample_frames(params.rho, spec_.n,
                                           derive_seed(spec_.seed, streams::frames, probe_tag | f));
            if (spec_.direction == Direction::reverse)
                std::swap(pair.y_a, pair.y_b);
            AliceMessages alice = alice_messages(params, pair.y_a);
            BobResult bob = bob_reconcile(params, pair.y_b, alice.z_check, alice.syndrome, dec_);
            Outcome& o = outcomes[f];
            const bool match = bob.z_b == alice.z_a;
            o.error = !(bob.decode.success && match);
            o.undetected = bob.decode.success && !match;
            o.iters = static_cast<std::uint16_t>(bob.decode.iterations_used);
        };

        // Grow the evaluated prefix until it contains max_frame_errors
        // errors (but never fewer than min_frames), then report on exactly
        // that prefix. The prefix depends only on per-frame outcomes, so
        // scheduling cannot change the result.
        std::uint64_t evaluated = 0;
        std::uint64_t horizon = spec_.min_frames;
        std::uint64_t stop = 0;
        while (stop == 0) {
            outcomes.resize(horizon);
            parallel_for(horizon - evaluated, spec_.workers,
                         [&](std::size_t i) { run_frame(evaluated + i); });
            evaluated = horizon;
            std::uint64_t errors = 0;
            for (std::uint64_t f = 0; f < evaluated; ++f) {
                errors += outcomes[f].error;
                if (errors >= spec_.max_frame_errors) {
                    stop = std::max<std::uint64_t>(f + 1, spec_.min_frames);
                    break;
                }
            }
            if (stop == 0) {
                if (evaluated >= spec_.max_frames) {
                    stop = spec_.max_frames;
                    break;
                }
                horizon = std::min<std::uint64_t>(
                    spec_.max_frames, std::max(evaluated + 1, evaluated + evaluated / 2));
            }
        }

        PointResult r;
        r.snr_db = snr_db;
        r.rho = rho;
        r.frames = stop;
        for (std::uint64_t f = 0; f < stop; ++f) {
            r.frame_errors += outcomes[f].error;
            r.undetected_errors += outcomes[f].undetected;
            r.iters_mean += outcomes[f].iters;
        }
        r.fer = static_cast<double>(r.frame_errors) / static_cast<double>(r.frames);
        const Interval ci = wilson_ci(r.frame_errors, r.frames);
        r.ci_lo = ci.lo;
        r.ci_hi = ci.hi;
        r.iters_mean /= static_cast<double>(r.frames);
        r.r_source = source_rate_bits(params);
        r.beta = (ent.entropy_exact - r.r_source) / ent.info;
        r.beta_q = (ent.entropy_exact - ent.cond_entropy) / ent.info;
        r.beta_code = r.beta / r.beta_q;
        return r;
    }

    SweepResult sweep() const {
        SweepResult result;
        result.points.reserve(spec_.snr_db.size());
        for (std::size_t i = 0; i < spec_.snr_db.size(); ++i)
            result.points.push_back(point(i, spec_.snr_db[i]));
        return result;
    }

private:
    ExperimentSpec spec_;
    QuantizationGrid grid_;
    SymbolSplit split_;
    std::shared_ptr<const SparseParityCheck> code_;
    DecoderConfig dec_;
};

inline SweepResult fer_sweep(const ExperimentSpec& spec) { return Simulator(spec).sweep(); }

struct ThresholdResult {
    bool found = false;
    double target = 0.1;
    PointResult point{};
    std::string note;
};

// Locates the SNR where a decreasing FER curve crosses `target`. The grid
// is scanned left to right for a bracketing pair, then bisected until the
// probe's Wilson CI brackets the target or fits inside target +/- 0.02.
// probe(snr_db) must return a fresh PointResult per call.
template <typename Probe>
ThresholdResult threshold_search(const std::vector<double>& grid, double target, Probe&& probe) {
    if (grid.size() < 2)
        throw std::invalid_argument("threshold_search: need at least two grid points");
    if (!(target > 0.0) || !(target < 1.0))
        throw std::invalid_argument("threshold_search: target must be in (0,1)");

    ThresholdResult result;
    result.target = target;

    PointResult prev = probe(grid[0]);
    if (prev.fer < target) {
        result.point = prev;
        result.note = "FER below target already at the lowest grid point";
        return result;
    }
    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        PointResult cur = probe(grid[i]);
        if (cur.fer < target) {
            lo = grid[i - 1];
            hi = grid[i];
            bracketed = true;
            result.point = cur;
            break;
        }
        prev = cur;
    }
    if (!bracketed) {
        result.point = prev;
        result.note = "FER stays above target across the grid";
        return result;
    }

    for (int step = 0; step < 30; ++step) {
        const double mid = 0.5 * (lo + hi);
        PointResult p = probe(mid);
        result.point = p;
        const bool ci_brackets = p.ci_lo <= target && target <= p.ci_hi;
        const bool ci_tight = p.ci_lo >= target - 0.02 && p.ci_hi <= target + 0.02;
        if (ci_brackets || ci_tight || hi - lo < 1e-3) {
            result.found = true;
            return result;
        }
        if (p.fer >= target)
            lo = mid;
        else
            hi = mid;
    }
    result.found = true;
    result.note = "bisection step limit reached";
    return result;
}

// Threshold and efficiency at the target FER; spec.snr_db serves as the
// bracketing grid.
inline ThresholdResult efficiency_at_fer(const ExperimentSpec& spec, double target = 0.1) {
    Simulator sim(spec);
    std::size_t probe_idx = 0;
    return threshold_search(spec.snr_db, target,
                            [&](double snr) { return sim.point(probe_idx++, snr); });
}

struct DStudyRow {
    unsigned d;
    SweepResult sweep;
};

// FER over the spec's SNR grid for each d. The code does not depend on d,
// so it is built once; frame seeds repeat across d values, which pairs the
// comparisons sample-by-sample.
inline std::vector<DStudyRow> d_saturation_study(ExperimentSpec spec,
                                                 const std::vector<unsigned>& d_values) {
    if (d_values.empty())
        throw std::invalid_argument("d_saturation_study: empty d list");
    std::vector<DStudyRow> rows;
    std::shared_ptr<const SparseParityCheck> code;
    for (unsigned d : d_values) {
        spec.d = d;
        Simulator sim(spec, code);
        code = sim.code();
        rows.push_back({d, sim.sweep()});
    }
    return rows;
}

struct AlphaRow {
    double alpha;
    unsigned d;
    ThresholdResult threshold;
};

// Fixed-rate code swept over the cutoff parameter at a constant bin count
// of 2^9 (d = 9 - q); each alpha gets its own threshold search over
// `bracket(alpha)`, which must return a strictly increasing SNR grid.
template <typename Bracket>
std::vector<AlphaRow> alpha_sweep(ExperimentSpec spec, const std::vector<double>& alphas,
                                  Bracket&& bracket, double target = 0.1) {
    if (alphas.empty())
        throw std::invalid_argument("alpha_sweep: empty alpha list");
    if (spec.q >= 9)
        throw std::invalid_argument("alpha_sweep: q too large for p = 9");
    spec.d = 9 - spec.q;
    std::vector<AlphaRow> rows;
    std::shared_ptr<const SparseParityCheck> code;
    for (double alpha : alphas) {
        spec.alpha = alpha;
        spec.snr_db = bracket(alpha);
        Simulator sim(spec, code);
        code = sim.code();
        std::size_t probe_idx = 0;
        ThresholdResult t = threshold_search(spec.snr_db, target,
                                             [&](double snr) { return sim.point(probe_idx++, snr); });
        rows.push_back({alpha, spec.d, t});
    }
    return rows;
}

// Capacity-style prediction of the threshold SNR if the scheme ran at
// efficiency beta_guess; used to center bracketing grids.
inline double predicted_threshold_snr_db(double alpha, unsigned p, unsigned q, double rate,
                                         double beta_guess) {
    const QuantizationGrid grid(alpha, p);
    const double info = (discrete_entropy(grid) - source_rate_bits(p, q, rate)) / beta_guess;
    if (!(info > 0.0))
        throw std::domain_error("predicted_threshold_snr_db: rate leaves no room for information");
    return snr_linear_to_db(std::exp2(2.0 * info) - 1.0);
}

namespace detail {

inline std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline void csv_point_fields(std::ostream& out, const PointResult& p) {
    out << format_g(p.snr_db) << ',' << format_g(p.rho) << ',' << format_g(p.fer) << ','
        << format_g(p.ci_lo) << ',' << format_g(p.ci_hi) << ',' << format_g(p.beta) << ','
        << p.frames << ',' << format_g(p.iters_mean);
}

} // namespace detail

inline void emit_csv(const SweepResult& result, std::ostream& out) {
    out << "snr_db,rho,fer,ci_lo,ci_hi,beta,frames,iters_mean\n";
    for (const PointResult& p : result.points) {
        detail::csv_point_fields(out, p);
        out << '\n';
    }
}

inline void emit_csv(const std::vector<DStudyRow>& rows, std::ostream& out) {
    out << "d,snr_db,rho,fer,ci_lo,ci_hi,beta,frames,iters_mean\n";
    for (const DStudyRow& row : rows)
        for (const PointResult& p : row.sweep.points) {
            out << row.d << ',';
            detail::csv_point_fields(out, p);
            out << '\n';
        }
}

inline void emit_csv(const std::vector<AlphaRow>& rows, std::ostream& out) {
    out << "alpha,d,found,snr_db,rho,fer,ci_lo,ci_hi,beta,frames,iters_mean\n";
    for (const AlphaRow& row : rows) {
        out << detail::format_g(row.alpha) << ',' << row.d << ',' << (row.threshold.found ? 1 : 0)
            << ',';
        detail::csv_point_fields(out, row.threshold.point);
        out << '\n';
    }
}

template <typename Result>
void save_csv(const Result& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    emit_csv(result, out);
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline CsvTable parse_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("csv: empty input");
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ','))
        table.header.push_back(cell);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::runtime_error("csv line " + std::to_string(lineno) + ": bad number '" +
                                         cell + "'");
            }
        }
        if (row.size() != table.header.size())
            throw std::runtime_error("csv line " + std::to_string(lineno) + ": field count mismatch");
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline CsvTable load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    return parse_csv(in);
}

// Bracketing grid for a threshold search, centered by the capacity-style
// prediction across a plausible efficiency range.
inline std::vector<double> default_threshold_bracket(double alpha, unsigned p, unsigned q,
                                                     double rate) {
    static constexpr double betas[] = {1.03, 0.95, 0.85, 0.72};
    std::vector<double> grid;
    for (double b : betas)
        grid.push_back(predicted_threshold_snr_db(alpha, p, q, rate, b));
    return grid;
}

struct ReproduceOptions {
    std::uint32_t n = 0;       // 0 keeps each figure's published frame length
    double frames_scale = 1.0; // scales frame counts and the error budget
    bool long_legs = false;    // include the n = 10^5 style long runs
    unsigned max_iterations = 50;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::size_t mc_entropy_samples = 20000;
};

namespace detail {

inline std::vector<double> snr_steps(double lo, double hi, double step) {
    std::vector<double> g;
    for (double s = lo; s <= hi + 1e-9; s += step)
        g.push_back(s);
    return g;
}

inline std::uint32_t scaled_count(double base, double scale, std::uint32_t floor_value) {
    double v = base * scale;
    if (v < floor_value)
        return floor_value;
    return static_cast<std::uint32_t>(std::llround(v));
}

} // namespace detail

// Runs the documented setup behind one published figure or table and writes
// its CSVs into out_dir. Returns the paths written. frames_scale trades
// fidelity for runtime; 1.0 is desk scale, not the multi-day full scale.
inline std::vector<std::string> reproduce(const std::string& figure, const std::string& out_dir,
                                          const ReproduceOptions& opt = {}) {
    namespace fs = std::filesystem;
    static const std::vector<std::string> known = {"fig1", "fig2", "fig3", "fig6", "table1"};
    if (std::find(known.begin(), known.end(), figure) == known.end()) {
        std::string names;
        for (const auto& k : known)
            names += (names.empty() ? "" : ", ") + k;
        throw std::invalid_argument("reproduce: unknown figure '" + figure + "', valid: " + names);
    }
    fs::create_directories(out_dir);
    std::vector<std::string> written;

    auto write_file = [&](const std::string& name, auto&& body) {
        const fs::path path = fs::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + path.string());
        body(out);
        if (!out)
            throw std::runtime_error("write failed: " + path.string());
        written.push_back(path.string());
    };

    ExperimentSpec base;
    base.seed = opt.seed;
    base.workers = opt.workers;
    base.max_iterations = opt.max_iterations;
    base.mc_entropy_samples = opt.mc_entropy_samples;
    base.min_frames = detail::scaled_count(100, opt.frames_scale, 10);
    base.max_frames = std::max(base.min_frames, detail::scaled_count(20000, opt.frames_scale, 50));
    base.max_frame_errors = detail::scaled_count(100, opt.frames_scale, 5);

    if (figure == "fig1") {
        // GF(32) regular codes, n = 10^3, alpha = 8, one curve per rate
        base.q = 5;
        base.n = opt.n ? opt.n : 1000;
        base.alpha = 8.0;
        base.d = 3;
        const struct {
            double rate;
            double lo, hi;
            const char* name;
        } curves[] = {{0.5, 1.0, 4.5, "fig1-r05.csv"},
                      {0.6, 5.0, 8.5, "fig1-r06.csv"},
                      {0.7, 8.5, 12.0, "fig1-r07.csv"}};
        for (const auto& c : curves) {
            ExperimentSpec spec = base;
            spec.rate = c.rate;
            spec.snr_db = detail::snr_steps(c.lo, c.hi, 0.5);
            SweepResult r = fer_sweep(spec);
            write_file(c.name, [&](std::ostream& out) { emit_csv(r, out); });
        }
    } else if (figure == "fig2") {
        // three field orders at R = 0.7, n = 10^3, alpha = 8
        base.rate = 0.7;
        base.n = opt.n ? opt.n : 1000;
        base.alpha = 8.0;
        base.d = 3;
        const struct {
            unsigned q;
            double lo, hi;
            const char* name;
        } curves[] = {{4, 3.0, 6.5, "fig2-gf16.csv"},
                      {5, 8.5, 12.0, "fig2-gf32.csv"},
                      {6, 13.5, 17.0, "fig2-gf64.csv"}};
        for (const auto& c : curves) {
            ExperimentSpec spec = base;
            spec.q = c.q;
            spec.snr_db = detail::snr_steps(c.lo, c.hi, 0.5);
            SweepResult r = fer_sweep(spec);
            write_file(c.name, [&](std::ostream& out) { emit_csv(r, out); });
        }
    } else if (figure == "fig3") {
        // frame-length comparison at GF(32), R = 0.7, plus the efficiency
        // readouts at FER = 0.1
        base.q = 5;
        base.rate = 0.7;
        base.alpha = 8.0;
        base.d = 3;
        base.snr_db = detail::snr_steps(8.5, 12.0, 0.5);
        std::vector<std::uint32_t> lengths = {1000, 10000};
        if (opt.long_legs)
            lengths.push_back(100000);
        if (opt.n)
            lengths = {opt.n};
        std::ostringstream beta_rows;
        for (std::uint32_t n : lengths) {
            ExperimentSpec spec = base;
            spec.n = n;
            Simulator sim(spec);
            SweepResult r = sim.sweep();
            write_file("fig3-n" + std::to_string(n) + ".csv",
                       [&](std::ostream& out) { emit_csv(r, out); });
            std::size_t probe_idx = spec.snr_db.size();
            ThresholdResult t = threshold_search(
                spec.snr_db, 0.1, [&](double snr) { return sim.point(probe_idx++, snr); });
            beta_rows << n << ',' << (t.found ? 1 : 0) << ',';
            detail::csv_point_fields(beta_rows, t.point);
            beta_rows << '\n';
        }
        write_file("fig3-beta.csv", [&](std::ostream& out) {
            out << "n,found,snr_db,rho,fer,ci_lo,ci_hi,beta,frames,iters_mean\n" << beta_rows.str();
        });
    } else if (figure == "fig6") {
        // fixed-rate irregular codes swept over the cutoff at 2^9 bins
        const struct {
            const char* profile;
            unsigned q;
            double rate;
            std::vector<double> alphas;
            const char* name;
        } curves[] = {{"gf16-r085", 4, 0.85, {4, 6, 8, 10}, "fig6-gf16.csv"},
                      {"gf32-r09", 5, 0.9, {4, 6, 8, 10, 12}, "fig6-gf32.csv"},
                      {"gf64-r09", 6, 0.9, {6, 10, 14}, "fig6-gf64.csv"}};
        for (const auto& c : curves) {
            ExperimentSpec spec = base;
            spec.profile = c.profile;
            spec.q = c.q;
            spec.rate = c.rate;
            spec.n = opt.n ? opt.n : (opt.long_legs ? 10000 : 2000);
            std::vector<double> alphas;
            for (double a : c.alphas) {
                try {
                    default_threshold_bracket(a, 9, spec.q, spec.rate);
                    alphas.push_back(a);
                } catch (const std::domain_error&) {
                    // cutoff too wide for this rate, no threshold exists
                }
            }
            std::vector<AlphaRow> rows = alpha_sweep(spec, alphas, [&](double a) {
                return default_threshold_bracket(a, 9, spec.q, spec.rate);
            });
            write_file(c.name, [&](std::ostream& out) { emit_csv(rows, out); });
        }
    } else if (figure == "table1") {
        // efficiency column: GF(32) irregular code, cutoff chosen per SNR row
        ExperimentSpec spec = base;
        spec.profile = "gf32-r09";
        spec.q = 5;
        spec.rate = 0.9;
        spec.d = 4;
        spec.n = opt.n ? opt.n : (opt.long_legs ? 10000 : 2000);
        const struct {
            double snr_lin;
            double alpha;
        } rows[] = {{3, 24}, {5, 20}, {7, 18}, {15, 12}, {31, 10}};
        std::ostringstream body;
        for (const auto& row : rows) {
            spec.alpha = row.alpha;
            spec.snr_db = default_threshold_bracket(row.alpha, 9, spec.q, spec.rate);
            ThresholdResult t = efficiency_at_fer(spec, 0.1);
            body << detail::format_g(row.snr_lin) << ',' << detail::format_g(row.alpha) << ','
                 << (t.found ? 1 : 0) << ',';
            detail::csv_point_fields(body, t.point);
            body << '\n';
        }
        write_file("table1.csv", [&](std::ostream& out) {
            out << "snr_lin_target,alpha,found,snr_db,rho,fer,ci_lo,ci_hi,beta,frames,iters_mean\n"
                << body.str();
        });
    }
    return written;
}

} // namespace nbldpc
