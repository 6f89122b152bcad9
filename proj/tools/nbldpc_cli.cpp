// Command-line front end: code construction plus the simulation commands.
// Every command is a thin veneer over the library; all randomness flows from
// --seed so runs replay exactly.

#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nbldpc/ldpc.hpp"
#include "nbldpc/sim.hpp"

namespace {

struct SimOptions {
    nbldpc::ExperimentSpec spec;
    std::string code_file;
    std::string out_file;
    std::string direction = "direct";
};

void add_code_options(CLI::App* cmd, SimOptions& opt) {
    cmd->add_option("--q", opt.spec.q, "field exponent, symbols live in GF(2^q)")
        ->check(CLI::Range(1u, 8u));
    cmd->add_option("--profile", opt.spec.profile,
                    "variable degree profile: 'regular dv=<k>', a built-in name "
                    "(gf16-r085, gf32-r09, gf64-r09), or 'deg:frac ...'");
    cmd->add_option("--rate", opt.spec.rate, "design rate R, checks m = n(1-R)");
    cmd->add_option("--n", opt.spec.n, "frame length in symbols");
    cmd->add_option("--seed", opt.spec.seed, "root seed for construction and frames");
}

void add_sim_options(CLI::App* cmd, SimOptions& opt) {
    add_code_options(cmd, opt);
    cmd->add_option("--code", opt.code_file,
                    "load the parity-check code from a file instead of constructing it");
    cmd->add_option("--alpha", opt.spec.alpha, "cutoff parameter of the quantizer");
    cmd->add_option("--d", opt.spec.d, "disclosed least significant bits per symbol");
    cmd->add_option("--snr", opt.spec.snr_db, "SNR grid in dB, ascending")->delimiter(',');
    cmd->add_option("--min-frames", opt.spec.min_frames, "minimum frames per point");
    cmd->add_option("--max-frames", opt.spec.max_frames, "frame budget per point");
    cmd->add_option("--max-errors", opt.spec.max_frame_errors,
                    "stop a point after this many frame errors");
    cmd->add_option("--iters", opt.spec.max_iterations, "decoder iteration cap");
    cmd->add_option("--damping", opt.spec.damping, "check message damping in (0,1]");
    cmd->add_option("--mc-samples", opt.spec.mc_entropy_samples,
                    "Monte-Carlo samples for the conditional entropy");
    cmd->add_option("--workers", opt.spec.workers,
                    "worker threads (0 = NBLDPC_WORKERS or hardware)");
    cmd->add_option("--direction", opt.direction, "reconciliation direction")
        ->check(CLI::IsMember({"direct", "reverse"}));
    cmd->add_option("--out", opt.out_file, "write CSV here instead of stdout");
}

nbldpc::Simulator make_simulator(SimOptions& opt) {
    opt.spec.direction =
        opt.direction == "reverse" ? nbldpc::Direction::reverse : nbldpc::Direction::direct;
    if (opt.code_file.empty())
        return nbldpc::Simulator(opt.spec);
    auto code = std::make_shared<nbldpc::SparseParityCheck>(
        nbldpc::SparseParityCheck::load(opt.code_file));
    opt.spec.q = code->field.q();
    opt.spec.n = code->n;
    opt.spec.rate = code->design_rate();
    if (!code->profile.empty())
        opt.spec.profile = code->profile;
    return nbldpc::Simulator(opt.spec, std::move(code));
}

template <typename Result>
void write_result(const Result& result, const std::string& out_file) {
    if (out_file.empty()) {
        nbldpc::emit_csv(result, std::cout);
    } else {
        nbldpc::save_csv(result, out_file);
        std::cout << "wrote " << out_file << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-binary LDPC reconciliation simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI-style file");
    app.get_config_formatter_base()->comment('#');

    // construct
    struct {
        SimOptions opt;
        std::string poly_hex;
        std::string out_file;
    } con;
    CLI::App* construct = app.add_subcommand("construct", "build a code and write its file");
    add_code_options(construct, con.opt);
    construct->add_option("--poly", con.poly_hex, "primitive polynomial as hex (default built-in)");
    construct->add_option("--out", con.out_file, "output code file")->required();

    // fer
    SimOptions fer;
    CLI::App* fer_cmd = app.add_subcommand("fer", "frame error rate over an SNR grid");
    add_sim_options(fer_cmd, fer);

    // efficiency
    SimOptions eff;
    double eff_target = 0.1;
    CLI::App* eff_cmd =
        app.add_subcommand("efficiency", "threshold SNR and efficiency at a target FER");
    add_sim_options(eff_cmd, eff);
    eff_cmd->add_option("--target", eff_target, "target frame error rate");

    // dstudy
    SimOptions dstudy;
    std::vector<unsigned> d_values = {1, 2, 3, 4};
    CLI::App* dstudy_cmd =
        app.add_subcommand("dstudy", "FER across disclosed-bit counts d on one grid");
    add_sim_options(dstudy_cmd, dstudy);
    dstudy_cmd->add_option("--d-values", d_values, "d values to compare")->delimiter(',');

    // alphasweep
    SimOptions asweep;
    std::vector<double> alphas;
    double asweep_target = 0.1;
    CLI::App* asweep_cmd = app.add_subcommand(
        "alphasweep", "threshold efficiency per cutoff alpha at 2^9 bins (d = 9 - q)");
    add_sim_options(asweep_cmd, asweep);
    asweep_cmd->add_option("--alphas", alphas, "cutoff values to sweep")
        ->delimiter(',')
        ->required();
    asweep_cmd->add_option("--target", asweep_target, "target frame error rate");

    // reproduce
    std::string repro_figure;
    std::string repro_dir = "reproduce-out";
    nbldpc::ReproduceOptions repro;
    CLI::App* repro_cmd =
        app.add_subcommand("reproduce", "run a canned published-figure setup and emit its CSVs");
    repro_cmd->add_option("figure", repro_figure, "fig1, fig2, fig3, fig6, or table1")->required();
    repro_cmd->add_option("--out-dir", repro_dir, "directory for the CSV files");
    repro_cmd->add_option("--scale", repro.frames_scale, "frame count multiplier");
    repro_cmd->add_option("--n", repro.n, "override the frame length (0 = figure default)");
    repro_cmd->add_flag("--long", repro.long_legs, "include the long n=10^5 style legs");
    repro_cmd->add_option("--iters", repro.max_iterations, "decoder iteration cap");
    repro_cmd->add_option("--seed", repro.seed, "root seed");
    repro_cmd->add_option("--workers", repro.workers, "worker threads");
    repro_cmd->add_option("--mc-samples", repro.mc_entropy_samples,
                          "Monte-Carlo samples for the conditional entropy");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) {
            unsigned poly = con.poly_hex.empty()
                                ? nbldpc::GaloisField::default_poly(con.opt.spec.q)
                                : static_cast<unsigned>(std::stoul(con.poly_hex, nullptr, 16));
            nbldpc::GaloisField field(con.opt.spec.q, poly);
            nbldpc::CodeProfile profile = nbldpc::CodeProfile::parse(con.opt.spec.profile);
            std::uint32_t m = con.opt.spec.checks();
            nbldpc::SparseParityCheck code =
                nbldpc::construct_code(con.opt.spec.n, m, profile, field, con.opt.spec.seed);
            code.save(con.out_file);
            unsigned dmin = code.row_degree(0), dmax = dmin;
            for (std::uint32_t r = 1; r < code.m; ++r) {
                dmin = std::min(dmin, code.row_degree(r));
                dmax = std::max(dmax, code.row_degree(r));
            }
            std::cout << "wrote " << con.out_file << ": GF(" << field.order() << "), n=" << code.n
                      << ", m=" << code.m << ", edges=" << code.edges() << ", row degrees " << dmin
                      << ".." << dmax << "\n";
        } else if (fer_cmd->parsed()) {
            nbldpc::Simulator sim = make_simulator(fer);
            write_result(sim.sweep(), fer.out_file);
        } else if (eff_cmd->parsed()) {
            nbldpc::Simulator sim = make_simulator(eff);
            std::size_t probe_idx = 0;
            nbldpc::ThresholdResult t =
                nbldpc::threshold_search(sim.spec().snr_db, eff_target, [&](double snr) {
                    return sim.point(probe_idx++, snr);
                });
            if (t.found)
                std::cout << "threshold snr_db=" << t.point.snr_db << " fer=" << t.point.fer
                          << " beta=" << t.point.beta << " beta_q=" << t.point.beta_q
                          << " beta_code=" << t.point.beta_code << " frames=" << t.point.frames
                          << "\n";
            else
                std::cout << "no threshold: " << t.note << "\n";
            if (!t.note.empty() && t.found)
                std::cout << "note: " << t.note << "\n";
            if (!eff.out_file.empty()) {
                nbldpc::SweepResult one;
                one.points.push_back(t.point);
                nbldpc::save_csv(one, eff.out_file);
                std::cout << "wrote " << eff.out_file << "\n";
            }
        } else if (dstudy_cmd->parsed()) {
            dstudy.spec.direction = dstudy.direction == "reverse" ? nbldpc::Direction::reverse
                                                                  : nbldpc::Direction::direct;
            write_result(nbldpc::d_saturation_study(dstudy.spec, d_values), dstudy.out_file);
        } else if (asweep_cmd->parsed()) {
            asweep.spec.direction = asweep.direction == "reverse" ? nbldpc::Direction::reverse
                                                                  : nbldpc::Direction::direct;
            if (asweep.spec.snr_db.empty()) {
                write_result(
                    nbldpc::alpha_sweep(asweep.spec, alphas,
                                        [&](double a) {
                                            return nbldpc::default_threshold_bracket(
                                                a, 9, asweep.spec.q, asweep.spec.rate);
                                        },
                                        asweep_target),
                    asweep.out_file);
            } else {
                std::vector<double> grid = asweep.spec.snr_db;
                write_result(nbldpc::alpha_sweep(
                                 asweep.spec, alphas, [&](double) { return grid; }, asweep_target),
                             asweep.out_file);
            }
        } else if (repro_cmd->parsed()) {
            for (const std::string& path : nbldpc::reproduce(repro_figure, repro_dir, repro))
                std::cout << "wrote " << path << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
