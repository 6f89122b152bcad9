#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "nbldpc/sim.hpp"

using namespace nbldpc;

namespace {

ExperimentSpec tiny_spec() {
    ExperimentSpec spec;
    spec.q = 4;
    spec.n = 150;
    spec.rate = 0.7;
    spec.alpha = 6.0;
    spec.d = 2;
    spec.snr_db = {4.0, 6.5};
    spec.min_frames = 20;
    spec.max_frames = 40;
    spec.max_frame_errors = 10;
    spec.mc_entropy_samples = 2000;
    spec.seed = 5;
    return spec;
}

std::string csv_bytes(const SweepResult& r) {
    std::ostringstream out;
    emit_csv(r, out);
    return out.str();
}

} // namespace

TEST_CASE("wilson interval anchors") {
    auto ci = wilson_ci(10, 100);
    CHECK(ci.lo == Catch::Approx(0.055229137060675089).margin(1e-12));
    CHECK(ci.hi == Catch::Approx(0.17436566150491345).margin(1e-12));
    ci = wilson_ci(0, 50);
    CHECK(ci.lo == 0.0);
    CHECK(ci.hi == Catch::Approx(0.071347599133358714).margin(1e-12));
    ci = wilson_ci(50, 50);
    CHECK(ci.lo == Catch::Approx(0.92865240086664129).margin(1e-12));
    CHECK(ci.hi == 1.0);
    ci = wilson_ci(1, 7);
    CHECK(ci.lo == Catch::Approx(0.025679624344743561).margin(1e-12));
    CHECK(ci.hi == Catch::Approx(0.51312782927431887).margin(1e-12));
    ci = wilson_ci(0, 0);
    CHECK(ci.lo == 0.0);
    CHECK(ci.hi == 1.0);
}

TEST_CASE("wilson interval covers the true proportion at its nominal level") {
    std::mt19937_64 eng(99);
    const double p = 0.3;
    const int reps = 2000, trials = 150;
    std::binomial_distribution<int> binom(trials, p);
    int covered = 0;
    for (int r = 0; r < reps; ++r) {
        auto ci = wilson_ci(static_cast<std::uint64_t>(binom(eng)), trials);
        covered += (ci.lo <= p && p <= ci.hi);
    }
    double coverage = static_cast<double>(covered) / reps;
    CHECK(coverage > 0.92);
    CHECK(coverage < 0.98);
}

TEST_CASE("threshold search brackets and bisects a synthetic curve") {
    auto probe = [](double snr) {
        PointResult p;
        p.snr_db = snr;
        p.fer = 1.0 / (1.0 + std::exp(3.0 * (snr - 10.0)));
        p.ci_lo = p.fer - 0.001;
        p.ci_hi = p.fer + 0.001;
        p.frames = 1000000;
        return p;
    };
    // true crossing of fer = 0.1 sits at 10 + ln(9)/3
    const double crossing = 10.0 + std::log(9.0) / 3.0;
    auto res = threshold_search({6.0, 8.0, 12.0, 14.0}, 0.1, probe);
    REQUIRE(res.found);
    CHECK(res.point.snr_db == Catch::Approx(crossing).margin(0.15));

    auto below = threshold_search({12.0, 14.0}, 0.1, probe);
    CHECK_FALSE(below.found);
    CHECK(below.note.find("below target") != std::string::npos);

    auto above = threshold_search({2.0, 4.0}, 0.1, probe);
    CHECK_FALSE(above.found);
    CHECK(above.note.find("stays above") != std::string::npos);

    CHECK_THROWS_AS(threshold_search({1.0}, 0.1, probe), std::invalid_argument);
    CHECK_THROWS_AS(threshold_search({1.0, 2.0}, 1.5, probe), std::invalid_argument);
}

TEST_CASE("experiment spec validation") {
    ExperimentSpec spec = tiny_spec();
    CHECK_NOTHROW(spec.validate());
    spec.snr_db = {};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = tiny_spec();
    spec.snr_db = {5.0, 4.0};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = tiny_spec();
    spec.rate = 1.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = tiny_spec();
    spec.n = 3;
    spec.rate = 0.9; // rounds to zero checks
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = tiny_spec();
    spec.max_frames = 5;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("simulator rejects a mismatched external code") {
    ExperimentSpec spec = tiny_spec();
    auto wrong_n = std::make_shared<SparseParityCheck>(
        construct_code(100, 30, CodeProfile::regular(2), GaloisField(4), 1));
    CHECK_THROWS_AS(Simulator(spec, wrong_n), std::invalid_argument);
    auto wrong_q = std::make_shared<SparseParityCheck>(
        construct_code(150, 45, CodeProfile::regular(2), GaloisField(5), 1));
    CHECK_THROWS_AS(Simulator(spec, wrong_q), std::invalid_argument);
}

TEST_CASE("sweep results are byte-identical across worker counts") {
    ExperimentSpec spec = tiny_spec();
    spec.workers = 1;
    auto one = csv_bytes(fer_sweep(spec));
    spec.workers = 3;
    auto three = csv_bytes(fer_sweep(spec));
    REQUIRE(one == three);
    // and across repeated runs
    CHECK(csv_bytes(fer_sweep(spec)) == one);
}

TEST_CASE("stopping rule respects the frame floor and cap") {
    ExperimentSpec spec = tiny_spec();
    spec.snr_db = {-20.0}; // essentially uncorrelated, every frame fails
    spec.min_frames = 15;
    spec.max_frames = 500;
    spec.max_frame_errors = 1;
    spec.max_iterations = 3;
    auto res = fer_sweep(spec);
    REQUIRE(res.points.size() == 1);
    CHECK(res.points[0].fer == 1.0);
    CHECK(res.points[0].frames == 15);

    spec = tiny_spec();
    spec.snr_db = {18.0}; // far above the waterfall, no errors expected
    spec.min_frames = 10;
    spec.max_frames = 25;
    auto clean = fer_sweep(spec);
    CHECK(clean.points[0].frame_errors == 0);
    CHECK(clean.points[0].frames == 25);
    CHECK(clean.points[0].fer == 0.0);
    CHECK(clean.points[0].ci_hi > 0.0);
}

TEST_CASE("point results carry consistent derived quantities") {
    ExperimentSpec spec = tiny_spec();
    auto res = fer_sweep(spec);
    REQUIRE(res.points.size() == 2);
    for (const auto& p : res.points) {
        CHECK(p.rho == Catch::Approx(snr_to_rho(snr_db_to_linear(p.snr_db))));
        CHECK(p.r_source == Catch::Approx(6.0 - 4.0 * 0.7));
        CHECK(p.beta == Catch::Approx(p.beta_q * p.beta_code).margin(1e-9));
        CHECK(p.frames >= spec.min_frames);
        CHECK(p.frames <= spec.max_frames);
        CHECK(p.ci_lo <= p.fer);
        CHECK(p.fer <= p.ci_hi);
    }
    // higher snr must not have higher beta: less information disclosed
    // relative to the mutual information as correlation improves
    CHECK(res.points[1].beta < res.points[0].beta);
}

TEST_CASE("csv emission and parsing round-trip") {
    ExperimentSpec spec = tiny_spec();
    auto res = fer_sweep(spec);
    std::string text = csv_bytes(res);
    REQUIRE(text.rfind("snr_db,rho,fer,ci_lo,ci_hi,beta,frames,iters_mean\n", 0) == 0);

    std::istringstream in(text);
    auto table = parse_csv(in);
    REQUIRE(table.header.size() == 8);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0][0] == Catch::Approx(4.0));
    CHECK(table.rows[0][6] == Catch::Approx(static_cast<double>(res.points[0].frames)));

    const std::string path = "sim-roundtrip.csv";
    save_csv(res, path);
    auto loaded = load_csv(path);
    CHECK(loaded.rows == table.rows);
    std::remove(path.c_str());

    std::istringstream ragged("a,b\n1,2,3\n");
    CHECK_THROWS_AS(parse_csv(ragged), std::runtime_error);
    CHECK_THROWS_AS(load_csv("missing-file.csv"), std::runtime_error);
}

TEST_CASE("d study reuses one code and reports one sweep per d") {
    ExperimentSpec spec = tiny_spec();
    spec.snr_db = {5.0};
    spec.min_frames = 15;
    spec.max_frames = 30;
    auto rows = d_saturation_study(spec, {1, 3});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].d == 1);
    CHECK(rows[1].d == 3);
    for (const auto& row : rows)
        REQUIRE(row.sweep.points.size() == 1);

    std::ostringstream out;
    emit_csv(rows, out);
    CHECK(out.str().rfind("d,snr_db,", 0) == 0);

    CHECK_THROWS_AS(d_saturation_study(spec, {}), std::invalid_argument);
}

TEST_CASE("alpha sweep pins the grid resolution and derives d from q") {
    ExperimentSpec spec = tiny_spec();
    spec.min_frames = 15;
    spec.max_frames = 30;
    spec.max_frame_errors = 8;
    auto rows = alpha_sweep(spec, {6.0, 8.0},
                            [](double) { return std::vector<double>{2.0, 9.0}; });
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].alpha == 6.0);
    CHECK(rows[0].d == 5); // p = 9 with q = 4
    CHECK(rows[1].d == 5);

    std::ostringstream out;
    emit_csv(rows, out);
    CHECK(out.str().rfind("alpha,d,found,", 0) == 0);

    CHECK_THROWS_AS(alpha_sweep(spec, {}, [](double) {
                        return std::vector<double>{1.0, 2.0};
                    }),
                    std::invalid_argument);
}

TEST_CASE("predicted thresholds and default brackets are ordered") {
    double t95 = predicted_threshold_snr_db(8.0, 8, 5, 0.7, 0.95);
    double t85 = predicted_threshold_snr_db(8.0, 8, 5, 0.7, 0.85);
    CHECK(t95 < t85);
    auto grid = default_threshold_bracket(8.0, 8, 5, 0.7);
    REQUIRE(grid.size() >= 2);
    for (std::size_t i = 1; i < grid.size(); ++i)
        REQUIRE(grid[i] > grid[i - 1]);
    // the regular-code waterfall observed near 9.5-10 dB must sit inside
    CHECK(grid.front() < 9.5);
    CHECK(grid.back() > 10.0);
}

TEST_CASE("reproduce rejects unknown figure ids") {
    CHECK_THROWS_AS(reproduce("fig9", "unused-dir", {}), std::invalid_argument);
}
