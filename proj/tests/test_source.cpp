#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nbldpc/source.hpp"

using namespace nbldpc;

TEST_CASE("snr to correlation anchors") {
    CHECK(snr_to_rho(3.0) == Catch::Approx(0.866025403784).margin(5e-4));
    CHECK(snr_to_rho(15.0) == Catch::Approx(0.968245836552).margin(5e-4));
    CHECK(snr_to_rho(31.0) == Catch::Approx(0.984250984251).margin(5e-4));
    CHECK_THROWS_AS(snr_to_rho(0.0), std::domain_error);
    CHECK_THROWS_AS(snr_to_rho(-1.0), std::domain_error);
}

TEST_CASE("snr and correlation are inverse maps") {
    for (double snr : {0.1, 1.0, 3.0, 15.0, 200.0}) {
        double rho = snr_to_rho(snr);
        CHECK(rho_to_snr(rho) == Catch::Approx(snr).epsilon(1e-12));
    }
    CHECK_THROWS_AS(rho_to_snr(1.0), std::domain_error);
    CHECK_THROWS_AS(rho_to_snr(-1.0), std::domain_error);
}

TEST_CASE("decibel conversions") {
    CHECK(snr_db_to_linear(0.0) == Catch::Approx(1.0));
    CHECK(snr_db_to_linear(10.0) == Catch::Approx(10.0));
    CHECK(snr_linear_to_db(100.0) == Catch::Approx(20.0));
}

TEST_CASE("mutual information of the correlated pair") {
    // snr = 3 gives rho^2 = 3/4 and exactly one bit per symbol
    CHECK(mutual_information(std::sqrt(0.75)) == Catch::Approx(1.0).margin(1e-12));
    CHECK(mutual_information(0.0) == 0.0);
    CHECK_THROWS_AS(mutual_information(1.0), std::domain_error);
}

TEST_CASE("differential entropy of the unit gaussian") {
    CHECK(gaussian_entropy(1.0) == Catch::Approx(2.0470955851806411).margin(1e-12));
    CHECK_THROWS_AS(gaussian_entropy(0.0), std::domain_error);
}

TEST_CASE("conditional distribution parameters") {
    auto [mean, var] = conditional_params(SourceModel(0.8), 2.5);
    CHECK(mean == Catch::Approx(2.0));
    CHECK(var == Catch::Approx(1.0 - 0.64));
    CHECK_THROWS_AS(SourceModel(1.0), std::domain_error);
    CHECK_THROWS_AS(SourceModel(0.5, -1.0), std::domain_error);
}

TEST_CASE("sampled frames are reproducible and correlated as configured") {
    const double rho = 0.9;
    const std::size_t n = 200000;
    FramePair f1 = sample_frames(rho, n, 42);
    FramePair f2 = sample_frames(rho, n, 42);
    REQUIRE(f1.y_a == f2.y_a);
    REQUIRE(f1.y_b == f2.y_b);

    FramePair g = sample_frames(rho, n, 43);
    REQUIRE(g.y_a != f1.y_a);

    double ma = 0, mb = 0, va = 0, vb = 0, cab = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += f1.y_a[i];
        mb += f1.y_b[i];
    }
    ma /= n;
    mb /= n;
    for (std::size_t i = 0; i < n; ++i) {
        va += (f1.y_a[i] - ma) * (f1.y_a[i] - ma);
        vb += (f1.y_b[i] - mb) * (f1.y_b[i] - mb);
        cab += (f1.y_a[i] - ma) * (f1.y_b[i] - mb);
    }
    va /= n;
    vb /= n;
    cab /= n;
    CHECK(ma == Catch::Approx(0.0).margin(0.01));
    CHECK(mb == Catch::Approx(0.0).margin(0.01));
    CHECK(va == Catch::Approx(1.0).margin(0.02));
    CHECK(vb == Catch::Approx(1.0).margin(0.02));
    CHECK(cab / std::sqrt(va * vb) == Catch::Approx(rho).margin(0.005));
}

TEST_CASE("frame scaling normalizes by the given deviation") {
    std::vector<double> v{1.0, -2.0, 0.5};
    auto s = scale_frame(v, 2.0);
    CHECK(s[0] == Catch::Approx(0.5));
    CHECK(s[1] == Catch::Approx(-1.0));
    CHECK(s[2] == Catch::Approx(0.25));
    CHECK_THROWS_AS(scale_frame(v, 0.0), std::domain_error);
}

TEST_CASE("sampling rejects out-of-range correlation") {
    CHECK_THROWS_AS(sample_frames(1.0, 10, 1), std::domain_error);
    CHECK_THROWS_AS(sample_frames(-1.5, 10, 1), std::domain_error);
}
