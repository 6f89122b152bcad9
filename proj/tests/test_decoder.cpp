#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nbldpc/decoder.hpp"
#include "support/oracles.hpp"

using namespace nbldpc;

namespace {

std::vector<std::vector<double>> random_messages(std::mt19937_64& eng, std::size_t deg,
                                                 std::uint32_t Q) {
    std::uniform_real_distribution<double> u(0.01, 1.0);
    std::vector<std::vector<double>> msgs(deg, std::vector<double>(Q));
    for (auto& m : msgs) {
        double sum = 0.0;
        for (auto& x : m)
            sum += (x = u(eng));
        for (auto& x : m)
            x /= sum;
    }
    return msgs;
}

std::vector<std::vector<double>> peaked_priors(const std::vector<gf_sym>& word, std::uint32_t Q,
                                               double confidence) {
    std::vector<std::vector<double>> priors(word.size(),
                                            std::vector<double>(Q, (1.0 - confidence) / (Q - 1)));
    for (std::size_t j = 0; j < word.size(); ++j)
        priors[j][word[j]] = confidence;
    return priors;
}

} // namespace

TEST_CASE("transform-domain check update equals the direct convolution") {
    std::mt19937_64 eng(31);
    for (unsigned q : {2u, 3u, 4u}) {
        GaloisField f(q);
        const std::uint32_t Q = f.order();
        std::uniform_int_distribution<unsigned> ud(2, 5);
        std::uniform_int_distribution<gf_sym> us(0, Q - 1), ul(1, Q - 1);
        for (int trial = 0; trial < 200; ++trial) {
            const unsigned deg = ud(eng);
            std::vector<gf_sym> labels(deg);
            for (auto& l : labels)
                l = ul(eng);
            const gf_sym syn = us(eng);
            auto msgs = random_messages(eng, deg, Q);
            auto fast = check_update(f, labels, syn, msgs);
            auto slow = oracle::check_update(f, labels, syn, msgs);
            REQUIRE(fast.size() == deg);
            for (unsigned t = 0; t < deg; ++t) {
                double sum = 0.0;
                for (std::uint32_t x = 0; x < Q; ++x) {
                    REQUIRE(fast[t][x] >= 0.0);
                    REQUIRE(fast[t][x] == Catch::Approx(slow[t][x]).margin(1e-10));
                    sum += fast[t][x];
                }
                REQUIRE(sum == Catch::Approx(1.0).margin(1e-12));
            }
        }
    }
}

TEST_CASE("degree-one check forces the labeled symbol") {
    GaloisField f(4);
    auto out = check_update(f, {7}, 9, {std::vector<double>(16, 1.0 / 16)});
    const gf_sym forced = f.mul(f.inv(7), 9);
    for (std::uint32_t x = 0; x < 16; ++x) {
        if (x == forced)
            CHECK(out[0][x] == Catch::Approx(1.0).margin(1e-12));
        else
            CHECK(out[0][x] == Catch::Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("check update argument validation") {
    GaloisField f(3);
    std::vector<std::vector<double>> one(1, std::vector<double>(8, 0.125));
    CHECK_THROWS_AS(check_update(f, {0}, 0, one), std::invalid_argument);
    CHECK_THROWS_AS(check_update(f, {9}, 0, one), std::invalid_argument);
    CHECK_THROWS_AS(check_update(f, {1}, 8, one), std::invalid_argument);
    CHECK_THROWS_AS(check_update(f, {1, 2}, 0, one), std::invalid_argument);
    std::vector<std::vector<double>> short_msg(1, std::vector<double>(4, 0.25));
    CHECK_THROWS_AS(check_update(f, {1}, 0, short_msg), std::invalid_argument);
}

TEST_CASE("near-certain priors decode without iterating") {
    GaloisField f(3);
    auto h = construct_code(60, 20, CodeProfile::regular(2), f, 17);
    std::mt19937_64 eng(3);
    std::vector<gf_sym> word(h.n);
    for (auto& w : word)
        w = static_cast<gf_sym>(eng() % 8);
    auto syn = h.syndrome(word);
    auto res = decode(h, syn, peaked_priors(word, 8, 0.999));
    CHECK(res.success);
    CHECK(res.final_syndrome_match);
    CHECK(res.iterations_used <= 1);
    CHECK(res.decoded == word);
}

TEST_CASE("uniform priors with a random nonzero syndrome fail at the iteration cap") {
    GaloisField f(3);
    auto h = construct_code(1000, 300, CodeProfile::regular(2), f, 23);
    std::mt19937_64 eng(8);
    std::vector<gf_sym> syn(h.m);
    bool nonzero = false;
    for (auto& s : syn)
        nonzero |= (s = static_cast<gf_sym>(eng() % 8)) != 0;
    REQUIRE(nonzero);
    std::vector<std::vector<double>> uniform(h.n, std::vector<double>(8, 0.125));
    DecoderConfig cfg;
    cfg.max_iterations = 20;
    auto res = decode(h, syn, uniform, cfg);
    CHECK_FALSE(res.success);
    CHECK_FALSE(res.final_syndrome_match);
    CHECK(res.iterations_used == cfg.max_iterations);
}

TEST_CASE("moderately noisy priors converge to the planted word") {
    GaloisField f(4);
    auto h = construct_code(400, 120, CodeProfile::regular(2), f, 29);
    std::mt19937_64 eng(12);
    std::vector<gf_sym> word(h.n);
    for (auto& w : word)
        w = static_cast<gf_sym>(eng() % 16);
    auto syn = h.syndrome(word);
    // peak on the word but erase a sparse subset of positions entirely; the
    // erased symbols are only recoverable through the checks, so the decoder
    // has to iterate
    auto priors = peaked_priors(word, 16, 0.97);
    for (std::size_t j = 0; j < h.n; j += 17)
        priors[j].assign(16, 1.0 / 16);

    auto res = decode(h, syn, priors);
    REQUIRE(res.success);
    CHECK(res.decoded == word);
    CHECK(res.iterations_used >= 1);
    CHECK(res.iterations_used < 50);
    REQUIRE(h.syndrome(res.decoded) == syn);

    // byte-for-byte repeatable
    auto res2 = decode(h, syn, priors);
    CHECK(res2.decoded == res.decoded);
    CHECK(res2.iterations_used == res.iterations_used);

    // damping changes the trajectory but not the fixed point here
    DecoderConfig damped;
    damped.damping = 0.5;
    auto res3 = decode(h, syn, priors, damped);
    CHECK(res3.success);
    CHECK(res3.decoded == word);
}

TEST_CASE("priors with exact zeros are tolerated via the clip floor") {
    GaloisField f(3);
    auto h = construct_code(60, 20, CodeProfile::regular(2), f, 31);
    std::vector<gf_sym> word(h.n, 0);
    auto syn = h.syndrome(word);
    std::vector<std::vector<double>> priors(h.n, std::vector<double>(8, 0.0));
    for (auto& p : priors)
        p[0] = 1.0;
    auto res = decode(h, syn, priors);
    CHECK(res.success);
    CHECK(res.decoded == word);
}

TEST_CASE("decode input validation") {
    GaloisField f(3);
    auto h = construct_code(30, 10, CodeProfile::regular(2), f, 37);
    std::vector<std::vector<double>> ok(h.n, std::vector<double>(8, 0.125));
    std::vector<gf_sym> syn(h.m, 0);

    CHECK_THROWS_AS(decode(h, std::vector<gf_sym>(h.m - 1, 0), ok), std::invalid_argument);
    CHECK_THROWS_AS(decode(h, std::vector<gf_sym>(h.m, 8), ok), std::invalid_argument);

    auto bad = ok;
    bad.pop_back();
    CHECK_THROWS_AS(decode(h, syn, bad), std::invalid_argument);

    bad = ok;
    bad[3] = std::vector<double>(4, 0.25);
    CHECK_THROWS_AS(decode(h, syn, bad), std::invalid_argument);

    bad = ok;
    bad[3][1] = -0.1;
    CHECK_THROWS_AS(decode(h, syn, bad), std::invalid_argument);

    bad = ok;
    bad[3].assign(8, 0.0);
    CHECK_THROWS_AS(decode(h, syn, bad), std::invalid_argument);

    DecoderConfig cfg;
    cfg.max_iterations = 0;
    CHECK_THROWS_AS(decode(h, syn, ok, cfg), std::invalid_argument);
    cfg = {};
    cfg.damping = 0.0;
    CHECK_THROWS_AS(decode(h, syn, ok, cfg), std::invalid_argument);
    cfg = {};
    cfg.clip_floor = 1.0;
    CHECK_THROWS_AS(decode(h, syn, ok, cfg), std::invalid_argument);
}

TEST_CASE("unnormalized priors are accepted and rescaled") {
    GaloisField f(2);
    auto h = construct_code(40, 12, CodeProfile::regular(2), f, 41);
    std::vector<gf_sym> word(h.n, 0);
    auto syn = h.syndrome(word);
    std::vector<std::vector<double>> priors(h.n, std::vector<double>(4, 1.0));
    for (auto& p : priors)
        p[0] = 50.0;
    auto res = decode(h, syn, priors);
    CHECK(res.success);
    CHECK(res.decoded == word);
}
