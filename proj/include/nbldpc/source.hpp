// Bivariate Gaussian source model: correlated frame generation and the
// rho / SNR / mutual-information relations.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nbldpc/rng.hpp"

namespace nbldpc {

struct SourceModel {
    double rho;
    double sigma_a = 1.0;
    double sigma_b = 1.0;

    SourceModel(double rho_, double sigma_a_ = 1.0, double sigma_b_ = 1.0)
        : rho(rho_), sigma_a(sigma_a_), sigma_b(sigma_b_) {
        if (!(std::abs(rho) < 1.0))
            throw std::domain_error("SourceModel: |rho| must be < 1");
        if (!(sigma_a > 0.0) || !(sigma_b > 0.0))
            throw std::domain_error("SourceModel: marginal deviations must be positive");
    }
};

struct FramePair {
    std::vector<double> y_a;
    std::vector<double> y_b;
};

inline double snr_to_rho(double snr) {
    if (!(snr > 0.0))
        throw std::domain_error("snr_to_rho: snr must be positive");
    return std::sqrt(snr / (1.0 + snr));
}

inline double rho_to_snr(double rho) {
    if (!(std::abs(rho) < 1.0))
        throw std::domain_error("rho_to_snr: |rho| must be < 1");
    return rho * rho / (1.0 - rho * rho);
}

inline double snr_db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double snr_linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// I(Y_A;Y_B) = -1/2 log2(1 - rho^2), in bits per symbol.
inline double mutual_information(double rho) {
    if (!(std::abs(rho) < 1.0))
        throw std::domain_error("mutual_information: |rho| must be < 1");
    return -0.5 * std::log2(1.0 - rho * rho);
}

// Differential entropy of a Gaussian with the given variance, bits.
inline double gaussian_entropy(double variance) {
    if (!(variance > 0.0))
        throw std::domain_error("gaussian_entropy: variance must be positive");
    return 0.5 * std::log2(2.0 * 3.14159265358979323846 * 2.71828182845904523536 * variance);
}

// Conditional distribution of the rescaled pair: Y_A | Y_B=y_b is
// N(y_b*rho, 1-rho^2). The variance does not depend on y_b.
inline std::pair<double, double> conditional_params(const SourceModel& model, double y_b) {
    return {y_b * model.rho, 1.0 - model.rho * model.rho};
}

inline std::vector<double> scale_frame(const std::vector<double>& x, double sigma) {
    if (!(sigma > 0.0))
        throw std::domain_error("scale_frame: sigma must be positive");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = x[i] / sigma;
    return out;
}

// y_a = y1, y_b = rho*y1 + sqrt(1-rho^2)*y2 with y1, y2 iid standard normal.
inline FramePair sample_frames(double rho, std::size_t n, std::uint64_t seed) {
    if (!(std::abs(rho) < 1.0))
        throw std::domain_error("sample_frames: |rho| must be < 1");
    if (n < 1)
        throw std::invalid_argument("sample_frames: n must be >= 1");
    rng_engine eng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    FramePair fp;
    fp.y_a.resize(n);
    fp.y_b.resize(n);
    const double noise = std::sqrt(1.0 - rho * rho);
    for (std::size_t i = 0; i < n; ++i) {
        double y1 = normal(eng);
        double y2 = normal(eng);
        fp.y_a[i] = y1;
        fp.y_b[i] = rho * y1 + noise * y2;
    }
    return fp;
}

} // namespace nbldpc
