// Equidistant quantization of the real line: the (alpha, p) partition, the
// MSB/LSB symbol split, conditional bin probabilities and the entropy and
// efficiency estimates built on them.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nbldpc/rng.hpp"
#include "nbldpc/source.hpp"

namespace nbldpc {

// Partition of R into 2^p intervals: interior boundaries at -alpha + k*delta,
// the two outer intervals extend to -inf / +inf and absorb the tails.
struct QuantizationGrid {
    double alpha;
    unsigned p;
    double delta;

    QuantizationGrid(double alpha_, unsigned p_) : alpha(alpha_), p(p_) {
        if (!(alpha > 0.0))
            throw std::invalid_argument("QuantizationGrid: alpha must be positive");
        if (p < 1 || p > 24)
            throw std::invalid_argument("QuantizationGrid: p must be in [1,24]");
        delta = 2.0 * alpha / static_cast<double>(1u << p);
    }

    std::uint32_t bins() const { return 1u << p; }

    double lower_bound(std::uint32_t k) const {
        if (k == 0)
            return -std::numeric_limits<double>::infinity();
        return -alpha + k * delta;
    }

    double upper_bound(std::uint32_t k) const {
        if (k == bins() - 1)
            return std::numeric_limits<double>::infinity();
        return -alpha + (k + 1) * delta;
    }

    double center(std::uint32_t k) const { return -alpha + (k + 0.5) * delta; }
};

// p = q + d: the q most significant bits go through the LDPC code, the d
// least significant bits are disclosed verbatim.
struct SymbolSplit {
    unsigned q;
    unsigned d;

    SymbolSplit(unsigned q_, unsigned d_) : q(q_), d(d_) {
        if (q < 1)
            throw std::invalid_argument("SymbolSplit: q must be >= 1");
    }

    unsigned p() const { return q + d; }
};

inline std::uint32_t quantize(const QuantizationGrid& grid, double y) {
    if (std::isnan(y))
        throw std::invalid_argument("quantize: NaN input");
    double idx = std::floor((y + grid.alpha) / grid.delta);
    if (idx < 0.0)
        return 0;
    if (idx >= static_cast<double>(grid.bins()))
        return grid.bins() - 1;
    return static_cast<std::uint32_t>(idx);
}

inline std::pair<std::uint32_t, std::uint32_t> split_symbol(std::uint32_t k, const SymbolSplit& split) {
    if (k >= (1u << split.p()))
        throw std::invalid_argument("split_symbol: symbol out of range");
    return {k >> split.d, k & ((1u << split.d) - 1u)};
}

inline std::uint32_t recombine(std::uint32_t k_hat, std::uint32_t k_check, const SymbolSplit& split) {
    return (k_hat << split.d) | k_check;
}

namespace detail {

// log(erfc(x)) without underflow; the asymptotic branch keeps ~1e-14
// relative accuracy where double erfc has already flushed to zero.
inline double log_erfc(double x) {
    if (x < 20.0)
        return std::log(std::erfc(x));
    double x2 = x * x;
    double inv2 = 1.0 / (2.0 * x2);
    // erfc(x) ~ exp(-x^2)/(x sqrt(pi)) * (1 - 1/(2x^2) + 3/(4x^4) - 15/(8x^6))
    double series = -inv2 + 3.0 * inv2 * inv2 - 15.0 * inv2 * inv2 * inv2;
    return -x2 - std::log(x) - 0.5723649429247001 + std::log1p(series);
}

// Standard normal interval mass between scaled bounds za <= zb (arguments
// already divided by sigma*sqrt(2)). erfc is used on whichever tail both
// bounds fall in, which avoids the 1-1 cancellation of plain erf there.
inline double normal_mass(double za, double zb) {
    double m;
    if (za >= 0.0)
        m = 0.5 * (std::erfc(za) - std::erfc(zb));
    else if (zb <= 0.0)
        m = 0.5 * (std::erfc(-zb) - std::erfc(-za));
    else
        m = 0.5 * (std::erf(zb) - std::erf(za));
    return std::clamp(m, 0.0, 1.0);
}

inline double log_normal_mass(double za, double zb) {
    if (za >= 0.0) {
        double la = log_erfc(za);
        if (std::isinf(zb))
            return la + std::log(0.5);
        double lb = log_erfc(zb);
        return la + std::log(0.5) + std::log1p(-std::exp(lb - la));
    }
    if (zb <= 0.0)
        return log_normal_mass(-zb, -za);
    return std::log(normal_mass(za, zb));
}

} // namespace detail

// p(Z_A = k | Y_B = y_b) for the rescaled Gaussian pair:
// 1/2 erf((b_k - y_b rho)/sqrt(2(1-rho^2))) - 1/2 erf((a_k - ...)).
inline double interval_prob(const QuantizationGrid& grid, double rho, double y_b, std::uint32_t k) {
    if (!(std::abs(rho) < 1.0))
        throw std::domain_error("interval_prob: |rho| must be < 1");
    if (k >= grid.bins())
        throw std::invalid_argument("interval_prob: bin index out of range");
    const double mean = rho * y_b;
    const double scale = std::sqrt(2.0 * (1.0 - rho * rho));
    return detail::normal_mass((grid.lower_bound(k) - mean) / scale,
                               (grid.upper_bound(k) - mean) / scale);
}

// A-priori distribution over the 2^q MSB symbols given y_b and the disclosed
// LSBs: component k_hat is proportional to the mass of bin (k_hat, k_check).
// Falls back to log-domain normalization when every mass underflows, and to
// a point mass on the bin nearest the conditional mean if even that
// degenerates; the decoder always receives a valid distribution.
inline std::vector<double> apriori_vector(const QuantizationGrid& grid, const SymbolSplit& split,
                                          double rho, double y_b, std::uint32_t k_check) {
    if (split.p() != grid.p)
        throw std::invalid_argument("apriori_vector: split does not match grid");
    if (k_check >= (1u << split.d))
        throw std::invalid_argument("apriori_vector: k_check out of range");
    const std::uint32_t m = 1u << split.q;
    const double mean = rho * y_b;
    const double scale = std::sqrt(2.0 * (1.0 - rho * rho));

    std::vector<double> v(m);
    double total = 0.0, maxmass = 0.0;
    for (std::uint32_t kh = 0; kh < m; ++kh) {
        std::uint32_t k = recombine(kh, k_check, split);
        double mass = detail::normal_mass((grid.lower_bound(k) - mean) / scale,
                                          (grid.upper_bound(k) - mean) / scale);
        v[kh] = mass;
        total += mass;
        maxmass = std::max(maxmass, mass);
    }

    if (maxmass < 1e-300) {
        double lmax = -std::numeric_limits<double>::infinity();
        std::vector<double> lv(m);
        for (std::uint32_t kh = 0; kh < m; ++kh) {
            std::uint32_t k = recombine(kh, k_check, split);
            lv[kh] = detail::log_normal_mass((grid.lower_bound(k) - mean) / scale,
                                             (grid.upper_bound(k) - mean) / scale);
            lmax = std::max(lmax, lv[kh]);
        }
        if (std::isfinite(lmax)) {
            total = 0.0;
            for (std::uint32_t kh = 0; kh < m; ++kh) {
                v[kh] = std::exp(lv[kh] - lmax);
                total += v[kh];
            }
        } else {
            // point mass at the candidate bin closest to the conditional mean
            std::uint32_t best = 0;
            double bestdist = std::numeric_limits<double>::infinity();
            for (std::uint32_t kh = 0; kh < m; ++kh) {
                double dist = std::abs(grid.center(recombine(kh, k_check, split)) - mean);
                if (dist < bestdist) {
                    bestdist = dist;
                    best = kh;
                }
            }
            std::fill(v.begin(), v.end(), 0.0);
            v[best] = 1.0;
            return v;
        }
    }

    for (auto& x : v)
        x /= total;
    return v;
}

// Shannon entropy of the quantized marginal Z_A = Q(Y_A), Y_A ~ N(0,1).
inline double discrete_entropy(const QuantizationGrid& grid) {
    const double inv = 1.0 / std::sqrt(2.0);
    double h = 0.0;
    for (std::uint32_t k = 0; k < grid.bins(); ++k) {
        double pk = detail::normal_mass(grid.lower_bound(k) * inv, grid.upper_bound(k) * inv);
        if (pk > 0.0)
            h -= pk * std::log2(pk);
    }
    return h;
}

// H(Q(Y_A)) ~ h(Y_A) - log2(delta), the small-delta large-alpha limit.
inline double discrete_entropy_approx(const QuantizationGrid& grid) {
    return gaussian_entropy(1.0) - std::log2(grid.delta);
}

struct McEstimate {
    double value;
    double std_error;
    std::size_t samples;
};

// Monte-Carlo estimate of H(Z_A | Y_B) over y_b ~ N(0,1).
inline McEstimate conditional_entropy_mc(const QuantizationGrid& grid, double rho,
                                         std::size_t num_samples, std::uint64_t seed) {
    if (num_samples < 1)
        throw std::invalid_argument("conditional_entropy_mc: need at least one sample");
    if (!(std::abs(rho) < 1.0))
        throw std::domain_error("conditional_entropy_mc: |rho| must be < 1");
    rng_engine eng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = std::sqrt(2.0 * (1.0 - rho * rho));
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t s = 0; s < num_samples; ++s) {
        const double mean = rho * normal(eng);
        double h = 0.0;
        for (std::uint32_t k = 0; k < grid.bins(); ++k) {
            double pk = detail::normal_mass((grid.lower_bound(k) - mean) / scale,
                                            (grid.upper_bound(k) - mean) / scale);
            if (pk > 0.0)
                h -= pk * std::log2(pk);
        }
        sum += h;
        sumsq += h * h;
    }
    double meanh = sum / num_samples;
    double var = std::max(0.0, sumsq / num_samples - meanh * meanh);
    double se = num_samples > 1 ? std::sqrt(var / (num_samples - 1)) : 0.0;
    return {meanh, se, num_samples};
}

// beta_Q = I(Q(Y_A);Y_B) / I(Y_A;Y_B).
inline McEstimate quantization_efficiency(const QuantizationGrid& grid, double rho,
                                          std::size_t num_samples, std::uint64_t seed) {
    double info = mutual_information(rho);
    if (!(info > 0.0))
        throw std::domain_error("quantization_efficiency: mutual information must be positive");
    McEstimate cond = conditional_entropy_mc(grid, rho, num_samples, seed);
    double iq = discrete_entropy(grid) - cond.value;
    return {iq / info, cond.std_error / info, num_samples};
}

} // namespace nbldpc
