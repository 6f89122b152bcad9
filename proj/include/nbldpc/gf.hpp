// Arithmetic over binary-extension fields GF(2^q) and the Walsh-Hadamard
// transform used for XOR-convolutions of probability vectors.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nbldpc {

using gf_sym = std::uint32_t;

// GF(2^q) with log/antilog tables. Elements are integers in [0, 2^q).
// Immutable after construction; all member operations are pure.
class GaloisField {
public:
    // Conventional primitive polynomials, bit i = coefficient of x^i.
    static unsigned default_poly(unsigned q) {
        static constexpr unsigned polys[9] = {
            0,     // unused
            0x3,   // x+1
            0x7,   // x^2+x+1
            0xB,   // x^3+x+1
            0x13,  // x^4+x+1
            0x25,  // x^5+x^2+1
            0x43,  // x^6+x+1
            0x83,  // x^7+x+1
            0x11D, // x^8+x^4+x^3+x^2+1
        };
        if (q < 1 || q > 8)
            throw std::invalid_argument("GaloisField: q must be in [1,8], got " + std::to_string(q));
        return polys[q];
    }

    explicit GaloisField(unsigned q) : GaloisField(q, default_poly(q)) {}

    GaloisField(unsigned q, unsigned poly) : q_(q), order_(1u << q), poly_(poly) {
        if (q < 1 || q > 8)
            throw std::invalid_argument("GaloisField: q must be in [1,8], got " + std::to_string(q));
        if (poly < order_ || poly >= 2 * order_)
            throw std::invalid_argument("GaloisField: polynomial degree must equal q");

        // Build tables by iterating the generator x. The polynomial is
        // primitive iff the powers of x enumerate all 2^q-1 nonzero elements
        // before returning to 1; anything else leaves a gap in log_.
        log_.assign(order_, kUnset);
        exp_.assign(2 * (order_ - 1), 0);
        unsigned b = 1;
        for (unsigned i = 0; i < order_ - 1; ++i) {
            if (log_[b] != kUnset)
                throw std::invalid_argument("GaloisField: polynomial is not primitive");
            log_[b] = static_cast<std::uint16_t>(i);
            exp_[i] = static_cast<std::uint16_t>(b);
            b <<= 1;
            if (b & order_)
                b ^= poly_;
        }
        if (b != 1)
            throw std::invalid_argument("GaloisField: polynomial is not primitive");
        for (unsigned i = 0; i < order_ - 1; ++i)
            exp_[order_ - 1 + i] = exp_[i];
    }

    unsigned q() const { return q_; }
    unsigned order() const { return order_; }
    unsigned poly() const { return poly_; }

    gf_sym add(gf_sym a, gf_sym b) const { return a ^ b; }

    gf_sym mul(gf_sym a, gf_sym b) const {
        if (a >= order_ || b >= order_)
            throw std::invalid_argument("GaloisField: symbol out of range");
        if (a == 0 || b == 0)
            return 0;
        return exp_[log_[a] + log_[b]];
    }

    gf_sym inv(gf_sym a) const {
        if (a >= order_)
            throw std::invalid_argument("GaloisField: symbol out of range");
        if (a == 0)
            throw std::domain_error("GaloisField: zero has no inverse");
        unsigned l = log_[a];
        return l == 0 ? 1 : exp_[order_ - 1 - l];
    }

    bool contains(gf_sym a) const { return a < order_; }

private:
    static constexpr std::uint16_t kUnset = 0xFFFF;
    unsigned q_, order_, poly_;
    std::vector<std::uint16_t> log_, exp_;
};

// In-place unnormalized Walsh-Hadamard transform. Applying it twice yields
// 2^q times the input, so the inverse is wht followed by division by 2^q.
// XOR-convolution of two vectors equals the inverse transform of the
// pointwise product of their transforms.
inline void wht_inplace(std::span<double> v) {
    const std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("wht: length must be a power of two");
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                double x = v[j];
                double y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
        }
    }
}

inline std::vector<double> wht(std::vector<double> v) {
    wht_inplace(v);
    return v;
}

} // namespace nbldpc
