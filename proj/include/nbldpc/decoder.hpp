// Sum-product decoding of non-binary LDPC syndromes. Check updates run in
// the Walsh-Hadamard domain, so one update costs O(deg * 2^q * q) instead of
// the O(deg * 4^q) direct convolution.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "nbldpc/gf.hpp"
#include "nbldpc/ldpc.hpp"

namespace nbldpc {

struct DecoderConfig {
    unsigned max_iterations = 50;
    // Fraction of the fresh check-to-variable message kept per iteration;
    // 1 is the plain flooding update.
    double damping = 1.0;
    // Messages are clamped below at this value before renormalization, which
    // also absorbs small negative round-off from the transform domain.
    double clip_floor = 1e-30;

    void validate() const {
        if (max_iterations == 0)
            throw std::invalid_argument("DecoderConfig: max_iterations must be >= 1");
        if (!(damping > 0.0) || damping > 1.0)
            throw std::invalid_argument("DecoderConfig: damping must be in (0,1]");
        if (!(clip_floor > 0.0) || clip_floor >= 1.0)
            throw std::invalid_argument("DecoderConfig: clip_floor must be in (0,1)");
    }
};

// success is true only when the hard decision reproduces the target
// syndrome exactly; iterations_used == 0 means the a-priori word already
// satisfied it.
struct DecodeResult {
    bool success = false;
    unsigned iterations_used = 0;
    std::vector<gf_sym> decoded;
    bool final_syndrome_match = false;
};

namespace detail {

// Column-major view over the CSR edges: edges of variable j are
// edge[ptr[j] .. ptr[j+1]) in row order.
struct ColumnView {
    std::vector<std::uint32_t> ptr;
    std::vector<std::uint32_t> edge;

    explicit ColumnView(const SparseParityCheck& h) : ptr(h.n + 1, 0), edge(h.edges()) {
        for (std::uint32_t c : h.col_idx)
            ++ptr[c + 1];
        for (std::uint32_t j = 0; j < h.n; ++j)
            ptr[j + 1] += ptr[j];
        std::vector<std::uint32_t> cursor(ptr.begin(), ptr.end() - 1);
        for (std::uint32_t e = 0; e < h.edges(); ++e)
            edge[cursor[h.col_idx[e]]++] = e;
    }
};

inline void clip_normalize(std::span<double> v, double floor) {
    double sum = 0.0;
    for (auto& x : v) {
        if (!(x > floor))
            x = floor;
        sum += x;
    }
    for (auto& x : v)
        x /= sum;
}

struct CheckWork {
    std::vector<double> tf, suffix, prefix, conv;

    void resize(std::uint32_t deg, std::uint32_t Q) {
        tf.resize(static_cast<std::size_t>(deg) * Q);
        suffix.resize(static_cast<std::size_t>(deg + 1) * Q);
        prefix.resize(Q);
        conv.resize(Q);
    }
};

// One check node. ins[t] is the symbol-domain message arriving on edge t,
// perms[t][x] = label_t * x, and outs[t] receives the update toward edge t:
// the XOR-convolution of all other permuted inputs read off at index
// (syndrome ^ perms[t][x]). The convolution runs as pointwise prefix/suffix
// products in the transform domain. With damping < 1 the previous content
// of outs[t] is blended in, so it must hold the old message.
inline void check_node_update(std::uint32_t Q, std::uint32_t deg, const double* const* ins,
                              const std::uint8_t* const* perms, gf_sym syndrome_sym,
                              double damping, double clip_floor, double* const* outs,
                              CheckWork& work) {
    work.resize(deg, Q);
    for (std::uint32_t t = 0; t < deg; ++t) {
        double* slot = work.tf.data() + static_cast<std::size_t>(t) * Q;
        std::fill_n(slot, Q, 0.0);
        for (std::uint32_t x = 0; x < Q; ++x)
            slot[perms[t][x]] = ins[t][x];
        wht_inplace({slot, Q});
    }
    std::fill_n(work.suffix.data() + static_cast<std::size_t>(deg) * Q, Q, 1.0);
    for (std::uint32_t t = deg; t-- > 0;) {
        const double* cur = work.tf.data() + static_cast<std::size_t>(t) * Q;
        const double* nxt = work.suffix.data() + static_cast<std::size_t>(t + 1) * Q;
        double* dst = work.suffix.data() + static_cast<std::size_t>(t) * Q;
        for (std::uint32_t x = 0; x < Q; ++x)
            dst[x] = cur[x] * nxt[x];
    }
    std::fill(work.prefix.begin(), work.prefix.end(), 1.0);
    for (std::uint32_t t = 0; t < deg; ++t) {
        const double* nxt = work.suffix.data() + static_cast<std::size_t>(t + 1) * Q;
        for (std::uint32_t x = 0; x < Q; ++x)
            work.conv[x] = work.prefix[x] * nxt[x];
        wht_inplace({work.conv.data(), Q});
        double* out = outs[t];
        const double scale = damping / Q;
        if (damping == 1.0) {
            for (std::uint32_t x = 0; x < Q; ++x)
                out[x] = work.conv[syndrome_sym ^ perms[t][x]] * scale;
        } else {
            for (std::uint32_t x = 0; x < Q; ++x)
                out[x] = work.conv[syndrome_sym ^ perms[t][x]] * scale +
                         (1.0 - damping) * out[x];
        }
        clip_normalize({out, Q}, clip_floor);
        const double* cur = work.tf.data() + static_cast<std::size_t>(t) * Q;
        for (std::uint32_t x = 0; x < Q; ++x)
            work.prefix[x] *= cur[x];
    }
}

} // namespace detail

// Single-check update on plain message vectors, one output per edge. This is
// the same routine the decoder runs per check node, exposed so it can be
// compared against a direct convolution.
inline std::vector<std::vector<double>> check_update(const GaloisField& field,
                                                     const std::vector<gf_sym>& labels,
                                                     gf_sym syndrome_sym,
                                                     const std::vector<std::vector<double>>& messages,
                                                     double clip_floor = 1e-30) {
    const std::uint32_t Q = field.order();
    const std::uint32_t deg = static_cast<std::uint32_t>(labels.size());
    if (messages.size() != deg)
        throw std::invalid_argument("check_update: one message per label required");
    if (!field.contains(syndrome_sym))
        throw std::invalid_argument("check_update: syndrome symbol out of field");
    std::vector<std::uint8_t> perm(static_cast<std::size_t>(deg) * Q);
    std::vector<const double*> ins(deg);
    std::vector<const std::uint8_t*> perms(deg);
    for (std::uint32_t t = 0; t < deg; ++t) {
        if (labels[t] == 0 || !field.contains(labels[t]))
            throw std::invalid_argument("check_update: labels must be nonzero field elements");
        if (messages[t].size() != Q)
            throw std::invalid_argument("check_update: message length must be 2^q");
        for (std::uint32_t x = 0; x < Q; ++x)
            perm[static_cast<std::size_t>(t) * Q + x] =
                static_cast<std::uint8_t>(field.mul(labels[t], x));
        ins[t] = messages[t].data();
        perms[t] = perm.data() + static_cast<std::size_t>(t) * Q;
    }
    std::vector<std::vector<double>> out(deg, std::vector<double>(Q, 0.0));
    std::vector<double*> outs(deg);
    for (std::uint32_t t = 0; t < deg; ++t)
        outs[t] = out[t].data();
    detail::CheckWork work;
    detail::check_node_update(Q, deg, ins.data(), perms.data(), syndrome_sym, 1.0, clip_floor,
                              outs.data(), work);
    return out;
}

inline DecodeResult decode(const SparseParityCheck& h, const std::vector<gf_sym>& syndrome,
                           const std::vector<std::vector<double>>& apriori,
                           const DecoderConfig& cfg = {}) {
    cfg.validate();
    const GaloisField& gf = h.field;
    const std::uint32_t Q = gf.order();
    const std::uint32_t n = h.n;
    const std::uint32_t m = h.m;
    const std::size_t E = h.edges();

    if (syndrome.size() != m)
        throw std::invalid_argument("decode: syndrome length mismatch");
    for (gf_sym s : syndrome)
        if (!gf.contains(s))
            throw std::invalid_argument("decode: syndrome symbol out of field");
    if (apriori.size() != n)
        throw std::invalid_argument("decode: need one a-priori vector per variable");
    std::vector<double> prior(static_cast<std::size_t>(n) * Q);
    for (std::uint32_t j = 0; j < n; ++j) {
        if (apriori[j].size() != Q)
            throw std::invalid_argument("decode: a-priori vector length must be 2^q");
        double sum = 0.0;
        for (double x : apriori[j]) {
            if (!std::isfinite(x) || x < 0.0)
                throw std::invalid_argument("decode: a-priori entries must be finite and nonnegative");
            sum += x;
        }
        if (!(sum > 0.0))
            throw std::invalid_argument("decode: a-priori vector must have positive mass");
        for (std::uint32_t x = 0; x < Q; ++x)
            prior[static_cast<std::size_t>(j) * Q + x] = apriori[j][x] / sum;
    }

    const detail::ColumnView cols(h);

    // perm[e*Q + x] = label_e * x maps symbol distributions into the
    // z = label*x domain where the check constraint is a plain XOR sum.
    std::vector<std::uint8_t> perm(E * Q);
    for (std::size_t e = 0; e < E; ++e)
        for (std::uint32_t x = 0; x < Q; ++x)
            perm[e * Q + x] = static_cast<std::uint8_t>(gf.mul(h.labels[e], x));

    std::vector<double> v2c(E * Q), c2v(E * Q, 1.0 / Q);
    for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t t = cols.ptr[j]; t < cols.ptr[j + 1]; ++t)
            std::copy_n(prior.begin() + static_cast<std::size_t>(j) * Q, Q,
                        v2c.begin() + static_cast<std::size_t>(cols.edge[t]) * Q);

    std::vector<gf_sym> hard(n);
    auto harden = [&](const std::vector<double>& post) {
        for (std::uint32_t j = 0; j < n; ++j) {
            const double* p = post.data() + static_cast<std::size_t>(j) * Q;
            std::uint32_t best = 0;
            for (std::uint32_t x = 1; x < Q; ++x)
                if (p[x] > p[best])
                    best = x;
            hard[j] = best;
        }
    };
    auto syndrome_matches = [&]() {
        for (std::uint32_t r = 0; r < m; ++r) {
            gf_sym acc = 0;
            for (std::uint32_t e = h.row_ptr[r]; e < h.row_ptr[r + 1]; ++e)
                acc = gf.add(acc, gf.mul(h.labels[e], hard[h.col_idx[e]]));
            if (acc != syndrome[r])
                return false;
        }
        return true;
    };

    DecodeResult result;
    harden(prior);
    if (syndrome_matches()) {
        result.success = true;
        result.final_syndrome_match = true;
        result.iterations_used = 0;
        result.decoded = hard;
        return result;
    }

    std::uint32_t max_chk_deg = 0;
    for (std::uint32_t r = 0; r < m; ++r)
        max_chk_deg = std::max(max_chk_deg, h.row_degree(r));
    std::uint32_t max_var_deg = 0;
    for (std::uint32_t j = 0; j < n; ++j)
        max_var_deg = std::max(max_var_deg, cols.ptr[j + 1] - cols.ptr[j]);

    detail::CheckWork work;
    std::vector<const double*> ins(max_chk_deg);
    std::vector<const std::uint8_t*> perms(max_chk_deg);
    std::vector<double*> outs(max_chk_deg);
    std::vector<double> vsuffix(static_cast<std::size_t>(max_var_deg + 1) * Q);
    std::vector<double> vprefix(Q);
    std::vector<double> post(static_cast<std::size_t>(n) * Q);

    for (unsigned iter = 1; iter <= cfg.max_iterations; ++iter) {
        for (std::uint32_t r = 0; r < m; ++r) {
            const std::uint32_t deg = h.row_degree(r);
            for (std::uint32_t t = 0; t < deg; ++t) {
                const std::size_t e = h.row_ptr[r] + t;
                ins[t] = v2c.data() + e * Q;
                perms[t] = perm.data() + e * Q;
                outs[t] = c2v.data() + e * Q;
            }
            detail::check_node_update(Q, deg, ins.data(), perms.data(), syndrome[r], cfg.damping,
                                      cfg.clip_floor, outs.data(), work);
        }

        // variable pass: all-but-one products of check messages around each
        // variable, built from prefix/suffix partial products; per-step max
        // renormalization keeps the long products away from underflow
        for (std::uint32_t j = 0; j < n; ++j) {
            const std::uint32_t deg = cols.ptr[j + 1] - cols.ptr[j];
            const double* pj = prior.data() + static_cast<std::size_t>(j) * Q;
            std::fill_n(vsuffix.data() + static_cast<std::size_t>(deg) * Q, Q, 1.0);
            for (std::uint32_t t = deg; t-- > 0;) {
                const double* msg =
                    c2v.data() + static_cast<std::size_t>(cols.edge[cols.ptr[j] + t]) * Q;
                const double* nxt = vsuffix.data() + static_cast<std::size_t>(t + 1) * Q;
                double* dst = vsuffix.data() + static_cast<std::size_t>(t) * Q;
                double mx = 0.0;
                for (std::uint32_t x = 0; x < Q; ++x) {
                    dst[x] = msg[x] * nxt[x];
                    mx = std::max(mx, dst[x]);
                }
                if (mx > 0.0)
                    for (std::uint32_t x = 0; x < Q; ++x)
                        dst[x] /= mx;
            }
            std::copy_n(pj, Q, vprefix.begin());
            for (std::uint32_t t = 0; t < deg; ++t) {
                const std::size_t e = cols.edge[cols.ptr[j] + t];
                const double* nxt = vsuffix.data() + static_cast<std::size_t>(t + 1) * Q;
                double* out = v2c.data() + e * Q;
                for (std::uint32_t x = 0; x < Q; ++x)
                    out[x] = vprefix[x] * nxt[x];
                detail::clip_normalize({out, Q}, cfg.clip_floor);
                const double* msg = c2v.data() + e * Q;
                double mx = 0.0;
                for (std::uint32_t x = 0; x < Q; ++x) {
                    vprefix[x] *= msg[x];
                    mx = std::max(mx, vprefix[x]);
                }
                if (mx > 0.0)
                    for (std::uint32_t x = 0; x < Q; ++x)
                        vprefix[x] /= mx;
            }
            double* pt = post.data() + static_cast<std::size_t>(j) * Q;
            const double* full = vsuffix.data();
            for (std::uint32_t x = 0; x < Q; ++x)
                pt[x] = pj[x] * full[x];
        }

        harden(post);
        result.iterations_used = iter;
        if (syndrome_matches()) {
            result.success = true;
            result.final_syndrome_match = true;
            break;
        }
    }

    result.decoded = hard;
    return result;
}

} // namespace nbldpc
