// Three-phase reconciliation of correlated Gaussian frames: quantize,
// disclose the d low bits of every symbol, correct the q high bits through
// the syndrome of a non-binary LDPC code. Includes the rate and efficiency
// bookkeeping derived from one reconciled frame.
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "nbldpc/decoder.hpp"
#include "nbldpc/ldpc.hpp"
#include "nbldpc/quantizer.hpp"
#include "nbldpc/rng.hpp"
#include "nbldpc/source.hpp"

namespace nbldpc {

enum class Direction { direct, reverse };

struct ProtocolParams {
    QuantizationGrid grid;
    SymbolSplit split;
    std::shared_ptr<const SparseParityCheck> code;
    double rho;

    ProtocolParams(QuantizationGrid grid_, SymbolSplit split_,
                   std::shared_ptr<const SparseParityCheck> code_, double rho_)
        : grid(grid_), split(split_), code(std::move(code_)), rho(rho_) {
        if (split.p() != grid.p)
            throw std::invalid_argument("ProtocolParams: q + d must equal the grid's p");
        if (!code)
            throw std::invalid_argument("ProtocolParams: missing code");
        if (code->field.q() != split.q)
            throw std::invalid_argument("ProtocolParams: code field does not match q");
        if (!(std::abs(rho) < 1.0))
            throw std::domain_error("ProtocolParams: |rho| must be < 1");
    }

    std::uint32_t frame_symbols() const { return code->n; }
};

// Everything Alice sends plus her private MSB word z_a, kept so callers can
// verify Bob's output against it.
struct AliceMessages {
    std::vector<gf_sym> z_check;
    std::vector<gf_sym> syndrome;
    std::vector<gf_sym> z_a;
};

// With d = 0 there is nothing to disclose and z_check stays empty.
inline AliceMessages alice_messages(const ProtocolParams& params, const std::vector<double>& y_a) {
    if (y_a.size() != params.frame_symbols())
        throw std::invalid_argument("alice_messages: frame length must equal code length");
    AliceMessages msg;
    if (params.split.d > 0)
        msg.z_check.resize(y_a.size());
    msg.z_a.resize(y_a.size());
    for (std::size_t i = 0; i < y_a.size(); ++i) {
        auto [hi, lo] = split_symbol(quantize(params.grid, y_a[i]), params.split);
        msg.z_a[i] = hi;
        if (params.split.d > 0)
            msg.z_check[i] = lo;
    }
    msg.syndrome = params.code->syndrome(msg.z_a);
    return msg;
}

struct BobResult {
    std::vector<gf_sym> z_b;
    DecodeResult decode;
};

inline BobResult bob_reconcile(const ProtocolParams& params, const std::vector<double>& y_b,
                               const std::vector<gf_sym>& z_check,
                               const std::vector<gf_sym>& syndrome,
                               const DecoderConfig& cfg = {}) {
    const std::uint32_t n = params.frame_symbols();
    const std::size_t want = params.split.d == 0 ? 0 : n;
    if (y_b.size() != n)
        throw std::invalid_argument("bob_reconcile: frame length must equal code length");
    if (z_check.size() != want)
        throw std::invalid_argument("bob_reconcile: z_check length must equal code length");
    std::vector<std::vector<double>> apriori(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        gf_sym lsb = params.split.d == 0 ? 0 : z_check[i];
        if (lsb >= (1u << params.split.d))
            throw std::invalid_argument("bob_reconcile: disclosed symbol out of range");
        apriori[i] = apriori_vector(params.grid, params.split, params.rho, y_b[i], lsb);
    }
    BobResult result;
    result.decode = decode(*params.code, syndrome, apriori, cfg);
    result.z_b = result.decode.decoded;
    return result;
}

// Bits disclosed per source symbol: d verbatim bits plus q(1-R) syndrome
// bits, i.e. p - qR for design rate R.
inline double source_rate_bits(unsigned p, unsigned q, double rate) {
    return static_cast<double>(p) - static_cast<double>(q) * rate;
}

inline double source_rate_bits(const ProtocolParams& params) {
    return source_rate_bits(params.grid.p, params.split.q, params.code->design_rate());
}

struct EfficiencySummary {
    double beta;
    double beta_q;
    double beta_code;
};

// beta   = (H(Z_A) - r_source) / I(Y_A;Y_B), the headline efficiency;
// beta_q = I(Z_A;Y_B) / I(Y_A;Y_B), lost to quantization alone;
// beta_code = beta / beta_q, lost to the code being below Slepian-Wolf.
inline EfficiencySummary efficiency(double entropy, double cond_entropy, double source_rate,
                                    double info) {
    if (!(info > 0.0))
        throw std::domain_error("efficiency: mutual information must be positive");
    if (!(entropy > cond_entropy))
        throw std::domain_error("efficiency: entropy must exceed conditional entropy");
    EfficiencySummary s;
    s.beta = (entropy - source_rate) / info;
    s.beta_q = (entropy - cond_entropy) / info;
    s.beta_code = s.beta / s.beta_q;
    return s;
}

// Entropies that depend only on (grid, rho), cached once per sweep point so
// per-frame reporting stays cheap.
struct EntropyContext {
    double entropy_exact;
    double entropy_approx;
    double cond_entropy;
    double cond_entropy_se;
    double info;

    EntropyContext(const QuantizationGrid& grid, double rho, std::size_t mc_samples,
                   std::uint64_t seed)
        : entropy_exact(discrete_entropy(grid)),
          entropy_approx(discrete_entropy_approx(grid)),
          info(mutual_information(rho)) {
        McEstimate mc = conditional_entropy_mc(grid, rho, mc_samples, seed);
        cond_entropy = mc.value;
        cond_entropy_se = mc.std_error;
    }
};

inline EfficiencySummary efficiency(const ProtocolParams& params, const EntropyContext& ent) {
    return efficiency(ent.entropy_exact, ent.cond_entropy, source_rate_bits(params), ent.info);
}

// Total classical information disclosed for one frame, in bits: d per
// symbol plus q per syndrome entry. Equals n * source_rate_bits exactly.
inline double disclosed_bits_total(const ProtocolParams& params) {
    return static_cast<double>(params.code->n) * params.split.d +
           static_cast<double>(params.code->m) * params.split.q;
}

struct ReconciliationReport {
    DecodeResult decode;
    bool symbols_match = false;
    double r_source = 0.0;
    // per-symbol upper bound on leaked information; the protocol discloses
    // exactly this much, so the bound is the rate itself
    double leak_bound = 0.0;
    EfficiencySummary eff{};
    double beta_approx = 0.0;
};

// One full direct-reconciliation round over a frame pair; for reverse
// operation swap the roles before calling.
inline ReconciliationReport reconcile_frame(const ProtocolParams& params,
                                            const std::vector<double>& y_a,
                                            const std::vector<double>& y_b,
                                            const EntropyContext& ent,
                                            const DecoderConfig& cfg = {}) {
    AliceMessages alice = alice_messages(params, y_a);
    BobResult bob = bob_reconcile(params, y_b, alice.z_check, alice.syndrome, cfg);

    ReconciliationReport report;
    report.decode = std::move(bob.decode);
    report.symbols_match = bob.z_b == alice.z_a;
    report.r_source = source_rate_bits(params);
    report.leak_bound = report.r_source;
    report.eff = efficiency(ent.entropy_exact, ent.cond_entropy, report.r_source, ent.info);
    report.beta_approx = (ent.entropy_approx - report.r_source) / ent.info;
    return report;
}

// Wire form of Alice's disclosure: "NBRM", then n, m, d, q as 32-bit
// little-endian words, then one byte per LSB symbol and one per syndrome
// symbol.
inline std::vector<std::uint8_t> encode_messages(const ProtocolParams& params,
                                                 const AliceMessages& msg) {
    const std::uint32_t n = params.frame_symbols();
    const std::uint32_t m = params.code->m;
    const std::size_t want = params.split.d == 0 ? 0 : n;
    if (msg.z_check.size() != want || msg.syndrome.size() != m)
        throw std::invalid_argument("encode_messages: message sizes do not match code");
    std::vector<std::uint8_t> out;
    out.reserve(4 + 16 + want + m);
    const char magic[4] = {'N', 'B', 'R', 'M'};
    out.insert(out.end(), magic, magic + 4);
    auto put_u32 = [&](std::uint32_t v) {
        for (int k = 0; k < 4; ++k)
            out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
    };
    put_u32(n);
    put_u32(m);
    put_u32(params.split.d);
    put_u32(params.split.q);
    for (gf_sym s : msg.z_check) {
        if (s >= (1u << params.split.d))
            throw std::invalid_argument("encode_messages: LSB symbol out of range");
        out.push_back(static_cast<std::uint8_t>(s));
    }
    for (gf_sym s : msg.syndrome) {
        if (!params.code->field.contains(s))
            throw std::invalid_argument("encode_messages: syndrome symbol out of field");
        out.push_back(static_cast<std::uint8_t>(s));
    }
    return out;
}

inline AliceMessages decode_messages(const ProtocolParams& params,
                                     const std::vector<std::uint8_t>& bytes) {
    const std::uint32_t n = params.frame_symbols();
    const std::uint32_t m = params.code->m;
    const std::size_t want = params.split.d == 0 ? 0 : n;
    if (bytes.size() != 4 + 16 + want + m)
        throw std::invalid_argument("decode_messages: payload size mismatch");
    if (bytes[0] != 'N' || bytes[1] != 'B' || bytes[2] != 'R' || bytes[3] != 'M')
        throw std::invalid_argument("decode_messages: bad magic");
    auto get_u32 = [&](std::size_t off) {
        std::uint32_t v = 0;
        for (int k = 0; k < 4; ++k)
            v |= static_cast<std::uint32_t>(bytes[off + k]) << (8 * k);
        return v;
    };
    if (get_u32(4) != n || get_u32(8) != m || get_u32(12) != params.split.d ||
        get_u32(16) != params.split.q)
        throw std::invalid_argument("decode_messages: header does not match parameters");
    AliceMessages msg;
    msg.z_check.assign(bytes.begin() + 20, bytes.begin() + 20 + want);
    msg.syndrome.assign(bytes.begin() + 20 + want, bytes.end());
    for (gf_sym s : msg.z_check)
        if (s >= (1u << params.split.d))
            throw std::invalid_argument("decode_messages: LSB symbol out of range");
    for (gf_sym s : msg.syndrome)
        if (!params.code->field.contains(s))
            throw std::invalid_argument("decode_messages: syndrome symbol out of field");
    return msg;
}

} // namespace nbldpc
