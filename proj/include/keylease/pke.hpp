// Toy Regev-style LWE public-key encryption with uniform ternary secrets and
// noise. Parameters are chosen so that the worst-case accumulated noise stays
// strictly below q/4, which makes decryption exact (no decryption error),
// useful for deterministic tests. No cryptographic strength is claimed at
// these sizes.

#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "keylease/common.hpp"
#include "keylease/rng.hpp"

namespace keylease::pke {

struct LweParams {
    std::uint32_t n = 32;       // secret dimension
    std::uint32_t m = 32;       // number of samples (rows of A)
    std::uint32_t q = 12289;    // modulus
    std::uint32_t payload_bits = 128;

    // Worst-case noise is |<e,r>| <= m (ternary e, binary r), plus < 1 of
    // rounding slack; exactness needs m + 1 < q/4.
    void validate() const {
        if (n == 0 || m == 0 || payload_bits == 0)
            throw parameter_error("lwe: n, m, payload_bits must be positive");
        if (q <= 4 * (n + 1) || q <= 4 * (m + 1))
            throw parameter_error("lwe: modulus too small for the exact-correctness bound");
    }

    std::uint32_t coeff_bits() const {
        std::uint32_t b = 0, v = q - 1;
        while (v) { ++b; v >>= 1; }
        return b;
    }
};

inline bool operator==(const LweParams& a, const LweParams& b) {
    return a.n == b.n && a.m == b.m && a.q == b.q && a.payload_bits == b.payload_bits;
}

struct PkeEncKey {
    LweParams params;
    std::vector<std::uint16_t> a;  // m x n row-major
    std::vector<std::uint16_t> b;  // m
};

struct PkeDecKey {
    LweParams params;
    std::vector<std::uint16_t> s;  // n, values mod q
};

struct PkeKeyPair {
    PkeEncKey ek;
    PkeDecKey dk;
};

struct PkeCiphertext {
    LweParams params;
    // One slot per message bit: n-vector a and scalar c.
    std::vector<std::uint16_t> slots_a;  // bits x n
    std::vector<std::uint16_t> slots_c;  // bits
    std::size_t bit_count = 0;
};

namespace detail {
inline std::uint16_t ternary(Rng& rng, std::uint32_t q) {
    std::uint64_t t = rng.below(3);  // 0 -> -1, 1 -> 0, 2 -> +1
    if (t == 0) return static_cast<std::uint16_t>(q - 1);
    if (t == 2) return 1;
    return 0;
}
}  // namespace detail

inline PkeKeyPair pke_kg(const LweParams& params, Rng& rng) {
    params.validate();
    PkeKeyPair kp;
    kp.ek.params = params;
    kp.dk.params = params;
    kp.dk.s.resize(params.n);
    for (auto& v : kp.dk.s) v = detail::ternary(rng, params.q);
    kp.ek.a.resize(static_cast<std::size_t>(params.m) * params.n);
    for (auto& v : kp.ek.a) v = static_cast<std::uint16_t>(rng.below(params.q));
    kp.ek.b.resize(params.m);
    for (std::uint32_t i = 0; i < params.m; ++i) {
        std::uint64_t acc = 0;
        const std::uint16_t* row = kp.ek.a.data() + static_cast<std::size_t>(i) * params.n;
        for (std::uint32_t j = 0; j < params.n; ++j)
            acc += static_cast<std::uint64_t>(row[j]) * kp.dk.s[j];
        acc += detail::ternary(rng, params.q);
        kp.ek.b[i] = static_cast<std::uint16_t>(acc % params.q);
    }
    return kp;
}

inline PkeCiphertext pke_enc(const PkeEncKey& ek, const Bits& m, Rng& rng) {
    const LweParams& p = ek.params;
    if (m.size() > p.payload_bits)
        throw parameter_error("pke_enc: message exceeds payload width");
    PkeCiphertext ct;
    ct.params = p;
    ct.bit_count = m.size();
    ct.slots_a.resize(m.size() * p.n);
    ct.slots_c.resize(m.size());
    std::uint32_t half = p.q / 2;
    std::vector<std::uint32_t> a(p.n);
    for (std::size_t bit = 0; bit < m.size(); ++bit) {
        std::fill(a.begin(), a.end(), 0u);
        std::uint64_t c = 0;
        for (std::uint32_t i = 0; i < p.m; ++i) {
            if (!rng.bit()) continue;
            const std::uint16_t* row = ek.a.data() + static_cast<std::size_t>(i) * p.n;
            for (std::uint32_t j = 0; j < p.n; ++j) a[j] += row[j];
            c += ek.b[i];
        }
        std::uint16_t* out = ct.slots_a.data() + bit * p.n;
        for (std::uint32_t j = 0; j < p.n; ++j) out[j] = static_cast<std::uint16_t>(a[j] % p.q);
        if (m[bit]) c += half;
        ct.slots_c[bit] = static_cast<std::uint16_t>(c % p.q);
    }
    return ct;
}

inline Bits pke_dec(const PkeDecKey& dk, const PkeCiphertext& ct) {
    const LweParams& p = dk.params;
    if (!(ct.params == p)) throw parameter_error("pke_dec: parameter mismatch");
    Bits out(ct.bit_count);
    for (std::size_t bit = 0; bit < ct.bit_count; ++bit) {
        const std::uint16_t* a = ct.slots_a.data() + bit * p.n;
        std::uint64_t dot = 0;
        for (std::uint32_t j = 0; j < p.n; ++j)
            dot += static_cast<std::uint64_t>(a[j]) * dk.s[j];
        std::uint32_t d = static_cast<std::uint32_t>(
            (ct.slots_c[bit] + p.q - static_cast<std::uint32_t>(dot % p.q)) % p.q);
        std::uint32_t dist0 = std::min(d, p.q - d);  // distance from 0 mod q
        out[bit] = dist0 > p.q / 4 ? 1 : 0;
    }
    return out;
}

// Fixed-width bit encoding of the secret (for embedding keys in simulator
// registers). Decoding reduces coefficients mod q so it is total on arbitrary
// bitstrings; honest keys round-trip exactly.
inline std::size_t dk_bit_width(const LweParams& p) {
    return static_cast<std::size_t>(p.n) * p.coeff_bits();
}

inline Bits dk_to_bits(const PkeDecKey& dk) {
    Bits out;
    out.reserve(dk_bit_width(dk.params));
    for (std::uint16_t v : dk.s) append_uint_bits(out, v, dk.params.coeff_bits());
    return out;
}

inline PkeDecKey dk_from_bits(const LweParams& params, const Bits& bits) {
    if (bits.size() != dk_bit_width(params))
        throw decode_error("dk_from_bits: wrong width");
    PkeDecKey dk;
    dk.params = params;
    dk.s.resize(params.n);
    std::size_t pos = 0;
    for (std::uint32_t j = 0; j < params.n; ++j)
        dk.s[j] = static_cast<std::uint16_t>(read_uint_bits(bits, pos, params.coeff_bits()) % params.q);
    return dk;
}

// --- JSON ---

inline void to_json(nlohmann::json& j, const LweParams& p) {
    j = {{"n", p.n}, {"m", p.m}, {"q", p.q}, {"payload_bits", p.payload_bits}};
}
inline void from_json(const nlohmann::json& j, LweParams& p) {
    j.at("n").get_to(p.n);
    j.at("m").get_to(p.m);
    j.at("q").get_to(p.q);
    j.at("payload_bits").get_to(p.payload_bits);
}
inline void to_json(nlohmann::json& j, const PkeEncKey& k) {
    j = {{"params", k.params}, {"a", k.a}, {"b", k.b}};
}
inline void from_json(const nlohmann::json& j, PkeEncKey& k) {
    j.at("params").get_to(k.params);
    j.at("a").get_to(k.a);
    j.at("b").get_to(k.b);
}
inline void to_json(nlohmann::json& j, const PkeDecKey& k) {
    j = {{"params", k.params}, {"s", k.s}};
}
inline void from_json(const nlohmann::json& j, PkeDecKey& k) {
    j.at("params").get_to(k.params);
    j.at("s").get_to(k.s);
}
inline void to_json(nlohmann::json& j, const PkeCiphertext& c) {
    j = {{"params", c.params}, {"a", c.slots_a}, {"c", c.slots_c}, {"bits", c.bit_count}};
}
inline void from_json(const nlohmann::json& j, PkeCiphertext& c) {
    j.at("params").get_to(c.params);
    j.at("a").get_to(c.slots_a);
    j.at("c").get_to(c.slots_c);
    j.at("bits").get_to(c.bit_count);
}

}  // namespace keylease::pke
