// CoIC-layer PKE: a CPFE instance whose single issued key carries a random
// hidden attribute x. Encryption always sends the canonical selector skeleton
// with both branches hardwired to the message, so honest ciphertexts are
// constant circuits of a fixed shape and decryption returns the message for
// every x.

#pragma once

#include <cstddef>

#include <json.hpp>

#include "keylease/circuit.hpp"
#include "keylease/common.hpp"
#include "keylease/cpfe.hpp"
#include "keylease/rng.hpp"

namespace keylease::coic {

inline constexpr std::size_t kDefaultAttrLen = 8;
inline constexpr std::size_t kDefaultMsgLen = 16;

struct CoicEncKey {
    std::size_t attr_len = 0;
    std::size_t msg_len = 0;
    cpfe::CpfeMpk mpk;
};

struct CoicDecKey {
    std::size_t attr_len = 0;
    std::size_t msg_len = 0;
    cpfe::CpfeSecretKey sk;
};

struct CoicKeyPair {
    CoicEncKey ek;
    CoicDecKey dk;
};

struct CoicCiphertext {
    std::size_t msg_len = 0;
    cpfe::CpfeCiphertext ct;
};

inline CoicKeyPair coic_kg(std::size_t attr_len, std::size_t msg_len, Rng& rng) {
    if (attr_len == 0) throw parameter_error("coic_kg: attribute length must be positive");
    if (msg_len == 0) throw parameter_error("coic_kg: message length must be positive");
    cpfe::CpfeMasterKeys master = cpfe::cpfe_setup(attr_len, rng);
    Bits x = rng.bits(attr_len);
    CoicKeyPair kp;
    kp.ek = {attr_len, msg_len, std::move(master.mpk)};
    kp.dk = {attr_len, msg_len, cpfe::cpfe_kg(master.msk, x)};
    return kp;
}

inline CoicCiphertext coic_enc(const CoicEncKey& ek, const Bits& m, Rng& rng) {
    if (m.size() != ek.msg_len) throw parameter_error("coic_enc: message width mismatch");
    circuit::BoolCircuit c = circuit::build_const_circuit(m, ek.attr_len);
    return {ek.msg_len, cpfe::cpfe_enc(ek.mpk, c, rng)};
}

inline Bits coic_dec(const CoicDecKey& dk, const CoicCiphertext& ct) {
    Bits m = cpfe::cpfe_dec(dk.sk, ct.ct);
    if (m.size() != ct.msg_len) throw corrupt_ciphertext_error("coic_dec: payload width mismatch");
    return m;
}

// Challenge-side encryption for the CoIC game: a selector circuit that
// outputs m_{b XOR x[i]}, same shape as the honest constant circuit.
inline CoicCiphertext coic_enc_branch(const CoicEncKey& ek, std::uint8_t b, const Bits& m0,
                                      const Bits& m1, std::size_t sel_index, Rng& rng) {
    if (m0.size() != ek.msg_len || m1.size() != ek.msg_len)
        throw parameter_error("coic_enc_branch: message width mismatch");
    circuit::BoolCircuit c = circuit::build_mux_circuit(b, m0, m1, sel_index, ek.attr_len);
    return {ek.msg_len, cpfe::cpfe_enc(ek.mpk, c, rng)};
}

// Fixed-width bit encoding of the decryption key, used to place it inside a
// simulator register: the attribute bits followed by each position key's
// coefficients. Total on arbitrary bitstrings (coefficients reduce mod q).
inline std::size_t coic_dk_bit_width(std::size_t attr_len,
                                     const pke::LweParams& params = cpfe::label_pke_params()) {
    return attr_len + attr_len * pke::dk_bit_width(params);
}

inline Bits coic_dk_to_bits(const CoicDecKey& dk) {
    Bits out = dk.sk.x;
    for (const pke::PkeDecKey& k : dk.sk.dks) {
        Bits kb = pke::dk_to_bits(k);
        out.insert(out.end(), kb.begin(), kb.end());
    }
    return out;
}

inline CoicDecKey coic_dk_from_bits(std::size_t attr_len, std::size_t msg_len, const Bits& bits,
                                    const pke::LweParams& params = cpfe::label_pke_params()) {
    if (bits.size() != coic_dk_bit_width(attr_len, params))
        throw decode_error("coic_dk_from_bits: wrong width");
    CoicDecKey dk;
    dk.attr_len = attr_len;
    dk.msg_len = msg_len;
    dk.sk.x = slice_bits(bits, 0, attr_len);
    std::size_t step = pke::dk_bit_width(params);
    for (std::size_t i = 0; i < attr_len; ++i) {
        std::size_t from = attr_len + i * step;
        dk.sk.dks.push_back(pke::dk_from_bits(params, slice_bits(bits, from, from + step)));
    }
    return dk;
}

// --- JSON ---

inline void to_json(nlohmann::json& j, const CoicEncKey& k) {
    j = {{"attr_len", k.attr_len}, {"msg_len", k.msg_len}, {"mpk", k.mpk}};
}
inline void from_json(const nlohmann::json& j, CoicEncKey& k) {
    j.at("attr_len").get_to(k.attr_len);
    j.at("msg_len").get_to(k.msg_len);
    j.at("mpk").get_to(k.mpk);
}
inline void to_json(nlohmann::json& j, const CoicDecKey& k) {
    j = {{"attr_len", k.attr_len}, {"msg_len", k.msg_len}, {"sk", k.sk}};
}
inline void from_json(const nlohmann::json& j, CoicDecKey& k) {
    j.at("attr_len").get_to(k.attr_len);
    j.at("msg_len").get_to(k.msg_len);
    j.at("sk").get_to(k.sk);
}
inline void to_json(nlohmann::json& j, const CoicCiphertext& c) {
    j = {{"msg_len", c.msg_len}, {"ct", c.ct}};
}
inline void from_json(const nlohmann::json& j, CoicCiphertext& c) {
    j.at("msg_len").get_to(c.msg_len);
    j.at("ct").get_to(c.ct);
}

}  // namespace keylease::coic
