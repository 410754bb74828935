// One-key ciphertext-policy functional encryption from PKE plus garbled
// circuits: setup makes a PKE keypair per (input position, bit), encryption
// garbles the circuit and encrypts each input label under the matching
// position key, and a secret key for x releases exactly the labels for x.

#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "keylease/circuit.hpp"
#include "keylease/common.hpp"
#include "keylease/garble.hpp"
#include "keylease/pke.hpp"
#include "keylease/rng.hpp"

namespace keylease::cpfe {

inline pke::LweParams label_pke_params(std::size_t kappa = garble::kDefaultKappa) {
    pke::LweParams p;
    p.payload_bits = static_cast<std::uint32_t>(kappa);
    return p;
}

struct CpfeMpk {
    std::size_t ell = 0;
    std::vector<pke::PkeEncKey> eks;  // 2*ell, index 2*i + b
};

struct CpfeMsk {
    std::size_t ell = 0;
    std::vector<pke::PkeDecKey> dks;  // 2*ell, index 2*i + b
};

struct CpfeMasterKeys {
    CpfeMpk mpk;
    CpfeMsk msk;
};

struct CpfeSecretKey {
    Bits x;
    std::vector<pke::PkeDecKey> dks;  // ell, dks[i] decrypts position (i, x[i])
};

struct CpfeCiphertext {
    garble::GarbledCircuit gc;
    std::vector<pke::PkeCiphertext> label_cts;  // 2*ell, index 2*i + b
};

inline CpfeMasterKeys cpfe_setup(std::size_t ell, Rng& rng,
                                 const pke::LweParams& params = label_pke_params()) {
    if (ell == 0) throw parameter_error("cpfe_setup: attribute length must be positive");
    CpfeMasterKeys keys;
    keys.mpk.ell = ell;
    keys.msk.ell = ell;
    keys.mpk.eks.reserve(2 * ell);
    keys.msk.dks.reserve(2 * ell);
    for (std::size_t i = 0; i < 2 * ell; ++i) {
        pke::PkeKeyPair kp = pke::pke_kg(params, rng);
        keys.mpk.eks.push_back(std::move(kp.ek));
        keys.msk.dks.push_back(std::move(kp.dk));
    }
    return keys;
}

inline CpfeSecretKey cpfe_kg(const CpfeMsk& msk, const Bits& x) {
    if (x.size() != msk.ell) throw parameter_error("cpfe_kg: attribute width mismatch");
    CpfeSecretKey sk;
    sk.x = x;
    sk.dks.reserve(msk.ell);
    for (std::size_t i = 0; i < msk.ell; ++i) sk.dks.push_back(msk.dks[2 * i + x[i]]);
    return sk;
}

inline CpfeCiphertext cpfe_enc(const CpfeMpk& mpk, const circuit::BoolCircuit& c, Rng& rng) {
    if (c.input_width != mpk.ell) throw parameter_error("cpfe_enc: circuit input width mismatch");
    auto [pairs, gc] = garble::garble(c, rng);
    CpfeCiphertext ct;
    ct.gc = std::move(gc);
    ct.label_cts.reserve(2 * mpk.ell);
    for (std::size_t i = 0; i < mpk.ell; ++i) {
        ct.label_cts.push_back(pke::pke_enc(mpk.eks[2 * i], pairs[i].lab0, rng));
        ct.label_cts.push_back(pke::pke_enc(mpk.eks[2 * i + 1], pairs[i].lab1, rng));
    }
    return ct;
}

inline Bits cpfe_dec(const CpfeSecretKey& sk, const CpfeCiphertext& ct) {
    if (ct.gc.shape.input_width != sk.x.size())
        throw parameter_error("cpfe_dec: attribute/ciphertext width mismatch");
    std::vector<Bits> labels;
    labels.reserve(sk.x.size());
    try {
        for (std::size_t i = 0; i < sk.x.size(); ++i)
            labels.push_back(pke::pke_dec(sk.dks[i], ct.label_cts[2 * i + sk.x[i]]));
        return garble::gc_eval(ct.gc, labels);
    } catch (const decode_error& e) {
        throw corrupt_ciphertext_error(std::string("cpfe_dec: ") + e.what());
    }
}

// --- JSON ---

inline void to_json(nlohmann::json& j, const CpfeMpk& k) {
    j = {{"ell", k.ell}, {"eks", k.eks}};
}
inline void from_json(const nlohmann::json& j, CpfeMpk& k) {
    j.at("ell").get_to(k.ell);
    j.at("eks").get_to(k.eks);
}
inline void to_json(nlohmann::json& j, const CpfeMsk& k) {
    j = {{"ell", k.ell}, {"dks", k.dks}};
}
inline void from_json(const nlohmann::json& j, CpfeMsk& k) {
    j.at("ell").get_to(k.ell);
    j.at("dks").get_to(k.dks);
}
inline void to_json(nlohmann::json& j, const CpfeMasterKeys& k) {
    j = {{"mpk", k.mpk}, {"msk", k.msk}};
}
inline void from_json(const nlohmann::json& j, CpfeMasterKeys& k) {
    j.at("mpk").get_to(k.mpk);
    j.at("msk").get_to(k.msk);
}
inline void to_json(nlohmann::json& j, const CpfeSecretKey& k) {
    j = {{"x", bits_to_hex(k.x)}, {"x_bits", k.x.size()}, {"dks", k.dks}};
}
inline void from_json(const nlohmann::json& j, CpfeSecretKey& k) {
    k.x = hex_to_bits(j.at("x").get<std::string>(), j.at("x_bits").get<std::size_t>());
    j.at("dks").get_to(k.dks);
}
inline void to_json(nlohmann::json& j, const CpfeCiphertext& c) {
    j = {{"gc", c.gc}, {"label_cts", c.label_cts}};
}
inline void from_json(const nlohmann::json& j, CpfeCiphertext& c) {
    j.at("gc").get_to(c.gc);
    j.at("label_cts").get_to(c.label_cts);
}

}  // namespace keylease::cpfe
