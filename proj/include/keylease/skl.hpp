// PKE with secure key leasing. The quantum decryption key is a product of
// per-block states (|0,dk_0> + |1,dk_1>)/sqrt(2) over pairs of CoIC keypairs.
// Decryption computes the block plaintext coherently into a fresh register,
// measures it, and discards it; since both branches agree on honest
// ciphertexts the key is undisturbed. Verification is the binary projective
// measurement onto the honest key state. A Goldreich-Levin lift gives bit
// encryption on top of the one-way scheme, and the OMUR wrapper prepends a
// decryptability check to verification.

#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include <json.hpp>

#include "keylease/coic.hpp"
#include "keylease/common.hpp"
#include "keylease/qsim.hpp"
#include "keylease/rng.hpp"

namespace keylease::skl {

struct SklEncKey {
    std::size_t lambda_blocks = 0;
    std::size_t attr_len = coic::kDefaultAttrLen;
    std::size_t msg_len = coic::kDefaultMsgLen;
    std::vector<std::array<coic::CoicEncKey, 2>> blocks;
};

struct SklVerKey {
    std::size_t lambda_blocks = 0;
    std::size_t attr_len = coic::kDefaultAttrLen;
    std::size_t msg_len = coic::kDefaultMsgLen;
    std::vector<std::array<coic::CoicDecKey, 2>> blocks;
};

// Simulated quantum decryption key: one Ket per block over registers
// (b: 1 bit, dk: encoded CoIC key).
struct QuantumKey {
    std::size_t attr_len = coic::kDefaultAttrLen;
    std::size_t msg_len = coic::kDefaultMsgLen;
    std::vector<qsim::Ket> blocks;
};

struct SklKeyTriple {
    SklEncKey ek;
    QuantumKey qdk;
    SklVerKey vk;
};

struct SklCiphertext {
    std::size_t msg_len = coic::kDefaultMsgLen;
    std::vector<std::array<coic::CoicCiphertext, 2>> blocks;
};

struct VerificationOutcome {
    bool accepted = false;
    QuantumKey post_key;
};

inline qsim::RegisterLayout block_layout(std::size_t attr_len) {
    std::size_t w = coic::coic_dk_bit_width(attr_len);
    return qsim::RegisterLayout({{"b", 1}, {"dk", w}});
}

inline qsim::Ket honest_block_ket(const std::array<coic::CoicDecKey, 2>& dks,
                                  std::size_t attr_len) {
    qsim::RegisterLayout layout = block_layout(attr_len);
    return qsim::superpose(layout, {{{Bits{0}, coic::coic_dk_to_bits(dks[0])}, {1.0, 0.0}},
                                    {{Bits{1}, coic::coic_dk_to_bits(dks[1])}, {1.0, 0.0}}});
}

inline SklKeyTriple skl_kg(std::size_t lambda_blocks, Rng& rng,
                           std::size_t attr_len = coic::kDefaultAttrLen,
                           std::size_t msg_len = coic::kDefaultMsgLen) {
    if (lambda_blocks == 0) throw parameter_error("skl_kg: block count must be positive");
    SklKeyTriple t;
    t.ek = {lambda_blocks, attr_len, msg_len, {}};
    t.vk = {lambda_blocks, attr_len, msg_len, {}};
    t.qdk = {attr_len, msg_len, {}};
    for (std::size_t i = 0; i < lambda_blocks; ++i) {
        coic::CoicKeyPair kp0 = coic::coic_kg(attr_len, msg_len, rng);
        coic::CoicKeyPair kp1 = coic::coic_kg(attr_len, msg_len, rng);
        t.vk.blocks.push_back({kp0.dk, kp1.dk});
        t.ek.blocks.push_back({std::move(kp0.ek), std::move(kp1.ek)});
        t.qdk.blocks.push_back(honest_block_ket(t.vk.blocks.back(), attr_len));
    }
    return t;
}

inline SklCiphertext skl_enc(const SklEncKey& ek, const Bits& m, Rng& rng) {
    if (m.size() != ek.lambda_blocks * ek.msg_len)
        throw parameter_error("skl_enc: message length must be lambda_blocks * msg_len");
    SklCiphertext ct;
    ct.msg_len = ek.msg_len;
    for (std::size_t i = 0; i < ek.lambda_blocks; ++i) {
        Bits mi = slice_bits(m, i * ek.msg_len, (i + 1) * ek.msg_len);
        ct.blocks.push_back({coic::coic_enc(ek.blocks[i][0], mi, rng),
                             coic::coic_enc(ek.blocks[i][1], mi, rng)});
    }
    return ct;
}

// Coherent decryption of one block: extend each branch with the CoIC
// plaintext, measure the output register, then discard it. Total on
// arbitrary branch contents: keys that fail to decrypt yield all-zeros.
inline std::pair<Bits, qsim::Ket> skl_dec_block(const qsim::Ket& block,
                                                const std::array<coic::CoicCiphertext, 2>& cts,
                                                std::size_t attr_len, std::size_t msg_len,
                                                Rng& rng) {
    auto f = [&](const std::vector<Bits>& args) -> Bits {
        std::uint8_t b = args[0][0];
        try {
            coic::CoicDecKey dk = coic::coic_dk_from_bits(attr_len, msg_len, args[1]);
            return coic::coic_dec(dk, cts[b]);
        } catch (const corrupt_ciphertext_error&) {
            return Bits(msg_len, 0);
        }
    };
    qsim::Ket extended = block.apply_classical({"b", "dk"}, "out", msg_len, f);
    auto [value, post] = extended.measure_register("out", rng);
    return {value, post.strip_register("out")};
}

inline std::pair<Bits, QuantumKey> skl_dec(const QuantumKey& qdk, const SklCiphertext& ct,
                                           Rng& rng) {
    if (qdk.blocks.size() != ct.blocks.size())
        throw parameter_error("skl_dec: block count mismatch");
    Bits m;
    QuantumKey post = {qdk.attr_len, qdk.msg_len, {}};
    for (std::size_t i = 0; i < qdk.blocks.size(); ++i) {
        auto [mi, post_block] =
            skl_dec_block(qdk.blocks[i], ct.blocks[i], qdk.attr_len, qdk.msg_len, rng);
        m.insert(m.end(), mi.begin(), mi.end());
        post.blocks.push_back(std::move(post_block));
    }
    return {m, post};
}

inline VerificationOutcome skl_vrfy(const SklVerKey& vk, const QuantumKey& returned, Rng& rng) {
    if (returned.blocks.size() != vk.lambda_blocks)
        throw layout_error("skl_vrfy: block count mismatch");
    VerificationOutcome out;
    out.accepted = true;
    out.post_key = {vk.attr_len, vk.msg_len, {}};
    for (std::size_t i = 0; i < vk.lambda_blocks; ++i) {
        qsim::Ket target = honest_block_ket(vk.blocks[i], vk.attr_len);
        auto [ok, post] = returned.blocks[i].project(target, rng);
        out.accepted = out.accepted && ok;
        out.post_key.blocks.push_back(std::move(post));
    }
    return out;
}

// Joint form for adversaries that entangle blocks: registers renamed to
// b1,dk1,...,b<n>,dk<n> in one Ket.
inline qsim::Ket merge_key(const QuantumKey& qdk) {
    if (qdk.blocks.empty()) throw parameter_error("merge_key: no blocks");
    std::size_t w = coic::coic_dk_bit_width(qdk.attr_len);
    qsim::Ket joint;
    for (std::size_t i = 0; i < qdk.blocks.size(); ++i) {
        std::string suffix = std::to_string(i + 1);
        qsim::RegisterLayout layout({{"b" + suffix, 1}, {"dk" + suffix, w}},
                                    qsim::kDefaultWidthCap * qdk.blocks.size());
        std::vector<std::pair<std::vector<Bits>, qsim::Amplitude>> entries;
        for (const auto& [label, amp] : qdk.blocks[i].terms())
            entries.push_back({{slice_bits(label, 0, 1), slice_bits(label, 1, 1 + w)}, amp});
        qsim::Ket renamed = qsim::superpose(layout, entries);
        joint = i == 0 ? renamed : joint.tensor(renamed);
    }
    return joint;
}

inline std::pair<bool, qsim::Ket> skl_vrfy_joint(const SklVerKey& vk, const qsim::Ket& returned,
                                                 Rng& rng) {
    QuantumKey honest = {vk.attr_len, vk.msg_len, {}};
    for (const auto& dks : vk.blocks) honest.blocks.push_back(honest_block_ket(dks, vk.attr_len));
    return returned.project(merge_key(honest), rng);
}

inline std::uint8_t inner_product_bits(const Bits& x, const Bits& r) {
    if (x.size() != r.size()) throw parameter_error("inner_product_bits: length mismatch");
    std::uint8_t acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc ^= static_cast<std::uint8_t>(x[i] & r[i]);
    return acc;
}

// Goldreich-Levin bit encryption over the one-way scheme: encrypt a random
// x, publish the mask r and b = (x.r) XOR m.
struct GlCiphertext {
    SklCiphertext ow_ct;
    Bits r;
    std::uint8_t b = 0;
};

inline GlCiphertext gl_enc(const SklEncKey& ek, std::uint8_t m, Rng& rng) {
    std::size_t n = ek.lambda_blocks * ek.msg_len;
    Bits x = rng.bits(n);
    GlCiphertext ct;
    ct.ow_ct = skl_enc(ek, x, rng);
    ct.r = rng.bits(n);
    ct.b = inner_product_bits(x, ct.r) ^ (m & 1u);
    return ct;
}

inline std::pair<std::uint8_t, QuantumKey> gl_dec(const QuantumKey& qdk, const GlCiphertext& ct,
                                                  Rng& rng) {
    auto [x, post] = skl_dec(qdk, ct.ow_ct, rng);
    return {static_cast<std::uint8_t>(inner_product_bits(x, ct.r) ^ ct.b), std::move(post)};
}

inline std::vector<GlCiphertext> gl_enc_multi(const SklEncKey& ek, const Bits& m, Rng& rng) {
    std::vector<GlCiphertext> cts;
    cts.reserve(m.size());
    for (std::uint8_t bit : m) cts.push_back(gl_enc(ek, bit, rng));
    return cts;
}

inline std::pair<Bits, QuantumKey> gl_dec_multi(const QuantumKey& qdk,
                                                const std::vector<GlCiphertext>& cts, Rng& rng) {
    Bits m;
    QuantumKey state = qdk;
    for (const GlCiphertext& ct : cts) {
        auto [bit, post] = gl_dec(state, ct, rng);
        m.push_back(bit);
        state = std::move(post);
    }
    return {m, std::move(state)};
}

// One-more-unreturnability wrapper: verify that the returned key still
// decrypts a fresh random ciphertext (gentle on honest keys), then run the
// original projective verification on the post-decryption state.
inline VerificationOutcome omur_vrfy(const SklVerKey& vk, const SklEncKey& ek,
                                     const QuantumKey& returned, Rng& rng) {
    Bits m = rng.bits(ek.lambda_blocks * ek.msg_len);
    SklCiphertext ct = skl_enc(ek, m, rng);
    auto [decrypted, post] = skl_dec(returned, ct, rng);
    if (decrypted != m) return {false, std::move(post)};
    return skl_vrfy(vk, post, rng);
}

// --- JSON ---

inline void to_json(nlohmann::json& j, const SklEncKey& k) {
    auto blocks = nlohmann::json::array();
    for (const auto& b : k.blocks) blocks.push_back({b[0], b[1]});
    j = {{"lambda_blocks", k.lambda_blocks},
         {"attr_len", k.attr_len},
         {"msg_len", k.msg_len},
         {"blocks", blocks}};
}
inline void from_json(const nlohmann::json& j, SklEncKey& k) {
    j.at("lambda_blocks").get_to(k.lambda_blocks);
    j.at("attr_len").get_to(k.attr_len);
    j.at("msg_len").get_to(k.msg_len);
    k.blocks.clear();
    for (const auto& b : j.at("blocks"))
        k.blocks.push_back({b.at(0).get<coic::CoicEncKey>(), b.at(1).get<coic::CoicEncKey>()});
}
inline void to_json(nlohmann::json& j, const SklVerKey& k) {
    auto blocks = nlohmann::json::array();
    for (const auto& b : k.blocks) blocks.push_back({b[0], b[1]});
    j = {{"lambda_blocks", k.lambda_blocks},
         {"attr_len", k.attr_len},
         {"msg_len", k.msg_len},
         {"blocks", blocks}};
}
inline void from_json(const nlohmann::json& j, SklVerKey& k) {
    j.at("lambda_blocks").get_to(k.lambda_blocks);
    j.at("attr_len").get_to(k.attr_len);
    j.at("msg_len").get_to(k.msg_len);
    k.blocks.clear();
    for (const auto& b : j.at("blocks"))
        k.blocks.push_back({b.at(0).get<coic::CoicDecKey>(), b.at(1).get<coic::CoicDecKey>()});
}
inline void to_json(nlohmann::json& j, const SklCiphertext& c) {
    auto blocks = nlohmann::json::array();
    for (const auto& b : c.blocks) blocks.push_back({b[0], b[1]});
    j = {{"msg_len", c.msg_len}, {"blocks", blocks}};
}
inline void from_json(const nlohmann::json& j, SklCiphertext& c) {
    j.at("msg_len").get_to(c.msg_len);
    c.blocks.clear();
    for (const auto& b : j.at("blocks"))
        c.blocks.push_back(
            {b.at(0).get<coic::CoicCiphertext>(), b.at(1).get<coic::CoicCiphertext>()});
}
inline void to_json(nlohmann::json& j, const GlCiphertext& c) {
    j = {{"ow_ct", c.ow_ct}, {"r", bits_to_hex(c.r)}, {"r_bits", c.r.size()}, {"b", c.b}};
}
inline void from_json(const nlohmann::json& j, GlCiphertext& c) {
    j.at("ow_ct").get_to(c.ow_ct);
    c.r = hex_to_bits(j.at("r").get<std::string>(), j.at("r_bits").get<std::size_t>());
    c.b = j.at("b").get<std::uint8_t>();
}
inline void to_json(nlohmann::json& j, const QuantumKey& k) {
    auto blocks = nlohmann::json::array();
    for (const auto& b : k.blocks) blocks.push_back(b.to_json());
    j = {{"attr_len", k.attr_len}, {"msg_len", k.msg_len}, {"blocks", blocks}};
}
inline void from_json(const nlohmann::json& j, QuantumKey& k) {
    j.at("attr_len").get_to(k.attr_len);
    j.at("msg_len").get_to(k.msg_len);
    k.blocks.clear();
    for (const auto& b : j.at("blocks")) k.blocks.push_back(qsim::Ket::from_json(b));
}

}  // namespace keylease::skl
