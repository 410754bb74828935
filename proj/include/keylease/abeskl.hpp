// Attribute-based encryption with secure key leasing. Three layers:
//  - a toy equality-relation ABE (identity-based): one PKE instance per
//    (position, bit) and an n-way XOR sharing of the payload;
//  - XorSkl, a minimal leasing scheme whose encryption is XOR-only and hence
//    directly expressible as a boolean circuit;
//  - the 1-bounded conversion (garble the XorSkl encryption circuit, release
//    labels through ABE) and the q-bounded balls-and-bins grid on top of it.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "keylease/circuit.hpp"
#include "keylease/common.hpp"
#include "keylease/cpfe.hpp"
#include "keylease/garble.hpp"
#include "keylease/pke.hpp"
#include "keylease/qsim.hpp"
#include "keylease/rng.hpp"

namespace keylease::abeskl {

// --- Toy equality-relation ABE (IBE) ---

struct ToyAbePk {
    std::size_t id_bits = 0;
    std::vector<pke::PkeEncKey> eks;  // 2*id_bits, index 2*i + b
};

struct ToyAbeMsk {
    std::size_t id_bits = 0;
    std::vector<pke::PkeDecKey> dks;
};

struct ToyAbeSk {
    Bits y;
    std::vector<pke::PkeDecKey> dks;  // id_bits, dks[i] for position (i, y[i])
};

struct ToyAbeCt {
    Bits x;
    std::size_t msg_len = 0;
    std::vector<pke::PkeCiphertext> shares;  // id_bits, share i under (i, x[i])
};

inline std::pair<ToyAbePk, ToyAbeMsk> toy_abe_setup(std::size_t id_bits, Rng& rng,
                                                    const pke::LweParams& params) {
    if (id_bits == 0) throw parameter_error("toy_abe_setup: identity width must be positive");
    ToyAbePk pk{id_bits, {}};
    ToyAbeMsk msk{id_bits, {}};
    for (std::size_t i = 0; i < 2 * id_bits; ++i) {
        pke::PkeKeyPair kp = pke::pke_kg(params, rng);
        pk.eks.push_back(std::move(kp.ek));
        msk.dks.push_back(std::move(kp.dk));
    }
    return {std::move(pk), std::move(msk)};
}

inline ToyAbeSk toy_abe_kg(const ToyAbeMsk& msk, const Bits& y) {
    if (y.size() != msk.id_bits) throw parameter_error("toy_abe_kg: identity width mismatch");
    ToyAbeSk sk{y, {}};
    for (std::size_t i = 0; i < msk.id_bits; ++i) sk.dks.push_back(msk.dks[2 * i + y[i]]);
    return sk;
}

inline ToyAbeCt toy_abe_enc(const ToyAbePk& pk, const Bits& x, const Bits& m, Rng& rng) {
    if (x.size() != pk.id_bits) throw parameter_error("toy_abe_enc: identity width mismatch");
    ToyAbeCt ct{x, m.size(), {}};
    Bits last = m;
    for (std::size_t i = 0; i < pk.id_bits; ++i) {
        Bits share = i + 1 < pk.id_bits ? rng.bits(m.size()) : last;
        if (i + 1 < pk.id_bits) last = xor_bits(last, share);
        ct.shares.push_back(pke::pke_enc(pk.eks[2 * i + x[i]], share, rng));
    }
    return ct;
}

inline std::optional<Bits> toy_abe_dec(const ToyAbeSk& sk, const Bits& x, const ToyAbeCt& ct) {
    if (sk.y != x) return std::nullopt;  // relation R(x, y) = [x = y]
    Bits m(ct.msg_len, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        m = xor_bits(m, pke::pke_dec(sk.dks[i], ct.shares[i]));
    return m;
}

// --- XorSkl: leasing with XOR-only encryption ---

struct XorSklEncKey {
    Bits p0;
    Bits p1;
};

struct XorSklVerKey {
    Bits d0;
    Bits d1;
};

struct XorSklKeys {
    XorSklEncKey ek;
    qsim::Ket qdk;  // registers (b: 1, d: ell)
    XorSklVerKey vk;
};

struct XorSklCiphertext {
    Bits c0;
    Bits c1;
    Bits r;
};

inline qsim::RegisterLayout xor_skl_layout(std::size_t ell) {
    return qsim::RegisterLayout({{"b", 1}, {"d", ell}});
}

inline qsim::Ket xor_skl_honest_ket(const XorSklVerKey& vk) {
    return qsim::superpose(xor_skl_layout(vk.d0.size()),
                           {{{Bits{0}, vk.d0}, {1.0, 0.0}}, {{Bits{1}, vk.d1}, {1.0, 0.0}}});
}

inline XorSklKeys xor_skl_kg(std::size_t ell, Rng& rng) {
    if (ell == 0) throw parameter_error("xor_skl_kg: pad width must be positive");
    XorSklKeys keys;
    keys.ek = {rng.bits(ell), rng.bits(ell)};
    keys.vk = {keys.ek.p0, keys.ek.p1};
    keys.qdk = xor_skl_honest_ket(keys.vk);
    return keys;
}

inline XorSklCiphertext xor_skl_enc(const XorSklEncKey& ek, const Bits& m, const Bits& r) {
    if (m.size() != ek.p0.size() || r.size() != m.size())
        throw parameter_error("xor_skl_enc: width mismatch");
    return {xor_bits(xor_bits(m, ek.p0), r), xor_bits(xor_bits(m, ek.p1), r), r};
}

inline XorSklCiphertext xor_skl_enc(const XorSklEncKey& ek, const Bits& m, Rng& rng) {
    return xor_skl_enc(ek, m, rng.bits(m.size()));
}

inline std::pair<Bits, qsim::Ket> xor_skl_dec(const qsim::Ket& qdk, const XorSklCiphertext& ct,
                                              Rng& rng) {
    std::size_t ell = ct.r.size();
    auto f = [&](const std::vector<Bits>& args) -> Bits {
        const Bits& branch = args[0][0] ? ct.c1 : ct.c0;
        return xor_bits(xor_bits(branch, args[1]), ct.r);
    };
    qsim::Ket extended = qdk.apply_classical({"b", "d"}, "out", ell, f);
    auto [m, post] = extended.measure_register("out", rng);
    return {m, post.strip_register("out")};
}

inline std::pair<bool, qsim::Ket> xor_skl_vrfy(const XorSklVerKey& vk, const qsim::Ket& returned,
                                               Rng& rng) {
    return returned.project(xor_skl_honest_ket(vk), rng);
}

// The XorSkl encryption function as a circuit: input wires are the 2*ell
// encryption-key bits (p0 || p1), message and randomness are baked in as
// connections to two shared constant wires, so the gate skeleton depends
// only on ell.
inline circuit::BoolCircuit xor_skl_enc_circuit(const Bits& m, const Bits& r) {
    if (m.size() != r.size()) throw parameter_error("xor_skl_enc_circuit: width mismatch");
    if (m.empty()) throw parameter_error("xor_skl_enc_circuit: empty message");
    std::size_t ell = m.size();
    circuit::BoolCircuit c;
    c.input_width = 2 * ell;
    c.gates.push_back({circuit::GateOp::Const0});
    c.gates.push_back({circuit::GateOp::Const1});
    std::size_t zero = c.input_width;
    std::size_t one = c.input_width + 1;
    auto const_wire = [&](std::uint8_t v) { return v ? one : zero; };
    for (std::size_t j = 0; j < ell; ++j) {  // c0[j] = p0[j] ^ (m[j] ^ r[j])
        c.gates.push_back({circuit::GateOp::Xor, j, const_wire(m[j] ^ r[j])});
        c.outputs.push_back(c.wire_count() - 1);
    }
    for (std::size_t j = 0; j < ell; ++j) {  // c1[j] = p1[j] ^ (m[j] ^ r[j])
        c.gates.push_back({circuit::GateOp::Xor, ell + j, const_wire(m[j] ^ r[j])});
        c.outputs.push_back(c.wire_count() - 1);
    }
    for (std::size_t j = 0; j < ell; ++j) c.outputs.push_back(const_wire(r[j]));
    c.validate();
    return c;
}

inline Bits xor_skl_ct_to_bits(const XorSklCiphertext& ct) {
    return concat_bits(concat_bits(ct.c0, ct.c1), ct.r);
}

inline XorSklCiphertext xor_skl_ct_from_bits(const Bits& bits) {
    if (bits.size() % 3 != 0) throw decode_error("xor_skl_ct_from_bits: width not divisible by 3");
    std::size_t ell = bits.size() / 3;
    return {slice_bits(bits, 0, ell), slice_bits(bits, ell, 2 * ell),
            slice_bits(bits, 2 * ell, 3 * ell)};
}

// --- 1-bounded ABE-SKL ---

struct Abe1Pk {
    std::size_t id_bits = 0;
    std::size_t ell = 0;  // XorSkl pad width; ell_ek = 2*ell
    std::vector<ToyAbePk> instances;  // 2*ell_ek, index 2*i + b
};

struct Abe1Msk {
    std::size_t id_bits = 0;
    std::size_t ell = 0;
    std::vector<ToyAbeMsk> instances;
};

struct Abe1Qusk {
    Bits y;
    Bits skl_ek_bits;                // p0 || p1, selects the ABE instances
    std::vector<ToyAbeSk> abe_keys;  // ell_ek, key i from instance (i, skl_ek_bits[i])
    qsim::Ket qdk;
};

struct Abe1Vk {
    XorSklVerKey vk;
};

struct Abe1Ciphertext {
    Bits x;
    garble::GarbledCircuit gc;
    std::vector<ToyAbeCt> label_cts;  // 2*ell_ek, index 2*i + b
};

inline std::size_t abe1_ell_ek(std::size_t ell) { return 2 * ell; }

inline std::pair<Abe1Pk, Abe1Msk> abe1_setup(std::size_t id_bits, std::size_t ell, Rng& rng) {
    if (id_bits == 0 || ell == 0) throw parameter_error("abe1_setup: widths must be positive");
    Abe1Pk pk{id_bits, ell, {}};
    Abe1Msk msk{id_bits, ell, {}};
    pke::LweParams params = cpfe::label_pke_params();
    for (std::size_t i = 0; i < 2 * abe1_ell_ek(ell); ++i) {
        auto [ipk, imsk] = toy_abe_setup(id_bits, rng, params);
        pk.instances.push_back(std::move(ipk));
        msk.instances.push_back(std::move(imsk));
    }
    return {std::move(pk), std::move(msk)};
}

inline std::pair<Abe1Qusk, Abe1Vk> abe1_kg(const Abe1Msk& msk, const Bits& y, Rng& rng) {
    if (y.size() != msk.id_bits) throw parameter_error("abe1_kg: identity width mismatch");
    XorSklKeys skl = xor_skl_kg(msk.ell, rng);
    Abe1Qusk qusk;
    qusk.y = y;
    qusk.skl_ek_bits = concat_bits(skl.ek.p0, skl.ek.p1);
    for (std::size_t i = 0; i < abe1_ell_ek(msk.ell); ++i)
        qusk.abe_keys.push_back(toy_abe_kg(msk.instances[2 * i + qusk.skl_ek_bits[i]], y));
    qusk.qdk = std::move(skl.qdk);
    return {std::move(qusk), Abe1Vk{skl.vk}};
}

inline Abe1Ciphertext abe1_enc(const Abe1Pk& pk, const Bits& x, const Bits& m, Rng& rng) {
    if (x.size() != pk.id_bits) throw parameter_error("abe1_enc: identity width mismatch");
    if (m.size() != pk.ell) throw parameter_error("abe1_enc: message width mismatch");
    Bits r = rng.bits(pk.ell);
    circuit::BoolCircuit e = xor_skl_enc_circuit(m, r);
    auto [pairs, gc] = garble::garble(e, rng);
    Abe1Ciphertext ct;
    ct.x = x;
    ct.gc = std::move(gc);
    for (std::size_t i = 0; i < abe1_ell_ek(pk.ell); ++i) {
        ct.label_cts.push_back(toy_abe_enc(pk.instances[2 * i], x, pairs[i].lab0, rng));
        ct.label_cts.push_back(toy_abe_enc(pk.instances[2 * i + 1], x, pairs[i].lab1, rng));
    }
    return ct;
}

inline std::pair<std::optional<Bits>, qsim::Ket> abe1_dec(const Abe1Qusk& qusk, const Bits& x,
                                                          const Abe1Ciphertext& ct, Rng& rng) {
    std::vector<Bits> labels;
    for (std::size_t i = 0; i < qusk.skl_ek_bits.size(); ++i) {
        std::optional<Bits> lab =
            toy_abe_dec(qusk.abe_keys[i], x, ct.label_cts[2 * i + qusk.skl_ek_bits[i]]);
        if (!lab) return {std::nullopt, qusk.qdk};
        labels.push_back(std::move(*lab));
    }
    XorSklCiphertext skl_ct;
    try {
        skl_ct = xor_skl_ct_from_bits(garble::gc_eval(ct.gc, labels));
    } catch (const decode_error&) {
        return {std::nullopt, qusk.qdk};
    }
    auto [m, post] = xor_skl_dec(qusk.qdk, skl_ct, rng);
    return {std::move(m), std::move(post)};
}

inline std::pair<bool, qsim::Ket> abe1_vrfy(const Abe1Vk& vk, const qsim::Ket& returned,
                                            Rng& rng) {
    return xor_skl_vrfy(vk.vk, returned, rng);
}

// --- q-bounded conversion: v x w grid of 1-bounded instances ---

struct QAbePk {
    std::size_t v = 0;
    std::size_t w = 0;
    std::size_t id_bits = 0;
    std::size_t ell = 0;
    std::vector<Abe1Pk> grid;  // v*w row-major
};

struct QAbeMsk {
    std::size_t v = 0;
    std::size_t w = 0;
    std::size_t id_bits = 0;
    std::size_t ell = 0;
    std::vector<Abe1Msk> grid;
};

struct QAbeQusk {
    Bits y;
    std::vector<std::size_t> cols;  // j_i, one column choice per row
    std::vector<Abe1Qusk> keys;     // v inner keys
};

struct QAbeVk {
    std::vector<Abe1Vk> vks;  // v
};

struct QAbeCiphertext {
    Bits x;
    std::size_t msg_len = 0;
    std::vector<Abe1Ciphertext> cts;  // v*w row-major; row i encrypts share i
};

inline std::pair<QAbePk, QAbeMsk> qabe_setup(std::size_t v, std::size_t w, std::size_t id_bits,
                                             std::size_t msg_len, Rng& rng) {
    if (v == 0 || w == 0) throw parameter_error("qabe_setup: grid dimensions must be positive");
    QAbePk pk{v, w, id_bits, msg_len, {}};
    QAbeMsk msk{v, w, id_bits, msg_len, {}};
    for (std::size_t i = 0; i < v * w; ++i) {
        auto [ipk, imsk] = abe1_setup(id_bits, msg_len, rng);
        pk.grid.push_back(std::move(ipk));
        msk.grid.push_back(std::move(imsk));
    }
    return {std::move(pk), std::move(msk)};
}

inline std::pair<QAbeQusk, QAbeVk> qabe_kg(const QAbeMsk& msk, const Bits& y, Rng& rng) {
    QAbeQusk qusk;
    qusk.y = y;
    QAbeVk vk;
    for (std::size_t i = 0; i < msk.v; ++i) {
        std::size_t j = static_cast<std::size_t>(rng.below(msk.w));
        qusk.cols.push_back(j);
        auto [key, ivk] = abe1_kg(msk.grid[i * msk.w + j], y, rng);
        qusk.keys.push_back(std::move(key));
        vk.vks.push_back(ivk);
    }
    return {std::move(qusk), std::move(vk)};
}

// Splits m into v XOR shares; exposed so tests can check the share identity.
inline std::vector<Bits> qabe_shares(std::size_t v, const Bits& m, Rng& rng) {
    std::vector<Bits> shares;
    Bits acc = m;
    for (std::size_t i = 0; i + 1 < v; ++i) {
        shares.push_back(rng.bits(m.size()));
        acc = xor_bits(acc, shares.back());
    }
    shares.push_back(acc);
    return shares;
}

inline QAbeCiphertext qabe_enc(const QAbePk& pk, const Bits& x, const Bits& m, Rng& rng) {
    if (m.size() != pk.ell) throw parameter_error("qabe_enc: message width mismatch");
    QAbeCiphertext ct;
    ct.x = x;
    ct.msg_len = m.size();
    std::vector<Bits> shares = qabe_shares(pk.v, m, rng);
    for (std::size_t i = 0; i < pk.v; ++i)
        for (std::size_t j = 0; j < pk.w; ++j)
            ct.cts.push_back(abe1_enc(pk.grid[i * pk.w + j], x, shares[i], rng));
    return ct;
}

inline std::pair<std::optional<Bits>, QAbeQusk> qabe_dec(const QAbeQusk& qusk, const Bits& x,
                                                         const QAbeCiphertext& ct, Rng& rng) {
    std::size_t v = qusk.keys.size();
    std::size_t w = ct.cts.size() / v;
    QAbeQusk post = qusk;
    Bits m(ct.msg_len, 0);
    for (std::size_t i = 0; i < v; ++i) {
        auto [share, post_ket] =
            abe1_dec(qusk.keys[i], x, ct.cts[i * w + qusk.cols[i]], rng);
        post.keys[i].qdk = std::move(post_ket);
        if (!share) return {std::nullopt, std::move(post)};
        m = xor_bits(m, *share);
    }
    return {std::move(m), std::move(post)};
}

inline std::pair<bool, QAbeQusk> qabe_vrfy(const QAbeVk& vk, const QAbeQusk& returned, Rng& rng) {
    if (vk.vks.size() != returned.keys.size())
        throw layout_error("qabe_vrfy: key count mismatch");
    QAbeQusk post = returned;
    bool ok = true;
    for (std::size_t i = 0; i < vk.vks.size(); ++i) {
        auto [accept, post_ket] = abe1_vrfy(vk.vks[i], returned.keys[i].qdk, rng);
        ok = ok && accept;
        post.keys[i].qdk = std::move(post_ket);
    }
    return {ok, std::move(post)};
}

enum class QAbeMode { Selective, Adaptive };

inline std::pair<std::size_t, std::size_t> qabe_params(QAbeMode mode, std::size_t lambda,
                                                       std::size_t q, std::size_t n) {
    if (q == 0) throw parameter_error("qabe_params: key bound must be positive");
    std::size_t v = mode == QAbeMode::Selective ? lambda : 2 * (lambda + n);
    return {v, q * q};
}

// Probability that no row of the v x w grid assigns q sampled keys pairwise
// distinct columns: (1 - w(w-1)...(w-q+1)/w^q)^v.
inline double bins_distinctness_probability(std::size_t v, std::size_t w, std::size_t q) {
    if (v == 0 || w == 0) throw parameter_error("bins_distinctness_probability: empty grid");
    if (q > w) return 1.0;
    double distinct = 1.0;
    for (std::size_t t = 0; t < q; ++t)
        distinct *= static_cast<double>(w - t) / static_cast<double>(w);
    double per_row = 1.0 - distinct;
    double acc = 1.0;
    for (std::size_t i = 0; i < v; ++i) acc *= per_row;
    return acc;
}

// --- JSON ---

inline void to_json(nlohmann::json& j, const ToyAbePk& k) {
    j = {{"id_bits", k.id_bits}, {"eks", k.eks}};
}
inline void from_json(const nlohmann::json& j, ToyAbePk& k) {
    j.at("id_bits").get_to(k.id_bits);
    j.at("eks").get_to(k.eks);
}
inline void to_json(nlohmann::json& j, const ToyAbeMsk& k) {
    j = {{"id_bits", k.id_bits}, {"dks", k.dks}};
}
inline void from_json(const nlohmann::json& j, ToyAbeMsk& k) {
    j.at("id_bits").get_to(k.id_bits);
    j.at("dks").get_to(k.dks);
}
inline void to_json(nlohmann::json& j, const ToyAbeSk& k) {
    j = {{"y", bits_to_hex(k.y)}, {"y_bits", k.y.size()}, {"dks", k.dks}};
}
inline void from_json(const nlohmann::json& j, ToyAbeSk& k) {
    k.y = hex_to_bits(j.at("y").get<std::string>(), j.at("y_bits").get<std::size_t>());
    j.at("dks").get_to(k.dks);
}
inline void to_json(nlohmann::json& j, const ToyAbeCt& c) {
    j = {{"x", bits_to_hex(c.x)},
         {"x_bits", c.x.size()},
         {"msg_len", c.msg_len},
         {"shares", c.shares}};
}
inline void from_json(const nlohmann::json& j, ToyAbeCt& c) {
    c.x = hex_to_bits(j.at("x").get<std::string>(), j.at("x_bits").get<std::size_t>());
    j.at("msg_len").get_to(c.msg_len);
    j.at("shares").get_to(c.shares);
}
inline void to_json(nlohmann::json& j, const XorSklVerKey& k) {
    j = {{"d0", bits_to_hex(k.d0)}, {"d1", bits_to_hex(k.d1)}, {"ell", k.d0.size()}};
}
inline void from_json(const nlohmann::json& j, XorSklVerKey& k) {
    std::size_t ell = j.at("ell").get<std::size_t>();
    k.d0 = hex_to_bits(j.at("d0").get<std::string>(), ell);
    k.d1 = hex_to_bits(j.at("d1").get<std::string>(), ell);
}
inline void to_json(nlohmann::json& j, const Abe1Pk& k) {
    j = {{"id_bits", k.id_bits}, {"ell", k.ell}, {"instances", k.instances}};
}
inline void from_json(const nlohmann::json& j, Abe1Pk& k) {
    j.at("id_bits").get_to(k.id_bits);
    j.at("ell").get_to(k.ell);
    j.at("instances").get_to(k.instances);
}
inline void to_json(nlohmann::json& j, const Abe1Msk& k) {
    j = {{"id_bits", k.id_bits}, {"ell", k.ell}, {"instances", k.instances}};
}
inline void from_json(const nlohmann::json& j, Abe1Msk& k) {
    j.at("id_bits").get_to(k.id_bits);
    j.at("ell").get_to(k.ell);
    j.at("instances").get_to(k.instances);
}
inline void to_json(nlohmann::json& j, const Abe1Qusk& k) {
    j = {{"y", bits_to_hex(k.y)},
         {"y_bits", k.y.size()},
         {"skl_ek", bits_to_hex(k.skl_ek_bits)},
         {"abe_keys", k.abe_keys},
         {"qdk", k.qdk.to_json()}};
}
inline void from_json(const nlohmann::json& j, Abe1Qusk& k) {
    k.y = hex_to_bits(j.at("y").get<std::string>(), j.at("y_bits").get<std::size_t>());
    j.at("abe_keys").get_to(k.abe_keys);
    k.skl_ek_bits = hex_to_bits(j.at("skl_ek").get<std::string>(), k.abe_keys.size());
    k.qdk = qsim::Ket::from_json(j.at("qdk"));
}
inline void to_json(nlohmann::json& j, const Abe1Vk& k) { j = {{"vk", k.vk}}; }
inline void from_json(const nlohmann::json& j, Abe1Vk& k) { j.at("vk").get_to(k.vk); }
inline void to_json(nlohmann::json& j, const Abe1Ciphertext& c) {
    j = {{"x", bits_to_hex(c.x)},
         {"x_bits", c.x.size()},
         {"gc", c.gc},
         {"label_cts", c.label_cts}};
}
inline void from_json(const nlohmann::json& j, Abe1Ciphertext& c) {
    c.x = hex_to_bits(j.at("x").get<std::string>(), j.at("x_bits").get<std::size_t>());
    j.at("gc").get_to(c.gc);
    j.at("label_cts").get_to(c.label_cts);
}
inline void to_json(nlohmann::json& j, const QAbePk& k) {
    j = {{"v", k.v}, {"w", k.w}, {"id_bits", k.id_bits}, {"ell", k.ell}, {"grid", k.grid}};
}
inline void from_json(const nlohmann::json& j, QAbePk& k) {
    j.at("v").get_to(k.v);
    j.at("w").get_to(k.w);
    j.at("id_bits").get_to(k.id_bits);
    j.at("ell").get_to(k.ell);
    j.at("grid").get_to(k.grid);
}
inline void to_json(nlohmann::json& j, const QAbeQusk& k) {
    j = {{"y", bits_to_hex(k.y)}, {"y_bits", k.y.size()}, {"cols", k.cols}, {"keys", k.keys}};
}
inline void from_json(const nlohmann::json& j, QAbeQusk& k) {
    k.y = hex_to_bits(j.at("y").get<std::string>(), j.at("y_bits").get<std::size_t>());
    j.at("cols").get_to(k.cols);
    j.at("keys").get_to(k.keys);
}
inline void to_json(nlohmann::json& j, const QAbeVk& k) { j = {{"vks", k.vks}}; }
inline void from_json(const nlohmann::json& j, QAbeVk& k) { j.at("vks").get_to(k.vks); }
inline void to_json(nlohmann::json& j, const QAbeCiphertext& c) {
    j = {{"x", bits_to_hex(c.x)},
         {"x_bits", c.x.size()},
         {"msg_len", c.msg_len},
         {"cts", c.cts}};
}
inline void from_json(const nlohmann::json& j, QAbeCiphertext& c) {
    c.x = hex_to_bits(j.at("x").get<std::string>(), j.at("x_bits").get<std::size_t>());
    j.at("msg_len").get_to(c.msg_len);
    j.at("cts").get_to(c.cts);
}

}  // namespace keylease::abeskl
