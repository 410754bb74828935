// Yao garbling with point-and-permute. Each wire carries a pair of kappa-bit
// labels whose last bit is the color; binary gates ship four rows ordered by
// the input colors, each row the XOR of (out_label || 0^kappa) with a keyed
// stream derived from the two input labels and the gate/row position. NOT
// gates are free (label-pair swap) and constant gates store their single
// active label.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "keylease/circuit.hpp"
#include "keylease/common.hpp"
#include "keylease/rng.hpp"

namespace keylease::garble {

inline constexpr std::size_t kDefaultKappa = 128;

namespace detail {

// ChaCha20 block function (RFC 8439 core), used as the row-encryption PRF.
inline void chacha20_block(const std::array<std::uint8_t, 32>& key,
                           const std::array<std::uint8_t, 12>& nonce,
                           std::uint32_t counter,
                           std::uint8_t out[64]) {
    auto load32 = [](const std::uint8_t* p) {
        return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
               (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    };
    std::uint32_t st[16] = {0x61707865u, 0x3320646eu, 0x79622d32u, 0x6b206574u};
    for (int i = 0; i < 8; ++i) st[4 + i] = load32(key.data() + 4 * i);
    st[12] = counter;
    for (int i = 0; i < 3; ++i) st[13 + i] = load32(nonce.data() + 4 * i);
    std::uint32_t x[16];
    for (int i = 0; i < 16; ++i) x[i] = st[i];
    auto rotl = [](std::uint32_t v, int r) { return (v << r) | (v >> (32 - r)); };
    auto qr = [&](int a, int b, int c, int d) {
        x[a] += x[b]; x[d] ^= x[a]; x[d] = rotl(x[d], 16);
        x[c] += x[d]; x[b] ^= x[c]; x[b] = rotl(x[b], 12);
        x[a] += x[b]; x[d] ^= x[a]; x[d] = rotl(x[d], 8);
        x[c] += x[d]; x[b] ^= x[c]; x[b] = rotl(x[b], 7);
    };
    for (int round = 0; round < 10; ++round) {
        qr(0, 4, 8, 12); qr(1, 5, 9, 13); qr(2, 6, 10, 14); qr(3, 7, 11, 15);
        qr(0, 5, 10, 15); qr(1, 6, 11, 12); qr(2, 7, 8, 13); qr(3, 4, 9, 14);
    }
    for (int i = 0; i < 16; ++i) {
        std::uint32_t v = x[i] + st[i];
        out[4 * i] = static_cast<std::uint8_t>(v);
        out[4 * i + 1] = static_cast<std::uint8_t>(v >> 8);
        out[4 * i + 2] = static_cast<std::uint8_t>(v >> 16);
        out[4 * i + 3] = static_cast<std::uint8_t>(v >> 24);
    }
}

inline std::vector<std::uint8_t> pack_bits(const Bits& b) {
    std::vector<std::uint8_t> out((b.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return out;
}

// Stream of `nbits` pseudorandom bits keyed by the two input labels; for
// kappa = 128 the key is exactly labA || labB packed, longer labels fold in
// cyclically.
inline Bits prf_stream(const Bits& lab_a, const Bits& lab_b,
                       std::uint64_t gate_id, std::uint32_t row, std::size_t nbits) {
    std::array<std::uint8_t, 32> key{};
    auto a = pack_bits(lab_a);
    auto b = pack_bits(lab_b);
    for (std::size_t i = 0; i < a.size(); ++i) key[i % 16] ^= a[i];
    for (std::size_t i = 0; i < b.size(); ++i) key[16 + (i % 16)] ^= b[i];
    std::array<std::uint8_t, 12> nonce{};
    for (int i = 0; i < 8; ++i) nonce[i] = static_cast<std::uint8_t>(gate_id >> (8 * i));
    for (int i = 0; i < 4; ++i) nonce[8 + i] = static_cast<std::uint8_t>(row >> (8 * i));
    Bits out(nbits);
    std::uint8_t block[64];
    for (std::size_t pos = 0; pos < nbits; pos += 512) {
        chacha20_block(key, nonce, static_cast<std::uint32_t>(pos / 512), block);
        std::size_t take = std::min<std::size_t>(512, nbits - pos);
        for (std::size_t i = 0; i < take; ++i)
            out[pos + i] = (block[i / 8] >> (7 - (i % 8))) & 1u;
    }
    return out;
}

}  // namespace detail

struct WireLabelPair {
    Bits lab0;
    Bits lab1;
};

inline std::uint8_t label_color(const Bits& lab) { return lab.back(); }

struct GarbledGate {
    std::vector<Bits> rows;  // 4 rows of 2*kappa bits for binary gates
    Bits const_label;        // active label for CONST gates
};

struct GarbledCircuit {
    std::size_t kappa = kDefaultKappa;
    circuit::BoolCircuit shape;
    std::vector<GarbledGate> gates;
    Bits decode;  // one bit per output wire
};

namespace detail {
inline WireLabelPair fresh_pair(Rng& rng, std::size_t kappa) {
    WireLabelPair p;
    p.lab0 = rng.bits(kappa);
    p.lab1 = rng.bits(kappa);
    p.lab1.back() = p.lab0.back() ^ 1u;  // opposite colors, hence distinct
    return p;
}

inline Bits encrypt_row(const Bits& out_label, const Bits& key_a, const Bits& key_b,
                        std::uint64_t gate_id, std::uint32_t row, std::size_t kappa) {
    Bits plain = out_label;
    plain.resize(2 * kappa, 0);  // trailing zero authenticator
    return xor_bits(plain, prf_stream(key_a, key_b, gate_id, row, 2 * kappa));
}
}  // namespace detail

inline std::pair<std::vector<WireLabelPair>, GarbledCircuit>
garble(const circuit::BoolCircuit& c, Rng& rng, std::size_t kappa = kDefaultKappa) {
    c.validate();
    if (kappa < 8) throw parameter_error("garble: label width too small");
    std::vector<WireLabelPair> pair(c.wire_count());
    for (std::size_t i = 0; i < c.input_width; ++i) pair[i] = detail::fresh_pair(rng, kappa);
    GarbledCircuit gc;
    gc.kappa = kappa;
    gc.shape = c;
    gc.gates.resize(c.gates.size());
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const circuit::Gate& g = c.gates[i];
        std::size_t w = c.input_width + i;
        switch (g.op) {
            case circuit::GateOp::Const0:
            case circuit::GateOp::Const1: {
                pair[w] = detail::fresh_pair(rng, kappa);
                std::uint8_t v = g.op == circuit::GateOp::Const1 ? 1 : 0;
                gc.gates[i].const_label = v ? pair[w].lab1 : pair[w].lab0;
                break;
            }
            case circuit::GateOp::Not:
                pair[w] = {pair[g.a].lab1, pair[g.a].lab0};
                break;
            case circuit::GateOp::And:
            case circuit::GateOp::Xor: {
                pair[w] = detail::fresh_pair(rng, kappa);
                gc.gates[i].rows.resize(4);
                for (std::uint8_t va = 0; va <= 1; ++va) {
                    for (std::uint8_t vb = 0; vb <= 1; ++vb) {
                        const Bits& la = va ? pair[g.a].lab1 : pair[g.a].lab0;
                        const Bits& lb = vb ? pair[g.b].lab1 : pair[g.b].lab0;
                        std::uint8_t out_bit = g.op == circuit::GateOp::And
                                                   ? static_cast<std::uint8_t>(va & vb)
                                                   : static_cast<std::uint8_t>(va ^ vb);
                        const Bits& lo = out_bit ? pair[w].lab1 : pair[w].lab0;
                        std::uint32_t row =
                            static_cast<std::uint32_t>(label_color(la)) * 2 + label_color(lb);
                        gc.gates[i].rows[row] = detail::encrypt_row(lo, la, lb, i, row, kappa);
                    }
                }
                break;
            }
        }
    }
    gc.decode.resize(c.outputs.size());
    for (std::size_t j = 0; j < c.outputs.size(); ++j)
        gc.decode[j] = label_color(pair[c.outputs[j]].lab0);
    std::vector<WireLabelPair> input_pairs(pair.begin(),
                                           pair.begin() + static_cast<std::ptrdiff_t>(c.input_width));
    return {std::move(input_pairs), std::move(gc)};
}

inline Bits gc_eval(const GarbledCircuit& gc, const std::vector<Bits>& input_labels) {
    const circuit::BoolCircuit& c = gc.shape;
    if (input_labels.size() != c.input_width)
        throw parameter_error("gc_eval: wrong number of input labels");
    std::vector<Bits> active(c.wire_count());
    for (std::size_t i = 0; i < c.input_width; ++i) {
        if (input_labels[i].size() != gc.kappa)
            throw decode_error("gc_eval: input label has wrong width");
        active[i] = input_labels[i];
    }
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const circuit::Gate& g = c.gates[i];
        std::size_t w = c.input_width + i;
        switch (g.op) {
            case circuit::GateOp::Const0:
            case circuit::GateOp::Const1:
                active[w] = gc.gates[i].const_label;
                break;
            case circuit::GateOp::Not:
                active[w] = active[g.a];
                break;
            case circuit::GateOp::And:
            case circuit::GateOp::Xor: {
                const Bits& la = active[g.a];
                const Bits& lb = active[g.b];
                std::uint32_t row =
                    static_cast<std::uint32_t>(label_color(la)) * 2 + label_color(lb);
                Bits plain = xor_bits(gc.gates[i].rows[row],
                                      detail::prf_stream(la, lb, i, row, 2 * gc.kappa));
                for (std::size_t k = gc.kappa; k < 2 * gc.kappa; ++k)
                    if (plain[k]) throw decode_error("gc_eval: row authenticator check failed");
                active[w] = slice_bits(plain, 0, gc.kappa);
                break;
            }
        }
    }
    Bits out(c.outputs.size());
    for (std::size_t j = 0; j < c.outputs.size(); ++j)
        out[j] = label_color(active[c.outputs[j]]) ^ gc.decode[j];
    return out;
}

// Garbling simulator: given only the circuit shape and the output y, emit a
// fake garbled circuit plus one label per input wire that evaluates to y.
// Table dimensions match the real garbling; inactive rows are uniform.
inline std::pair<std::vector<Bits>, GarbledCircuit>
sim_gc(const circuit::BoolCircuit& shape, const Bits& y, Rng& rng,
       std::size_t kappa = kDefaultKappa) {
    shape.validate();
    if (y.size() != shape.outputs.size())
        throw parameter_error("sim_gc: output width mismatch");
    std::vector<Bits> active(shape.wire_count());
    for (std::size_t i = 0; i < shape.input_width; ++i) active[i] = rng.bits(kappa);
    GarbledCircuit gc;
    gc.kappa = kappa;
    gc.shape = shape;
    gc.gates.resize(shape.gates.size());
    for (std::size_t i = 0; i < shape.gates.size(); ++i) {
        const circuit::Gate& g = shape.gates[i];
        std::size_t w = shape.input_width + i;
        switch (g.op) {
            case circuit::GateOp::Const0:
            case circuit::GateOp::Const1:
                active[w] = rng.bits(kappa);
                gc.gates[i].const_label = active[w];
                break;
            case circuit::GateOp::Not:
                active[w] = active[g.a];
                break;
            case circuit::GateOp::And:
            case circuit::GateOp::Xor: {
                active[w] = rng.bits(kappa);
                gc.gates[i].rows.resize(4);
                std::uint32_t live =
                    static_cast<std::uint32_t>(label_color(active[g.a])) * 2 +
                    label_color(active[g.b]);
                for (std::uint32_t row = 0; row < 4; ++row)
                    gc.gates[i].rows[row] =
                        row == live
                            ? detail::encrypt_row(active[w], active[g.a], active[g.b], i, row, kappa)
                            : rng.bits(2 * kappa);
                break;
            }
        }
    }
    gc.decode.resize(shape.outputs.size());
    for (std::size_t j = 0; j < shape.outputs.size(); ++j)
        gc.decode[j] = label_color(active[shape.outputs[j]]) ^ y[j];
    std::vector<Bits> labels(active.begin(),
                             active.begin() + static_cast<std::ptrdiff_t>(shape.input_width));
    return {std::move(labels), std::move(gc)};
}

// --- JSON ---
// Labels and rows are hex; widths are recovered from kappa. The circuit
// shape rides along in its text format.

inline void to_json(nlohmann::json& j, const GarbledGate& g) {
    j = nlohmann::json::object();
    if (!g.rows.empty()) {
        auto rows = nlohmann::json::array();
        for (const Bits& r : g.rows) rows.push_back(bits_to_hex(r));
        j["rows"] = rows;
    }
    if (!g.const_label.empty()) j["const"] = bits_to_hex(g.const_label);
}

inline void to_json(nlohmann::json& j, const GarbledCircuit& gc) {
    j = {{"kappa", gc.kappa},
         {"shape", circuit::to_text(gc.shape)},
         {"gates", gc.gates},
         {"decode", bits_to_hex(gc.decode)}};
}

inline void from_json(const nlohmann::json& j, GarbledCircuit& gc) {
    j.at("kappa").get_to(gc.kappa);
    gc.shape = circuit::from_text(j.at("shape").get<std::string>());
    gc.gates.clear();
    gc.gates.resize(gc.shape.gates.size());
    const auto& gates = j.at("gates");
    if (gates.size() != gc.gates.size()) throw decode_error("garbled circuit: gate count mismatch");
    for (std::size_t i = 0; i < gc.gates.size(); ++i) {
        const auto& g = gates[i];
        if (g.contains("rows")) {
            for (const auto& r : g.at("rows"))
                gc.gates[i].rows.push_back(hex_to_bits(r.get<std::string>(), 2 * gc.kappa));
            if (gc.gates[i].rows.size() != 4) throw decode_error("garbled circuit: bad row count");
        }
        if (g.contains("const"))
            gc.gates[i].const_label = hex_to_bits(g.at("const").get<std::string>(), gc.kappa);
    }
    gc.decode = hex_to_bits(j.at("decode").get<std::string>(), gc.shape.outputs.size());
}

}  // namespace keylease::garble
