// Boolean-circuit IR: topologically ordered gate list over numbered wires.
// Wires 0..input_width-1 are inputs; gate i defines wire input_width + i.

#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "keylease/common.hpp"

namespace keylease::circuit {

enum class GateOp { And, Xor, Not, Const0, Const1 };

inline const char* gate_op_name(GateOp op) {
    switch (op) {
        case GateOp::And: return "AND";
        case GateOp::Xor: return "XOR";
        case GateOp::Not: return "NOT";
        case GateOp::Const0: return "CONST0";
        case GateOp::Const1: return "CONST1";
    }
    return "?";
}

inline std::size_t gate_arity(GateOp op) {
    switch (op) {
        case GateOp::And:
        case GateOp::Xor: return 2;
        case GateOp::Not: return 1;
        default: return 0;
    }
}

struct Gate {
    GateOp op;
    std::size_t a = 0;  // first input wire (unused for consts)
    std::size_t b = 0;  // second input wire (binary gates only)
};

struct BoolCircuit {
    std::size_t input_width = 0;
    std::vector<Gate> gates;
    std::vector<std::size_t> outputs;  // wire ids

    std::size_t output_width() const { return outputs.size(); }
    std::size_t wire_count() const { return input_width + gates.size(); }

    void validate() const {
        if (input_width == 0) throw parameter_error("circuit has no inputs");
        for (std::size_t i = 0; i < gates.size(); ++i) {
            const Gate& g = gates[i];
            std::size_t defined = input_width + i;  // wires strictly below are defined
            std::size_t arity = gate_arity(g.op);
            if (arity >= 1 && g.a >= defined)
                throw parameter_error("gate " + std::to_string(i) + " reads undefined wire");
            if (arity == 2 && g.b >= defined)
                throw parameter_error("gate " + std::to_string(i) + " reads undefined wire");
        }
        if (outputs.empty()) throw parameter_error("circuit has no outputs");
        for (std::size_t w : outputs)
            if (w >= wire_count()) throw parameter_error("output refers to undefined wire");
    }
};

inline Bits eval_circuit(const BoolCircuit& c, const Bits& x) {
    if (x.size() != c.input_width)
        throw parameter_error("eval_circuit: input width mismatch");
    std::vector<std::uint8_t> wire(c.wire_count());
    for (std::size_t i = 0; i < x.size(); ++i) wire[i] = x[i];
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        std::uint8_t v = 0;
        switch (g.op) {
            case GateOp::And: v = wire[g.a] & wire[g.b]; break;
            case GateOp::Xor: v = wire[g.a] ^ wire[g.b]; break;
            case GateOp::Not: v = wire[g.a] ^ 1u; break;
            case GateOp::Const0: v = 0; break;
            case GateOp::Const1: v = 1; break;
        }
        wire[c.input_width + i] = v;
    }
    Bits out(c.outputs.size());
    for (std::size_t j = 0; j < c.outputs.size(); ++j) out[j] = wire[c.outputs[j]];
    return out;
}

// Canonical selector skeleton shared by the constant and mux builders:
// two shared constant wires feed every baked-in bit, so circuits built for
// the same (input_width, output_width) have identical gate skeletons and
// differ only in which constant wire each connection picks.
//
// Output j computes m0[j] XOR (s AND (m0[j] XOR m1[j])) with
// s = x[sel] XOR b, i.e. the output is m_{b XOR x[sel]}.
inline BoolCircuit build_mux_circuit(std::uint8_t b, const Bits& m0, const Bits& m1,
                                     std::size_t sel_index, std::size_t input_width) {
    if (m0.size() != m1.size()) throw parameter_error("mux: branch widths differ");
    if (m0.empty()) throw parameter_error("mux: empty message");
    if (input_width == 0) throw parameter_error("mux: input width must be positive");
    if (sel_index < 1 || sel_index > input_width)
        throw parameter_error("mux: selector index out of range");
    BoolCircuit c;
    c.input_width = input_width;
    std::size_t zero = input_width + 0;
    std::size_t one = input_width + 1;
    c.gates.push_back({GateOp::Const0});
    c.gates.push_back({GateOp::Const1});
    auto const_wire = [&](std::uint8_t v) { return v ? one : zero; };
    // s = x[sel] XOR b
    c.gates.push_back({GateOp::Xor, sel_index - 1, const_wire(b)});
    std::size_t s = input_width + 2;
    for (std::size_t j = 0; j < m0.size(); ++j) {
        c.gates.push_back({GateOp::And, s, const_wire(static_cast<std::uint8_t>(m0[j] ^ m1[j]))});
        std::size_t andw = c.wire_count() - 1;
        c.gates.push_back({GateOp::Xor, const_wire(m0[j]), andw});
        c.outputs.push_back(c.wire_count() - 1);
    }
    c.validate();
    return c;
}

// Constant circuit with the mux skeleton: both branches hardwired to m, so
// its size equals the mux circuit's by construction.
inline BoolCircuit build_const_circuit(const Bits& m, std::size_t input_width) {
    return build_mux_circuit(0, m, m, 1, input_width);
}

// Structural signature quotienting out which input wire / constant wire a
// connection picks: equal signatures mean equal garbled-table dimensions.
inline std::string shape_signature(const BoolCircuit& c) {
    auto classify = [&](std::size_t w) -> std::string {
        if (w < c.input_width) return "I";
        const Gate& g = c.gates[w - c.input_width];
        if (g.op == GateOp::Const0 || g.op == GateOp::Const1) return "C";
        return "w" + std::to_string(w);
    };
    std::ostringstream os;
    os << "in" << c.input_width << ";";
    for (const Gate& g : c.gates) {
        switch (g.op) {
            case GateOp::Const0:
            case GateOp::Const1: os << "CONST;"; break;
            case GateOp::Not: os << "NOT(" << classify(g.a) << ");"; break;
            default:
                os << gate_op_name(g.op) << "(" << classify(g.a) << "," << classify(g.b) << ");";
        }
    }
    os << "out";
    for (std::size_t w : c.outputs) os << " " << classify(w);
    return os.str();
}

// Text format: header `inputs L outputs K`, one gate per line
// `w<i> = OP w<a> [w<b>]`, trailing `out w... w...` line.
inline std::string to_text(const BoolCircuit& c) {
    std::ostringstream os;
    os << "inputs " << c.input_width << " outputs " << c.outputs.size() << "\n";
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        os << "w" << (c.input_width + i) << " = " << gate_op_name(g.op);
        if (gate_arity(g.op) >= 1) os << " w" << g.a;
        if (gate_arity(g.op) == 2) os << " w" << g.b;
        os << "\n";
    }
    os << "out";
    for (std::size_t w : c.outputs) os << " w" << w;
    os << "\n";
    return os.str();
}

inline BoolCircuit from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    BoolCircuit c;
    std::size_t declared_outputs = 0;
    if (!(in >> tok) || tok != "inputs") throw decode_error("circuit text: missing 'inputs'");
    if (!(in >> c.input_width)) throw decode_error("circuit text: bad input width");
    if (!(in >> tok) || tok != "outputs") throw decode_error("circuit text: missing 'outputs'");
    if (!(in >> declared_outputs)) throw decode_error("circuit text: bad output count");
    auto parse_wire = [&](const std::string& s) -> std::size_t {
        if (s.size() < 2 || s[0] != 'w') throw decode_error("circuit text: bad wire '" + s + "'");
        return static_cast<std::size_t>(std::stoull(s.substr(1)));
    };
    while (in >> tok) {
        if (tok == "out") {
            std::string w;
            while (in >> w) c.outputs.push_back(parse_wire(w));
            break;
        }
        std::size_t def = parse_wire(tok);
        if (def != c.wire_count()) throw decode_error("circuit text: wires out of order");
        std::string eq, opname;
        if (!(in >> eq >> opname) || eq != "=") throw decode_error("circuit text: expected '='");
        Gate g{};
        if (opname == "AND") g.op = GateOp::And;
        else if (opname == "XOR") g.op = GateOp::Xor;
        else if (opname == "NOT") g.op = GateOp::Not;
        else if (opname == "CONST0") g.op = GateOp::Const0;
        else if (opname == "CONST1") g.op = GateOp::Const1;
        else throw decode_error("circuit text: unknown op '" + opname + "'");
        std::string w;
        if (gate_arity(g.op) >= 1) { in >> w; g.a = parse_wire(w); }
        if (gate_arity(g.op) == 2) { in >> w; g.b = parse_wire(w); }
        c.gates.push_back(g);
    }
    if (c.outputs.size() != declared_outputs)
        throw decode_error("circuit text: output count mismatch");
    c.validate();
    return c;
}

}  // namespace keylease::circuit
