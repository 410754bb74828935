// Exact sparse simulator for superpositions over tuples of classical
// bitstring registers. Supports coherent classical computation (XOR-write
// into a fresh zero register), computational-basis measurement of a single
// register, and binary projective measurement against a target state.
//
// Kets are immutable values: every operation returns a new state.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "keylease/common.hpp"
#include "keylease/rng.hpp"

namespace keylease::qsim {

using Amplitude = std::complex<double>;

// Terms with |amp| below this are dropped.
inline constexpr double kPruneThreshold = 1e-12;
// Tolerance on Σ|amp|² after public operations.
inline constexpr double kNormTol = 1e-9;
// Default cap on the total width of a basis label.
inline constexpr std::size_t kDefaultWidthCap = 4096;

struct Register {
    std::string name;
    std::size_t width = 0;
};

class RegisterLayout {
public:
    RegisterLayout() = default;

    explicit RegisterLayout(std::vector<Register> regs, std::size_t width_cap = kDefaultWidthCap)
        : regs_(std::move(regs)), cap_(width_cap) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < regs_.size(); ++i) {
            if (regs_[i].width == 0) throw layout_error("register '" + regs_[i].name + "' has width 0");
            for (std::size_t j = 0; j < i; ++j)
                if (regs_[j].name == regs_[i].name)
                    throw layout_error("duplicate register name '" + regs_[i].name + "'");
            total += regs_[i].width;
        }
        if (total > cap_)
            throw layout_error("total register width " + std::to_string(total) +
                               " exceeds cap " + std::to_string(cap_));
        total_ = total;
    }

    const std::vector<Register>& registers() const { return regs_; }
    std::size_t total_width() const { return total_; }
    std::size_t width_cap() const { return cap_; }

    bool has(const std::string& name) const {
        for (const auto& r : regs_)
            if (r.name == name) return true;
        return false;
    }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < regs_.size(); ++i)
            if (regs_[i].name == name) return i;
        throw layout_error("no register named '" + name + "'");
    }

    std::size_t offset_of(std::size_t index) const {
        std::size_t off = 0;
        for (std::size_t i = 0; i < index; ++i) off += regs_[i].width;
        return off;
    }

    bool operator==(const RegisterLayout& other) const {
        if (regs_.size() != other.regs_.size()) return false;
        for (std::size_t i = 0; i < regs_.size(); ++i)
            if (regs_[i].name != other.regs_[i].name || regs_[i].width != other.regs_[i].width)
                return false;
        return true;
    }

private:
    std::vector<Register> regs_;
    std::size_t cap_ = kDefaultWidthCap;
    std::size_t total_ = 0;
};

struct ProjectionResult;

class Ket {
public:
    // Basis label: the concatenation of all register bitstrings, in layout
    // order. std::map keeps iteration lexicographic.
    using TermMap = std::map<Bits, Amplitude>;

    Ket() = default;

    const RegisterLayout& layout() const { return layout_; }
    const TermMap& terms() const { return terms_; }

    static Ket basis(const RegisterLayout& layout, const std::vector<Bits>& values) {
        Ket k;
        k.layout_ = layout;
        k.terms_.emplace(flatten(layout, values), Amplitude{1.0, 0.0});
        return k;
    }

    static Ket superpose(const RegisterLayout& layout,
                         const std::vector<std::pair<std::vector<Bits>, Amplitude>>& entries) {
        if (entries.empty()) throw degenerate_state_error("superpose: no terms");
        Ket k;
        k.layout_ = layout;
        for (const auto& [values, amp] : entries) {
            Bits label = flatten(layout, values);
            if (k.terms_.count(label))
                throw layout_error("superpose: duplicate basis label");
            k.terms_.emplace(std::move(label), amp);
        }
        double n2 = k.norm_squared();
        if (n2 < kPruneThreshold) throw degenerate_state_error("superpose: all amplitudes vanish");
        k.scale(1.0 / std::sqrt(n2));
        k.prune();
        return k;
    }

    Ket tensor(const Ket& other) const {
        std::vector<Register> regs = layout_.registers();
        for (const auto& r : other.layout_.registers()) {
            if (layout_.has(r.name))
                throw layout_error("tensor: register name collision '" + r.name + "'");
            regs.push_back(r);
        }
        Ket out;
        out.layout_ = RegisterLayout(regs, layout_.width_cap() + other.layout_.width_cap());
        for (const auto& [la, aa] : terms_)
            for (const auto& [lb, ab] : other.terms_)
                out.terms_.emplace(concat_bits(la, lb), aa * ab);
        out.prune();
        return out;
    }

    // Coherent classical computation: extends every basis label with
    // f(inputs), writing into a fresh zero-initialized register. Labels are
    // extended injectively, so branches never interfere and the norm is
    // preserved exactly.
    Ket apply_classical(const std::vector<std::string>& inputs,
                        const std::string& output_name, std::size_t output_width,
                        const std::function<Bits(const std::vector<Bits>&)>& f) const {
        if (layout_.has(output_name))
            throw layout_error("apply_classical: register '" + output_name + "' already exists");
        std::vector<std::size_t> idx;
        idx.reserve(inputs.size());
        for (const auto& name : inputs) idx.push_back(layout_.index_of(name));

        std::vector<Register> regs = layout_.registers();
        regs.push_back({output_name, output_width});
        Ket out;
        out.layout_ = RegisterLayout(regs, layout_.width_cap() + output_width);
        for (const auto& [label, amp] : terms_) {
            std::vector<Bits> args;
            args.reserve(idx.size());
            for (std::size_t i : idx) args.push_back(extract(label, i));
            Bits result;
            try {
                result = f(args);
            } catch (const std::exception& e) {
                throw std::runtime_error(std::string("apply_classical: ") + e.what() +
                                         " [basis label " + bits_to_hex(label) + "]");
            }
            if (result.size() != output_width)
                throw layout_error("apply_classical: f returned wrong output width");
            out.terms_.emplace(concat_bits(label, result), amp);
        }
        return out;
    }

    // Computational-basis measurement of one register (Born rule); the post
    // state is the renormalized restriction.
    std::pair<Bits, Ket> measure_register(const std::string& name, Rng& rng) const {
        std::size_t idx = layout_.index_of(name);
        std::map<Bits, double> weights;
        for (const auto& [label, amp] : terms_) weights[extract(label, idx)] += std::norm(amp);
        double r = rng.real01();
        double acc = 0.0;
        Bits chosen = weights.begin()->first;
        for (const auto& [value, w] : weights) {
            acc += w;
            chosen = value;
            if (r < acc) break;
        }
        Ket post;
        post.layout_ = layout_;
        for (const auto& [label, amp] : terms_)
            if (extract(label, idx) == chosen) post.terms_.emplace(label, amp);
        post.scale(1.0 / std::sqrt(post.norm_squared()));
        post.prune();
        return {chosen, post};
    }

    // Removes a register whose value is identical across all terms (e.g. a
    // just-measured output register). Relabeling only; amplitudes unchanged.
    Ket strip_register(const std::string& name) const {
        std::size_t idx = layout_.index_of(name);
        std::size_t off = layout_.offset_of(idx);
        std::size_t w = layout_.registers()[idx].width;
        std::optional<Bits> common;
        Ket out;
        std::vector<Register> regs = layout_.registers();
        regs.erase(regs.begin() + static_cast<std::ptrdiff_t>(idx));
        out.layout_ = RegisterLayout(regs, layout_.width_cap());
        for (const auto& [label, amp] : terms_) {
            Bits value = slice_bits(label, off, off + w);
            if (!common) common = value;
            else if (*common != value)
                throw layout_error("strip_register: register '" + name + "' is not constant");
            Bits rest = slice_bits(label, 0, off);
            Bits tail = slice_bits(label, off + w, label.size());
            out.terms_.emplace(concat_bits(rest, tail), amp);
        }
        return out;
    }

    Amplitude inner_product(const Ket& other) const {
        require_same_layout(other);
        Amplitude acc{0.0, 0.0};
        for (const auto& [label, amp] : terms_) {
            auto it = other.terms_.find(label);
            if (it != other.terms_.end()) acc += std::conj(amp) * it->second;
        }
        return acc;
    }

    double fidelity(const Ket& other) const { return std::norm(inner_product(other)); }

    // Full analysis of the binary measurement (I - |t><t|, |t><t|).
    ProjectionResult projection_analysis(const Ket& target) const;

    // Samples the binary projective measurement outcome.
    std::pair<bool, Ket> project(const Ket& target, Rng& rng) const;

    double norm_squared() const {
        double acc = 0.0;
        for (const auto& [label, amp] : terms_) acc += std::norm(amp);
        return acc;
    }

    Bits register_value(const Bits& label, const std::string& name) const {
        return extract(label, layout_.index_of(name));
    }

    nlohmann::json to_json() const {
        nlohmann::json regs = nlohmann::json::array();
        for (const auto& r : layout_.registers())
            regs.push_back({{"name", r.name}, {"width", r.width}});
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [label, amp] : terms_) {
            nlohmann::json parts = nlohmann::json::array();
            std::size_t off = 0;
            for (const auto& r : layout_.registers()) {
                parts.push_back(bits_to_hex(slice_bits(label, off, off + r.width)));
                off += r.width;
            }
            terms.push_back({{"label", parts}, {"re", amp.real()}, {"im", amp.imag()}});
        }
        return {{"layout", regs}, {"terms", terms}};
    }

    static Ket from_json(const nlohmann::json& j) {
        std::vector<Register> regs;
        for (const auto& r : j.at("layout"))
            regs.push_back({r.at("name").get<std::string>(), r.at("width").get<std::size_t>()});
        Ket k;
        k.layout_ = RegisterLayout(regs);
        for (const auto& t : j.at("terms")) {
            Bits label;
            const auto& parts = t.at("label");
            if (parts.size() != regs.size()) throw decode_error("Ket::from_json: label arity mismatch");
            for (std::size_t i = 0; i < regs.size(); ++i) {
                Bits piece = hex_to_bits(parts[i].get<std::string>(), regs[i].width);
                label.insert(label.end(), piece.begin(), piece.end());
            }
            k.terms_[label] = Amplitude(t.at("re").get<double>(), t.at("im").get<double>());
        }
        return k;
    }

private:
    static Bits flatten(const RegisterLayout& layout, const std::vector<Bits>& values) {
        if (values.size() != layout.registers().size())
            throw layout_error("value tuple arity does not match layout");
        Bits label;
        label.reserve(layout.total_width());
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i].size() != layout.registers()[i].width)
                throw layout_error("value width mismatch for register '" +
                                   layout.registers()[i].name + "'");
            label.insert(label.end(), values[i].begin(), values[i].end());
        }
        return label;
    }

    Bits extract(const Bits& label, std::size_t index) const {
        std::size_t off = layout_.offset_of(index);
        return slice_bits(label, off, off + layout_.registers()[index].width);
    }

    void require_same_layout(const Ket& other) const {
        if (!(layout_ == other.layout_)) throw layout_error("layouts differ");
    }

    void scale(double s) {
        for (auto& [label, amp] : terms_) amp *= s;
    }

    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (std::abs(it->second) < kPruneThreshold) it = terms_.erase(it);
            else ++it;
        }
    }

    RegisterLayout layout_;
    TermMap terms_;
};

struct ProjectionResult {
    double accept_probability = 0.0;
    std::optional<Ket> accepted_state;
    std::optional<Ket> rejected_state;
};

inline ProjectionResult Ket::projection_analysis(const Ket& target) const {
    require_same_layout(target);
    Amplitude overlap = target.inner_product(*this);  // <target|this>
    double p = std::norm(overlap);
    ProjectionResult res;
    res.accept_probability = p;
    if (p >= kPruneThreshold) res.accepted_state = target;
    if (p <= 1.0 - kPruneThreshold) {
        Ket rej;
        rej.layout_ = layout_;
        rej.terms_ = terms_;
        for (const auto& [label, amp] : target.terms_) rej.terms_[label] -= overlap * amp;
        double n2 = rej.norm_squared();
        if (n2 >= kPruneThreshold) {
            rej.scale(1.0 / std::sqrt(n2));
            rej.prune();
            res.rejected_state = rej;
        }
    }
    return res;
}

inline std::pair<bool, Ket> Ket::project(const Ket& target, Rng& rng) const {
    ProjectionResult res = projection_analysis(target);
    bool accept = rng.real01() < res.accept_probability;
    if (accept && res.accepted_state) return {true, *res.accepted_state};
    if (!res.rejected_state) return {true, *res.accepted_state};  // p == 1 exactly
    return {false, *res.rejected_state};
}

inline Ket basis_ket(const RegisterLayout& layout, const std::vector<Bits>& values) {
    return Ket::basis(layout, values);
}

inline Ket superpose(const RegisterLayout& layout,
                     const std::vector<std::pair<std::vector<Bits>, Amplitude>>& entries) {
    return Ket::superpose(layout, entries);
}

inline Ket tensor(const Ket& a, const Ket& b) { return a.tensor(b); }

inline Amplitude inner_product(const Ket& a, const Ket& b) { return a.inner_product(b); }

inline double fidelity(const Ket& a, const Ket& b) { return a.fidelity(b); }

}  // namespace keylease::qsim
