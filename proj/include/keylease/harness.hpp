// Runnable security experiments with pluggable adversary strategies.
// Every experiment is a seeded Monte-Carlo loop: trial i runs on an
// independent stream split from the master seed, so reports are reproducible
// byte for byte. Wilson intervals are reported alongside analytic acceptance
// probabilities where a closed form exists.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "keylease/coic.hpp"
#include "keylease/common.hpp"
#include "keylease/qsim.hpp"
#include "keylease/rng.hpp"
#include "keylease/skl.hpp"

namespace keylease::harness {

inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
};

inline WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) throw parameter_error("wilson_interval: no trials");
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half};
}

struct ExperimentReport {
    std::string name;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double estimate = 0.0;
    WilsonInterval ci95;
    WilsonInterval ci99;
    std::optional<double> analytic;
    // IND experiments also report the success rate conditioned on the
    // verification oracle accepting.
    std::optional<std::size_t> accepted_trials;
    std::optional<std::size_t> accepted_successes;
    std::optional<double> conditional_estimate;
};

inline ExperimentReport make_report(std::string name, std::uint64_t seed, std::size_t trials,
                                    std::size_t successes, std::optional<double> analytic) {
    ExperimentReport r;
    r.name = std::move(name);
    r.seed = seed;
    r.trials = trials;
    r.successes = successes;
    r.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    r.ci95 = wilson_interval(successes, trials, kZ95);
    r.ci99 = wilson_interval(successes, trials, kZ99);
    r.analytic = analytic;
    return r;
}

inline void to_json(nlohmann::json& j, const ExperimentReport& r) {
    j = {{"name", r.name},
         {"seed", r.seed},
         {"trials", r.trials},
         {"successes", r.successes},
         {"estimate", r.estimate},
         {"wilson_ci_95", {r.ci95.lo, r.ci95.hi}},
         {"wilson_ci_99", {r.ci99.lo, r.ci99.hi}}};
    if (r.analytic) j["analytic"] = *r.analytic;
    if (r.accepted_trials) j["accepted_trials"] = *r.accepted_trials;
    if (r.accepted_successes) j["accepted_successes"] = *r.accepted_successes;
    if (r.conditional_estimate) j["conditional_estimate"] = *r.conditional_estimate;
}

// Generic seeded Monte-Carlo loop; trial i draws from master.split(i).
inline ExperimentReport monte_carlo(const std::function<bool(Rng&)>& trial, std::size_t trials,
                                    std::uint64_t seed, const std::string& name,
                                    std::optional<double> analytic = std::nullopt) {
    if (trials == 0) throw parameter_error("monte_carlo: trial count must be positive");
    Rng master(seed);
    std::size_t successes = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng = master.split(static_cast<std::uint64_t>(i));
        if (trial(rng)) ++successes;
    }
    return make_report(name, seed, trials, successes, analytic);
}

// --- Adversary strategies over the SKL key ---

struct Strategy {
    enum class Kind { Honest, MeasureKeep, PartialMeasure, NeverReturn, SplitHalves };
    Kind kind = Kind::Honest;
    std::size_t measured_blocks = 0;  // PartialMeasure only
    std::string name;
};

inline Strategy strategy_honest() { return {Strategy::Kind::Honest, 0, "honest"}; }
inline Strategy strategy_measure_keep() {
    return {Strategy::Kind::MeasureKeep, 0, "measure_keep"};
}
inline Strategy strategy_partial_measure(std::size_t k) {
    return {Strategy::Kind::PartialMeasure, k, "partial_measure_" + std::to_string(k)};
}
inline Strategy strategy_never_return() {
    return {Strategy::Kind::NeverReturn, 0, "never_return"};
}
inline Strategy strategy_split_halves() {
    return {Strategy::Kind::SplitHalves, 0, "split_halves"};
}

// Closed-form probability that the returned key passes skl_vrfy.
inline double analytic_pass_probability(const Strategy& s, std::size_t lambda_blocks) {
    switch (s.kind) {
        case Strategy::Kind::Honest: return 1.0;
        case Strategy::Kind::MeasureKeep: return std::pow(0.5, static_cast<double>(lambda_blocks));
        case Strategy::Kind::PartialMeasure: {
            if (s.measured_blocks > lambda_blocks)
                throw parameter_error("analytic_pass_probability: k exceeds block count");
            return std::pow(0.5, static_cast<double>(s.measured_blocks));
        }
        case Strategy::Kind::NeverReturn:
        case Strategy::Kind::SplitHalves: return 0.0;
    }
    return 0.0;
}

// Classical side information kept per block: the measured branch and key bits.
struct KeyAction {
    std::optional<skl::QuantumKey> returned;
    std::vector<std::optional<std::pair<std::uint8_t, Bits>>> kept;
};

inline std::pair<std::uint8_t, Bits> measure_block(const qsim::Ket& block, Rng& rng) {
    auto [b, after_b] = block.measure_register("b", rng);
    auto [dk, after_dk] = after_b.measure_register("dk", rng);
    (void)after_dk;
    return {b[0], dk};
}

inline qsim::Ket collapsed_block_ket(std::uint8_t b, const Bits& dk_bits) {
    qsim::RegisterLayout layout({{"b", 1}, {"dk", dk_bits.size()}});
    return qsim::basis_ket(layout, {Bits{b}, dk_bits});
}

inline KeyAction act_on_key(const Strategy& s, const skl::QuantumKey& qdk, Rng& rng) {
    std::size_t n = qdk.blocks.size();
    KeyAction action;
    action.kept.resize(n);
    switch (s.kind) {
        case Strategy::Kind::Honest:
            action.returned = qdk;
            break;
        case Strategy::Kind::NeverReturn:
            for (std::size_t i = 0; i < n; ++i) action.kept[i] = measure_block(qdk.blocks[i], rng);
            break;
        case Strategy::Kind::MeasureKeep:
        case Strategy::Kind::SplitHalves: {
            skl::QuantumKey returned = qdk;
            for (std::size_t i = 0; i < n; ++i) {
                auto kept = measure_block(qdk.blocks[i], rng);
                returned.blocks[i] = collapsed_block_ket(kept.first, kept.second);
                action.kept[i] = std::move(kept);
            }
            action.returned = std::move(returned);
            break;
        }
        case Strategy::Kind::PartialMeasure: {
            if (s.measured_blocks > n)
                throw parameter_error("act_on_key: k exceeds block count");
            skl::QuantumKey returned = qdk;
            for (std::size_t i = 0; i < s.measured_blocks; ++i) {
                auto kept = measure_block(qdk.blocks[i], rng);
                returned.blocks[i] = collapsed_block_ket(kept.first, kept.second);
                action.kept[i] = std::move(kept);
            }
            action.returned = std::move(returned);
            break;
        }
    }
    return action;
}

struct SklParams {
    std::size_t lambda_blocks = 1;
    std::size_t attr_len = coic::kDefaultAttrLen;
    std::size_t msg_len = coic::kDefaultMsgLen;
};

// Decrypt one ciphertext block with a kept classical branch key; total.
inline Bits classical_block_dec(const std::pair<std::uint8_t, Bits>& kept,
                                const std::array<coic::CoicCiphertext, 2>& cts,
                                const SklParams& p) {
    try {
        coic::CoicDecKey dk = coic::coic_dk_from_bits(p.attr_len, p.msg_len, kept.second);
        return coic::coic_dec(dk, cts[kept.first]);
    } catch (const corrupt_ciphertext_error&) {
        return Bits(p.msg_len, 0);
    }
}

// Acceptance of skl_vrfy on the key a strategy returns (the key triple is
// generated once; each trial measures and verifies a fresh copy of the
// honest product state, whose acceptance law does not depend on the key
// material).
inline ExperimentReport run_return_vrfy(const SklParams& p, const Strategy& s,
                                        std::size_t trials, std::uint64_t seed) {
    Rng kg_rng = Rng(seed).split("keygen");
    skl::SklKeyTriple t = skl::skl_kg(p.lambda_blocks, kg_rng, p.attr_len, p.msg_len);
    double analytic = analytic_pass_probability(s, p.lambda_blocks);
    return monte_carlo(
        [&](Rng& rng) {
            KeyAction a = act_on_key(s, t.qdk, rng);
            if (!a.returned) return false;
            return skl::skl_vrfy(t.vk, *a.returned, rng).accepted;
        },
        trials, seed, "return_vrfy/" + s.name, analytic);
}

// OW-KLA: the adversary returns the key, and only if verification accepts
// does a correct guess of the random challenge plaintext count as a win.
inline ExperimentReport run_ow_kla(const SklParams& p, const Strategy& s, std::size_t trials,
                                   std::uint64_t seed) {
    std::size_t n = p.lambda_blocks * p.msg_len;
    std::optional<double> analytic;
    if (s.kind == Strategy::Kind::Honest)
        analytic = std::pow(0.5, static_cast<double>(n));
    else if (s.kind == Strategy::Kind::MeasureKeep)
        analytic = std::pow(0.5, static_cast<double>(p.lambda_blocks));
    else if (s.kind == Strategy::Kind::NeverReturn)
        analytic = 0.0;
    return monte_carlo(
        [&](Rng& rng) {
            skl::SklKeyTriple t = skl::skl_kg(p.lambda_blocks, rng, p.attr_len, p.msg_len);
            KeyAction a = act_on_key(s, t.qdk, rng);
            bool v = a.returned && skl::skl_vrfy(t.vk, *a.returned, rng).accepted;
            Bits m = rng.bits(n);
            skl::SklCiphertext ct = skl::skl_enc(t.ek, m, rng);
            if (!v) return false;  // V = bot forces output 0
            Bits guess;
            for (std::size_t i = 0; i < p.lambda_blocks; ++i) {
                Bits block = a.kept[i] ? classical_block_dec(*a.kept[i], ct.blocks[i], p)
                                       : rng.bits(p.msg_len);
                guess.insert(guess.end(), block.begin(), block.end());
            }
            return guess == m;
        },
        trials, seed, "ow_kla/" + s.name, analytic);
}

// IND-KLA over the Goldreich-Levin bit scheme. Reports the unconditional
// success rate (the experiment's own law, V = bot counting as a loss) plus
// the rate conditioned on acceptance.
inline ExperimentReport run_ind_kla(const SklParams& p, const Strategy& s, std::size_t trials,
                                    std::uint64_t seed) {
    Rng master(seed);
    std::size_t successes = 0, accepted = 0, accepted_successes = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng = master.split(static_cast<std::uint64_t>(i));
        skl::SklKeyTriple t = skl::skl_kg(p.lambda_blocks, rng, p.attr_len, p.msg_len);
        KeyAction a = act_on_key(s, t.qdk, rng);
        bool v = a.returned && skl::skl_vrfy(t.vk, *a.returned, rng).accepted;
        std::uint8_t coin = rng.bit();
        skl::GlCiphertext ct = skl::gl_enc(t.ek, coin, rng);
        std::uint8_t guess;
        if (s.kind == Strategy::Kind::MeasureKeep || s.kind == Strategy::Kind::NeverReturn) {
            Bits x;
            for (std::size_t b = 0; b < p.lambda_blocks; ++b) {
                Bits block = classical_block_dec(*a.kept[b], ct.ow_ct.blocks[b], p);
                x.insert(x.end(), block.begin(), block.end());
            }
            guess = skl::inner_product_bits(x, ct.r) ^ ct.b;
        } else {
            guess = rng.bit();
        }
        bool correct = guess == coin;
        if (v) {
            ++accepted;
            if (correct) ++accepted_successes;
        }
        if (v && correct) ++successes;
    }
    ExperimentReport r = make_report("ind_kla/" + s.name, seed, trials, successes, std::nullopt);
    r.accepted_trials = accepted;
    r.accepted_successes = accepted_successes;
    if (accepted > 0)
        r.conditional_estimate =
            static_cast<double>(accepted_successes) / static_cast<double>(accepted);
    return r;
}

// OMUR: the adversary submits returned keys to the OMUR verifier and wins if
// at least two are accepted. The split-halves cloner measures every block
// and pads each of its two submissions with junk on the complementary half,
// so each submission fails the decryptability check there.
inline ExperimentReport run_omur(const SklParams& p, const Strategy& s, std::size_t trials,
                                 std::uint64_t seed) {
    std::optional<double> analytic;
    if (s.kind == Strategy::Kind::Honest || s.kind == Strategy::Kind::NeverReturn ||
        s.kind == Strategy::Kind::SplitHalves)
        analytic = 0.0;
    std::size_t dk_w = coic::coic_dk_bit_width(p.attr_len);
    return monte_carlo(
        [&](Rng& rng) {
            skl::SklKeyTriple t = skl::skl_kg(p.lambda_blocks, rng, p.attr_len, p.msg_len);
            std::vector<skl::QuantumKey> queries;
            switch (s.kind) {
                case Strategy::Kind::Honest:
                    queries.push_back(t.qdk);
                    break;
                case Strategy::Kind::NeverReturn:
                    break;
                case Strategy::Kind::SplitHalves: {
                    KeyAction a = act_on_key(s, t.qdk, rng);
                    std::size_t half = p.lambda_blocks / 2;
                    skl::QuantumKey q1 = t.qdk, q2 = t.qdk;
                    for (std::size_t i = 0; i < p.lambda_blocks; ++i) {
                        qsim::Ket real = collapsed_block_ket(a.kept[i]->first, a.kept[i]->second);
                        qsim::Ket junk = collapsed_block_ket(rng.bit(), rng.bits(dk_w));
                        q1.blocks[i] = i < half ? real : junk;
                        q2.blocks[i] = i < half ? std::move(junk) : real;
                    }
                    queries.push_back(std::move(q1));
                    queries.push_back(std::move(q2));
                    break;
                }
                default: {
                    KeyAction a = act_on_key(s, t.qdk, rng);
                    if (a.returned) queries.push_back(*a.returned);
                    break;
                }
            }
            std::size_t count = 0;
            for (const skl::QuantumKey& q : queries)
                if (skl::omur_vrfy(t.vk, t.ek, q, rng).accepted) ++count;
            return count >= 2;
        },
        trials, seed, "omur/" + s.name, analytic);
}

// --- CoIC game ---

// One-shot projection oracle onto the honest two-branch key state.
class CoicOracle {
public:
    explicit CoicOracle(qsim::Ket target) : target_(std::move(target)) {}

    std::pair<bool, qsim::Ket> call(const qsim::Ket& state, Rng& rng) {
        if (called_) throw protocol_violation("CoIC verification oracle may be called only once");
        called_ = true;
        return state.project(target_, rng);
    }

private:
    qsim::Ket target_;
    bool called_ = false;
};

enum class CoicStrategy { CollapseTest, RandomGuess };

inline std::string coic_strategy_name(CoicStrategy s) {
    return s == CoicStrategy::CollapseTest ? "collapse_test" : "random_guess";
}

// The collapse-test adversary: pick two distinct messages, coherently decrypt
// the branch-selected challenge ciphertext, and use the single oracle call as
// a collapse detector. If the challenge is consistent (b = 0) both branches
// decrypt identically and the key is undisturbed, so the oracle accepts with
// probability 1; if inconsistent (b = 1) the measurement collapses the key
// and the oracle accepts with probability 1/2. Guessing b = 0 on accept wins
// with probability 3/4 overall.
inline ExperimentReport run_coic(CoicStrategy s, std::size_t attr_len, std::size_t msg_len,
                                 std::size_t trials, std::uint64_t seed) {
    std::optional<double> analytic = s == CoicStrategy::CollapseTest
                                         ? std::optional<double>(0.75)
                                         : std::optional<double>(0.5);
    std::size_t dk_w = coic::coic_dk_bit_width(attr_len);
    return monte_carlo(
        [&](Rng& rng) {
            coic::CoicKeyPair kp0 = coic::coic_kg(attr_len, msg_len, rng);
            coic::CoicKeyPair kp1 = coic::coic_kg(attr_len, msg_len, rng);
            qsim::RegisterLayout layout({{"b", 1}, {"dk", dk_w}});
            qsim::Ket qdk = qsim::superpose(
                layout, {{{Bits{0}, coic::coic_dk_to_bits(kp0.dk)}, {1.0, 0.0}},
                         {{Bits{1}, coic::coic_dk_to_bits(kp1.dk)}, {1.0, 0.0}}});
            CoicOracle oracle(qdk);

            // Adversary's challenge messages, then the challenger's coins.
            Bits m0 = rng.bits(msg_len);
            Bits m1 = xor_bits(m0, Bits(msg_len, 1));  // guaranteed distinct
            std::uint8_t a = rng.bit();
            std::uint8_t b = rng.bit();
            const Bits& for_ek0 = a ? m1 : m0;
            const Bits& for_ek1 = (a ^ b) ? m1 : m0;
            coic::CoicCiphertext ct0 = coic::coic_enc(kp0.ek, for_ek0, rng);
            coic::CoicCiphertext ct1 = coic::coic_enc(kp1.ek, for_ek1, rng);

            std::uint8_t guess;
            if (s == CoicStrategy::RandomGuess) {
                guess = rng.bit();
            } else {
                auto f = [&](const std::vector<Bits>& args) -> Bits {
                    const coic::CoicCiphertext& ct = args[0][0] ? ct1 : ct0;
                    try {
                        coic::CoicDecKey dk =
                            coic::coic_dk_from_bits(attr_len, msg_len, args[1]);
                        return coic::coic_dec(dk, ct);
                    } catch (const corrupt_ciphertext_error&) {
                        return Bits(msg_len, 0);
                    }
                };
                qsim::Ket extended = qdk.apply_classical({"b", "dk"}, "out", msg_len, f);
                auto [value, post] = extended.measure_register("out", rng);
                (void)value;
                auto [accept, after] = oracle.call(post.strip_register("out"), rng);
                (void)after;
                guess = accept ? 0 : 1;
            }
            return guess == b;
        },
        trials, seed, "coic/" + coic_strategy_name(s), analytic);
}

}  // namespace keylease::harness
