// Command-line front end over the keylease library: key lifecycle,
// lease return, attack simulation, and benchmarking. Hex on the command
// line, JSON on disk; all randomness comes from --seed.
//
// Exit codes: 0 success, 2 verification/decryption rejected, 1 any error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "keylease/abeskl.hpp"
#include "keylease/harness.hpp"
#include "keylease/skl.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace keylease;

namespace {

constexpr const char* kBanner = "SIMULATED-QUANTUM-STATE";

struct Config {
    std::string scheme = "basic";
    std::size_t lambda_blocks = 1;
    std::size_t msg_bits = 16;
    std::size_t id_bits = 4;
    std::size_t q = 2;
    std::string mode = "selective";
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    std::string out;
};

void add_common_flags(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--scheme", cfg.scheme, "basic|ow|ind|abe1|qabe")
        ->check(CLI::IsMember({"basic", "ow", "ind", "abe1", "qabe"}));
    cmd->add_option("--lambda-blocks", cfg.lambda_blocks, "number of key blocks");
    cmd->add_option("--msg-bits", cfg.msg_bits, "message block width in bits");
    cmd->add_option("--id-bits", cfg.id_bits, "identity width for ABE schemes");
    cmd->add_option("--q", cfg.q, "key bound for the qabe grid");
    cmd->add_option("--mode", cfg.mode, "selective|adaptive")
        ->check(CLI::IsMember({"selective", "adaptive"}));
    cmd->add_option("--seed", cfg.seed, "master seed (all randomness derives from it)");
    cmd->add_option("--trials", cfg.trials, "trial count for attack/bench");
    cmd->add_option("--out", cfg.out, "output file or directory");
}

json params_json(const Config& cfg) {
    json p = {{"lambda_blocks", cfg.lambda_blocks}, {"msg_bits", cfg.msg_bits}};
    if (cfg.scheme == "abe1" || cfg.scheme == "qabe") p["id_bits"] = cfg.id_bits;
    if (cfg.scheme == "qabe") {
        p["q"] = cfg.q;
        p["mode"] = cfg.mode;
    }
    return p;
}

void write_file(const fs::path& path, const json& j) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

json read_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    return j;
}

json require_scheme(const json& j, const std::string& scheme, const std::string& what) {
    std::string found = j.value("scheme", "");
    if (found != scheme)
        throw std::runtime_error(what + " was produced for scheme '" + found +
                                 "', requested '" + scheme + "'");
    return j;
}

bool is_skl_scheme(const std::string& s) { return s == "basic" || s == "ow" || s == "ind"; }

json qdk_envelope(const Config& cfg, const json& state) {
    return {{"banner", kBanner},
            {"scheme", cfg.scheme},
            {"params", params_json(cfg)},
            {"qdk", state}};
}

Bits parse_message(const Config& cfg, const std::string& hex) {
    if (cfg.scheme == "ind") return hex_to_bits(hex, hex.size() * 4);
    std::size_t width = is_skl_scheme(cfg.scheme) ? cfg.lambda_blocks * cfg.msg_bits
                                                  : cfg.msg_bits;
    return hex_to_bits(hex, width);
}

int cmd_keygen(const Config& cfg) {
    fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
    Rng rng(cfg.seed);
    json ek, qdk, vk;
    if (is_skl_scheme(cfg.scheme)) {
        skl::SklKeyTriple t =
            skl::skl_kg(cfg.lambda_blocks, rng, coic::kDefaultAttrLen, cfg.msg_bits);
        ek = {{"scheme", cfg.scheme}, {"params", params_json(cfg)}, {"ek", t.ek}};
        qdk = qdk_envelope(cfg, json(t.qdk));
        vk = {{"scheme", cfg.scheme}, {"params", params_json(cfg)}, {"vk", t.vk}};
    } else if (cfg.scheme == "abe1") {
        auto [pk, msk] = abeskl::abe1_setup(cfg.id_bits, cfg.msg_bits, rng);
        auto [qusk, avk] = abeskl::abe1_kg(msk, Bits(cfg.id_bits, 0), rng);
        ek = {{"scheme", cfg.scheme}, {"params", params_json(cfg)}, {"ek", pk}};
        qdk = qdk_envelope(cfg, json(qusk));
        vk = {{"scheme", cfg.scheme}, {"params", params_json(cfg)}, {"vk", avk}};
    } else {
        auto [v, w] = abeskl::qabe_params(cfg.mode == "selective" ? abeskl::QAbeMode::Selective
                                                                  : abeskl::QAbeMode::Adaptive,
                                          cfg.lambda_blocks, cfg.q, cfg.id_bits);
        auto [pk, msk] = abeskl::qabe_setup(v, w, cfg.id_bits, cfg.msg_bits, rng);
        auto [qusk, qvk] = abeskl::qabe_kg(msk, Bits(cfg.id_bits, 0), rng);
        ek = {{"scheme", cfg.scheme}, {"params", params_json(cfg)}, {"ek", pk}};
        qdk = qdk_envelope(cfg, json(qusk));
        vk = {{"scheme", cfg.scheme}, {"params", params_json(cfg)}, {"vk", qvk}};
    }
    write_file(dir / "ek.json", ek);
    write_file(dir / "qdk.json", qdk);
    write_file(dir / "vk.json", vk);
    std::cout << "wrote " << (dir / "ek.json").string() << ", qdk.json, vk.json\n";
    return 0;
}

int cmd_encrypt(const Config& cfg, const std::string& ek_path, const std::string& msg_hex) {
    json ekj = require_scheme(read_file(ek_path), cfg.scheme, "encryption key");
    Bits m = parse_message(cfg, msg_hex);
    Rng rng(cfg.seed);
    fs::path out = cfg.out.empty() ? fs::path("ct.json") : fs::path(cfg.out);
    json ct = {{"scheme", cfg.scheme}, {"params", params_json(cfg)}};
    if (cfg.scheme == "basic" || cfg.scheme == "ow") {
        skl::SklEncKey ek = ekj.at("ek").get<skl::SklEncKey>();
        ct["ct"] = skl::skl_enc(ek, m, rng);
    } else if (cfg.scheme == "ind") {
        skl::SklEncKey ek = ekj.at("ek").get<skl::SklEncKey>();
        ct["ct"] = skl::gl_enc_multi(ek, m, rng);
        ct["msg_bits_total"] = m.size();
    } else if (cfg.scheme == "abe1") {
        abeskl::Abe1Pk pk = ekj.at("ek").get<abeskl::Abe1Pk>();
        ct["ct"] = abeskl::abe1_enc(pk, Bits(cfg.id_bits, 0), m, rng);
    } else {
        abeskl::QAbePk pk = ekj.at("ek").get<abeskl::QAbePk>();
        ct["ct"] = abeskl::qabe_enc(pk, Bits(cfg.id_bits, 0), m, rng);
    }
    write_file(out, ct);
    std::cout << "wrote " << out.string() << "\n";
    return 0;
}

int cmd_decrypt(const Config& cfg, const std::string& qdk_path, const std::string& ct_path) {
    json qdkj = require_scheme(read_file(qdk_path), cfg.scheme, "key file");
    json ctj = require_scheme(read_file(ct_path), cfg.scheme, "ciphertext");
    Rng rng(cfg.seed);
    Bits m;
    json post_state;
    if (cfg.scheme == "basic" || cfg.scheme == "ow") {
        skl::QuantumKey qdk = qdkj.at("qdk").get<skl::QuantumKey>();
        auto [plain, post] = skl::skl_dec(qdk, ctj.at("ct").get<skl::SklCiphertext>(), rng);
        m = plain;
        post_state = json(post);
    } else if (cfg.scheme == "ind") {
        skl::QuantumKey qdk = qdkj.at("qdk").get<skl::QuantumKey>();
        auto cts = ctj.at("ct").get<std::vector<skl::GlCiphertext>>();
        auto [plain, post] = skl::gl_dec_multi(qdk, cts, rng);
        m = plain;
        post_state = json(post);
    } else if (cfg.scheme == "abe1") {
        abeskl::Abe1Qusk qusk = qdkj.at("qdk").get<abeskl::Abe1Qusk>();
        auto [plain, post] = abeskl::abe1_dec(
            qusk, Bits(cfg.id_bits, 0), ctj.at("ct").get<abeskl::Abe1Ciphertext>(), rng);
        if (!plain) {
            std::cout << "bot\n";
            return 2;
        }
        m = *plain;
        qusk.qdk = post;
        post_state = json(qusk);
    } else {
        abeskl::QAbeQusk qusk = qdkj.at("qdk").get<abeskl::QAbeQusk>();
        auto [plain, post] = abeskl::qabe_dec(
            qusk, Bits(cfg.id_bits, 0), ctj.at("ct").get<abeskl::QAbeCiphertext>(), rng);
        if (!plain) {
            std::cout << "bot\n";
            return 2;
        }
        m = *plain;
        post_state = json(post);
    }
    qdkj["qdk"] = post_state;
    write_file(cfg.out.empty() ? fs::path(qdk_path) : fs::path(cfg.out), qdkj);
    std::cout << bits_to_hex(m) << "\n";
    return 0;
}

int cmd_lease_return(const Config& cfg, const std::string& vk_path, const std::string& qdk_path) {
    json vkj = require_scheme(read_file(vk_path), cfg.scheme, "verification key");
    json qdkj = require_scheme(read_file(qdk_path), cfg.scheme, "key file");
    Rng rng(cfg.seed);
    bool accepted = false;
    json post_state;
    if (is_skl_scheme(cfg.scheme)) {
        skl::SklVerKey vk = vkj.at("vk").get<skl::SklVerKey>();
        skl::QuantumKey qdk = qdkj.at("qdk").get<skl::QuantumKey>();
        skl::VerificationOutcome out = skl::skl_vrfy(vk, qdk, rng);
        accepted = out.accepted;
        post_state = json(out.post_key);
    } else if (cfg.scheme == "abe1") {
        abeskl::Abe1Vk vk = vkj.at("vk").get<abeskl::Abe1Vk>();
        abeskl::Abe1Qusk qusk = qdkj.at("qdk").get<abeskl::Abe1Qusk>();
        auto [ok, post] = abeskl::abe1_vrfy(vk, qusk.qdk, rng);
        accepted = ok;
        qusk.qdk = post;
        post_state = json(qusk);
    } else {
        abeskl::QAbeVk vk = vkj.at("vk").get<abeskl::QAbeVk>();
        abeskl::QAbeQusk qusk = qdkj.at("qdk").get<abeskl::QAbeQusk>();
        auto [ok, post] = abeskl::qabe_vrfy(vk, qusk, rng);
        accepted = ok;
        post_state = json(post);
    }
    qdkj["qdk"] = post_state;
    write_file(cfg.out.empty() ? fs::path(qdk_path) : fs::path(cfg.out), qdkj);
    std::cout << (accepted ? "⊤" : "⊥") << "\n";
    return accepted ? 0 : 2;
}

harness::Strategy parse_strategy(const std::string& name) {
    if (name == "honest") return harness::strategy_honest();
    if (name == "measure_keep") return harness::strategy_measure_keep();
    if (name == "never_return") return harness::strategy_never_return();
    if (name == "split_halves") return harness::strategy_split_halves();
    const std::string prefix = "partial_measure:";
    if (name.rfind(prefix, 0) == 0)
        return harness::strategy_partial_measure(std::stoul(name.substr(prefix.size())));
    throw std::runtime_error("unknown strategy '" + name + "'");
}

int cmd_attack(const Config& cfg, const std::string& strategy_name) {
    harness::ExperimentReport report;
    harness::SklParams p{cfg.lambda_blocks, coic::kDefaultAttrLen, cfg.msg_bits};
    if (strategy_name == "coic_collapse" || strategy_name == "coic_random") {
        harness::CoicStrategy s = strategy_name == "coic_collapse"
                                      ? harness::CoicStrategy::CollapseTest
                                      : harness::CoicStrategy::RandomGuess;
        report = harness::run_coic(s, coic::kDefaultAttrLen, cfg.msg_bits, cfg.trials, cfg.seed);
    } else {
        harness::Strategy s = parse_strategy(strategy_name);
        if (cfg.scheme == "ow") report = harness::run_ow_kla(p, s, cfg.trials, cfg.seed);
        else if (cfg.scheme == "ind") report = harness::run_ind_kla(p, s, cfg.trials, cfg.seed);
        else report = harness::run_return_vrfy(p, s, cfg.trials, cfg.seed);
    }
    json j = report;
    write_file(cfg.out.empty() ? fs::path("report.json") : fs::path(cfg.out), j);
    std::cout << report.name << ": estimate " << report.estimate << " over " << report.trials
              << " trials\n";
    return 0;
}

int cmd_bench(const Config& cfg) {
    harness::SklParams p{cfg.lambda_blocks, coic::kDefaultAttrLen, cfg.msg_bits};
    std::vector<harness::Strategy> strategies = {
        harness::strategy_honest(), harness::strategy_measure_keep()};
    if (cfg.lambda_blocks > 1)
        strategies.push_back(harness::strategy_partial_measure(1));
    json rows = json::array();
    std::cout << "strategy              analytic    empirical   wilson95\n";
    for (const auto& s : strategies) {
        harness::ExperimentReport r = harness::run_return_vrfy(p, s, cfg.trials, cfg.seed);
        char line[160];
        std::snprintf(line, sizeof line, "%-20s  %.6f    %.6f    [%.6f, %.6f]\n",
                      s.name.c_str(), r.analytic.value_or(0.0), r.estimate, r.ci95.lo, r.ci95.hi);
        std::cout << line;
        rows.push_back(r);
    }
    if (!cfg.out.empty()) write_file(fs::path(cfg.out), rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secure key leasing toolkit (simulated quantum states)"};
    app.require_subcommand(1);

    Config cfg;
    std::string ek_path, msg_hex, qdk_path, ct_path, vk_path, strategy_name;

    CLI::App* keygen = app.add_subcommand("keygen", "generate ek/qdk/vk files");
    add_common_flags(keygen, cfg);

    CLI::App* encrypt = app.add_subcommand("encrypt", "encrypt a hex message");
    add_common_flags(encrypt, cfg);
    encrypt->add_option("ek", ek_path, "ek.json path")->required();
    encrypt->add_option("message", msg_hex, "plaintext hex")->required();

    CLI::App* decrypt = app.add_subcommand("decrypt", "decrypt with the simulated quantum key");
    add_common_flags(decrypt, cfg);
    decrypt->add_option("qdk", qdk_path, "qdk.json path")->required();
    decrypt->add_option("ct", ct_path, "ct.json path")->required();

    CLI::App* lease = app.add_subcommand("lease-return", "verify a returned key");
    add_common_flags(lease, cfg);
    lease->add_option("vk", vk_path, "vk.json path")->required();
    lease->add_option("qdk", qdk_path, "qdk.json path")->required();

    CLI::App* attack = app.add_subcommand("attack", "run an adversary strategy");
    add_common_flags(attack, cfg);
    attack->add_option("strategy", strategy_name,
                       "honest|measure_keep|partial_measure:<k>|never_return|split_halves|"
                       "coic_collapse|coic_random")
        ->required();

    CLI::App* bench = app.add_subcommand("bench", "strategy acceptance table");
    add_common_flags(bench, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (keygen->parsed()) return cmd_keygen(cfg);
        if (encrypt->parsed()) return cmd_encrypt(cfg, ek_path, msg_hex);
        if (decrypt->parsed()) return cmd_decrypt(cfg, qdk_path, ct_path);
        if (lease->parsed()) return cmd_lease_return(cfg, vk_path, qdk_path);
        if (attack->parsed()) return cmd_attack(cfg, strategy_name);
        if (bench->parsed()) return cmd_bench(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
