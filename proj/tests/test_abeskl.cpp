#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "keylease/abeskl.hpp"

using namespace keylease;

TEST_CASE("toy ABE decrypts only under the matching identity") {
    Rng rng(801);
    pke::LweParams params;
    params.payload_bits = 8;
    auto [pk, msk] = abeskl::toy_abe_setup(4, rng, params);
    Bits x = rng.bits(4);
    Bits m = rng.bits(8);
    auto ct = abeskl::toy_abe_enc(pk, x, m, rng);

    auto sk = abeskl::toy_abe_kg(msk, x);
    REQUIRE(abeskl::toy_abe_dec(sk, x, ct) == m);

    Bits y = x;
    y[1] ^= 1;
    auto sk_other = abeskl::toy_abe_kg(msk, y);
    REQUIRE_FALSE(abeskl::toy_abe_dec(sk_other, x, ct).has_value());

    REQUIRE_THROWS_AS(abeskl::toy_abe_setup(0, rng, params), parameter_error);
    REQUIRE_THROWS_AS(abeskl::toy_abe_kg(msk, rng.bits(3)), parameter_error);
    REQUIRE_THROWS_AS(abeskl::toy_abe_enc(pk, rng.bits(5), m, rng), parameter_error);
}

TEST_CASE("toy ABE shares XOR to the message") {
    Rng rng(802);
    pke::LweParams params;
    params.payload_bits = 6;
    auto [pk, msk] = abeskl::toy_abe_setup(3, rng, params);
    Bits x = rng.bits(3);
    Bits m = rng.bits(6);
    auto ct = abeskl::toy_abe_enc(pk, x, m, rng);
    Bits acc(6, 0);
    for (std::size_t i = 0; i < 3; ++i)
        acc = xor_bits(acc, pke::pke_dec(msk.dks[2 * i + x[i]], ct.shares[i]));
    REQUIRE(acc == m);
}

TEST_CASE("xor_skl lifecycle") {
    Rng rng(811);
    const std::size_t ell = 6;
    auto keys = abeskl::xor_skl_kg(ell, rng);

    SECTION("decryption is exact and gentle") {
        qsim::Ket state = keys.qdk;
        for (int i = 0; i < 20; ++i) {
            Bits m = rng.bits(ell);
            auto ct = abeskl::xor_skl_enc(keys.ek, m, rng);
            auto [dec, post] = abeskl::xor_skl_dec(state, ct, rng);
            REQUIRE(dec == m);
            state = std::move(post);
        }
        auto [ok, post] = abeskl::xor_skl_vrfy(keys.vk, state, rng);
        REQUIRE(ok);
        REQUIRE(fidelity(post, keys.qdk) == Catch::Approx(1.0).margin(1e-9));
    }

    SECTION("explicit randomness matches the defining equations") {
        Bits m = rng.bits(ell), r = rng.bits(ell);
        auto ct = abeskl::xor_skl_enc(keys.ek, m, r);
        REQUIRE(ct.c0 == xor_bits(xor_bits(m, keys.ek.p0), r));
        REQUIRE(ct.c1 == xor_bits(xor_bits(m, keys.ek.p1), r));
        REQUIRE(ct.r == r);
    }

    SECTION("measured key fails verification half the time") {
        auto [b, collapsed] = keys.qdk.measure_register("b", rng);
        int accepts = 0;
        const int trials = 400;
        for (int i = 0; i < trials; ++i)
            if (abeskl::xor_skl_vrfy(keys.vk, collapsed, rng).first) ++accepts;
        REQUIRE(accepts > 160);
        REQUIRE(accepts < 240);
    }

    SECTION("width checks") {
        REQUIRE_THROWS_AS(abeskl::xor_skl_kg(0, rng), parameter_error);
        REQUIRE_THROWS_AS(abeskl::xor_skl_enc(keys.ek, rng.bits(ell - 1), rng), parameter_error);
    }
}

TEST_CASE("xor_skl encryption circuit agrees with the function") {
    Rng rng(812);
    for (std::size_t ell : {2, 4}) {
        Bits m = rng.bits(ell), r = rng.bits(ell);
        circuit::BoolCircuit c = abeskl::xor_skl_enc_circuit(m, r);
        REQUIRE(c.input_width == 2 * ell);
        REQUIRE(c.output_width() == 3 * ell);
        for (int t = 0; t < 20; ++t) {
            Bits p0 = rng.bits(ell), p1 = rng.bits(ell);
            auto expect = abeskl::xor_skl_enc({p0, p1}, m, r);
            auto got = abeskl::xor_skl_ct_from_bits(eval_circuit(c, concat_bits(p0, p1)));
            REQUIRE(got.c0 == expect.c0);
            REQUIRE(got.c1 == expect.c1);
            REQUIRE(got.r == expect.r);
        }
    }

    SECTION("shape depends only on the width") {
        Rng r2(1);
        auto a = abeskl::xor_skl_enc_circuit(r2.bits(4), r2.bits(4));
        auto b = abeskl::xor_skl_enc_circuit(r2.bits(4), r2.bits(4));
        REQUIRE(circuit::shape_signature(a) == circuit::shape_signature(b));
    }

    SECTION("ciphertext bit packing round trips") {
        Rng r2(2);
        abeskl::XorSklCiphertext ct{r2.bits(5), r2.bits(5), r2.bits(5)};
        auto back = abeskl::xor_skl_ct_from_bits(abeskl::xor_skl_ct_to_bits(ct));
        REQUIRE(back.c0 == ct.c0);
        REQUIRE(back.c1 == ct.c1);
        REQUIRE(back.r == ct.r);
        REQUIRE_THROWS_AS(abeskl::xor_skl_ct_from_bits(r2.bits(7)), decode_error);
    }
}

TEST_CASE("1-bounded ABE-SKL lifecycle") {
    Rng rng(821);
    const std::size_t id_bits = 2, ell = 3;
    auto [pk, msk] = abeskl::abe1_setup(id_bits, ell, rng);
    Bits y = rng.bits(id_bits);
    auto [qusk, vk] = abeskl::abe1_kg(msk, y, rng);

    SECTION("matching identity decrypts, mismatched yields bottom") {
        abeskl::Abe1Qusk state = qusk;
        for (int i = 0; i < 5; ++i) {
            Bits m = rng.bits(ell);
            auto ct = abeskl::abe1_enc(pk, y, m, rng);
            auto [dec, post] = abeskl::abe1_dec(state, y, ct, rng);
            REQUIRE(dec == m);
            state.qdk = std::move(post);
        }
        Bits x = y;
        x[0] ^= 1;
        auto ct = abeskl::abe1_enc(pk, x, rng.bits(ell), rng);
        auto [dec, post] = abeskl::abe1_dec(state, x, ct, rng);
        REQUIRE_FALSE(dec.has_value());
        state.qdk = std::move(post);
        auto [ok, final_post] = abeskl::abe1_vrfy(vk, state.qdk, rng);
        REQUIRE(ok);
    }

    SECTION("measured key fails verification about half the time") {
        auto [b, collapsed] = qusk.qdk.measure_register("b", rng);
        int accepts = 0;
        const int trials = 300;
        for (int i = 0; i < trials; ++i)
            if (abeskl::abe1_vrfy(vk, collapsed, rng).first) ++accepts;
        REQUIRE(accepts > 100);
        REQUIRE(accepts < 200);
    }

    SECTION("parameter checks") {
        REQUIRE_THROWS_AS(abeskl::abe1_setup(0, ell, rng), parameter_error);
        REQUIRE_THROWS_AS(abeskl::abe1_kg(msk, rng.bits(id_bits + 1), rng), parameter_error);
        REQUIRE_THROWS_AS(abeskl::abe1_enc(pk, y, rng.bits(ell + 1), rng), parameter_error);
    }
}

TEST_CASE("q-bounded grid scheme") {
    Rng rng(831);
    const std::size_t v = 3, w = 2, id_bits = 2, ell = 3;
    auto [pk, msk] = abeskl::qabe_setup(v, w, id_bits, ell, rng);
    Bits y = rng.bits(id_bits);
    auto [qusk, vk] = abeskl::qabe_kg(msk, y, rng);

    SECTION("round trip and verification") {
        abeskl::QAbeQusk state = qusk;
        for (int i = 0; i < 3; ++i) {
            Bits m = rng.bits(ell);
            auto ct = abeskl::qabe_enc(pk, y, m, rng);
            auto [dec, post] = abeskl::qabe_dec(state, y, ct, rng);
            REQUIRE(dec == m);
            state = std::move(post);
        }
        auto [ok, post] = abeskl::qabe_vrfy(vk, state, rng);
        REQUIRE(ok);
    }

    SECTION("mismatched identity yields bottom") {
        Bits x = y;
        x[1] ^= 1;
        auto ct = abeskl::qabe_enc(pk, x, rng.bits(ell), rng);
        auto [dec, post] = abeskl::qabe_dec(qusk, x, ct, rng);
        REQUIRE_FALSE(dec.has_value());
    }

    SECTION("column choices index the grid") {
        REQUIRE(qusk.cols.size() == v);
        for (std::size_t j : qusk.cols) REQUIRE(j < w);
    }

    SECTION("share splitting XORs back to the message") {
        Bits m = rng.bits(5);
        auto shares = abeskl::qabe_shares(4, m, rng);
        REQUIRE(shares.size() == 4);
        Bits acc(5, 0);
        for (const Bits& s : shares) acc = xor_bits(acc, s);
        REQUIRE(acc == m);
    }

    SECTION("parameter checks") {
        REQUIRE_THROWS_AS(abeskl::qabe_setup(0, w, id_bits, ell, rng), parameter_error);
        REQUIRE_THROWS_AS(abeskl::qabe_enc(pk, y, rng.bits(ell + 1), rng), parameter_error);
        abeskl::QAbeQusk short_key = qusk;
        short_key.keys.pop_back();
        REQUIRE_THROWS_AS(abeskl::qabe_vrfy(vk, short_key, rng), layout_error);
    }
}

TEST_CASE("grid parameter derivation") {
    using abeskl::QAbeMode;
    REQUIRE(abeskl::qabe_params(QAbeMode::Selective, 16, 3, 8) ==
            std::make_pair<std::size_t, std::size_t>(16, 9));
    REQUIRE(abeskl::qabe_params(QAbeMode::Adaptive, 16, 3, 8) ==
            std::make_pair<std::size_t, std::size_t>(48, 9));
    REQUIRE_THROWS_AS(abeskl::qabe_params(QAbeMode::Selective, 16, 0, 8), parameter_error);
}

TEST_CASE("bins distinctness probability") {
    SECTION("closed-form values") {
        REQUIRE(abeskl::bins_distinctness_probability(1, 2, 2) == Catch::Approx(0.5).margin(1e-15));
        REQUIRE(abeskl::bins_distinctness_probability(2, 2, 2) ==
                Catch::Approx(0.25).margin(1e-15));
        REQUIRE(abeskl::bins_distinctness_probability(1, 4, 3) ==
                Catch::Approx(1.0 - 24.0 / 64.0).margin(1e-15));
        REQUIRE(abeskl::bins_distinctness_probability(3, 3, 4) == 1.0);
        REQUIRE_THROWS_AS(abeskl::bins_distinctness_probability(0, 2, 2), parameter_error);
    }

    SECTION("monte carlo agreement") {
        Rng rng(832);
        const std::size_t v = 4, w = 4, q = 3;
        const int trials = 20000;
        int hits = 0;
        for (int t = 0; t < trials; ++t) {
            // A trial counts when every row has a collision among its q draws.
            bool all_rows_collide = true;
            for (std::size_t i = 0; i < v; ++i) {
                unsigned seen = 0;
                bool collide = false;
                for (std::size_t k = 0; k < q; ++k) {
                    unsigned bit = 1u << rng.below(w);
                    if (seen & bit) collide = true;
                    seen |= bit;
                }
                if (!collide) all_rows_collide = false;
            }
            if (all_rows_collide) ++hits;
        }
        double p = abeskl::bins_distinctness_probability(v, w, q);
        double est = static_cast<double>(hits) / trials;
        double sigma = std::sqrt(p * (1.0 - p) / trials);
        REQUIRE(std::abs(est - p) < 4.0 * sigma);
    }
}

TEST_CASE("ABE-SKL JSON round trips") {
    Rng rng(841);
    auto [pk, msk] = abeskl::abe1_setup(2, 2, rng);
    Bits y = rng.bits(2);
    auto [qusk, vk] = abeskl::abe1_kg(msk, y, rng);
    Bits m = rng.bits(2);
    auto ct = abeskl::abe1_enc(pk, y, m, rng);

    auto qusk2 = nlohmann::json(qusk).get<abeskl::Abe1Qusk>();
    auto vk2 = nlohmann::json(vk).get<abeskl::Abe1Vk>();
    auto ct2 = nlohmann::json(ct).get<abeskl::Abe1Ciphertext>();
    auto [dec, post] = abeskl::abe1_dec(qusk2, y, ct2, rng);
    REQUIRE(dec == m);
    REQUIRE(abeskl::abe1_vrfy(vk2, post, rng).first);
}
