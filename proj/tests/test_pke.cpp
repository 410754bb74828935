#include <catch2/catch_amalgamated.hpp>

#include "keylease/pke.hpp"

using namespace keylease;
using pke::LweParams;

namespace {
LweParams params16() {
    LweParams p;
    p.payload_bits = 16;
    return p;
}
}  // namespace

TEST_CASE("worst-case noise stays below the decoding threshold") {
    LweParams p = params16();
    // Accumulated error per slot is |<e,r>| <= m with ternary e and binary r.
    REQUIRE(p.q > 4 * (p.m + 1));
    REQUIRE(p.q > 4 * (p.n + 1));
}

TEST_CASE("round trip over 1000 random messages with zero failures") {
    Rng rng(101);
    auto kp = pke::pke_kg(params16(), rng);
    for (int i = 0; i < 1000; ++i) {
        Bits m = rng.bits(16);
        REQUIRE(pke::pke_dec(kp.dk, pke::pke_enc(kp.ek, m, rng)) == m);
    }
}

TEST_CASE("boundary messages and determinism") {
    Rng rng(102);
    auto kp = pke::pke_kg(params16(), rng);
    for (Bits m : {Bits(16, 0), Bits(16, 1)}) {
        auto ct = pke::pke_enc(kp.ek, m, rng);
        Bits first = pke::pke_dec(kp.dk, ct);
        REQUIRE(first == m);
        REQUIRE(pke::pke_dec(kp.dk, ct) == first);
    }
}

TEST_CASE("distinct seeds give distinct secret keys") {
    Rng a(1), b(2);
    REQUIRE(pke::pke_kg(params16(), a).dk.s != pke::pke_kg(params16(), b).dk.s);
}

TEST_CASE("degenerate modulus is rejected") {
    Rng rng(3);
    LweParams p = params16();
    p.q = 4 * (p.n + 1);
    REQUIRE_THROWS_AS(pke::pke_kg(p, rng), parameter_error);
    p.q = 50;
    REQUIRE_THROWS_AS(pke::pke_kg(p, rng), parameter_error);
}

TEST_CASE("payload overflow is rejected") {
    Rng rng(104);
    auto kp = pke::pke_kg(params16(), rng);
    REQUIRE_THROWS_AS(pke::pke_enc(kp.ek, rng.bits(17), rng), parameter_error);
}

TEST_CASE("independent keypair fails to decrypt") {
    Rng rng(105);
    auto kp = pke::pke_kg(params16(), rng);
    auto other = pke::pke_kg(params16(), rng);
    int mismatches = 0;
    const int trials = 1000;
    for (int i = 0; i < trials; ++i) {
        Bits m = rng.bits(16);
        if (pke::pke_dec(other.dk, pke::pke_enc(kp.ek, m, rng)) != m) ++mismatches;
    }
    REQUIRE(mismatches >= trials - trials / 256);  // >= 1 - 2^-8
}

TEST_CASE("secret key bit encoding") {
    Rng rng(106);
    auto kp = pke::pke_kg(params16(), rng);

    SECTION("round trip") {
        Bits b = pke::dk_to_bits(kp.dk);
        REQUIRE(b.size() == pke::dk_bit_width(kp.dk.params));
        REQUIRE(pke::dk_from_bits(kp.dk.params, b).s == kp.dk.s);
    }

    SECTION("total on arbitrary bitstrings") {
        Bits junk = rng.bits(pke::dk_bit_width(params16()));
        auto dk = pke::dk_from_bits(params16(), junk);
        for (auto v : dk.s) REQUIRE(v < params16().q);
    }

    SECTION("wrong width rejected") {
        REQUIRE_THROWS_AS(pke::dk_from_bits(params16(), rng.bits(7)), decode_error);
    }
}

TEST_CASE("PKE JSON round trips") {
    Rng rng(107);
    auto kp = pke::pke_kg(params16(), rng);
    auto ct = pke::pke_enc(kp.ek, rng.bits(16), rng);

    auto ek2 = nlohmann::json(kp.ek).get<pke::PkeEncKey>();
    REQUIRE(ek2.a == kp.ek.a);
    REQUIRE(ek2.b == kp.ek.b);
    auto dk2 = nlohmann::json(kp.dk).get<pke::PkeDecKey>();
    REQUIRE(dk2.s == kp.dk.s);
    auto ct2 = nlohmann::json(ct).get<pke::PkeCiphertext>();
    REQUIRE(pke::pke_dec(kp.dk, ct2) == pke::pke_dec(kp.dk, ct));
}
