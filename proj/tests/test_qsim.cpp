#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "keylease/qsim.hpp"

using namespace keylease;
using qsim::Amplitude;
using qsim::Ket;
using qsim::RegisterLayout;

namespace {
RegisterLayout bdk() { return RegisterLayout({{"b", 1}, {"dk", 2}}); }
}  // namespace

TEST_CASE("basis ket is a single unit-amplitude term") {
    Ket k = qsim::basis_ket(bdk(), {{0}, {0, 1}});
    REQUIRE(k.terms().size() == 1);
    REQUIRE(k.terms().begin()->first == Bits{0, 0, 1});
    REQUIRE(k.terms().begin()->second == Amplitude{1.0, 0.0});

    Ket one = qsim::basis_ket(RegisterLayout({{"b", 1}}), {{1}});
    REQUIRE(one.terms().begin()->first == Bits{1});
}

TEST_CASE("basis ket rejects width mismatch") {
    REQUIRE_THROWS_AS(qsim::basis_ket(bdk(), {{0}, {0, 1, 1}}), layout_error);
}

TEST_CASE("layout validation") {
    REQUIRE_THROWS_AS(RegisterLayout({{"a", 1}, {"a", 2}}), layout_error);
    REQUIRE_THROWS_AS(RegisterLayout({{"a", 0}}), layout_error);
    REQUIRE_THROWS_AS(RegisterLayout({{"a", qsim::kDefaultWidthCap + 1}}), layout_error);
}

TEST_CASE("superpose normalizes equal amplitudes to 1/sqrt(2)") {
    Ket k = qsim::superpose(bdk(), {{{{0}, {0, 0}}, {1.0, 0.0}}, {{{1}, {1, 1}}, {1.0, 0.0}}});
    REQUIRE(k.terms().size() == 2);
    for (const auto& [label, amp] : k.terms())
        REQUIRE(std::abs(amp - Amplitude{1.0 / std::sqrt(2.0), 0.0}) < 1e-12);
}

TEST_CASE("superpose of one term is a basis ket") {
    Ket k = qsim::superpose(bdk(), {{{{0}, {0, 0}}, {0.5, 0.0}}});
    REQUIRE(k.terms().size() == 1);
    REQUIRE(std::abs(k.terms().begin()->second - Amplitude{1.0, 0.0}) < 1e-12);
}

TEST_CASE("superpose rejects duplicate labels and zero states") {
    REQUIRE_THROWS_AS(
        qsim::superpose(bdk(), {{{{0}, {0, 0}}, {1.0, 0.0}}, {{{0}, {0, 0}}, {1.0, 0.0}}}),
        layout_error);
    REQUIRE_THROWS_AS(qsim::superpose(bdk(), {{{{0}, {0, 0}}, {0.0, 0.0}}}),
                      degenerate_state_error);
    REQUIRE_THROWS_AS(qsim::superpose(bdk(), {}), degenerate_state_error);
}

TEST_CASE("tensor of two two-term kets has four quarter-weight terms") {
    RegisterLayout a({{"x", 1}});
    RegisterLayout b({{"y", 1}});
    Ket ka = qsim::superpose(a, {{{{0}}, {1.0, 0.0}}, {{{1}}, {1.0, 0.0}}});
    Ket kb = qsim::superpose(b, {{{{0}}, {1.0, 0.0}}, {{{1}}, {1.0, 0.0}}});
    Ket joint = qsim::tensor(ka, kb);
    REQUIRE(joint.terms().size() == 4);
    for (const auto& [label, amp] : joint.terms())
        REQUIRE(std::abs(amp - Amplitude{0.5, 0.0}) < 1e-12);
    REQUIRE(joint.norm_squared() == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("tensor of basis kets is a basis ket; name collisions rejected") {
    Ket ka = qsim::basis_ket(RegisterLayout({{"x", 1}}), {{1}});
    Ket kb = qsim::basis_ket(RegisterLayout({{"y", 2}}), {{0, 1}});
    Ket joint = qsim::tensor(ka, kb);
    REQUIRE(joint.terms().size() == 1);
    REQUIRE(joint.terms().begin()->first == Bits{1, 0, 1});
    REQUIRE_THROWS_AS(qsim::tensor(ka, ka), layout_error);
}

TEST_CASE("apply_classical extends labels branch-wise") {
    Ket k = qsim::superpose(bdk(), {{{{0}, {0, 1}}, {1.0, 0.0}}, {{{1}, {1, 0}}, {1.0, 0.0}}});

    SECTION("identity copy of b") {
        Ket out = k.apply_classical({"b"}, "copy", 1,
                                    [](const std::vector<Bits>& v) { return v[0]; });
        for (const auto& [label, amp] : out.terms())
            REQUIRE(out.register_value(label, "copy") == out.register_value(label, "b"));
        REQUIRE(out.norm_squared() == Catch::Approx(1.0).margin(1e-9));
    }

    SECTION("constant zero output leaves state a product with |0>") {
        Ket out = k.apply_classical({"b"}, "z", 2,
                                    [](const std::vector<Bits>&) { return Bits{0, 0}; });
        for (const auto& [label, amp] : out.terms())
            REQUIRE(out.register_value(label, "z") == Bits{0, 0});
        Ket stripped = out.strip_register("z");
        REQUIRE(stripped.fidelity(k) == Catch::Approx(1.0).margin(1e-9));
    }

    SECTION("both branches agreeing makes the output constant") {
        Ket out = k.apply_classical({"dk"}, "parity", 1, [](const std::vector<Bits>& v) {
            return Bits{static_cast<std::uint8_t>(v[0][0] ^ v[0][1])};
        });
        for (const auto& [label, amp] : out.terms())
            REQUIRE(out.register_value(label, "parity") == Bits{1});
    }

    SECTION("errors") {
        REQUIRE_THROWS_AS(
            k.apply_classical({"b"}, "dk", 1, [](const std::vector<Bits>& v) { return v[0]; }),
            layout_error);
        REQUIRE_THROWS_WITH(
            k.apply_classical({"b"}, "e", 1,
                              [](const std::vector<Bits>&) -> Bits {
                                  throw std::runtime_error("boom");
                              }),
            Catch::Matchers::ContainsSubstring("boom") &&
                Catch::Matchers::ContainsSubstring("basis label"));
    }
}

TEST_CASE("measurement follows the Born rule") {
    Rng rng(1234);

    SECTION("basis ket measures its own value with certainty") {
        Ket k = qsim::basis_ket(bdk(), {{1}, {0, 1}});
        auto [v, post] = k.measure_register("dk", rng);
        REQUIRE(v == Bits{0, 1});
        REQUIRE(post.fidelity(k) == Catch::Approx(1.0).margin(1e-9));
    }

    SECTION("equal superposition splits 50/50 and collapses") {
        Ket k =
            qsim::superpose(bdk(), {{{{0}, {0, 0}}, {1.0, 0.0}}, {{{1}, {1, 1}}, {1.0, 0.0}}});
        std::size_t zeros = 0;
        const std::size_t n = 4000;
        for (std::size_t i = 0; i < n; ++i) {
            auto [v, post] = k.measure_register("b", rng);
            if (v == Bits{0}) {
                ++zeros;
                REQUIRE(post.fidelity(qsim::basis_ket(bdk(), {{0}, {0, 0}})) ==
                        Catch::Approx(1.0).margin(1e-9));
            }
            REQUIRE(post.terms().size() == 1);
        }
        double rate = static_cast<double>(zeros) / n;
        REQUIRE(rate > 0.46);
        REQUIRE(rate < 0.54);
    }

    SECTION("chi-square goodness of fit on a 3-term ket at significance 0.001") {
        RegisterLayout lay({{"r", 2}});
        Ket k = qsim::superpose(lay, {{{{0, 0}}, {0.5, 0.0}},
                                      {{{0, 1}}, {0.5, 0.0}},
                                      {{{1, 0}}, {1.0 / std::sqrt(2.0), 0.0}}});
        const std::size_t n = 10000;
        std::map<Bits, std::size_t> counts;
        for (std::size_t i = 0; i < n; ++i) counts[k.measure_register("r", rng).first]++;
        std::map<Bits, double> expected = {
            {{0, 0}, 0.25 * n}, {{0, 1}, 0.25 * n}, {{1, 0}, 0.5 * n}};
        double chi2 = 0.0;
        for (const auto& [v, e] : expected) {
            double d = static_cast<double>(counts[v]) - e;
            chi2 += d * d / e;
        }
        // df = 2, critical value at significance 0.001
        REQUIRE(chi2 < 13.8155);
    }
}

TEST_CASE("strip_register requires a constant register") {
    Ket k = qsim::superpose(bdk(), {{{{0}, {0, 1}}, {1.0, 0.0}}, {{{1}, {0, 1}}, {1.0, 0.0}}});
    Ket stripped = k.strip_register("dk");
    REQUIRE(stripped.layout().registers().size() == 1);
    REQUIRE(stripped.terms().size() == 2);
    REQUIRE_THROWS_AS(k.strip_register("b"), layout_error);
}

TEST_CASE("inner product and fidelity") {
    Ket psi = qsim::superpose(bdk(), {{{{0}, {0, 0}}, {1.0, 0.0}}, {{{1}, {1, 1}}, {1.0, 0.0}}});
    REQUIRE(std::abs(qsim::inner_product(psi, psi) - Amplitude{1.0, 0.0}) < 1e-12);
    Ket e0 = qsim::basis_ket(bdk(), {{0}, {0, 0}});
    Ket e1 = qsim::basis_ket(bdk(), {{1}, {1, 1}});
    REQUIRE(std::abs(qsim::inner_product(e0, e1)) < 1e-12);
    REQUIRE(qsim::fidelity(psi, e0) == Catch::Approx(0.5).margin(1e-12));
    REQUIRE_THROWS_AS(psi.inner_product(qsim::basis_ket(RegisterLayout({{"z", 3}}), {{0, 0, 0}})),
                      layout_error);
}

TEST_CASE("projection analysis") {
    Ket target =
        qsim::superpose(bdk(), {{{{0}, {0, 0}}, {1.0, 0.0}}, {{{1}, {1, 1}}, {1.0, 0.0}}});

    SECTION("state equal to target accepts with probability 1") {
        auto res = target.projection_analysis(target);
        REQUIRE(res.accept_probability == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(res.accepted_state.has_value());
        REQUIRE_FALSE(res.rejected_state.has_value());
    }

    SECTION("collapsed branch accepts with probability 1/2") {
        Ket collapsed = qsim::basis_ket(bdk(), {{0}, {0, 0}});
        auto res = collapsed.projection_analysis(target);
        REQUIRE(res.accept_probability == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(res.accepted_state.has_value());
        REQUIRE(res.rejected_state.has_value());
        REQUIRE(res.accepted_state->fidelity(target) == Catch::Approx(1.0).margin(1e-9));
    }

    SECTION("orthogonal state rejects with probability 1") {
        Ket phase =
            qsim::superpose(bdk(), {{{{0}, {0, 0}}, {1.0, 0.0}}, {{{1}, {1, 1}}, {-1.0, 0.0}}});
        auto res = phase.projection_analysis(target);
        REQUIRE(res.accept_probability == Catch::Approx(0.0).margin(1e-12));
        REQUIRE_FALSE(res.accepted_state.has_value());
    }

    SECTION("idempotence and post-state orthogonality") {
        Ket collapsed = qsim::basis_ket(bdk(), {{1}, {1, 1}});
        auto res = collapsed.projection_analysis(target);
        auto again = res.accepted_state->projection_analysis(target);
        REQUIRE(again.accept_probability == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(std::abs(res.accepted_state->inner_product(*res.rejected_state)) < 1e-9);
        REQUIRE(res.rejected_state->norm_squared() == Catch::Approx(1.0).margin(1e-9));
        auto rej_again = res.rejected_state->projection_analysis(target);
        REQUIRE(rej_again.accept_probability == Catch::Approx(0.0).margin(1e-9));
    }

    SECTION("sampled projection matches the analysis") {
        Rng rng(55);
        Ket collapsed = qsim::basis_ket(bdk(), {{0}, {0, 0}});
        std::size_t accepts = 0;
        const std::size_t n = 4000;
        for (std::size_t i = 0; i < n; ++i) {
            auto [ok, post] = collapsed.project(target, rng);
            if (ok) {
                ++accepts;
                REQUIRE(post.fidelity(target) == Catch::Approx(1.0).margin(1e-9));
            }
        }
        double rate = static_cast<double>(accepts) / n;
        REQUIRE(rate > 0.46);
        REQUIRE(rate < 0.54);
    }
}

TEST_CASE("norm preservation across operations") {
    Rng rng(99);
    RegisterLayout lay({{"a", 3}, {"b", 2}});
    Ket k = qsim::superpose(lay, {{{{0, 0, 1}, {0, 1}}, {0.3, 0.1}},
                                  {{{1, 0, 1}, {1, 0}}, {-0.5, 0.2}},
                                  {{{1, 1, 1}, {1, 1}}, {0.0, 0.7}}});
    REQUIRE(k.norm_squared() == Catch::Approx(1.0).margin(1e-9));
    Ket ext = k.apply_classical({"a", "b"}, "f", 2, [](const std::vector<Bits>& v) {
        return Bits{v[0][0], static_cast<std::uint8_t>(v[1][0] ^ v[1][1])};
    });
    REQUIRE(ext.norm_squared() == Catch::Approx(1.0).margin(1e-9));
    Ket joint = qsim::tensor(ext, qsim::basis_ket(RegisterLayout({{"c", 1}}), {{1}}));
    REQUIRE(joint.norm_squared() == Catch::Approx(1.0).margin(1e-9));
    auto [v, post] = joint.measure_register("a", rng);
    REQUIRE(post.norm_squared() == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("JSON round trip is exact") {
    Ket k = qsim::superpose(bdk(), {{{{0}, {0, 1}}, {0.6, 0.0}}, {{{1}, {1, 0}}, {0.0, 0.8}}});
    Ket back = qsim::Ket::from_json(k.to_json());
    REQUIRE(back.layout() == k.layout());
    REQUIRE(back.terms().size() == k.terms().size());
    REQUIRE(back.fidelity(k) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(back.to_json() == k.to_json());
}
