// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include <hyperan/quaternion.hpp>

#include "test_support.hpp"

using hyperan::Axis;
using hyperan::Quaternion;

namespace {
constexpr Quaternion kI{0, 1, 0, 0};
constexpr Quaternion kJ{0, 0, 1, 0};
constexpr Quaternion kK{0, 0, 0, 1};

bool near(const Quaternion& a, const Quaternion& b, double tol = 1e-14) {
    return testutil::max_component_diff(a, b) <= tol;
}
}  // namespace

TEST_CASE("Hamilton product follows the basis table", "[quaternion]") {
    CHECK(near(kI * kJ, kK));
    CHECK(near(kJ * kK, kI));
    CHECK(near(kK * kI, kJ));
    CHECK(near(kJ * kI, -kK));
    CHECK(near(kK * kJ, -kI));
    CHECK(near(kI * kK, -kJ));
    CHECK(near(kI * kI, Quaternion{-1, 0, 0, 0}));
    CHECK(near(kJ * kJ, Quaternion{-1, 0, 0, 0}));
    CHECK(near(kK * kK, Quaternion{-1, 0, 0, 0}));

    const Quaternion a{1, 1, 0, 0};  // 1 + i
    const Quaternion b{1, 0, 1, 0};  // 1 + j
    CHECK(near(a * b, Quaternion{1, 1, 1, 1}));
    CHECK(near(b * a, Quaternion{1, 1, 1, -1}));
}

TEST_CASE("modulus is multiplicative", "[quaternion]") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 200; ++trial) {
        const Quaternion p{testutil::symmetric_double(gen), testutil::symmetric_double(gen),
                           testutil::symmetric_double(gen), testutil::symmetric_double(gen)};
        const Quaternion q{testutil::symmetric_double(gen), testutil::symmetric_double(gen),
                           testutil::symmetric_double(gen), testutil::symmetric_double(gen)};
        CHECK((p * q).modulus() == Catch::Approx(p.modulus() * q.modulus()).margin(1e-13));
    }
}

TEST_CASE("conjugation reverses products, involutions preserve them", "[quaternion]") {
    std::mt19937_64 gen(12);
    for (int trial = 0; trial < 100; ++trial) {
        const Quaternion p{testutil::symmetric_double(gen), testutil::symmetric_double(gen),
                           testutil::symmetric_double(gen), testutil::symmetric_double(gen)};
        const Quaternion q{testutil::symmetric_double(gen), testutil::symmetric_double(gen),
                           testutil::symmetric_double(gen), testutil::symmetric_double(gen)};
        CHECK(near((p * q).conj(), q.conj() * p.conj(), 1e-13));
        for (Axis ax : {Axis::i, Axis::j, Axis::k}) {
            CHECK(near(involution(p * q, ax), involution(p, ax) * involution(q, ax), 1e-13));
            CHECK(near(involution(involution(p, ax), ax), p));
        }
    }
}

TEST_CASE("involution negates the orthogonal imaginary components", "[quaternion]") {
    const Quaternion q{1, 1, 1, 1};
    CHECK(near(involution(q, Axis::i), Quaternion{1, 1, -1, -1}));
    CHECK(near(involution(q, Axis::j), Quaternion{1, -1, 1, -1}));
    CHECK(near(involution(q, Axis::k), Quaternion{1, -1, -1, 1}));
    // -mu q mu spelled out for the i axis
    const Quaternion direct = -(kI * q * kI);
    CHECK(near(involution(q, Axis::i), direct));
}

TEST_CASE("inverse multiplies to identity and rejects zero", "[quaternion]") {
    const Quaternion q{1, 1, 1, 1};
    CHECK(near(hyperan::inverse(q), Quaternion{0.25, -0.25, -0.25, -0.25}));
    CHECK(near(q * hyperan::inverse(q), Quaternion::identity()));
    CHECK(near(hyperan::inverse(q) * q, Quaternion::identity()));
    CHECK_THROWS_AS(hyperan::inverse(Quaternion::zero()), std::domain_error);

    std::mt19937_64 gen(13);
    for (int trial = 0; trial < 100; ++trial) {
        const Quaternion p{testutil::symmetric_double(gen), testutil::symmetric_double(gen),
                           testutil::symmetric_double(gen), testutil::symmetric_double(gen)};
        if (p.norm() < 1e-6) continue;
        CHECK(near(p * hyperan::inverse(p), Quaternion::identity(), 1e-12));
    }
}

TEST_CASE("exp_degenerate matches the closed form", "[quaternion]") {
    CHECK(near(hyperan::exp_degenerate(0.0, 0.0), Quaternion::identity()));
    CHECK(near(hyperan::exp_degenerate(std::numbers::pi / 2, 0.0), kJ, 1e-15));

    const double m = 1.0;  // hypot(0.6, 0.8)
    const Quaternion e = hyperan::exp_degenerate(0.6, 0.8);
    CHECK(near(e, Quaternion{std::cos(m), 0.0, 0.6 * std::sin(m), 0.8 * std::sin(m)}, 1e-15));

    std::mt19937_64 gen(14);
    for (int trial = 0; trial < 200; ++trial) {
        const double c = 1e3 * testutil::symmetric_double(gen);
        const double d = 1e3 * testutil::symmetric_double(gen);
        CHECK(hyperan::exp_degenerate(c, d).modulus() == Catch::Approx(1.0).margin(1e-14));
    }
}

TEST_CASE("Cayley-Dickson split round trips exactly", "[quaternion]") {
    const Quaternion q{1.5, -2.25, 3.125, -4.0625};
    const auto cd = hyperan::to_cayley_dickson(q);
    CHECK(cd.z1 == std::complex<double>(1.5, -2.25));
    CHECK(cd.z2 == std::complex<double>(3.125, -4.0625));
    const Quaternion back = hyperan::from_cayley_dickson(cd);
    CHECK(back.w == q.w);
    CHECK(back.x == q.x);
    CHECK(back.y == q.y);
    CHECK(back.z == q.z);
}

TEST_CASE("polar Cayley-Dickson extraction on known forms", "[quaternion][polar]") {
    SECTION("real scalar") {
        const auto p = hyperan::to_polar_cd(Quaternion{2, 0, 0, 0});
        CHECK(std::abs(p.modulus - std::complex<double>(2, 0)) < 1e-15);
        CHECK(std::abs(p.phase) < 1e-15);
    }
    SECTION("(1+i) exp(0.3 j)") {
        const Quaternion q =
            Quaternion{1, 1, 0, 0} * hyperan::exp_degenerate(0.3, 0.0);
        const auto p = hyperan::to_polar_cd(q);
        CHECK(std::abs(p.modulus - std::complex<double>(1, 1)) < 1e-14);
        CHECK(std::abs(p.phase - std::complex<double>(0.3, 0)) < 1e-14);
    }
    SECTION("from_polar_cd(i, pi/2) lands on k") {
        const Quaternion q = hyperan::from_polar_cd({{0, 1}, {std::numbers::pi / 2, 0}});
        CHECK(testutil::max_component_diff(q, kK) < 1e-15);
    }
    SECTION("complex phase") {
        const hyperan::PolarCD in{{2.0, 1.0}, {0.4, 0.3}};
        const auto out = hyperan::to_polar_cd(hyperan::from_polar_cd(in));
        CHECK(std::abs(out.modulus - in.modulus) < 1e-14);
        CHECK(std::abs(out.phase - in.phase) < 1e-14);
    }
}

TEST_CASE("polar Cayley-Dickson round trip on random non-degenerate input",
          "[quaternion][polar]") {
    std::mt19937_64 gen(15);
    int tested = 0;
    while (tested < 2000) {
        const Quaternion q{testutil::symmetric_double(gen), testutil::symmetric_double(gen),
                           testutil::symmetric_double(gen), testutil::symmetric_double(gen)};
        if (q.w * q.w + q.x * q.x < 1e-4 * q.norm() || q.norm() == 0.0) continue;
        ++tested;
        const auto p = hyperan::to_polar_cd(q);
        CHECK(std::abs(p.phase) < std::numbers::pi / 2);
        const Quaternion back = hyperan::from_polar_cd(p);
        CHECK(testutil::max_component_diff(back, q) < 1e-12);
    }
}

TEST_CASE("polar extraction rejects the degenerate branch", "[quaternion][polar]") {
    CHECK_THROWS_AS(hyperan::to_polar_cd(kJ), std::domain_error);
    CHECK_THROWS_AS(hyperan::to_polar_cd(kK), std::domain_error);
    CHECK_THROWS_AS(hyperan::to_polar_cd(Quaternion{0, 0, 0.7, -0.2}), std::domain_error);
    CHECK_THROWS_AS(hyperan::to_polar_cd(Quaternion::zero()), std::domain_error);
}
