// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <hyperan/features.hpp>
#include <hyperan/signals.hpp>

#include "test_support.hpp"

using hyperan::ComplexSignal;
using hyperan::HyperRep;
using hyperan::InstFeatures;
using hyperan::NormalMode;
using hyperan::Quaternion;

namespace {

constexpr double kPi = std::numbers::pi;

// fold into (-pi/2, pi/2], the per-sample branch cell
double fold(double v) { return v - kPi * std::ceil((v - kPi / 2.0) / kPi); }

HyperRep make_rep(const ComplexSignal& envelope, const std::vector<double>& phase) {
    const hyperan::Modulated mod = hyperan::modulate(envelope, phase);
    return HyperRep{mod.q};
}

ComplexSignal constant_envelope(std::size_t n, std::complex<double> value) {
    ComplexSignal e;
    e.dt = 1.0 / double(n);
    e.samples.assign(n, value);
    return e;
}

void check_reconstruction(const InstFeatures& ft, const HyperRep& rep, double tol) {
    for (std::size_t i = 0; i < ft.size(); ++i) {
        if (ft.mask[i]) continue;
        const Quaternion rebuilt =
            hyperan::from_polar_cd({ft.rho[i], {ft.phi[i], 0.0}});
        CHECK((rebuilt - rep.signal.samples[i]).modulus() < tol);
    }
}

}  // namespace

TEST_CASE("unwrap turns a folded ramp back into the ramp") {
    const std::size_t n = 200;
    std::vector<double> truth(n), wrapped(n);
    for (std::size_t i = 0; i < n; ++i) {
        truth[i] = 0.1 + 0.31 * double(i);
        wrapped[i] = fold(truth[i]);
    }
    const std::vector<double> un = hyperan::unwrap_phase(wrapped);
    for (std::size_t i = 0; i < n; ++i) CHECK(un[i] == Catch::Approx(truth[i]).margin(1e-12));
}

TEST_CASE("unwrap changes samples by exact multiples of the branch period") {
    std::mt19937_64 gen(9);
    std::vector<double> wrapped(500);
    for (double& v : wrapped) v = (testutil::symmetric_double(gen)) * kPi / 2.0;
    const std::vector<double> un = hyperan::unwrap_phase(wrapped);
    for (std::size_t i = 0; i < wrapped.size(); ++i) {
        const double turns = (un[i] - wrapped[i]) / kPi;
        CHECK(std::abs(turns - std::round(turns)) < 1e-12);
    }
}

TEST_CASE("constant-rate carrier: exact envelope, phase, frequency, no masks") {
    const std::size_t n = 256;
    const double nu0 = 30.7;  // non-resonant: the phase never lands on a branch edge
    const ComplexSignal envelope = hyperan::bandlimited_random({n, 8, 4});
    hyperan::PhaseLaw law;
    law.nu0 = nu0;
    const std::vector<double> phase = hyperan::phase_samples(law, n, envelope.dt);
    const HyperRep rep = make_rep(envelope, phase);

    const InstFeatures ft = hyperan::extract_features(rep);
    REQUIRE(ft.size() == n);

    for (std::size_t i = 0; i < n; ++i) {
        CHECK(ft.mask[i] == 0);
        CHECK(std::abs(ft.phi[i] - phase[i]) < 1e-9);
        CHECK(std::abs(ft.rho[i] - envelope.samples[i]) < 1e-9);
        CHECK(std::abs(ft.freq[i] - nu0) < 1e-6);
    }
    check_reconstruction(ft, rep, 1e-11);
}

TEST_CASE("envelope dropout is masked, bridged, and recovered past the gap") {
    const std::size_t n = 256;
    ComplexSignal envelope = constant_envelope(n, {1.0, 0.2});
    for (std::size_t i = 100; i < 104; ++i) envelope.samples[i] = 0.0;
    hyperan::PhaseLaw law;
    law.nu0 = 30.7;
    const std::vector<double> phase = hyperan::phase_samples(law, n, envelope.dt);
    const HyperRep rep = make_rep(envelope, phase);

    const InstFeatures ft = hyperan::extract_features(rep);
    for (std::size_t i = 0; i < n; ++i) {
        const bool in_gap = i >= 100 && i < 104;
        CHECK(int(ft.mask[i]) == int(in_gap));
        if (in_gap) {
            // demodulation fill is faithful: the signal really is silent here
            CHECK(std::abs(ft.rho[i]) < 1e-12);
        } else {
            CHECK(std::abs(ft.phi[i] - phase[i]) < 1e-9);
            CHECK(std::abs(ft.rho[i] - std::complex<double>(1.0, 0.2)) < 1e-9);
        }
        // the phase law is linear, so even the bridged samples sit on it
        CHECK(std::abs(ft.freq[i] - 30.7) < 1e-6);
    }
    check_reconstruction(ft, rep, 1e-11);
}

TEST_CASE("branch-edge samples on a resonant grid are masked yet refilled exactly") {
    // carrier phase pi*i/8 passes exactly through pi/2 + m*pi every 8th
    // sample, where the raw envelope direction is numerically undefined;
    // the demodulation fill must still recover the true envelope because
    // the bridged phase is exact for a linear law
    const std::size_t n = 64;
    ComplexSignal envelope;
    envelope.dt = 1.0 / double(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = double(i) * envelope.dt;
        envelope.samples.emplace_back(1.0 + 0.4 * std::cos(2.0 * kPi * t),
                                      0.3 + 0.2 * std::sin(2.0 * kPi * t));
    }
    hyperan::PhaseLaw law;
    law.nu0 = 4.0;  // phase step pi/4: branch edges land on samples i = 4 mod 8
    const std::vector<double> phase = hyperan::phase_samples(law, n, envelope.dt);
    const HyperRep rep = make_rep(envelope, phase);

    const InstFeatures ft = hyperan::extract_features(rep);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(int(ft.mask[i]) == int(i % 8 == 4));
        CHECK(std::abs(ft.phi[i] - phase[i]) < 1e-9);
        CHECK(std::abs(ft.rho[i] - envelope.samples[i]) < 1e-10);
        CHECK(std::abs(ft.freq[i] - 4.0) < 1e-6);
    }
}

TEST_CASE("a phase step at the branch limit masks both endpoints") {
    const std::size_t n = 100;
    std::vector<double> phase(n);
    for (std::size_t i = 0; i < n; ++i) phase[i] = 0.3 * double(i);
    // make the 49->50 step exactly pi/2, the maximally ambiguous value: it
    // folds onto the open end of the branch cell, so neither branch choice
    // is trustworthy and both endpoints must be masked
    for (std::size_t i = 50; i < n; ++i) phase[i] += kPi / 2.0 - 0.3;
    const ComplexSignal envelope = constant_envelope(n, {1.0, 0.0});
    const HyperRep rep = make_rep(envelope, phase);

    const InstFeatures ft = hyperan::extract_features(rep);
    for (std::size_t i = 0; i < n; ++i) {
        const bool flagged = i == 49 || i == 50;
        CHECK(int(ft.mask[i]) == int(flagged));
    }
    check_reconstruction(ft, rep, 1e-11);
}

TEST_CASE("central-difference frequency is exact on a quadratic phase") {
    const std::size_t n = 256;
    const double dt = 1.0 / double(n);
    std::vector<double> phase(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = double(i) * dt;
        // the 0.37 rad offset keeps every sample clear of the branch-edge
        // grid (without it, samples 32/64/160/192 land exactly on edges,
        // get bridged, and their neighbours pick up an O(dt) deviation);
        // a constant offset does not change the frequency
        phase[i] = 2.0 * kPi * (8.0 * t * t + 5.0 * t) + 0.37;
    }
    const HyperRep rep = make_rep(constant_envelope(n, {1.0, 0.0}), phase);
    const InstFeatures ft = hyperan::extract_features(rep);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double t = double(i) * dt;
        CHECK(std::abs(ft.freq[i] - (16.0 * t + 5.0)) < 1e-7);
    }
}

TEST_CASE("polynomial-window derivative matches on smooth phase") {
    const std::size_t n = 128;
    const double dt = 1.0 / double(n);
    std::vector<double> phase(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = double(i) * dt;
        phase[i] = 2.0 * kPi * (8.0 * t * t + 5.0 * t);
    }
    const std::vector<double> f = hyperan::inst_frequency_sg(phase, dt, 7);
    for (std::size_t i = 3; i + 3 < n; ++i) {
        const double t = double(i) * dt;
        CHECK(std::abs(f[i] - (16.0 * t + 5.0)) < 1e-7);
    }
    // shrunken end stencils are first-order; stay within O(dt) of the law
    CHECK(std::abs(f[0] - 5.0) < 16.0 * dt + 1e-7);
    CHECK(std::abs(f[n - 1] - (16.0 * (1.0 - dt) + 5.0)) < 16.0 * dt + 1e-7);
}

TEST_CASE("helix envelope yields the analytic binormal direction") {
    const std::size_t n = 4096;
    const double dt = 1.0 / double(n);
    const double r = 1.0, omega = 2.0 * kPi;
    std::vector<std::complex<double>> rho(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = double(i) * dt;
        rho[i] = std::polar(r, omega * t);
    }
    const auto normal = hyperan::normalized(hyperan::osculating_normal(rho, dt, NormalMode::frenet));
    // binormal of the helix (r cos wt, r sin wt, t): (sin wt, -cos wt, r w) normalized
    const double scale = std::sqrt(1.0 + r * r * omega * omega);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double t = double(i) * dt;
        const std::array<double, 3> b = {std::sin(omega * t) / scale, -std::cos(omega * t) / scale,
                                         r * omega / scale};
        const std::array<double, 3> u = normal[i];
        // direction error as the cross-product magnitude (~ angle in radians)
        const double cx = u[1] * b[2] - u[2] * b[1];
        const double cy = u[2] * b[0] - u[0] * b[2];
        const double cz = u[0] * b[1] - u[1] * b[0];
        CHECK(std::sqrt(cx * cx + cy * cy + cz * cz) < 1e-6);
        CHECK(u[0] * b[0] + u[1] * b[1] + u[2] * b[2] > 0.0);  // orientation agrees
    }
}

TEST_CASE("constant envelope: curvature normal vanishes, literal normal does not") {
    const std::size_t n = 64;
    const double dt = 1.0 / double(n);
    std::vector<std::complex<double>> rho(n, {1.0, -0.5});
    const auto frenet = hyperan::osculating_normal(rho, dt, NormalMode::frenet);
    for (const auto& v : frenet) {
        CHECK(std::abs(v[0]) < 1e-12);
        CHECK(std::abs(v[1]) < 1e-12);
        CHECK(std::abs(v[2]) < 1e-12);
    }
    const auto literal = hyperan::osculating_normal(rho, dt, NormalMode::literal);
    // r x r' with r' = (0,0,1): constant (-0.5 - 0, 0 - 1, 0) direction
    for (const auto& v : literal) {
        CHECK(v[0] == Catch::Approx(-0.5).margin(1e-9));
        CHECK(v[1] == Catch::Approx(-1.0).margin(1e-9));
        CHECK(std::abs(v[2]) < 1e-12);
    }
}

TEST_CASE("degenerate feature inputs are rejected") {
    HyperRep rep;
    rep.signal.dt = 1.0;

    rep.signal.samples.assign(16, Quaternion::zero());
    CHECK_THROWS_AS(hyperan::extract_features(rep), std::domain_error);

    rep.signal.samples.assign(16, Quaternion{0, 0, 1, 0});  // branch edge everywhere
    CHECK_THROWS_AS(hyperan::extract_features(rep), std::domain_error);

    rep.signal.samples.assign(4, Quaternion{1, 0, 0, 0});  // too short
    CHECK_THROWS_AS(hyperan::extract_features(rep), std::invalid_argument);

    rep.signal.samples.assign(16, Quaternion{1, 0, 0, 0});
    CHECK_THROWS_AS(hyperan::extract_features(rep, 4), std::invalid_argument);  // even window

    std::vector<double> two(2, 0.0);
    CHECK_THROWS_AS(hyperan::inst_frequency(two, 1.0), std::invalid_argument);
}
