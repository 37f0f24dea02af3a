// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <hyperan/signals.hpp>
#include <hyperan/stqft.hpp>

#include "test_support.hpp"

using hyperan::ComplexSignal;
using hyperan::Spectrogram;
using hyperan::Window;

namespace {

constexpr double kPi = std::numbers::pi;

// reassemble q = z + j*o from the two projection planes
hyperan::QuaternionSignal combine(const ComplexSignal& z, const ComplexSignal& o) {
    hyperan::QuaternionSignal q;
    q.dt = z.dt;
    q.samples.reserve(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        q.samples.push_back({z.samples[i].real(), z.samples[i].imag(), o.samples[i].real(),
                             -o.samples[i].imag()});
    return q;
}

ComplexSignal proper_tone(std::size_t n, double cycles, std::complex<double> amp = 1.0) {
    ComplexSignal z;
    z.dt = 1.0 / double(n);
    z.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double th = 2.0 * kPi * cycles * double(i) / double(n);
        z.samples.push_back(amp * std::complex<double>(std::cos(th), std::sin(th)));
    }
    return z;
}

}  // namespace

TEST_CASE("frame layout and axis scales") {
    const std::size_t n = 1024, w = 128, hop = 32;
    const ComplexSignal z = testutil::random_complex_signal(3, n, 1.0 / double(n));
    const Spectrogram sg = hyperan::stqft(z, w, hop, Window::rect);

    CHECK(sg.frames() == (n - w) / hop + 1);  // 29 full windows
    CHECK(sg.bins_per_frame() == w / 2 + 1);
    CHECK(sg.df == Catch::Approx(double(n) / double(w)));          // 8 cycles per bin
    CHECK(sg.dt_frame == Catch::Approx(double(hop) / double(n)));
    CHECK(sg.t0 == Catch::Approx(0.5 * double(w - 1) / double(n)));
    CHECK(sg.window_len == w);
    CHECK(sg.hop == hop);
}

TEST_CASE("pure tone puts the ridge on its own bin under both windows") {
    const std::size_t n = 1024, w = 128, hop = 32;
    const ComplexSignal z = proper_tone(n, 256.0);
    for (Window win : {Window::rect, Window::hann}) {
        const Spectrogram sg = hyperan::stqft(z, w, hop, win);
        const std::vector<std::size_t> r = hyperan::ridge(sg);
        for (std::size_t b : r) CHECK(b == 32);  // 256 cycles / 8 per bin
        for (double f : hyperan::ridge_frequency(sg)) CHECK(f == Catch::Approx(256.0));
    }
}

TEST_CASE("an impulse lights every bin of exactly the frames that cover it") {
    const std::size_t n = 256, w = 64, hop = 32;
    hyperan::QuaternionSignal q;
    q.dt = 1.0 / double(n);
    q.samples.assign(n, hyperan::Quaternion::zero());
    q.samples[100] = {0.0, 2.0, 0.0, 0.0};

    const Spectrogram sg = hyperan::stqft(q, w, hop, Window::rect);
    for (std::size_t f = 0; f < sg.frames(); ++f) {
        const std::size_t start = f * hop;
        const bool covers = start <= 100 && 100 < start + w;
        for (std::size_t k = 0; k < sg.bins_per_frame(); ++k) {
            if (covers)
                CHECK(sg.mags[f][k] == Catch::Approx(2.0));  // flat modulus spectrum
            else
                CHECK(sg.mags[f][k] == 0.0);
        }
    }
}

TEST_CASE("right modulation rotates every frame spectrum by whole bins") {
    const std::size_t n = 512, w = 128, hop = 64;
    const ComplexSignal base = hyperan::bandlimited_random({n, 10, 3});
    // 64 cycles per record = 16 frame bins at df = n/w = 4
    const hyperan::SpectralModulation mod = hyperan::modulate_spectral(base, 64);
    REQUIRE(mod.separation_ok);

    const hyperan::QuaternionSignal q_mod = combine(mod.z, mod.o);
    for (Window win : {Window::rect, Window::hann}) {
        const Spectrogram sa = hyperan::stqft(base, w, hop, win);
        const Spectrogram sb = hyperan::stqft(q_mod, w, hop, win);
        REQUIRE(sa.frames() == sb.frames());
        for (std::size_t f = 0; f < sa.frames(); ++f)
            for (std::size_t k = 16; k < sb.bins_per_frame(); ++k)
                CHECK(sb.mags[f][k] == Catch::Approx(sa.mags[f][k - 16]).margin(1e-9));
    }
}

TEST_CASE("window shape is applied: DC gain of the tapered window") {
    const std::size_t n = 256, w = 64, hop = 64;
    ComplexSignal z;
    z.dt = 1.0 / double(n);
    z.samples.assign(n, {1.0, 0.0});

    const Spectrogram rect = hyperan::stqft(z, w, hop, Window::rect);
    CHECK(rect.mags[0][0] == Catch::Approx(double(w)));

    const Spectrogram hann = hyperan::stqft(z, w, hop, Window::hann);
    CHECK(hann.mags[0][0] == Catch::Approx(double(w - 1) / 2.0));
    CHECK(hann.mags[0][0] < rect.mags[0][0]);
}

TEST_CASE("ridge ties resolve toward the lower bin") {
    // tone for the first half of the record, silence after; silent frames
    // are an exact all-equal tie and must report bin 0
    const std::size_t n = 256, w = 64, hop = 32;
    ComplexSignal z = proper_tone(n, 32.0);
    for (std::size_t i = n / 2; i < n; ++i) z.samples[i] = 0.0;

    const Spectrogram sg = hyperan::stqft(z, w, hop, Window::rect);
    const std::vector<std::size_t> r = hyperan::ridge(sg);
    for (std::size_t f = 0; f < sg.frames(); ++f) {
        const std::size_t start = f * hop;
        if (start + w <= n / 2)
            CHECK(r[f] == 8);  // 32 cycles / 4 per bin
        else if (start >= n / 2)
            CHECK(r[f] == 0);  // all-zero frame: tie goes to the lowest bin
    }
}

TEST_CASE("stqft input validation") {
    const ComplexSignal z = testutil::random_complex_signal(1, 64, 1.0 / 64.0);
    CHECK_THROWS_AS(hyperan::stqft(z, 128, 32), std::invalid_argument);  // window > signal
    CHECK_THROWS_AS(hyperan::stqft(z, 32, 0), std::invalid_argument);    // zero hop
    CHECK_THROWS_AS(hyperan::stqft(z, 1, 1), std::invalid_argument);     // window too short
}
