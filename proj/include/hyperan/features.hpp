// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "analytic.hpp"
#include "quaternion.hpp"

namespace hyperan {

/// Instantaneous description of a hypercomplex representation:
/// rho * exp(phi * j) reconstructs the quaternion signal sample-wise.
struct InstFeatures {
    std::vector<std::complex<double>> rho;        ///< complex envelope
    std::vector<double> phi;                      ///< unwrapped phase, radians
    std::vector<double> freq;                     ///< d(phi)/dt / (2 pi), cycles per unit time
    std::vector<std::array<double, 3>> normal;    ///< osculating-plane normal, not normalized
    std::vector<std::uint8_t> mask;               ///< 1 = interpolated/bridged sample
    double dt = 1.0;

    std::size_t size() const { return rho.size(); }
};

enum class NormalMode {
    frenet,   ///< r' x r'' of the embedded envelope curve (osculating plane)
    literal,  ///< r x r' as sometimes quoted; kept for comparison
};

/// q0^2 + q1^2 < this * |q|^2 marks a sample as phase-degenerate.
inline constexpr double kDegenerateRelEps = 1e-12;
/// |q|^2 <= this * max|q|^2 marks a sample as effectively zero.
inline constexpr double kZeroRelEps = 1e-24;
/// Wrapped per-sample phase steps at or beyond this fraction of the pi/2
/// branch limit cannot be disambiguated reliably; both endpoints are masked.
inline constexpr double kBranchRateLimitFraction = 0.998;
/// Masked runs shorter than this are plain gap-fills between good samples;
/// the mask column records every filled sample either way.
inline constexpr std::size_t kShortRunLimit = 5;

namespace detail {

// Reduce d into (-pi/2, pi/2] by subtracting multiples of pi.
inline double wrap_half_pi(double d) {
    const double pi = std::numbers::pi;
    return d - pi * std::ceil((d - pi / 2.0) / pi);
}

}  // namespace detail

/// Continuity-based unwrap over the polar branch structure: consecutive
/// differences are adjusted into (-pi/2, pi/2] by integer multiples of pi.
/// Samples are only ever changed by multiples of pi.
inline std::vector<double> unwrap_phase(const std::vector<double>& wrapped) {
    std::vector<double> out(wrapped.size());
    if (wrapped.empty()) return out;
    out[0] = wrapped[0];
    for (std::size_t i = 1; i < wrapped.size(); ++i)
        out[i] = out[i - 1] + detail::wrap_half_pi(wrapped[i] - wrapped[i - 1]);
    return out;
}

/// Instantaneous frequency (1/2pi) d(phi)/dt by second-order central
/// differences, one-sided at the ends. Needs at least 3 samples.
inline std::vector<double> inst_frequency(const std::vector<double>& phi, double dt) {
    const std::size_t n = phi.size();
    if (n < 3) throw std::invalid_argument("inst_frequency: need at least 3 samples");
    if (dt <= 0.0) throw std::invalid_argument("inst_frequency: dt must be positive");
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> f(n);
    f[0] = (phi[1] - phi[0]) / (dt * two_pi);
    f[n - 1] = (phi[n - 1] - phi[n - 2]) / (dt * two_pi);
    for (std::size_t i = 1; i + 1 < n; ++i)
        f[i] = (phi[i + 1] - phi[i - 1]) / (2.0 * dt * two_pi);
    return f;
}

/// Savitzky-Golay style polynomial-window derivative (quadratic fit): the
/// opt-in smoothing alternative to plain central differences. window must be
/// odd and >= 3; it shrinks near the ends.
inline std::vector<double> inst_frequency_sg(const std::vector<double>& phi, double dt,
                                             std::size_t window) {
    const std::size_t n = phi.size();
    if (n < 3) throw std::invalid_argument("inst_frequency_sg: need at least 3 samples");
    if (dt <= 0.0) throw std::invalid_argument("inst_frequency_sg: dt must be positive");
    if (window < 3 || window % 2 == 0)
        throw std::invalid_argument("inst_frequency_sg: window must be odd and >= 3");
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t h = (window - 1) / 2;
        h = std::min({h, i, n - 1 - i});
        if (h == 0) h = 1;  // fall back to the nearest usable stencil
        double num = 0.0, den = 0.0;
        const std::size_t lo = i >= h ? i - h : 0;
        const std::size_t hi = std::min(n - 1, i + h);
        for (std::size_t m = lo; m <= hi; ++m) {
            const double j = double(m) - double(i);
            // centering on phi[i] keeps this a derivative even when the
            // stencil turns one-sided at the record edges
            num += j * (phi[m] - phi[i]);
            den += j * j;
        }
        f[i] = num / (den * dt * two_pi);
    }
    return f;
}

/// Osculating-plane normal of the envelope curve embedded as
/// r(t) = (Re rho, Im rho, t). Derivatives use second-order central
/// differences (one-sided variants at the ends). Output is not normalized;
/// an undefined plane (e.g. constant rho in frenet mode) yields the zero
/// vector. Needs at least 5 samples.
inline std::vector<std::array<double, 3>> osculating_normal(
    const std::vector<std::complex<double>>& rho, double dt, NormalMode mode) {
    const std::size_t n = rho.size();
    if (n < 5) throw std::invalid_argument("osculating_normal: need at least 5 samples");
    if (dt <= 0.0) throw std::invalid_argument("osculating_normal: dt must be positive");

    auto point = [&](std::size_t i) -> std::array<double, 3> {
        return {rho[i].real(), rho[i].imag(), double(i) * dt};
    };
    auto sub = [](std::array<double, 3> a, std::array<double, 3> b) -> std::array<double, 3> {
        return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    };
    auto scale = [](std::array<double, 3> a, double s) -> std::array<double, 3> {
        return {a[0] * s, a[1] * s, a[2] * s};
    };
    auto add = [](std::array<double, 3> a, std::array<double, 3> b) -> std::array<double, 3> {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    };
    auto cross = [](std::array<double, 3> a, std::array<double, 3> b) -> std::array<double, 3> {
        return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0]};
    };

    std::vector<std::array<double, 3>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::array<double, 3> d1{}, d2{};
        if (i == 0) {
            d1 = scale(add(add(scale(point(0), -3.0), scale(point(1), 4.0)),
                           scale(point(2), -1.0)),
                       1.0 / (2.0 * dt));
            d2 = scale(add(add(scale(point(0), 2.0), scale(point(1), -5.0)),
                           add(scale(point(2), 4.0), scale(point(3), -1.0))),
                       1.0 / (dt * dt));
        } else if (i == n - 1) {
            d1 = scale(add(add(scale(point(n - 1), 3.0), scale(point(n - 2), -4.0)),
                           scale(point(n - 3), 1.0)),
                       1.0 / (2.0 * dt));
            d2 = scale(add(add(scale(point(n - 1), 2.0), scale(point(n - 2), -5.0)),
                           add(scale(point(n - 3), 4.0), scale(point(n - 4), -1.0))),
                       1.0 / (dt * dt));
        } else {
            d1 = scale(sub(point(i + 1), point(i - 1)), 1.0 / (2.0 * dt));
            d2 = scale(add(sub(point(i + 1), scale(point(i), 2.0)), point(i - 1)),
                       1.0 / (dt * dt));
        }
        out[i] = mode == NormalMode::frenet ? cross(d1, d2) : cross(point(i), d1);
    }
    return out;
}

/// Unit-length view of osculating_normal output; zero vectors stay zero.
inline std::vector<std::array<double, 3>> normalized(
    const std::vector<std::array<double, 3>>& v) {
    std::vector<std::array<double, 3>> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double m = std::sqrt(v[i][0] * v[i][0] + v[i][1] * v[i][1] + v[i][2] * v[i][2]);
        out[i] = m == 0.0 ? std::array<double, 3>{0.0, 0.0, 0.0}
                          : std::array<double, 3>{v[i][0] / m, v[i][1] / m, v[i][2] / m};
    }
    return out;
}

/// Instantaneous envelope / phase / frequency / osculating geometry of a
/// hypercomplex representation.
///
/// Per-sample polar extraction only determines the phase up to multiples of
/// pi (with the envelope sign flipping per step); a continuity pass rebuilds
/// the full phase and keeps rho consistent so that
/// from_polar_cd({rho[i], phi[i]}) still reconstructs the sample exactly.
/// Samples are masked when (a) the quaternion is effectively zero, (b) the
/// polar extraction is degenerate (q0^2+q1^2 tiny against |q|^2), or (c) a
/// wrapped phase step runs into the pi/2 branch limit, where the branch
/// choice is no longer well posed at this sampling rate. Masked samples are
/// filled: phase bridges linearly (branch chosen by slope prediction across
/// the gap) and the envelope is rebuilt by demodulating the sample with the
/// bridged phase; the mask column reports every filled sample. sg_window = 0
/// selects plain central differences.
inline InstFeatures extract_features(const HyperRep& h, std::size_t sg_window = 0,
                                     NormalMode mode = NormalMode::frenet) {
    const auto& q = h.signal.samples;
    const std::size_t n = q.size();
    if (n < 5) throw std::invalid_argument("extract_features: need at least 5 samples");

    double max_norm = 0.0;
    for (const auto& s : q) max_norm = std::max(max_norm, s.norm());
    if (max_norm == 0.0)
        throw std::domain_error("extract_features: signal is identically zero");

    InstFeatures out;
    out.dt = h.dt();
    out.mask.assign(n, 0);
    out.rho.assign(n, {0.0, 0.0});
    out.phi.assign(n, 0.0);

    std::vector<double> raw_phi(n, 0.0);
    std::vector<std::complex<double>> raw_rho(n, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const double nq = q[i].norm();
        const double head = q[i].w * q[i].w + q[i].x * q[i].x;
        if (nq <= kZeroRelEps * max_norm || head < kDegenerateRelEps * nq) {
            out.mask[i] = 1;
            continue;
        }
        const PolarCD p = to_polar_cd(q[i]);
        raw_rho[i] = p.modulus;
        const double mag = std::abs(p.phase);
        double sgn = 1.0;
        if (p.phase.real() < 0.0) sgn = -1.0;
        else if (p.phase.real() == 0.0 && p.phase.imag() < 0.0) sgn = -1.0;
        raw_phi[i] = sgn * mag;
    }

    // Branch-rate mask: wrapped steps at the pi/2 limit are ambiguous.
    const double rate_limit = kBranchRateLimitFraction * std::numbers::pi / 2.0;
    std::vector<std::uint8_t> rate_flag(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
        if (out.mask[i] || out.mask[i - 1]) continue;
        const double step = detail::wrap_half_pi(raw_phi[i] - raw_phi[i - 1]);
        if (std::abs(step) >= rate_limit) rate_flag[i] = rate_flag[i - 1] = 1;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (rate_flag[i]) out.mask[i] = 1;

    std::size_t first_good = n;
    for (std::size_t i = 0; i < n; ++i)
        if (!out.mask[i]) { first_good = i; break; }
    if (first_good == n)
        throw std::domain_error("extract_features: every sample is degenerate");

    // Unwrap with parity bookkeeping, predicting across masked gaps.
    const double pi = std::numbers::pi;
    out.phi[first_good] = raw_phi[first_good];
    out.rho[first_good] = raw_rho[first_good];
    std::size_t last_good = first_good;
    double slope = 0.0;  // per-sample phase increment estimate
    for (std::size_t i = first_good + 1; i < n; ++i) {
        if (out.mask[i]) continue;
        const double gap = double(i - last_good);
        const double predicted = out.phi[last_good] + slope * gap;
        const double m = std::round((predicted - raw_phi[i]) / pi);
        out.phi[i] = raw_phi[i] + m * pi;
        out.rho[i] = std::fmod(m, 2.0) == 0.0 ? raw_rho[i] : -raw_rho[i];
        slope = (out.phi[i] - out.phi[last_good]) / gap;
        last_good = i;
    }

    // Fill masked samples: the phase bridges linearly between good
    // neighbours (constant extension at the record edges); the envelope is
    // then re-derived by demodulating the measured sample with the bridged
    // phase. That stays faithful to the data -- an isolated branch-edge
    // sample recovers its true envelope to second order in the phase
    // curvature, and an actual dropout fills as rho ~ 0.
    std::size_t i = 0;
    while (i < n) {
        if (!out.mask[i]) { ++i; continue; }
        std::size_t runEnd = i;
        while (runEnd < n && out.mask[runEnd]) ++runEnd;
        const bool hasLeft = i > 0;
        const bool hasRight = runEnd < n;
        for (std::size_t m = i; m < runEnd; ++m) {
            if (hasLeft && hasRight) {
                const double w = double(m - (i - 1)) / double(runEnd - (i - 1));
                out.phi[m] = out.phi[i - 1] + w * (out.phi[runEnd] - out.phi[i - 1]);
            } else if (hasLeft) {
                out.phi[m] = out.phi[i - 1];
            } else {
                out.phi[m] = out.phi[runEnd];
            }
            const Quaternion demod = q[m] * exp_degenerate(-out.phi[m], 0.0);
            out.rho[m] = {demod.w, demod.x};
        }
        i = runEnd;
    }

    out.freq = sg_window == 0 ? inst_frequency(out.phi, out.dt)
                              : inst_frequency_sg(out.phi, out.dt, sg_window);
    out.normal = osculating_normal(out.rho, out.dt, mode);
    return out;
}

}  // namespace hyperan
