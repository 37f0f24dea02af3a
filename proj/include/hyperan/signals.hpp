// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "analytic.hpp"
#include "qft.hpp"
#include "quaternion.hpp"

namespace hyperan {

/// Stream identifier written into output metadata: raw std::mt19937_64
/// output mapped to [0, 1) by taking the top 53 bits ((x >> 11) * 2^-53).
/// Both pieces are exactly specified, so any implementation can reproduce
/// the stream bit-for-bit.
inline constexpr const char* kPrngId = "mt19937_64/u53";

namespace detail {

inline double unit_double(std::mt19937_64& gen) { return double(gen() >> 11) * 0x1.0p-53; }
inline double symmetric_double(std::mt19937_64& gen) { return 2.0 * unit_double(gen) - 1.0; }

}  // namespace detail

/// Parameters of the seeded band-limited baseband generator.
struct BasebandSpec {
    std::size_t n_samples = 1024;
    std::size_t max_cycles = 16;  ///< highest kept frequency, cycles per record
    std::uint64_t seed = 1;
};

/// Seeded complex white noise (uniform on [-1,1)^2, re then im per sample),
/// band-limited by zeroing every spectral bin with |frequency index| above
/// max_cycles on both sides, preserving the component symmetries of a
/// complex signal. Record is t in [0, 1), dt = 1/n.
inline ComplexSignal bandlimited_random(const BasebandSpec& spec) {
    const std::size_t n = spec.n_samples;
    if (n < 4) throw std::invalid_argument("bandlimited_random: need at least 4 samples");
    if (spec.max_cycles == 0 || spec.max_cycles >= (n + 1) / 2)
        throw std::invalid_argument("bandlimited_random: max_cycles must be in [1, n/2)");

    std::mt19937_64 gen(spec.seed);
    ComplexSignal white;
    white.dt = 1.0 / double(n);
    white.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = detail::symmetric_double(gen);
        const double im = detail::symmetric_double(gen);
        white.samples.emplace_back(re, im);
    }

    QSpectrum s = qft_forward(white);
    for (std::size_t k = 0; k < n; ++k) {
        if (std::size_t(std::abs(frequency_index(k, n))) > spec.max_cycles)
            s.bins[k] = Quaternion::zero();
    }
    ComplexSignal out = simplex(qft_inverse(s));
    out.dt = white.dt;
    return out;
}

enum class PhaseKind {
    constant_freq,   ///< B(t) = 2 pi nu0 t
    step_freq,       ///< 2 pi nu0 t outside (t1, t2], 2 pi nu1 t inside
    triangle_sweep,  ///< frequency ramps nu0 -> nu0(1+alpha) -> nu0, apex at T
};

/// Closed-form phase laws used by the modulation examples. Frequencies are
/// in cycles per unit time (cycles per record for t in [0,1)).
struct PhaseLaw {
    PhaseKind kind = PhaseKind::constant_freq;
    double nu0 = 64.0;
    double nu1 = 128.0;   ///< step_freq plateau value
    double t1 = 0.25;     ///< step_freq switch-on time
    double t2 = 0.75;     ///< step_freq switch-off time
    double alpha = 1.0;   ///< triangle_sweep relative height (1 doubles the frequency)
    double T = 0.5;       ///< triangle_sweep apex time; support is [0, 2T]
};

/// Instantaneous frequency of a phase law at time t.
inline double law_frequency(const PhaseLaw& law, double t) {
    switch (law.kind) {
        case PhaseKind::constant_freq: return law.nu0;
        case PhaseKind::step_freq:
            return (t > law.t1 && t <= law.t2) ? law.nu1 : law.nu0;
        case PhaseKind::triangle_sweep: {
            const double tri = std::max(0.0, 1.0 - std::abs(t - law.T) / law.T);
            return law.nu0 * (1.0 + law.alpha * tri);
        }
    }
    throw std::invalid_argument("law_frequency: invalid kind");
}

/// Phase B(t) in radians. step_freq follows the piecewise definition
/// literally (2 pi nu t per segment); triangle_sweep integrates its
/// triangular frequency profile, so the phase is piecewise quadratic.
inline double law_phase(const PhaseLaw& law, double t) {
    const double two_pi = 2.0 * std::numbers::pi;
    switch (law.kind) {
        case PhaseKind::constant_freq: return two_pi * law.nu0 * t;
        case PhaseKind::step_freq:
            return (t > law.t1 && t <= law.t2) ? two_pi * law.nu1 * t : two_pi * law.nu0 * t;
        case PhaseKind::triangle_sweep: {
            const double T = law.T;
            double itri = 0.0;  // integral of the unit-peak triangle
            if (t <= 0.0) itri = 0.0;
            else if (t <= T) itri = t * t / (2.0 * T);
            else if (t <= 2.0 * T) {
                const double u = t - T;
                itri = T / 2.0 + u - u * u / (2.0 * T);
            } else itri = T;
            return two_pi * law.nu0 * (t + law.alpha * itri);
        }
    }
    throw std::invalid_argument("law_phase: invalid kind");
}

inline double law_min_frequency(const PhaseLaw& law) {
    switch (law.kind) {
        case PhaseKind::constant_freq: return law.nu0;
        case PhaseKind::step_freq: return std::min(law.nu0, law.nu1);
        case PhaseKind::triangle_sweep:
            return law.alpha >= 0.0 ? law.nu0 : law.nu0 * (1.0 + law.alpha);
    }
    throw std::invalid_argument("law_min_frequency: invalid kind");
}

inline double law_max_frequency(const PhaseLaw& law) {
    switch (law.kind) {
        case PhaseKind::constant_freq: return law.nu0;
        case PhaseKind::step_freq: return std::max(law.nu0, law.nu1);
        case PhaseKind::triangle_sweep:
            return law.alpha >= 0.0 ? law.nu0 * (1.0 + law.alpha) : law.nu0;
    }
    throw std::invalid_argument("law_max_frequency: invalid kind");
}

/// Sampled phase array B(i * dt), i = 0..n-1.
inline std::vector<double> phase_samples(const PhaseLaw& law, std::size_t n, double dt) {
    if (n == 0) throw std::invalid_argument("phase_samples: empty request");
    if (dt <= 0.0) throw std::invalid_argument("phase_samples: dt must be positive");
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = law_phase(law, double(i) * dt);
    return b;
}

/// Time-domain orthocomplex modulation q[i] = A[i] * exp(B[i] * j),
/// together with its {1, i} projection z.
struct Modulated {
    QuaternionSignal q;
    ComplexSignal z;
};

inline Modulated modulate(const ComplexSignal& envelope, const std::vector<double>& phase) {
    if (envelope.size() != phase.size())
        throw std::invalid_argument("modulate: envelope/phase length mismatch");
    if (envelope.size() == 0) throw std::invalid_argument("modulate: empty input");
    Modulated out;
    out.q.dt = envelope.dt;
    out.q.samples.reserve(envelope.size());
    for (std::size_t i = 0; i < envelope.size(); ++i)
        out.q.samples.push_back(from_polar_cd({envelope.samples[i], {phase[i], 0.0}}));
    out.z = complex_part(out.q);
    return out;
}

/// Frequency-domain modulation: the spectrum of the envelope is rotated by
/// k0 bins (exp(j 2 pi k0 t) on the right in time). Returns the {1, i}
/// projection z, the quadrature o, and whether the shifted spectrum stayed
/// strictly one-sided below Nyquist (separation holds). A violation is a
/// diagnostic, not an error.
struct SpectralModulation {
    ComplexSignal z;
    ComplexSignal o;
    bool separation_ok = true;
};

inline SpectralModulation modulate_spectral(const ComplexSignal& envelope, long k0) {
    if (envelope.size() == 0) throw std::invalid_argument("modulate_spectral: empty input");
    const std::size_t n = envelope.size();
    const QSpectrum s = qft_forward(envelope);

    double max_mod = 0.0;
    for (const auto& b : s.bins) max_mod = std::max(max_mod, b.modulus());
    long nu_m = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (s.bins[k].modulus() > 1e-9 * max_mod)
            nu_m = std::max(nu_m, std::abs(frequency_index(k, n)));
    }

    const QuaternionSignal q = qft_inverse(frequency_shift(s, k0));
    SpectralModulation out;
    out.z = complex_part(q);
    out.o = perplex(q);
    out.separation_ok = (k0 - nu_m > 0) && (k0 + nu_m < long(n) / 2);
    return out;
}

/// Separation diagnostic between a baseband spectrum and a carrier law:
/// the quadrature construction is exact when the lowest carrier frequency
/// stays above the measured baseband edge.
struct SeparationReport {
    double baseband_max_freq = 0.0;
    double min_carrier_freq = 0.0;
    double margin = 0.0;
    bool one_sided_guaranteed = false;
};

inline SeparationReport separation_check(const QSpectrum& baseband, const PhaseLaw& law) {
    const std::size_t n = baseband.size();
    if (n == 0) throw std::invalid_argument("separation_check: empty spectrum");
    double max_mod = 0.0;
    for (const auto& b : baseband.bins) max_mod = std::max(max_mod, b.modulus());
    long nu_m = 0;
    if (max_mod > 0.0) {
        for (std::size_t k = 0; k < n; ++k) {
            if (baseband.bins[k].modulus() > 1e-9 * max_mod)
                nu_m = std::max(nu_m, std::abs(frequency_index(k, n)));
        }
    }
    SeparationReport r;
    r.baseband_max_freq = double(nu_m) * baseband.df;
    r.min_carrier_freq = law_min_frequency(law);
    r.margin = r.min_carrier_freq - r.baseband_max_freq;
    r.one_sided_guaranteed = r.margin > 0.0;
    return r;
}

}  // namespace hyperan
