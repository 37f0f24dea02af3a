// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qft.hpp"
#include "quaternion.hpp"

namespace hyperan {

enum class Window {
    rect,
    hann,  ///< 0.5 * (1 - cos(2 pi m / (W - 1))), symmetric, zero endpoints
};

/// Magnitude spectrogram of a sliding-window transform. Frames are rows of
/// `mags`; each row holds bins 0..window_len/2 (non-negative frequencies
/// only, since the input is windowed per frame and only ridge/energy
/// structure is consumed). Frame f covers samples [f*hop, f*hop+window_len)
/// and is stamped at its window centre: t = t0 + f * dt_frame.
struct Spectrogram {
    std::vector<std::vector<double>> mags;
    std::size_t window_len = 0;
    std::size_t hop = 0;
    double df = 0.0;        ///< bin spacing, cycles per unit time
    double dt_frame = 0.0;  ///< time between consecutive frame centres
    double t0 = 0.0;        ///< centre time of frame 0

    std::size_t frames() const { return mags.size(); }
    std::size_t bins_per_frame() const { return mags.empty() ? 0 : mags[0].size(); }
};

namespace detail {

inline std::vector<double> window_samples(Window type, std::size_t w) {
    std::vector<double> win(w, 1.0);
    if (type == Window::hann && w > 1) {
        for (std::size_t m = 0; m < w; ++m)
            win[m] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * double(m) / double(w - 1)));
    }
    return win;
}

}  // namespace detail

/// Sliding-window transform of a quaternion signal. Full windows only:
/// frames = floor((n - window_len) / hop) + 1.
inline Spectrogram stqft(const QuaternionSignal& signal, std::size_t window_len, std::size_t hop,
                         Window type = Window::hann) {
    const std::size_t n = signal.size();
    if (window_len < 2) throw std::invalid_argument("stqft: window_len must be at least 2");
    if (hop == 0) throw std::invalid_argument("stqft: hop must be positive");
    if (n < window_len) throw std::invalid_argument("stqft: signal shorter than the window");
    if (signal.dt <= 0.0) throw std::invalid_argument("stqft: dt must be positive");

    const std::vector<double> win = detail::window_samples(type, window_len);
    const std::size_t n_frames = (n - window_len) / hop + 1;
    const std::size_t n_bins = window_len / 2 + 1;

    Spectrogram sg;
    sg.window_len = window_len;
    sg.hop = hop;
    sg.df = 1.0 / (double(window_len) * signal.dt);
    sg.dt_frame = double(hop) * signal.dt;
    sg.t0 = 0.5 * double(window_len - 1) * signal.dt;
    sg.mags.reserve(n_frames);

    QuaternionSignal frame;
    frame.dt = signal.dt;
    frame.samples.resize(window_len);
    for (std::size_t f = 0; f < n_frames; ++f) {
        const std::size_t start = f * hop;
        for (std::size_t m = 0; m < window_len; ++m)
            frame.samples[m] = signal.samples[start + m] * win[m];
        const QSpectrum s = qft_forward(frame);
        std::vector<double> row(n_bins);
        for (std::size_t k = 0; k < n_bins; ++k) row[k] = s.bins[k].modulus();
        sg.mags.push_back(std::move(row));
    }
    return sg;
}

inline Spectrogram stqft(const ComplexSignal& signal, std::size_t window_len, std::size_t hop,
                         Window type = Window::hann) {
    return stqft(to_quaternion(signal), window_len, hop, type);
}

/// Per-frame index of the strongest bin (ties resolve to the lower bin).
inline std::vector<std::size_t> ridge(const Spectrogram& sg) {
    std::vector<std::size_t> r;
    r.reserve(sg.frames());
    for (const auto& row : sg.mags) {
        if (row.empty()) throw std::invalid_argument("ridge: empty frame");
        r.push_back(std::size_t(std::max_element(row.begin(), row.end()) - row.begin()));
    }
    return r;
}

/// Ridge in frequency units (cycles per unit time).
inline std::vector<double> ridge_frequency(const Spectrogram& sg) {
    std::vector<double> out;
    out.reserve(sg.frames());
    for (std::size_t b : ridge(sg)) out.push_back(double(b) * sg.df);
    return out;
}

}  // namespace hyperan
