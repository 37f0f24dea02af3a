// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

namespace hyperan::detail {

using cplx = std::complex<double>;

constexpr bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// Iterative radix-2 transform, unnormalized, in place. n must be a power of two.
/// forward kernel e^{-2*pi*i*kn/n}; inverse kernel e^{+2*pi*i*kn/n} (still unnormalized).
inline void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;
    for (std::size_t i = 1, rev = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; rev & bit; bit >>= 1) rev ^= bit;
        rev ^= bit;
        if (i < rev) std::swap(a[i], a[rev]);
    }
    std::vector<cplx> tw(n / 2);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / double(len);
        const std::size_t half = len / 2;
        for (std::size_t j = 0; j < half; ++j) tw[j] = std::polar(1.0, ang * double(j));
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + half] * tw[j];
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
    }
}

/// Bluestein chirp-z transform for arbitrary n, unnormalized, same kernel
/// conventions as fft_pow2. Chirp phases use n^2 mod 2n to keep the trig
/// arguments small.
inline void fft_bluestein(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<cplx> chirp(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t sq = (std::uint64_t(i) * i) % (2 * std::uint64_t(n));
        chirp[i] = std::polar(1.0, sign * std::numbers::pi * double(sq) / double(n));
    }
    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<cplx> f(m), g(m);
    for (std::size_t i = 0; i < n; ++i) f[i] = a[i] * chirp[i];
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = std::conj(chirp[i]);
        if (i != 0) g[m - i] = std::conj(chirp[i]);
    }
    fft_pow2(f, false);
    fft_pow2(g, false);
    for (std::size_t i = 0; i < m; ++i) f[i] *= g[i];
    fft_pow2(f, true);
    for (std::size_t i = 0; i < n; ++i) a[i] = f[i] * chirp[i] / double(m);
}

/// Unnormalized DFT of any length; dispatches radix-2 or Bluestein.
inline void fft_inplace(std::vector<cplx>& a, bool inverse) {
    if (is_pow2(a.size())) fft_pow2(a, inverse);
    else fft_bluestein(a, inverse);
}

}  // namespace hyperan::detail
