// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fft.hpp"
#include "quaternion.hpp"

namespace hyperan {

/// Uniformly sampled complex signal in the {1, i} plane.
struct ComplexSignal {
    std::vector<std::complex<double>> samples;
    double dt = 1.0;

    std::size_t size() const { return samples.size(); }
};

/// Uniformly sampled quaternion-valued signal.
struct QuaternionSignal {
    std::vector<Quaternion> samples;
    double dt = 1.0;

    std::size_t size() const { return samples.size(); }
};

/// Quaternion-valued discrete spectrum, bins in natural (DFT) order.
struct QSpectrum {
    std::vector<Quaternion> bins;
    double df = 1.0;

    std::size_t size() const { return bins.size(); }
};

inline QuaternionSignal to_quaternion(const ComplexSignal& s) {
    QuaternionSignal q;
    q.dt = s.dt;
    q.samples.reserve(s.size());
    for (const auto& v : s.samples) q.samples.push_back({v.real(), v.imag(), 0.0, 0.0});
    return q;
}

/// {1, i}-plane projection (w + x*i) of a quaternion signal.
inline ComplexSignal complex_part(const QuaternionSignal& q) {
    ComplexSignal s;
    s.dt = q.dt;
    s.samples.reserve(q.size());
    for (const auto& v : q.samples) s.samples.emplace_back(v.w, v.x);
    return s;
}

/// Signed frequency index of bin k: k for k <= n/2, k - n above.
/// For even n the bin k = n/2 is the Nyquist bin; mask-building code treats
/// it separately from the strictly positive/negative ranges below.
constexpr long frequency_index(std::size_t k, std::size_t n) {
    return k <= n / 2 ? long(k) : long(k) - long(n);
}

constexpr bool is_nyquist_bin(std::size_t k, std::size_t n) {
    return n % 2 == 0 && k == n / 2;
}

constexpr bool is_negative_bin(std::size_t k, std::size_t n) { return k > n / 2; }

constexpr bool is_positive_bin(std::size_t k, std::size_t n) {
    return k >= 1 && k <= n / 2 && !is_nyquist_bin(k, n);
}

/// Bin visit order for centered (ascending frequency) layouts; position p
/// carries signed frequency index p - n/2.
inline std::vector<std::size_t> centered_bin_order(std::size_t n) {
    std::vector<std::size_t> order(n);
    const std::size_t start = (n + 1) / 2;
    for (std::size_t p = 0; p < n; ++p) order[p] = (start + p) % n;
    return order;
}

namespace detail {

// Cayley-Dickson pair over the {1, j} subfield: q = c1 + i*c2 with
// c1 = w + y*j and c2 = x + z*j. std::complex's imaginary slot plays j here,
// which is what makes the right-sided kernel exp(-j 2 pi kn/N) act as two
// ordinary complex transforms.
inline void split_j_planes(const QuaternionSignal& q, std::vector<cplx>& c1,
                           std::vector<cplx>& c2) {
    const std::size_t n = q.size();
    c1.resize(n);
    c2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        c1[i] = {q.samples[i].w, q.samples[i].y};
        c2[i] = {q.samples[i].x, q.samples[i].z};
    }
}

inline std::vector<Quaternion> merge_j_planes(const std::vector<cplx>& c1,
                                              const std::vector<cplx>& c2) {
    std::vector<Quaternion> out(c1.size());
    for (std::size_t i = 0; i < c1.size(); ++i)
        out[i] = {c1[i].real(), c2[i].real(), c1[i].imag(), c2[i].imag()};
    return out;
}

}  // namespace detail

/// Right-sided quaternion Fourier transform about the j axis, unnormalized:
///   Z[k] = sum_n q[n] * exp(-j 2 pi k n / N).
inline QSpectrum qft_forward(const QuaternionSignal& q) {
    if (q.size() == 0) throw std::invalid_argument("qft_forward: empty signal");
    std::vector<detail::cplx> c1, c2;
    detail::split_j_planes(q, c1, c2);
    detail::fft_inplace(c1, false);
    detail::fft_inplace(c2, false);
    QSpectrum s;
    s.bins = detail::merge_j_planes(c1, c2);
    s.df = 1.0 / (double(q.size()) * q.dt);
    return s;
}

inline QSpectrum qft_forward(const ComplexSignal& z) { return qft_forward(to_quaternion(z)); }

/// Inverse of qft_forward: q[n] = (1/N) sum_k Z[k] * exp(+j 2 pi k n / N).
inline QuaternionSignal qft_inverse(const QSpectrum& s) {
    if (s.size() == 0) throw std::invalid_argument("qft_inverse: empty spectrum");
    const std::size_t n = s.size();
    std::vector<detail::cplx> c1(n), c2(n);
    for (std::size_t k = 0; k < n; ++k) {
        c1[k] = {s.bins[k].w, s.bins[k].y};
        c2[k] = {s.bins[k].x, s.bins[k].z};
    }
    detail::fft_inplace(c1, true);
    detail::fft_inplace(c2, true);
    QuaternionSignal q;
    q.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        q.samples[i] = {c1[i].real() / double(n), c2[i].real() / double(n),
                        c1[i].imag() / double(n), c2[i].imag() / double(n)};
    }
    q.dt = 1.0 / (double(n) * s.df);
    return q;
}

/// Direct O(N^2) evaluation of the same transform, kept as an independent
/// reference: full quaternion products against a right-sided kernel table,
/// no split into complex sub-transforms.
inline QSpectrum qft_forward_naive(const QuaternionSignal& q) {
    if (q.size() == 0) throw std::invalid_argument("qft_forward_naive: empty signal");
    const std::size_t n = q.size();
    std::vector<Quaternion> kernel(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double ang = 2.0 * std::numbers::pi * double(m) / double(n);
        kernel[m] = {std::cos(ang), 0.0, -std::sin(ang), 0.0};  // exp(-j ang)
    }
    QSpectrum s;
    s.bins.assign(n, Quaternion::zero());
    for (std::size_t k = 0; k < n; ++k) {
        Quaternion acc = Quaternion::zero();
        for (std::size_t m = 0; m < n; ++m) acc += q.samples[m] * kernel[(k * m) % n];
        s.bins[k] = acc;
    }
    s.df = 1.0 / (double(n) * q.dt);
    return s;
}

inline QSpectrum qft_forward_naive(const ComplexSignal& z) {
    return qft_forward_naive(to_quaternion(z));
}

/// Per-bin component view of a spectrum. For a complex {1, i} input signal
/// the four arrays carry, respectively, the transforms of the even part of
/// z_r, the odd part of z_r (j component), the even part of z_i (i
/// component) and the odd part of z_i (k component).
struct SymmetryComponents {
    std::vector<double> re, im_i, im_j, im_k;
};

inline SymmetryComponents symmetry_components(const QSpectrum& s) {
    SymmetryComponents c;
    const std::size_t n = s.size();
    c.re.resize(n);
    c.im_i.resize(n);
    c.im_j.resize(n);
    c.im_k.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        c.re[k] = s.bins[k].w;
        c.im_i[k] = s.bins[k].x;
        c.im_j[k] = s.bins[k].y;
        c.im_k[k] = s.bins[k].z;
    }
    return c;
}

/// Max deviation over bins of Z[(N-k) mod N] - involution(Z[k], i).
/// Zero (to rounding) whenever the spectrum comes from a {1, i} signal.
inline double check_i_involution_reversal(const QSpectrum& s) {
    const std::size_t n = s.size();
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const Quaternion d =
            s.bins[(n - k) % n] - involution(s.bins[k], Axis::i);
        worst = std::max(worst, d.modulus());
    }
    return worst;
}

/// Spectrum of the conjugated signal, computed bin-wise from the spectrum of
/// the original: QFT[conj(z)][k] = involution(Z[k], j).
inline QSpectrum qft_of_conjugate(const QSpectrum& s) {
    QSpectrum out;
    out.df = s.df;
    out.bins.reserve(s.size());
    for (const auto& b : s.bins) out.bins.push_back(involution(b, Axis::j));
    return out;
}

/// Circular bin rotation: out[(k + k0) mod N] = in[k]. Matches right
/// multiplication of the time signal by exp(j 2 pi k0 n / N).
inline QSpectrum frequency_shift(const QSpectrum& s, long k0) {
    const long n = long(s.size());
    if (n == 0) throw std::invalid_argument("frequency_shift: empty spectrum");
    QSpectrum out;
    out.df = s.df;
    out.bins.resize(n);
    for (long k = 0; k < n; ++k) out.bins[((k + k0) % n + n) % n] = s.bins[k];
    return out;
}

/// Circular convolution of a complex signal with a real sequence (real
/// factor on the right). Evaluated spectrally; the transform of the result
/// equals qft(g) * qft(f) bin-wise in that order. The reversed product does
/// not commute for spectra with i/k content.
inline ComplexSignal convolve_right_real(const ComplexSignal& g, const std::vector<double>& f) {
    if (g.size() != f.size())
        throw std::invalid_argument("convolve_right_real: length mismatch");
    if (g.size() == 0) throw std::invalid_argument("convolve_right_real: empty input");
    ComplexSignal fs;
    fs.dt = g.dt;
    fs.samples.reserve(f.size());
    for (double v : f) fs.samples.emplace_back(v, 0.0);
    const QSpectrum zg = qft_forward(g);
    const QSpectrum zf = qft_forward(fs);
    QSpectrum prod;
    prod.df = zg.df;
    prod.bins.resize(zg.size());
    for (std::size_t k = 0; k < zg.size(); ++k) prod.bins[k] = zg.bins[k] * zf.bins[k];
    return complex_part(qft_inverse(prod));
}

}  // namespace hyperan
