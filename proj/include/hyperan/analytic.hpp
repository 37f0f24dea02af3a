// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qft.hpp"

namespace hyperan {

/// Quaternion-valued hypercomplex representation of a complex signal:
/// one-sided spectrum, original signal recovered by simplex().
struct HyperRep {
    QuaternionSignal signal;

    std::size_t size() const { return signal.size(); }
    double dt() const { return signal.dt; }
};

/// Quaternion Hilbert transform of a {1, i} signal about the j axis.
///
/// Spectral form: IQFT[ -j * sign(nu) * Z[k] ] with the factor on the LEFT
/// of each bin. The ordering matters: j anticommutes with the i content of
/// Z, and only the left-side product makes z + j*hilbert_j(z) one-sided.
/// sign(nu) is +1 on strictly positive bins, -1 on strictly negative bins,
/// and 0 at DC and (for even N) the Nyquist bin.
inline ComplexSignal hilbert_j(const ComplexSignal& z) {
    const std::size_t n = z.size();
    if (n < 2) throw std::invalid_argument("hilbert_j: need at least 2 samples");
    std::vector<detail::cplx> c1(n), c2(n);
    for (std::size_t i = 0; i < n; ++i) {
        c1[i] = {z.samples[i].real(), 0.0};
        c2[i] = {z.samples[i].imag(), 0.0};
    }
    detail::fft_inplace(c1, false);
    detail::fft_inplace(c2, false);
    // -j sigma (C1 + i C2) = (-sigma j C1) + i (+sigma j C2) in the two
    // {1, j} planes, where multiplying by j is the ordinary complex i here.
    for (std::size_t k = 0; k < n; ++k) {
        double sigma = 0.0;
        if (is_positive_bin(k, n)) sigma = 1.0;
        else if (is_negative_bin(k, n)) sigma = -1.0;
        c1[k] *= detail::cplx(0.0, -sigma);
        c2[k] *= detail::cplx(0.0, sigma);
    }
    detail::fft_inplace(c1, true);
    detail::fft_inplace(c2, true);
    ComplexSignal h;
    h.dt = z.dt;
    h.samples.resize(n);
    // For real-valued c1/c2 inputs the masked spectra stay conjugate
    // symmetric, so the j parts of the inverses vanish to rounding.
    for (std::size_t i = 0; i < n; ++i)
        h.samples[i] = {c1[i].real() / double(n), c2[i].real() / double(n)};
    return h;
}

/// Hypercomplex (quaternion analytic) representation built in the frequency
/// domain: bins scaled by 1 at DC, 2 on positive bins, 1 at Nyquist (even N),
/// 0 on negative bins. Equals z + j * hilbert_j(z).
inline HyperRep hypercomplex(const ComplexSignal& z) {
    const std::size_t n = z.size();
    if (n < 2) throw std::invalid_argument("hypercomplex: need at least 2 samples");
    std::vector<detail::cplx> c1(n), c2(n);
    for (std::size_t i = 0; i < n; ++i) {
        c1[i] = {z.samples[i].real(), 0.0};
        c2[i] = {z.samples[i].imag(), 0.0};
    }
    detail::fft_inplace(c1, false);
    detail::fft_inplace(c2, false);
    for (std::size_t k = 0; k < n; ++k) {
        double m = 0.0;
        if (k == 0 || is_nyquist_bin(k, n)) m = 1.0;
        else if (is_positive_bin(k, n)) m = 2.0;
        c1[k] *= m;
        c2[k] *= m;
    }
    detail::fft_inplace(c1, true);
    detail::fft_inplace(c2, true);
    HyperRep h;
    h.signal.dt = z.dt;
    h.signal.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        h.signal.samples[i] = {c1[i].real() / double(n), c2[i].real() / double(n),
                               c1[i].imag() / double(n), c2[i].imag() / double(n)};
    }
    return h;
}

/// Simplex part (z + involution(z, i))/2: the {1, i} content, i.e. the
/// original complex signal of a hypercomplex representation.
inline ComplexSignal simplex(const QuaternionSignal& q) { return complex_part(q); }

inline ComplexSignal simplex(const HyperRep& h) { return simplex(h.signal); }

/// Perplex part o of q = simplex + j*o: the {j, k} content with the left
/// factor j divided out, so o = q_y - q_z * i sample-wise.
inline ComplexSignal perplex(const QuaternionSignal& q) {
    ComplexSignal o;
    o.dt = q.dt;
    o.samples.reserve(q.size());
    for (const auto& v : q.samples) o.samples.emplace_back(v.y, -v.z);
    return o;
}

inline ComplexSignal perplex(const HyperRep& h) { return perplex(h.signal); }

}  // namespace hyperan
