//
// wave-recover: spectral recovery of solitary-wave surface profiles from
// bed-pressure traces.
//
// Copyright 2026 the wave-recover authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "waverec/field.hpp"
#include "waverec/grid.hpp"

namespace waverec {

namespace detail {

/*
 * In-place iterative radix-2 DFT, X_m = sum_j x_j e^{-2 pi i m j / n}.
 *
 * Grids are power-of-two by construction, so a plain Cooley--Tukey kernel
 * covers every case.  Twiddles are evaluated directly with std::polar per
 * butterfly stage; no recurrences, so the rounding error stays at the
 * O(eps log n) level the transform tolerances assume.  The kernel touches
 * no shared state and is safe to run from any number of threads.
 */
inline void fft_radix2(std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft_radix2: size must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double theta = -2.0 * std::numbers::pi / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> w = std::polar(1.0, theta * static_cast<double>(j));
                const std::complex<double> u = x[i + j];
                const std::complex<double> v = x[i + j + len / 2] * w;
                x[i + j] = u + v;
                x[i + j + len / 2] = u - v;
            }
        }
    }
}

inline void ifft_radix2_unscaled(std::vector<std::complex<double>>& x) {
    for (auto& c : x) c = std::conj(c);
    fft_radix2(x);
    for (auto& c : x) c = std::conj(c);
}

} // namespace detail

inline constexpr double kDefaultEdgeTolRel = 1e-10;
inline constexpr double kDefaultHermitianTolRel = 1e-9;

/*
 * Discrete stand-in for F{f}(k) = \int f(q) e^{-ikq} dq at each grid
 * wavenumber: a spacing-scaled DFT with the window phase e^{+ikL} folded
 * in.  Since k_m L = pi * m_signed, the phase factor is just (-1)^m.
 *
 * A field that has not decayed below edge_tol_rel * max|f| at the window
 * edges sets edge_decay_warning on the result instead of failing; sweep
 * code probes wide perturbations on purpose.
 */
inline Spectrum forward_transform(const RealField& f, double edge_tol_rel = kDefaultEdgeTolRel) {
    if (f.values.size() != f.grid.n)
        throw std::invalid_argument("forward_transform: field/grid size mismatch");
    double maxabs = 0.0;
    for (double v : f.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("forward_transform: non-finite sample");
        maxabs = std::max(maxabs, std::abs(v));
    }

    std::vector<std::complex<double>> buf(f.values.begin(), f.values.end());
    detail::fft_radix2(buf);

    Spectrum s{f.grid, std::move(buf), false};
    const double dq = f.grid.spacing;
    for (std::size_t m = 0; m < f.grid.n; ++m) {
        const double phase = (m % 2 == 0) ? dq : -dq;
        s.coeffs[m] *= phase;
    }
    // The transform of a real field is Hermitian; project out the FFT
    // rounding asymmetry so the exponential multipliers downstream cannot
    // amplify it into a spurious imaginary part.
    s.coeffs[0] = s.coeffs[0].real();
    s.coeffs[f.grid.n / 2] = s.coeffs[f.grid.n / 2].real();
    for (std::size_t m = 1; m < f.grid.n / 2; ++m) {
        const std::complex<double> avg =
            0.5 * (s.coeffs[m] + std::conj(s.coeffs[f.grid.n - m]));
        s.coeffs[m] = avg;
        s.coeffs[f.grid.n - m] = std::conj(avg);
    }
    if (maxabs > 0.0) {
        const double tol = edge_tol_rel * maxabs;
        if (std::abs(f.values.front()) > tol || std::abs(f.values.back()) > tol)
            s.edge_decay_warning = true;
    }
    return s;
}

/*
 * Inverse of forward_transform, realizing (1/2pi) \int F(k) e^{+ikq} dk.
 *
 * All physical fields are real, so the spectrum must be Hermitian
 * symmetric.  Asymmetry beyond hermitian_tol_rel (relative to the peak
 * magnitude) signals an upstream bug and is an error, not a warning.
 */
inline RealField inverse_transform(const Spectrum& s,
                                   double hermitian_tol_rel = kDefaultHermitianTolRel) {
    const std::size_t n = s.grid.n;
    if (s.coeffs.size() != n)
        throw std::invalid_argument("inverse_transform: spectrum/grid size mismatch");

    double maxabs = 0.0;
    for (const auto& c : s.coeffs) maxabs = std::max(maxabs, std::abs(c));
    const double tol = hermitian_tol_rel * maxabs;
    for (std::size_t m = 0; m <= n / 2; ++m) {
        const std::size_t mirror = (n - m) % n;
        if (std::abs(s.coeffs[mirror] - std::conj(s.coeffs[m])) > tol)
            throw std::domain_error(
                "inverse_transform: Hermitian symmetry violated beyond tolerance; "
                "spectrum does not represent a real field");
    }

    std::vector<std::complex<double>> buf(n);
    for (std::size_t m = 0; m < n; ++m) buf[m] = (m % 2 == 0) ? s.coeffs[m] : -s.coeffs[m];
    detail::ifft_radix2_unscaled(buf);

    RealField f{s.grid, std::vector<double>(n)};
    const double scale = 1.0 / (static_cast<double>(n) * s.grid.spacing);
    for (std::size_t j = 0; j < n; ++j) f.values[j] = buf[j].real() * scale;
    return f;
}

} // namespace waverec
