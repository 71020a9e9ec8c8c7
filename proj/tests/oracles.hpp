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

// Test-only oracles, kept independent of the library's spectral path:
// adaptive quadrature, series evaluation, and quadrature-based Fourier
// transforms used to pin expected values.

#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                            double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Simpson quadrature of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = detail::simpson(a, b, fa, fm, fb);
    return detail::adaptive_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

// \int f(q) e^{-ikq} dq for even f, via the cosine transform on [0, qmax].
inline double fourier_even(const std::function<double(double)>& f, double k, double qmax,
                           double tol = 1e-12) {
    return 2.0 * integrate([&](double q) { return f(q) * std::cos(k * q); }, 0.0, qmax, tol);
}

// Series value of the surface peak for the unit-Gaussian auxiliary field at
// unit depth: sum_{n>=0} 1 / ((2n+1) 2^n n!).
inline double eta_peak_series() {
    double sum = 0.0, pow2 = 1.0, fact = 1.0;
    for (int n = 0; n < 30; ++n) {
        if (n > 0) {
            pow2 *= 2.0;
            fact *= static_cast<double>(n);
        }
        sum += 1.0 / ((2.0 * n + 1.0) * pow2 * fact);
    }
    return sum;
}

// Smooth random test field: a few Gaussian bumps, centered and narrow
// enough to decay below 1e-10 of the peak at |q| = 30.
struct SmoothFieldGen {
    explicit SmoothFieldGen(std::uint64_t seed) : rng(seed) {}

    std::function<double(double)> next() {
        std::uniform_real_distribution<double> amp(-1.0, 1.0), center(-5.0, 5.0),
            width(1.5, 3.0);
        std::vector<double> a(3), c(3), w(3);
        for (int i = 0; i < 3; ++i) {
            a[i] = amp(rng);
            c[i] = center(rng);
            w[i] = width(rng);
        }
        return [a, c, w](double q) {
            double v = 0.0;
            for (int i = 0; i < 3; ++i) {
                const double z = (q - c[i]) / w[i];
                v += a[i] * std::exp(-0.5 * z * z);
            }
            return v;
        };
    }

    std::mt19937_64 rng;
};

} // namespace oracles
