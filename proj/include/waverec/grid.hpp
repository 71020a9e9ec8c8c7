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

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace waverec {

/*
 * Uniform sampling window [-L, L) on the real line together with its dual
 * wavenumber grid.
 *
 * Nodes are q_j = -L + j*spacing, j = 0..n-1.  The wavenumber attached to
 * storage slot m is k_m = pi * m_signed / L with the signed index
 * m_signed in [-n/2, n/2) (DC first, then positive, then negative
 * frequencies, i.e. the usual FFT layout).
 */
struct Grid {
    std::size_t n = 0;       // sample count, power of two, >= 8
    double half_width = 0.0; // L, window is [-L, L)
    double spacing = 0.0;    // 2L/n

    double node(std::size_t j) const { return -half_width + spacing * static_cast<double>(j); }

    // Signed frequency index in [-n/2, n/2) for storage slot m.
    long signed_index(std::size_t m) const {
        return m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
    }

    double wavenumber(std::size_t m) const {
        return std::numbers::pi * static_cast<double>(signed_index(m)) / half_width;
    }

    // Largest representable wavenumber magnitude, pi/spacing.
    double max_wavenumber() const { return std::numbers::pi / spacing; }

    std::vector<double> nodes() const {
        std::vector<double> q(n);
        for (std::size_t j = 0; j < n; ++j) q[j] = node(j);
        return q;
    }

    std::vector<double> wavenumbers() const {
        std::vector<double> k(n);
        for (std::size_t m = 0; m < n; ++m) k[m] = wavenumber(m);
        return k;
    }

    friend bool operator==(const Grid&, const Grid&) = default;
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline Grid make_grid(std::size_t n, double half_width) {
    if (n < 8 || !is_power_of_two(n))
        throw std::invalid_argument("make_grid: n must be a power of two >= 8, got " +
                                    std::to_string(n));
    if (!(half_width > 0.0))
        throw std::invalid_argument("make_grid: half_width must be positive");
    // n is a power of two, so 2L/n is exact in binary floating point.
    return Grid{n, half_width, 2.0 * half_width / static_cast<double>(n)};
}

} // namespace waverec
