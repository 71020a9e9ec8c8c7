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
#include <functional>
#include <stdexcept>
#include <vector>

#include "waverec/grid.hpp"

namespace waverec {

// Real-valued samples f(q_j), one per grid node.
struct RealField {
    Grid grid;
    std::vector<double> values;
};

// Discrete approximation of the continuous transform \int f(q) e^{-ikq} dq,
// one coefficient per wavenumber slot of the grid.
struct Spectrum {
    Grid grid;
    std::vector<std::complex<double>> coeffs;
    // Set when the originating field did not decay at the window edges;
    // downstream results are then polluted by window truncation.
    bool edge_decay_warning = false;
};

inline RealField make_field(const Grid& grid, const std::function<double(double)>& f) {
    RealField out{grid, std::vector<double>(grid.n)};
    for (std::size_t j = 0; j < grid.n; ++j) out.values[j] = f(grid.node(j));
    return out;
}

inline RealField zero_field(const Grid& grid) {
    return RealField{grid, std::vector<double>(grid.n, 0.0)};
}

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

// Trapezoid approximation of (\int |f|^2 dq)^{1/2} over the window.
inline double l2_norm(const RealField& f) {
    if (f.values.size() != f.grid.n)
        throw std::invalid_argument("l2_norm: field/grid size mismatch");
    double sum = 0.0;
    for (double v : f.values) sum += v * v;
    sum -= 0.5 * (f.values.front() * f.values.front() + f.values.back() * f.values.back());
    return std::sqrt(f.grid.spacing * sum);
}

inline RealField operator-(const RealField& a, const RealField& b) {
    require_same_grid(a.grid, b.grid, "RealField difference");
    RealField out{a.grid, std::vector<double>(a.grid.n)};
    for (std::size_t j = 0; j < a.grid.n; ++j) out.values[j] = a.values[j] - b.values[j];
    return out;
}

inline Spectrum operator-(const Spectrum& a, const Spectrum& b) {
    require_same_grid(a.grid, b.grid, "Spectrum difference");
    Spectrum out{a.grid, std::vector<std::complex<double>>(a.grid.n),
                 a.edge_decay_warning || b.edge_decay_warning};
    for (std::size_t m = 0; m < a.grid.n; ++m) out.coeffs[m] = a.coeffs[m] - b.coeffs[m];
    return out;
}

} // namespace waverec
