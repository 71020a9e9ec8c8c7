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
#include <limits>
#include <stdexcept>

#include "waverec/field.hpp"

namespace waverec {

/*
 * The hyperbolic multipliers grow like e^{|k| d} and would amplify the
 * floating-point noise floor of a decaying spectrum catastrophically.
 * Coefficients below cutoff_rel * max|F| are therefore zeroed before any
 * multiplier touches the spectrum -- the discrete counterpart of the
 * exponential-decay hypothesis the reconstruction rests on.  k_max is an
 * optional hard band limit on top of the relative floor.
 */
struct CutoffPolicy {
    double cutoff_rel = 1e-13;
    double k_max = std::numeric_limits<double>::infinity();
};

inline Spectrum apply_cutoff(Spectrum s, const CutoffPolicy& policy = {}) {
    double maxabs = 0.0;
    for (const auto& c : s.coeffs) maxabs = std::max(maxabs, std::abs(c));
    const double floor_abs = policy.cutoff_rel * maxabs;
    // Gate conjugate pairs together: rounding can leave |F(k)| and |F(-k)|
    // straddling the floor, and a one-sided mask would break the Hermitian
    // symmetry of real fields right where the multiplier amplifies hardest.
    for (std::size_t m = 0; m <= s.grid.n / 2; ++m) {
        const std::size_t mirror = (s.grid.n - m) % s.grid.n;
        const double pair_mag = std::max(std::abs(s.coeffs[m]), std::abs(s.coeffs[mirror]));
        if (pair_mag < floor_abs || std::abs(s.grid.wavenumber(m)) > policy.k_max) {
            s.coeffs[m] = 0.0;
            s.coeffs[mirror] = 0.0;
        }
    }
    return s;
}

// Largest |k| carrying a surviving coefficient; 0 when nothing survives.
inline double cutoff_wavenumber(const Spectrum& s, const CutoffPolicy& policy = {}) {
    const Spectrum gated = apply_cutoff(s, policy);
    double k_active = 0.0;
    for (std::size_t m = 0; m < gated.grid.n; ++m) {
        if (gated.coeffs[m] != 0.0)
            k_active = std::max(k_active, std::abs(gated.grid.wavenumber(m)));
    }
    return k_active;
}

namespace detail {

// sinh(k d)/k with the removable singularity at k = 0 filled by its limit d.
inline double sinh_over_k(double k, double depth_arg) {
    if (k == 0.0) return depth_arg;
    return std::sinh(k * depth_arg) / k;
}

inline void require_positive_depth(double depth_arg, const char* where) {
    if (!(depth_arg > 0.0))
        throw std::invalid_argument(std::string(where) + ": depth argument must be positive");
}

} // namespace detail

/*
 * Coefficientwise multiplication by sinh(k * depth_arg)/k, the strip
 * harmonic-extension multiplier evaluated on the surface.  The k = 0 slot
 * is multiplied by depth_arg, never patched by division.  Zeroed (cut)
 * coefficients stay exactly zero even where the multiplier itself would
 * overflow.
 */
inline Spectrum apply_sinh_multiplier(const Spectrum& s, double depth_arg,
                                      const CutoffPolicy& policy = {}) {
    detail::require_positive_depth(depth_arg, "apply_sinh_multiplier");
    Spectrum out = apply_cutoff(s, policy);
    for (std::size_t m = 0; m < out.grid.n; ++m) {
        if (out.coeffs[m] != 0.0)
            out.coeffs[m] *= detail::sinh_over_k(out.grid.wavenumber(m), depth_arg);
    }
    return out;
}

// Coefficientwise multiplication by cosh(k * depth_arg), cutoff-gated the
// same way; cosh(0) = 1 needs no special casing.
inline Spectrum apply_cosh_multiplier(const Spectrum& s, double depth_arg,
                                      const CutoffPolicy& policy = {}) {
    detail::require_positive_depth(depth_arg, "apply_cosh_multiplier");
    Spectrum out = apply_cutoff(s, policy);
    for (std::size_t m = 0; m < out.grid.n; ++m) {
        if (out.coeffs[m] != 0.0)
            out.coeffs[m] *= std::cosh(out.grid.wavenumber(m) * depth_arg);
    }
    return out;
}

} // namespace waverec
