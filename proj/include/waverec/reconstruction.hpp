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
#include <stdexcept>
#include <string>
#include <vector>

#include "waverec/multipliers.hpp"
#include "waverec/transform.hpp"
#include "waverec/wave_model.hpp"

namespace waverec {

/*
 * Auxiliary field of the reconstruction:
 *
 *   g(q) = (1 - 2 (kappa + epsilon) (p(q) + delta(q)))^{-1/2} - 1.
 *
 * The radicand must stay above margin_floor at every node; at the floor
 * the formula is already numerically meaningless, so that case throws.
 */
inline RealField compute_g(const RealField& p, double kappa, const PerturbationSpec& spec,
                           double margin_floor = kDefaultMarginFloor) {
    if (!(spec.delta_width > 0.0))
        throw std::invalid_argument("compute_g: delta_width must be positive");
    const double kappa_eps = kappa + spec.epsilon;
    RealField g{p.grid, std::vector<double>(p.grid.n)};
    for (std::size_t j = 0; j < p.grid.n; ++j) {
        const double q = p.grid.node(j);
        const double radicand = 1.0 - 2.0 * kappa_eps * (p.values[j] + delta_at(q, spec));
        if (!(radicand > margin_floor))
            throw std::domain_error(
                "compute_g: admissibility violated, radicand 1 - 2(kappa+eps)(p+delta) = " +
                std::to_string(radicand) + " <= margin floor at q = " + std::to_string(q));
        g.values[j] = 1.0 / std::sqrt(radicand) - 1.0;
    }
    return g;
}

// Surface elevation eta(q) = Finv[ sinh(k * depth_arg)/k * ghat(k) ](q).
inline RealField reconstruct_eta(const RealField& g, double depth_arg,
                                 const CutoffPolicy& policy = {}) {
    detail::require_positive_depth(depth_arg, "reconstruct_eta");
    return inverse_transform(apply_sinh_multiplier(forward_transform(g), depth_arg, policy));
}

struct AbscissaResult {
    RealField x_of_q;
    // h_p > 0 in the strip forces x'(q) > 0; a non-monotone discrete x
    // flags data the formula was not meant for.
    bool strictly_increasing = true;
};

namespace detail {

inline AbscissaResult accumulate_abscissa(const RealField& integrand) {
    const Grid& grid = integrand.grid;
    AbscissaResult out{RealField{grid, std::vector<double>(grid.n)}, true};
    double acc = 0.0;
    out.x_of_q.values[0] = grid.node(0);
    for (std::size_t j = 1; j < grid.n; ++j) {
        acc += 0.5 * grid.spacing * (integrand.values[j - 1] + integrand.values[j]);
        out.x_of_q.values[j] = grid.node(j) + acc;
        if (!(out.x_of_q.values[j] > out.x_of_q.values[j - 1])) out.strictly_increasing = false;
    }
    return out;
}

} // namespace detail

/*
 * Parametric abscissa x(q) = q + \int_{-inf}^{q} Finv[cosh(k d) ghat](s) ds,
 * with the tail below the window edge dropped (the integrand inherits the
 * decay of g) and the running integral accumulated by the trapezoid rule.
 */
inline AbscissaResult reconstruct_x(const RealField& g, double depth_arg,
                                    const CutoffPolicy& policy = {}) {
    detail::require_positive_depth(depth_arg, "reconstruct_x");
    const RealField integrand =
        inverse_transform(apply_cosh_multiplier(forward_transform(g), depth_arg, policy));
    return detail::accumulate_abscissa(integrand);
}

struct ReconstructionResult {
    Grid grid;
    RealField eta;
    RealField x_of_q;
    PhysicalParams params_used;
    PerturbationSpec perturbation_used;
    struct Diagnostics {
        double cutoff_wavenumber = 0.0;  // largest |k| surviving the spectral cutoff
        bool edge_decay_warning = false; // auxiliary field not decayed at window edges
        bool x_monotone = true;
    } diagnostics;
};

/*
 * Full reconstruction from a sampled pressure trace under the given
 * perturbations.  Both multipliers use the perturbed depth d + gamma: a
 * practitioner holding a wrong depth value would use it everywhere, and
 * the depth-only error then comes purely from the multiplier change.
 */
inline ReconstructionResult reconstruct_full(const RealField& p, const PhysicalParams& params,
                                             const PerturbationSpec& spec,
                                             const CutoffPolicy& policy = {},
                                             double margin_floor = kDefaultMarginFloor) {
    const double depth_arg = params.depth() + spec.gamma;
    if (!(depth_arg > 0.0))
        throw std::domain_error("reconstruct_full: admissibility violated, perturbed depth d + "
                                "gamma = " +
                                std::to_string(depth_arg) + " must be positive");
    const RealField g = compute_g(p, params.kappa(), spec, margin_floor);
    const Spectrum ghat = forward_transform(g);

    ReconstructionResult res{p.grid,
                             inverse_transform(apply_sinh_multiplier(ghat, depth_arg, policy)),
                             RealField{},
                             params,
                             spec,
                             {}};
    const AbscissaResult x = detail::accumulate_abscissa(
        inverse_transform(apply_cosh_multiplier(ghat, depth_arg, policy)));
    res.x_of_q = x.x_of_q;
    res.diagnostics.cutoff_wavenumber = cutoff_wavenumber(ghat, policy);
    res.diagnostics.edge_decay_warning = ghat.edge_decay_warning;
    res.diagnostics.x_monotone = x.strictly_increasing;
    return res;
}

inline constexpr double kDefaultGravity = 9.81;

/*
 * Linear transfer-function baseline eta_lin = Finv[cosh(k d) F{p}] / gravity,
 * the small-amplitude recovery the nonlinear formula is compared against.
 */
inline RealField linear_baseline_eta(const RealField& p, double depth,
                                     double gravity = kDefaultGravity,
                                     const CutoffPolicy& policy = {}) {
    detail::require_positive_depth(depth, "linear_baseline_eta");
    if (!(gravity > 0.0))
        throw std::invalid_argument("linear_baseline_eta: gravity must be positive");
    RealField eta = inverse_transform(apply_cosh_multiplier(forward_transform(p), depth, policy));
    for (double& v : eta.values) v /= gravity;
    return eta;
}

} // namespace waverec
