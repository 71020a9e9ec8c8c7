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
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "waverec/reconstruction.hpp"

namespace waverec {

/*
 * Reconstruction error E(eps, delta, gamma): L2 norm in q of the difference
 * between the perturbed and unperturbed reconstructed profiles.  The zero
 * spec runs the identical code path, so E(0,0,0) is exactly 0.
 */
inline double error_E(const RealField& p, const PhysicalParams& params,
                      const PerturbationSpec& spec, const CutoffPolicy& policy = {},
                      double margin_floor = kDefaultMarginFloor) {
    const RealField eta_perturbed = reconstruct_full(p, params, spec, policy, margin_floor).eta;
    const RealField eta_base =
        reconstruct_full(p, params, PerturbationSpec::none(), policy, margin_floor).eta;
    return l2_norm(eta_perturbed - eta_base);
}

struct ErrorSplit {
    // Depth-multiplier change acting on the unperturbed spectrum.
    double term_I = 0.0;
    // Perturbed multiplier acting on the change of the auxiliary field.
    double term_II = 0.0;
};

/*
 * Two-term decomposition of the profile difference,
 *
 *   eta_pert - eta = Finv[(sinh(k(d+gamma)) - sinh(kd))/k * ghat_0]        (I)
 *                  + Finv[sinh(k(d+gamma))/k * (ghat_pert - ghat_0)]       (II)
 *
 * reported as the L2 norms of the two pieces.  Term II transforms the
 * *difference of the fields*, not the difference of two transforms: the
 * relative cutoff then scales with the difference itself and the noise
 * floor of the big spectra never reaches the growing multiplier.
 */
inline ErrorSplit error_split(const RealField& p, const PhysicalParams& params,
                              const PerturbationSpec& spec, const CutoffPolicy& policy = {},
                              double margin_floor = kDefaultMarginFloor) {
    const double depth_pert = params.depth() + spec.gamma;
    if (!(depth_pert > 0.0))
        throw std::domain_error("error_split: perturbed depth d + gamma must be positive");

    const RealField g_base = compute_g(p, params.kappa(), PerturbationSpec::none(), margin_floor);
    const RealField g_pert = compute_g(p, params.kappa(), spec, margin_floor);

    const Spectrum ghat_base = forward_transform(g_base);
    ErrorSplit out;
    out.term_I = l2_norm(inverse_transform(apply_sinh_multiplier(ghat_base, depth_pert, policy) -
                                           apply_sinh_multiplier(ghat_base, params.depth(), policy)));
    out.term_II = l2_norm(
        inverse_transform(apply_sinh_multiplier(forward_transform(g_pert - g_base), depth_pert, policy)));
    return out;
}

/*
 * Exponential-decay fit |F(k)| ~ c_hat e^{-sigma_hat |k|} over a wavenumber
 * window, the computable stand-in for the analyticity margin.  Positive and
 * negative k are pooled by |k|.
 */
struct DecayFit {
    double sigma_hat = 0.0; // fitted decay rate, -slope of log|F| vs |k|
    double c_hat = 0.0;     // fitted prefactor, exp(intercept)
    double k_lo = 0.0;
    double k_hi = 0.0;
    double residual = 0.0; // rms log-residual of the fit
};

inline DecayFit fit_decay(const Spectrum& s, double k_lo, double k_hi) {
    if (!(k_lo >= 0.0) || !(k_lo < k_hi) || k_hi > s.grid.max_wavenumber())
        throw std::invalid_argument("fit_decay: window must satisfy 0 <= k_lo < k_hi <= pi/spacing");
    std::vector<double> absk, logmag;
    for (std::size_t m = 0; m < s.grid.n; ++m) {
        const double ka = std::abs(s.grid.wavenumber(m));
        const double mag = std::abs(s.coeffs[m]);
        if (ka >= k_lo && ka <= k_hi && mag > 1e-300) {
            absk.push_back(ka);
            logmag.push_back(std::log(mag));
        }
    }
    if (absk.size() < 8)
        throw std::domain_error("fit_decay: fewer than 8 usable wavenumbers in the window");

    const double n = static_cast<double>(absk.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < absk.size(); ++i) {
        sx += absk[i];
        sy += logmag[i];
        sxx += absk[i] * absk[i];
        sxy += absk[i] * logmag[i];
    }
    const double denom = n * sxx - sx * sx;
    if (!(denom > 0.0)) throw std::domain_error("fit_decay: degenerate window");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = sy / n - slope * sx / n;

    double ss = 0.0;
    for (std::size_t i = 0; i < absk.size(); ++i) {
        const double r = logmag[i] - (slope * absk[i] + intercept);
        ss += r * r;
    }
    return DecayFit{-slope, std::exp(intercept), k_lo, k_hi, std::sqrt(ss / n)};
}

// Log-log power-law fit E ~ exp(intercept) * size^{alpha_hat}.
struct ExponentFit {
    double alpha_hat = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

inline ExponentFit fit_exponent(const std::vector<double>& sizes,
                                const std::vector<double>& errors) {
    if (sizes.size() != errors.size())
        throw std::invalid_argument("fit_exponent: size/error count mismatch");
    if (sizes.size() < 4) throw std::domain_error("fit_exponent: need at least 4 points");
    double lo = sizes[0], hi = sizes[0];
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (!(sizes[i] > 0.0) || !(errors[i] > 0.0))
            throw std::domain_error("fit_exponent: sizes and errors must be strictly positive");
        lo = std::min(lo, sizes[i]);
        hi = std::max(hi, sizes[i]);
    }
    if (hi / lo < 10.0 * (1.0 - 1e-9))
        throw std::domain_error("fit_exponent: points must span at least one decade");

    const double n = static_cast<double>(sizes.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double x = std::log(sizes[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = sy / n - slope * sx / n;

    double ss_res = 0.0, ss_tot = 0.0;
    const double ymean = sy / n;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double y = std::log(errors[i]);
        const double fit = slope * std::log(sizes[i]) + intercept;
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - ymean) * (y - ymean);
    }
    const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return ExponentFit{slope, intercept, r2};
}

/*
 * Inputs of the stability-bound evaluator.  sigma is the decay rate of the
 * unperturbed auxiliary spectrum (measure it with fit_decay or supply your
 * own); a2 is the calibrated constant that turns the existence bound into
 * a checkable majorization.
 */
struct BoundInputs {
    double sigma = 0.0;
    double a2 = 0.0;
    double kappa = 0.0;
    double d = 0.0;
    double gamma = 0.0;
    double epsilon = 0.0;
    double delta_norm = 0.0;
    double p_norm = 0.0;
};

/*
 * Right-hand side of the stability estimate with exponent
 * beta = (sigma - gamma)/(d + sigma):
 *
 *   (|gamma| |kappa|^beta + (d+gamma) |eps|^beta) * A1
 *       + (d+gamma) ||delta||^beta |kappa|^beta * A2,
 *   A1 = ||p||^beta * A2.
 *
 * gamma enters the exponent with its sign, exactly as stated; for gamma < 0
 * this makes beta larger, an asymmetry the evaluator reproduces verbatim.
 */
inline double evaluate_bound(const BoundInputs& in) {
    if (!(in.sigma > in.gamma))
        throw std::invalid_argument("evaluate_bound: requires sigma > gamma");
    if (!(in.d + in.gamma > 0.0))
        throw std::invalid_argument("evaluate_bound: requires d + gamma > 0");
    if (in.a2 < 0.0 || in.delta_norm < 0.0 || in.p_norm < 0.0)
        throw std::invalid_argument("evaluate_bound: a2, delta_norm, p_norm must be nonnegative");
    const double beta = (in.sigma - in.gamma) / (in.d + in.sigma);
    const double a1 = std::pow(in.p_norm, beta) * in.a2;
    const double kap = std::pow(std::abs(in.kappa), beta);
    return (std::abs(in.gamma) * kap + (in.d + in.gamma) * std::pow(std::abs(in.epsilon), beta)) *
               a1 +
           (in.d + in.gamma) * std::pow(in.delta_norm, beta) * kap * in.a2;
}

} // namespace waverec
