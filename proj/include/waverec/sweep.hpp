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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "waverec/error_analysis.hpp"
#include "waverec/wave_model.hpp"

namespace waverec {

enum class SweepChannel { epsilon, delta_amplitude, gamma };

inline std::string to_string(SweepChannel c) {
    switch (c) {
    case SweepChannel::epsilon: return "epsilon";
    case SweepChannel::delta_amplitude: return "delta_amplitude";
    case SweepChannel::gamma: return "gamma";
    }
    return "?";
}

inline SweepChannel parse_channel(const std::string& name) {
    if (name == "epsilon") return SweepChannel::epsilon;
    if (name == "delta_amplitude") return SweepChannel::delta_amplitude;
    if (name == "gamma") return SweepChannel::gamma;
    throw std::invalid_argument("unknown sweep channel '" + name +
                                "' (expected epsilon|delta_amplitude|gamma)");
}

// One row of a sweep experiment.  Inadmissible rows carry no error values.
struct SweepRecord {
    SweepChannel channel = SweepChannel::epsilon;
    double param_value = 0.0;
    double error_l2 = 0.0;
    double term_I = 0.0;
    double term_II = 0.0;
    std::optional<double> bound_value;
    bool admissible = true;
};

enum class SweepSpacing { linear, log };

struct SweepPlan {
    SweepChannel channel = SweepChannel::epsilon;
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    SweepSpacing spacing = SweepSpacing::log;
    double delta_width = 2.0;
};

/*
 * Default plans: log decades over the comfortably admissible part of each
 * channel.  The amplitude cap of 0.2 is deliberate: past a ~ 0.25 the
 * perturbed auxiliary field loses the strip of analyticity the multiplier
 * needs, and the discrete error readings turn into cutoff artifacts long
 * before the radicand itself goes negative.
 */
inline SweepPlan default_plan(SweepChannel channel) {
    switch (channel) {
    case SweepChannel::epsilon: return {channel, 1e-5, 5e-2, 20, SweepSpacing::log, 2.0};
    case SweepChannel::delta_amplitude: return {channel, 1e-5, 0.2, 20, SweepSpacing::log, 2.0};
    case SweepChannel::gamma: return {channel, -0.5, 0.5, 21, SweepSpacing::linear, 2.0};
    }
    return {};
}

inline std::vector<double> sweep_points(const SweepPlan& plan) {
    if (plan.count < 1) throw std::invalid_argument("sweep_points: count must be >= 1");
    if (!(plan.min < plan.max)) throw std::invalid_argument("sweep_points: need min < max");
    if (plan.spacing == SweepSpacing::log && !(plan.min > 0.0))
        throw std::invalid_argument("sweep_points: log spacing needs positive min");
    std::vector<double> pts(static_cast<std::size_t>(plan.count));
    if (plan.count == 1) {
        pts[0] = plan.min;
        return pts;
    }
    const double n1 = static_cast<double>(plan.count - 1);
    for (int i = 0; i < plan.count; ++i) {
        const double t = static_cast<double>(i) / n1;
        pts[static_cast<std::size_t>(i)] =
            plan.spacing == SweepSpacing::log
                ? std::exp(std::log(plan.min) + t * (std::log(plan.max) - std::log(plan.min)))
                : plan.min + t * (plan.max - plan.min);
    }
    return pts;
}

inline PerturbationSpec spec_for(SweepChannel channel, double value, double delta_width) {
    PerturbationSpec spec;
    spec.delta_width = delta_width;
    switch (channel) {
    case SweepChannel::epsilon: spec.epsilon = value; break;
    case SweepChannel::delta_amplitude: spec.delta_amplitude = value; break;
    case SweepChannel::gamma: spec.gamma = value; break;
    }
    return spec;
}

/*
 * Evaluate one sweep: per point, admissibility gate then the error
 * functional and its two-term split.  Points are independent and evaluated
 * on up to `jobs` threads; the returned rows are ordered by parameter value
 * regardless of completion order, so results are deterministic.
 */
inline std::vector<SweepRecord> run_sweep(const PressureTrace& trace, const Grid& grid,
                                          const PhysicalParams& params, const SweepPlan& plan,
                                          const CutoffPolicy& policy = {},
                                          double margin_floor = kDefaultMarginFloor,
                                          unsigned jobs = 1) {
    const std::vector<double> pts = sweep_points(plan);
    const RealField p = trace.sample(grid);
    std::vector<SweepRecord> records(pts.size());

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&]() {
        try {
            for (std::size_t i = next.fetch_add(1); i < pts.size() && !failed;
                 i = next.fetch_add(1)) {
                SweepRecord rec;
                rec.channel = plan.channel;
                rec.param_value = pts[i];
                const PerturbationSpec spec = spec_for(plan.channel, pts[i], plan.delta_width);
                const AdmissibilityReport rep =
                    check_admissibility(trace, grid, params, spec, margin_floor);
                rec.admissible = rep.pass;
                if (rep.pass) {
                    rec.error_l2 = error_E(p, params, spec, policy, margin_floor);
                    const ErrorSplit split = error_split(p, params, spec, policy, margin_floor);
                    rec.term_I = split.term_I;
                    rec.term_II = split.term_II;
                }
                records[i] = rec;
            }
        } catch (...) {
            // e.g. a tabulated trace whose *unperturbed* configuration is
            // inadmissible; surface the first failure on the calling thread
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
        }
    };

    jobs = std::max(1u, jobs);
    if (jobs == 1 || pts.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const unsigned count = std::min<unsigned>(jobs, static_cast<unsigned>(pts.size()));
        pool.reserve(count);
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    return records;
}

inline double delta_norm_for(const Grid& grid, SweepChannel channel, double value,
                             double delta_width) {
    if (channel != SweepChannel::delta_amplitude) return 0.0;
    PerturbationSpec spec;
    spec.delta_amplitude = value;
    spec.delta_width = delta_width;
    return l2_norm(delta_field(grid, spec));
}

inline BoundInputs bound_inputs_for(const Grid& grid, const PhysicalParams& params, double sigma,
                                    double a2, double p_norm, SweepChannel channel, double value,
                                    double delta_width) {
    BoundInputs in;
    in.sigma = sigma;
    in.a2 = a2;
    in.kappa = params.kappa();
    in.d = params.depth();
    in.p_norm = p_norm;
    switch (channel) {
    case SweepChannel::epsilon: in.epsilon = value; break;
    case SweepChannel::delta_amplitude:
        in.delta_norm = delta_norm_for(grid, channel, value, delta_width);
        break;
    case SweepChannel::gamma: in.gamma = value; break;
    }
    return in;
}

struct BoundCalibration {
    double a2 = 0.0;
    std::size_t calibration_index = 0; // row the constant was made tight at
};

/*
 * Calibrate the bound constant at the admissible row with the largest
 * perturbation magnitude (ties broken toward the larger measured error)
 * and fill bound_value on every admissible row.  The stability constants
 * are existential; pinning one at the top of the sweep turns the estimate
 * into a majorization claim over the smaller points that can actually fail.
 */
inline BoundCalibration fill_bound_values(std::vector<SweepRecord>& records, const Grid& grid,
                                          const PhysicalParams& params, double sigma,
                                          double p_norm, double delta_width) {
    std::optional<std::size_t> calib;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const SweepRecord& r = records[i];
        if (!r.admissible || !(r.error_l2 > 0.0)) continue;
        if (!calib || std::abs(r.param_value) > std::abs(records[*calib].param_value) ||
            (std::abs(r.param_value) == std::abs(records[*calib].param_value) &&
             r.error_l2 > records[*calib].error_l2))
            calib = i;
    }
    if (!calib) throw std::domain_error("fill_bound_values: no admissible nonzero-error row");

    const SweepRecord& top = records[*calib];
    const double shape = evaluate_bound(bound_inputs_for(grid, params, sigma, 1.0, p_norm,
                                                         top.channel, top.param_value, delta_width));
    if (!(shape > 0.0)) throw std::domain_error("fill_bound_values: degenerate bound shape");
    const double a2 = top.error_l2 / shape;

    for (SweepRecord& r : records) {
        if (!r.admissible) continue;
        r.bound_value = evaluate_bound(
            bound_inputs_for(grid, params, sigma, a2, p_norm, r.channel, r.param_value, delta_width));
    }
    return BoundCalibration{a2, *calib};
}

// Rows strictly below the calibration magnitude whose measured error
// exceeds the calibrated bound.
inline std::vector<std::size_t> bound_violations(const std::vector<SweepRecord>& records,
                                                 std::size_t calibration_index) {
    std::vector<std::size_t> out;
    const double top = std::abs(records[calibration_index].param_value);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const SweepRecord& r = records[i];
        if (!r.admissible || !r.bound_value || !(r.error_l2 > 0.0)) continue;
        if (std::abs(r.param_value) < top && *r.bound_value < r.error_l2) out.push_back(i);
    }
    return out;
}

/*
 * Subset the trailer exponent fit runs on: the stability estimate is
 * asymptotic, so by default fit the shortest ascending-|size| prefix that
 * still spans a full decade.  Falls back to all rows when the whole sweep
 * is narrower than a decade.
 */
inline void smallest_decade_subset(const std::vector<SweepRecord>& records,
                                   std::vector<double>& sizes, std::vector<double>& errors) {
    std::vector<std::pair<double, double>> pts;
    for (const SweepRecord& r : records) {
        if (r.admissible && std::abs(r.param_value) > 0.0 && r.error_l2 > 0.0)
            pts.emplace_back(std::abs(r.param_value), r.error_l2);
    }
    std::sort(pts.begin(), pts.end());
    sizes.clear();
    errors.clear();
    if (pts.empty()) return;
    std::size_t end = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].first / pts.front().first >= 10.0 * (1.0 - 1e-9)) {
            end = i + 1;
            break;
        }
    }
    for (std::size_t i = 0; i < end; ++i) {
        sizes.push_back(pts[i].first);
        errors.push_back(pts[i].second);
    }
}

inline ExponentFit fit_exponent(const std::vector<SweepRecord>& records) {
    std::vector<double> sizes, errors;
    smallest_decade_subset(records, sizes, errors);
    return fit_exponent(sizes, errors);
}

} // namespace waverec
