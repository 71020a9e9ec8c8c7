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
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "waverec/field.hpp"
#include "waverec/grid.hpp"

namespace waverec {

// Wave speed c and undisturbed depth d; kappa = 1/c^2 is derived, never stored.
class PhysicalParams {
  public:
    PhysicalParams(double speed, double depth) : speed_(speed), depth_(depth) {
        if (!(speed > 0.0)) throw std::invalid_argument("PhysicalParams: speed must be positive");
        if (!(depth > 0.0)) throw std::invalid_argument("PhysicalParams: depth must be positive");
    }

    double speed() const { return speed_; }
    double depth() const { return depth_; }
    double kappa() const { return 1.0 / (speed_ * speed_); }

  private:
    double speed_;
    double depth_;
};

/*
 * The three perturbation channels: epsilon shifts kappa, the Gaussian bump
 * a exp(-q^2 / (2 theta^2)) corrupts the pressure trace, gamma shifts the
 * depth.  The all-zero spec (with any positive width) is the canonical
 * unperturbed configuration.
 */
struct PerturbationSpec {
    double epsilon = 0.0;         // added to kappa = 1/c^2
    double delta_amplitude = 0.0; // a, pressure units
    double delta_width = 2.0;     // theta > 0
    double gamma = 0.0;           // added to the depth

    static PerturbationSpec none() { return PerturbationSpec{}; }
};

inline constexpr double kDefaultMarginFloor = 1e-8;

inline double delta_at(double q, const PerturbationSpec& spec) {
    return spec.delta_amplitude * std::exp(-q * q / (2.0 * spec.delta_width * spec.delta_width));
}

// Samples of a exp(-q^2/(2 theta^2)) on the grid.
inline RealField delta_field(const Grid& grid, const PerturbationSpec& spec) {
    if (!(spec.delta_width > 0.0))
        throw std::invalid_argument("delta_field: delta_width must be positive");
    RealField out{grid, std::vector<double>(grid.n)};
    for (std::size_t j = 0; j < grid.n; ++j) out.values[j] = delta_at(grid.node(j), spec);
    return out;
}

namespace detail {

// Closed-form bed-pressure trace whose auxiliary field at kappa = 1/4 is the
// unit Gaussian.  Written as 2G(2+G)/(1+G)^2 with G = e^{-q^2/2}: same
// function as 2(2+G)/(2+G+1/G) but free of the e^{+q^2/2} overflow.
inline double reference_pressure_at(double q) {
    const double g = std::exp(-0.5 * q * q);
    const double onepg = 1.0 + g;
    return 2.0 * g * (2.0 + g) / (onepg * onepg);
}

/*
 * Natural cubic spline through strictly increasing knots.  Standard
 * tridiagonal (Thomas) solve for the second derivatives; evaluation is 0
 * outside the knot range, matching the decay-to-zero convention for
 * pressure traces.
 */
class CubicSpline {
  public:
    CubicSpline() = default;

    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 4) throw std::invalid_argument("CubicSpline: need at least 4 points");
        if (y_.size() != n) throw std::invalid_argument("CubicSpline: x/y size mismatch");
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!(x_[i] < x_[i + 1]))
                throw std::invalid_argument("CubicSpline: abscissae must be strictly increasing");
        }

        m_.assign(n, 0.0); // second derivatives, natural: m_0 = m_{n-1} = 0
        std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
        diag[0] = diag[n - 1] = 1.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double hl = x_[i] - x_[i - 1];
            const double hr = x_[i + 1] - x_[i];
            diag[i] = 2.0 * (hl + hr);
            upper[i] = hr;
            rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
        }
        // forward sweep (lower diagonal of row i is h_{i-1} = x_i - x_{i-1})
        for (std::size_t i = 2; i + 1 < n; ++i) {
            const double w = (x_[i] - x_[i - 1]) / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
            if (i == 1) break;
        }
    }

    double operator()(double q) const {
        if (q < x_.front() || q > x_.back()) return 0.0;
        std::size_t i =
            static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), q) - x_.begin());
        if (i > 0) --i;
        i = std::min(i, x_.size() - 2);
        const double h = x_[i + 1] - x_[i];
        const double a = (x_[i + 1] - q) / h;
        const double b = (q - x_[i]) / h;
        return a * y_[i] + b * y_[i + 1] +
               ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    }

    double front() const { return x_.front(); }
    double back() const { return x_.back(); }

  private:
    std::vector<double> x_, y_, m_;
};

} // namespace detail

inline RealField reference_pressure_trace(const Grid& grid) {
    RealField out{grid, std::vector<double>(grid.n)};
    for (std::size_t j = 0; j < grid.n; ++j) out.values[j] = detail::reference_pressure_at(grid.node(j));
    return out;
}

/*
 * Invert the auxiliary-field definition g = (1 - 2 kappa p)^{-1/2} - 1 for
 * the pressure: p = (1 - (1+g)^{-2}) / (2 kappa).  Requires 1 + g > 0
 * everywhere, otherwise the inversion is undefined.
 */
inline RealField pressure_from_g(const RealField& g, double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("pressure_from_g: kappa must be positive");
    RealField out{g.grid, std::vector<double>(g.grid.n)};
    for (std::size_t j = 0; j < g.grid.n; ++j) {
        const double onepg = 1.0 + g.values[j];
        if (!(onepg > 0.0))
            throw std::domain_error("pressure_from_g: 1 + g must stay positive (violated at q = " +
                                    std::to_string(g.grid.node(j)) + ")");
        out.values[j] = (1.0 - 1.0 / (onepg * onepg)) / (2.0 * kappa);
    }
    return out;
}

/*
 * A bed-pressure trace: either one of the two closed forms (evaluable at
 * arbitrary q, so admissibility can be checked on an oversampled grid) or
 * tabulated samples resampled through a cubic spline.
 */
class PressureTrace {
  public:
    enum class Kind { reference_closed_form, gaussian_g_prescribed, tabulated };

    static PressureTrace reference() { return PressureTrace(Kind::reference_closed_form, 0.0); }

    // Trace whose auxiliary field at the given kappa is the unit Gaussian.
    static PressureTrace gaussian_g(double kappa) {
        if (!(kappa > 0.0))
            throw std::invalid_argument("PressureTrace::gaussian_g: kappa must be positive");
        return PressureTrace(Kind::gaussian_g_prescribed, kappa);
    }

    static PressureTrace tabulated(std::vector<double> q, std::vector<double> p) {
        PressureTrace t(Kind::tabulated, 0.0);
        t.spline_ = detail::CubicSpline(std::move(q), std::move(p));
        return t;
    }

    Kind kind() const { return kind_; }
    bool closed_form() const { return kind_ != Kind::tabulated; }

    double evaluate(double q) const {
        switch (kind_) {
        case Kind::reference_closed_form: return detail::reference_pressure_at(q);
        case Kind::gaussian_g_prescribed: {
            const double g = std::exp(-0.5 * q * q);
            const double onepg = 1.0 + g;
            return (1.0 - 1.0 / (onepg * onepg)) / (2.0 * kappa_);
        }
        case Kind::tabulated: return spline_(q);
        }
        return 0.0; // unreachable
    }

    RealField sample(const Grid& grid) const {
        RealField out{grid, std::vector<double>(grid.n)};
        for (std::size_t j = 0; j < grid.n; ++j) out.values[j] = evaluate(grid.node(j));
        return out;
    }

  private:
    PressureTrace(Kind kind, double kappa) : kind_(kind), kappa_(kappa) {}

    Kind kind_;
    double kappa_;
    detail::CubicSpline spline_;
};

/*
 * Two-column CSV (q, p) with strictly increasing q.  A single leading
 * non-numeric line is tolerated as a header.
 */
inline PressureTrace load_pressure_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_pressure_csv: cannot open " + path);
    std::vector<double> q, p;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double qv = 0.0, pv = 0.0;
        if (!(row >> qv >> pv)) {
            if (lineno == 1 && q.empty()) continue; // header line
            throw std::runtime_error("load_pressure_csv: malformed line " +
                                     std::to_string(lineno) + " in " + path);
        }
        q.push_back(qv);
        p.push_back(pv);
    }
    return PressureTrace::tabulated(std::move(q), std::move(p));
}

/*
 * Outcome of the admissibility check: the reconstruction is defined only
 * while 1 - 2(kappa+epsilon)(p + delta) stays positive and the perturbed
 * depth d + gamma stays positive.
 */
struct AdmissibilityReport {
    bool radicand_positive = false;
    bool depth_positive = false;
    double min_radicand = 0.0;    // minimum of 1 - 2(kappa+eps)(p+delta) over the check grid
    double radicand_margin = 0.0; // min_radicand - margin_floor
    double margin_floor = kDefaultMarginFloor;
    double perturbed_depth = 0.0; // d + gamma
    // True when the trace is tabulated: the holomorphic-extension hypothesis
    // behind the stability theory cannot be checked from samples.
    bool analyticity_unverified = false;
    bool pass = false;
};

namespace detail {

inline AdmissibilityReport admissibility_from_minimum(double min_radicand,
                                                      const PhysicalParams& params,
                                                      const PerturbationSpec& spec,
                                                      double margin_floor,
                                                      bool analyticity_unverified) {
    AdmissibilityReport rep;
    rep.margin_floor = margin_floor;
    rep.min_radicand = min_radicand;
    rep.radicand_margin = min_radicand - margin_floor;
    rep.radicand_positive = min_radicand > margin_floor;
    rep.perturbed_depth = params.depth() + spec.gamma;
    rep.depth_positive = rep.perturbed_depth > 0.0;
    rep.analyticity_unverified = analyticity_unverified;
    rep.pass = rep.radicand_positive && rep.depth_positive;
    return rep;
}

} // namespace detail

// Check on the sampled trace directly (working-grid resolution).
inline AdmissibilityReport check_admissibility(const RealField& p, const PhysicalParams& params,
                                               const PerturbationSpec& spec,
                                               double margin_floor = kDefaultMarginFloor) {
    if (!(spec.delta_width > 0.0))
        throw std::invalid_argument("check_admissibility: delta_width must be positive");
    const double kappa_eps = params.kappa() + spec.epsilon;
    double min_radicand = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p.grid.n; ++j) {
        const double r =
            1.0 - 2.0 * kappa_eps * (p.values[j] + delta_at(p.grid.node(j), spec));
        min_radicand = std::min(min_radicand, r);
    }
    return detail::admissibility_from_minimum(min_radicand, params, spec, margin_floor, true);
}

/*
 * Trace-aware check.  Closed-form traces are evaluated on a 4x oversampled
 * copy of the window so a radicand minimum falling between working-grid
 * nodes is not missed; tabulated traces are checked at their resampled
 * working-grid values.
 */
inline AdmissibilityReport check_admissibility(const PressureTrace& trace, const Grid& grid,
                                               const PhysicalParams& params,
                                               const PerturbationSpec& spec,
                                               double margin_floor = kDefaultMarginFloor) {
    if (!(spec.delta_width > 0.0))
        throw std::invalid_argument("check_admissibility: delta_width must be positive");
    if (!trace.closed_form())
        return check_admissibility(trace.sample(grid), params, spec, margin_floor);

    const double kappa_eps = params.kappa() + spec.epsilon;
    const std::size_t n_fine = 4 * grid.n;
    const double dq = 2.0 * grid.half_width / static_cast<double>(n_fine);
    double min_radicand = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n_fine; ++j) {
        const double q = -grid.half_width + dq * static_cast<double>(j);
        const double r = 1.0 - 2.0 * kappa_eps * (trace.evaluate(q) + delta_at(q, spec));
        min_radicand = std::min(min_radicand, r);
    }
    return detail::admissibility_from_minimum(min_radicand, params, spec, margin_floor, false);
}

} // namespace waverec
