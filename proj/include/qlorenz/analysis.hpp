// Copyright 2026 The qlorenz Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Error analysis: point-by-point relative error between trajectories,
 * Richardson step-size error estimates and condition-number sweeps.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "lorenz.hpp"
#include "numkernel.hpp"
#include "parallel.hpp"

namespace qlorenz::analysis {

using lorenz::LorenzParams;
using lorenz::Solver;
using lorenz::State3;
using lorenz::StepSize;
using lorenz::Trajectory;

/// L1 distance over (1 + L1 norm of the classical state).
inline double relative_error(const State3 &classical, const State3 &quantum) {
    const double num = std::abs(classical.x - quantum.x) +
                       std::abs(classical.y - quantum.y) +
                       std::abs(classical.z - quantum.z);
    const double den = 1.0 + std::abs(classical.x) + std::abs(classical.y) +
                       std::abs(classical.z);
    return num / den;
}

struct ErrorSeries {
    /// values[k] compares the states at index k + 1.
    std::vector<double> values;
    double h = 0.0;
    std::string description;

    [[nodiscard]] double mean() const {
        if (values.empty()) {
            return 0.0;
        }
        double acc = 0.0;
        for (double v : values) {
            acc += v;
        }
        return acc / static_cast<double>(values.size());
    }
    [[nodiscard]] double max() const {
        double m = 0.0;
        for (double v : values) {
            m = std::max(m, v);
        }
        return m;
    }
};

inline ErrorSeries compare_trajectories(const Trajectory &classical,
                                        const Trajectory &quantum) {
    if (classical.points.size() != quantum.points.size()) {
        throw LengthMismatch(std::to_string(classical.points.size()) +
                             " vs " + std::to_string(quantum.points.size()) +
                             " points");
    }
    if (classical.h != quantum.h) {
        throw LengthMismatch("trajectories use different step sizes");
    }
    if (classical.points.empty() ||
        !(classical.points.front() == quantum.points.front())) {
        throw LengthMismatch("trajectories do not share a start point");
    }
    ErrorSeries out;
    out.h = classical.h;
    out.description = lorenz::to_string(classical.solver) + " vs " +
                      lorenz::to_string(quantum.solver);
    out.values.reserve(classical.points.size() - 1);
    for (std::size_t n = 1; n < classical.points.size(); ++n) {
        out.values.push_back(
            relative_error(classical.points[n], quantum.points[n]));
    }
    return out;
}

struct RichardsonEstimate {
    double e_x = 0.0;
    double e_y = 0.0;
    double e_z = 0.0;
    double total = 0.0;
    double h = 0.0;
};

/**
 * Leading-order step-size error E(h) of the solver's numerical gradient.
 *
 * Both paths start at s and cover the same interval 2h: the fine path takes
 * two steps of h, the coarse path one step of 2h. Gradients are taken over
 * the common span, g_h = (w_fine - s) / 2h and g_2h = (w_coarse - s) / 2h,
 * and E(h) = g_2h - g_h = c h + O(h^2).
 *
 * Differencing a single h step against a single 2h step instead gives
 * (s + h f(s) - s) / h == f(s) for both, so E would vanish identically for
 * any one-step method; that reading is not used.
 */
inline RichardsonEstimate richardson(const State3 &s, const LorenzParams &p,
                                     StepSize h, const Solver &solver) {
    const StepSize coarse_h(2.0 * h.value());
    const State3 mid = lorenz::step_solve(s, p, h, solver).next;
    const State3 fine = lorenz::step_solve(mid, p, h, solver).next;
    const State3 coarse = lorenz::step_solve(s, p, coarse_h, solver).next;
    const double span = 2.0 * h.value();

    RichardsonEstimate e;
    e.h = h.value();
    e.e_x = (coarse.x - s.x) / span - (fine.x - s.x) / span;
    e.e_y = (coarse.y - s.y) / span - (fine.y - s.y) / span;
    e.e_z = (coarse.z - s.z) / span - (fine.z - s.z) / span;
    e.total = std::abs(e.e_x) + std::abs(e.e_y) + std::abs(e.e_z);
    return e;
}

/**
 * Richardson estimates at each of the first `steps` points of the base
 * trajectory integrated with step h by the same solver.
 */
inline std::vector<RichardsonEstimate>
richardson_series(const State3 &start, const LorenzParams &p, StepSize h,
                  std::size_t steps, const Solver &solver,
                  std::size_t threads = 1) {
    const Trajectory base = lorenz::trajectory(start, p, h, steps, solver);
    std::vector<RichardsonEstimate> out(steps);
    // Estimates are independent once the base path exists. VQLS steps are
    // cold-started here so each estimate depends only on its own point.
    Solver local = solver;
    local.warm_start = false;
    parallel_for(steps, threads, [&](std::size_t n) {
        out[n] = richardson(base.points[n], p, h, local);
    });
    return out;
}

inline double mean_total(const std::vector<RichardsonEstimate> &series) {
    if (series.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (const auto &e : series) {
        acc += e.total;
    }
    return acc / static_cast<double>(series.size());
}

struct ConditionSample {
    double h = 0.0;
    double kappa_a = 0.0;
    double kappa_dilation = 0.0;
};

inline std::vector<ConditionSample>
condition_sweep(const LorenzParams &p, const std::vector<double> &h_values,
                std::size_t threads = 1) {
    if (h_values.empty()) {
        throw InvalidArgument("condition sweep needs at least one h");
    }
    std::vector<ConditionSample> out(h_values.size());
    parallel_for(h_values.size(), threads, [&](std::size_t i) {
        const auto a = lorenz::build_nonlinear_system(p, h_values[i]);
        out[i] = {h_values[i], num::condition_number(a),
                  num::condition_number(num::hermitian_dilation(a))};
    });
    return out;
}

/// `count` points h_min + (h_max - h_min) * i / count, i = 1..count.
inline std::vector<double> uniform_grid(double h_min, double h_max,
                                        std::size_t count) {
    if (!(h_max > h_min) || count == 0) {
        throw InvalidArgument("grid needs h_max > h_min and count >= 1");
    }
    std::vector<double> out(count);
    for (std::size_t i = 1; i <= count; ++i) {
        out[i - 1] = h_min + (h_max - h_min) * static_cast<double>(i) /
                                 static_cast<double>(count);
    }
    return out;
}

} // namespace qlorenz::analysis
