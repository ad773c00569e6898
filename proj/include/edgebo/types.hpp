// Copyright 2026 The edgebo Authors.
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

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <vector>

namespace edgebo {

/// One query point of the surrogate model: categorical offloading vector,
/// continuous resource vector (normalized to (0,1] by the peak values),
/// slot index, and an optional standardized context vector.
struct MixedPoint {
    std::vector<int> cats;                    ///< length M, entries in {0,...,N}
    Eigen::VectorXd x;                        ///< length 2M, entries in (0,1]
    int slot = 1;                             ///< >= 1
    std::optional<Eigen::VectorXd> context;   ///< length 2M when present

    bool contextual() const { return context.has_value(); }
};

/// All kernel hyperparameters. l_x, omega, sigma_o2 (and optionally l_s) are
/// learned by marginal-likelihood ascent in log space; lambda, rho and nu are
/// held fixed per experiment.
struct KernelConfig {
    double nu = 2.5;          ///< Matern smoothness; only 5/2 is implemented
    double l_x = 0.5;         ///< lengthscale over the continuous inputs
    double omega = 1.0;       ///< categorical kernel variance
    double lambda = 0.5;      ///< sum/product mixture weight, in [0,1]
    double rho = 0.0;         ///< temporal dynamics level, in [0,1]
    double l_s = 0.2;         ///< contextual lengthscale
    double sigma_o2 = 1e-2;   ///< observation noise variance
    bool contextual = false;  ///< whether points carry context vectors
    bool learn_ls = false;    ///< include log l_s in hyperparameter fitting

    int free_hyperparameter_count() const { return contextual ? 4 : 3; }

    void validate() const {
        if (nu != 2.5) throw std::invalid_argument("KernelConfig: only nu = 5/2 is supported");
        if (!(l_x > 0.0)) throw std::invalid_argument("KernelConfig: l_x must be positive");
        if (!(omega > 0.0)) throw std::invalid_argument("KernelConfig: omega must be positive");
        if (!(lambda >= 0.0 && lambda <= 1.0))
            throw std::invalid_argument("KernelConfig: lambda must lie in [0,1]");
        if (!(rho >= 0.0 && rho <= 1.0))
            throw std::invalid_argument("KernelConfig: rho must lie in [0,1]");
        if (!(l_s > 0.0)) throw std::invalid_argument("KernelConfig: l_s must be positive");
        if (!(sigma_o2 >= 0.0))
            throw std::invalid_argument("KernelConfig: sigma_o2 must be non-negative");
    }
};

/// One deployed decision in physical units.
struct Decision {
    std::vector<int> offload;  ///< c, length M; 0 = local, n = offload to BS n
    Eigen::VectorXd power;     ///< transmit power, watts, length M
    Eigen::VectorXd freq;      ///< local CPU frequency, hertz, length M
};

/// Box bounds of the continuous decision variables.
struct DecisionBounds {
    int num_wds = 0;
    double p_peak = 0.1;
    double f_peak = 1e8;

    /// Peak vector [P_peak 1_M ; f_peak 1_M].
    Eigen::VectorXd x_peak() const {
        Eigen::VectorXd v(2 * num_wds);
        v.head(num_wds).setConstant(p_peak);
        v.tail(num_wds).setConstant(f_peak);
        return v;
    }

    /// Physical (p, f) -> normalized x in (0,1].
    Eigen::VectorXd normalize(const Eigen::VectorXd& power, const Eigen::VectorXd& freq) const {
        Eigen::VectorXd v(2 * num_wds);
        v.head(num_wds) = power / p_peak;
        v.tail(num_wds) = freq / f_peak;
        return v;
    }

    /// Normalized x -> physical (p, f).
    std::pair<Eigen::VectorXd, Eigen::VectorXd> denormalize(const Eigen::VectorXd& x) const {
        return {x.head(num_wds) * p_peak, x.tail(num_wds) * f_peak};
    }
};

/// Raw context is [I^1..I^M (bits), L^1..L^M (cycles)]. The standardization is
/// a fixed affine map anchored to the state-generation means and noise scales
/// so the contextual kernel stays stationary across repetitions.
namespace context_scaling {
inline constexpr double input_bits_mean = 1250e3 * 8.0;  // 1250 KBytes
inline constexpr double input_bits_scale = 3e4 * 8.0;
inline constexpr double workload_mean = 125e6;  // 125 Mcycles
inline constexpr double workload_scale = 3e6;
}  // namespace context_scaling

inline Eigen::VectorXd standardize_context(const Eigen::VectorXd& raw, int num_wds) {
    if (raw.size() != 2 * num_wds)
        throw std::invalid_argument("standardize_context: raw context must have length 2M");
    Eigen::VectorXd s(2 * num_wds);
    s.head(num_wds) =
        (raw.head(num_wds).array() - context_scaling::input_bits_mean) / context_scaling::input_bits_scale;
    s.tail(num_wds) =
        (raw.tail(num_wds).array() - context_scaling::workload_mean) / context_scaling::workload_scale;
    return s;
}

}  // namespace edgebo
