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
#include <string>
#include <vector>

#include "edgebo/kernels.hpp"
#include "edgebo/rng.hpp"
#include "edgebo/types.hpp"

namespace edgebo {

/// Exact Gaussian-process regression over MixedPoints with a cached Cholesky
/// factorization of K + sigma_o2 I. Observations are appended incrementally
/// (rank-1 factor extension); hyperparameters are refit by multi-started
/// gradient ascent on the log marginal likelihood.
///
/// Single writer; concurrent read-only posterior queries between updates are
/// safe.
class GpModel {
public:
    explicit GpModel(KernelConfig cfg);

    const KernelConfig& config() const { return cfg_; }
    /// Replaces the kernel configuration and refactorizes.
    void set_config(const KernelConfig& cfg);

    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<MixedPoint>& points() const { return points_; }
    const Eigen::VectorXd& targets() const { return y_; }

    struct Posterior {
        double mean;
        double variance;  ///< clamped at zero from below
    };

    /// Posterior mean/variance at z. Empty dataset returns the prior
    /// (0, kappa(z,z)).
    Posterior posterior(const MixedPoint& z) const;

    /// Appends one observation, extending the cached factorization.
    void add_observation(const MixedPoint& z, double y);

    double log_marginal_likelihood() const;

    /// Gradient of the log marginal likelihood with respect to the free
    /// log-hyperparameters (order of kernels::FreeParam).
    Eigen::VectorXd lml_gradient() const;

    /// Multi-started gradient ascent on the LML; `restarts` runs start from
    /// the current config plus (from the second run on) random log-space
    /// perturbations. Applies and returns the best config found. restarts = 0
    /// is a no-op. If no run produces a finite LML the previous config is
    /// kept and a warning is recorded in notes().
    KernelConfig fit_hyperparameters(int restarts, Rng& rng);

    /// Lower-triangular factor of K + (sigma_o2 + jitter) I.
    const Eigen::MatrixXd& cholesky_factor() const { return chol_; }
    const Eigen::VectorXd& alpha() const { return alpha_; }
    double jitter() const { return jitter_; }

    /// Numerical-stability log (jitter escalations, failed refits).
    const std::vector<std::string>& notes() const { return notes_; }

private:
    void check_mode(const MixedPoint& z) const;
    Eigen::VectorXd kernel_vector(const MixedPoint& z) const;
    /// Full factorization with escalating diagonal jitter 1e-10 .. 1e-6.
    void refactorize();
    void recompute_alpha();

    struct LmlEval {
        bool ok = false;
        double value = 0.0;
        Eigen::VectorXd gradient;
    };
    /// LML and gradient for an arbitrary candidate config over the current
    /// dataset (does not touch the cached factorization).
    LmlEval evaluate_candidate(const KernelConfig& cfg) const;

    std::vector<MixedPoint> points_;
    Eigen::VectorXd y_;
    KernelConfig cfg_;
    Eigen::MatrixXd chol_;  // lower triangular
    Eigen::VectorXd alpha_;
    double jitter_ = 0.0;
    std::vector<std::string> notes_;
};

}  // namespace edgebo
