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
#include <utility>
#include <vector>

#include "edgebo/bandit.hpp"
#include "edgebo/gp.hpp"
#include "edgebo/rng.hpp"
#include "edgebo/types.hpp"

namespace edgebo::acquisition {

struct Options {
    double zeta = 2.0;            ///< exploration coefficient
    int sigma_exponent = 1;       ///< 1: mean + sqrt(zeta) sigma; 2: ... sigma^2
    int num_starts = 10;          ///< random multistarts (plus best observed x)
    int max_iterations = 200;     ///< projected gradient ascent cap per start
    double gradient_step = 1e-4;  ///< central-difference step, normalized coords
    double box_epsilon = 1e-6;    ///< open lower bound of the normalized box
};

/// Upper confidence bound at physical x given the categorical decision, slot
/// and optional (standardized) context. Throws on infeasible x.
double ucb(const GpModel& model, const Eigen::VectorXd& x_physical, const std::vector<int>& cats,
           int slot, const std::optional<Eigen::VectorXd>& context, const Eigen::VectorXd& x_peak,
           const Options& opt);

/// Multi-start projected gradient ascent of the UCB over the normalized box
/// [box_epsilon, 1]^{2M}; returns the best point found, in physical units.
Eigen::VectorXd maximize_ucb(const GpModel& model, const std::vector<int>& cats, int slot,
                             const std::optional<Eigen::VectorXd>& context,
                             const Eigen::VectorXd& x_peak, const Options& opt, Rng& rng);

/// One acquisition step: draw the categorical decision from the EXP3 bank,
/// then maximize the UCB over the continuous box given that decision.
std::pair<std::vector<int>, Eigen::VectorXd> propose(const GpModel& model, const Exp3Bank& bank,
                                                     int slot,
                                                     const std::optional<Eigen::VectorXd>& context,
                                                     const Eigen::VectorXd& x_peak,
                                                     const Options& opt, Rng& exp3_rng,
                                                     Rng& acq_rng);

/// Caches everything about a UCB query that does not depend on x, so that the
/// inner optimization loop only pays for the continuous-kernel column and two
/// triangular solves per batch of query points.
class UcbEvaluator {
public:
    UcbEvaluator(const GpModel& model, const std::vector<int>& cats, int slot,
                 const std::optional<Eigen::VectorXd>& context, const Options& opt);

    /// UCB at one normalized point.
    double operator()(const Eigen::VectorXd& x_norm) const;

    /// UCB for a batch of normalized points (columns of Q).
    Eigen::VectorXd batch(const Eigen::MatrixXd& q_cols) const;

    double prior_variance() const { return prior_; }

private:
    const GpModel& model_;
    Eigen::MatrixXd data_x_;       // n x 2M stored continuous inputs
    Eigen::VectorXd data_sqnorm_;  // rowwise squared norms of data_x_
    Eigen::VectorXd base_;         // per-point factor on (1-lambda) kappa_c
    Eigen::VectorXd scale_;        // per-point factor multiplying kappa_x
    double prior_ = 0.0;           // kappa(z, z) of the query (x-independent)
    double zeta_ = 2.0;
    int sigma_exponent_ = 1;
    double l_x_ = 1.0;
};

}  // namespace edgebo::acquisition
