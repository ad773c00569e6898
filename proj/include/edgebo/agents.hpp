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
#include <memory>
#include <optional>
#include <string>

#include "edgebo/acquisition.hpp"
#include "edgebo/bandit.hpp"
#include "edgebo/gp.hpp"
#include "edgebo/mec_env.hpp"
#include "edgebo/rng.hpp"
#include "edgebo/types.hpp"

namespace edgebo {

/// Per-method hyperparameters; defaults follow the experiment protocol.
struct MethodParams {
    std::string name = "tvbo";  ///< tvbo | ctx-tvbo | ti-bo | mab | bco | oracle
    double rho = 0.048;         ///< temporal kernel level (ignored by ti-bo)
    double l_s = 0.2;           ///< contextual kernel lengthscale
    bool learn_ls = false;      ///< include l_s in the LML refit
    double lambda = 0.5;        ///< sum/product mixture weight
    double gamma = 0.1;         ///< EXP3 exploration coefficient
    double zeta = 2.0;          ///< UCB exploration coefficient
    int delta = 10;             ///< hyperparameter refit cadence, slots
    int sigma_exponent = 1;     ///< 1 = UCB on sigma, 2 = on sigma^2
    int restarts = 5;           ///< LML multistart count
    int warm_start = 0;         ///< initial slots with uniform-random x
    double bco_delta = 0.1;     ///< BCO smoothing radius (normalized coords)
    double bco_eta = 0.05;      ///< BCO step size (normalized coords)
    double init_l_x = 0.5;      ///< initial kernel lengthscale
    double init_omega = 1.0;    ///< initial categorical variance
    double init_sigma_o2 = 1e-2;

    void validate() const;
};

/// A per-slot decision maker. Agents see only the slot index, the declared
/// context, and the scalar reward of their own last decision; the hidden
/// system state is never exposed.
class Agent {
public:
    virtual ~Agent() = default;
    virtual std::string name() const = 0;
    virtual bool wants_context() const { return false; }
    /// Decision for `slot`; `raw_context` is present iff wants_context().
    virtual Decision propose(int slot, const std::optional<Eigen::VectorXd>& raw_context) = 0;
    /// Reward feedback for the decision returned by the last propose().
    virtual void observe(double reward) = 0;
};

/// Time-varying BO: EXP3 over the offloading decisions, GP-UCB over the
/// continuous box, periodic LML refits. With `contextual` the GP input is
/// augmented with the standardized task-characterization vector; ti-bo is
/// this agent with rho = 0 and no context.
class BoAgent : public Agent {
public:
    BoAgent(const MecConfig& mec, const MethodParams& params, bool contextual,
            std::uint64_t seed);

    std::string name() const override { return name_; }
    bool wants_context() const override { return contextual_; }
    Decision propose(int slot, const std::optional<Eigen::VectorXd>& raw_context) override;
    void observe(double reward) override;

    const GpModel& model() const { return model_; }
    const Exp3Bank& bank() const { return bank_; }

private:
    std::string name_;
    bool contextual_;
    DecisionBounds bounds_;
    Eigen::VectorXd x_peak_;
    MethodParams params_;
    acquisition::Options acq_opt_;
    GpModel model_;
    Exp3Bank bank_;
    Rng rng_exp3_, rng_acq_, rng_fit_;
    MixedPoint pending_;
    bool has_pending_ = false;
};

/// Builds the agent for a method name; "oracle" is handled by the harness
/// directly and has no Agent.
std::unique_ptr<Agent> make_agent(const MecConfig& mec, const MethodParams& params,
                                  std::uint64_t seed);

}  // namespace edgebo
