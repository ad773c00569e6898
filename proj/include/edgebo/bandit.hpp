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
#include <vector>

#include "edgebo/rng.hpp"

namespace edgebo {

/// Running min/max map from raw rewards to [0,1]. EXP3 needs bounded rewards
/// and the environment reward is an unbounded negative cost, so the range is
/// learned online: initialized from the first observation +- 10% and expanded
/// as new extremes arrive.
class RewardNormalizer {
public:
    /// Folds y into the running range and returns the normalized value.
    double normalize(double y);

    bool initialized() const { return initialized_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    bool initialized_ = false;
    double lo_ = 0.0;
    double hi_ = 0.0;
};

/// Multi-agent EXP3 with log-domain weights: one agent per wireless device,
/// each choosing among `num_arms` actions. All agents share one scalar reward
/// per round.
class Exp3Bank {
public:
    Exp3Bank(int num_agents, int num_arms, double gamma);

    int num_agents() const { return static_cast<int>(log_w_.rows()); }
    int num_arms() const { return static_cast<int>(log_w_.cols()); }
    double gamma() const { return gamma_; }

    /// Sampling distribution of one agent:
    /// q(k) = (1-gamma) softmax(log w)(k) + gamma / num_arms.
    Eigen::VectorXd action_probabilities(int agent) const;

    /// One independent draw per agent.
    std::vector<int> sample_actions(Rng& rng) const;

    /// Importance-weighted exponential update from the shared raw reward:
    /// the chosen arm k of each agent receives
    /// log w += gamma * (y_hat / q(k)) / num_arms.
    void update(const std::vector<int>& actions, double y_raw);

    const Eigen::MatrixXd& log_weights() const { return log_w_; }
    const RewardNormalizer& normalizer() const { return normalizer_; }

private:
    Eigen::MatrixXd log_w_;  // num_agents x num_arms
    double gamma_;
    RewardNormalizer normalizer_;
};

}  // namespace edgebo
