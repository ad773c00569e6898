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

#include "edgebo/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgebo {

double RewardNormalizer::normalize(double y) {
    if (!std::isfinite(y)) throw std::invalid_argument("RewardNormalizer: non-finite reward");
    if (!initialized_) {
        const double margin = std::max(0.1 * std::abs(y), 1e-12);
        lo_ = y - margin;
        hi_ = y + margin;
        initialized_ = true;
    }
    lo_ = std::min(lo_, y);
    hi_ = std::max(hi_, y);
    return std::clamp((y - lo_) / (hi_ - lo_), 0.0, 1.0);
}

Exp3Bank::Exp3Bank(int num_agents, int num_arms, double gamma) : gamma_(gamma) {
    if (num_agents < 1 || num_arms < 2)
        throw std::invalid_argument("Exp3Bank: need at least one agent and two arms");
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("Exp3Bank: gamma must lie in (0,1]");
    log_w_ = Eigen::MatrixXd::Zero(num_agents, num_arms);  // w = 1
}

Eigen::VectorXd Exp3Bank::action_probabilities(int agent) const {
    if (agent < 0 || agent >= num_agents())
        throw std::invalid_argument("Exp3Bank: agent index out of range");
    const Eigen::VectorXd row = log_w_.row(agent);
    // Stable softmax: shift by the max before exponentiation.
    const Eigen::VectorXd w = (row.array() - row.maxCoeff()).exp();
    return (1.0 - gamma_) * w / w.sum() +
           Eigen::VectorXd::Constant(num_arms(), gamma_ / num_arms());
}

std::vector<int> Exp3Bank::sample_actions(Rng& rng) const {
    std::vector<int> actions(num_agents());
    for (int m = 0; m < num_agents(); ++m)
        actions[m] = rng.categorical(action_probabilities(m));
    return actions;
}

void Exp3Bank::update(const std::vector<int>& actions, double y_raw) {
    if (static_cast<int>(actions.size()) != num_agents())
        throw std::invalid_argument("Exp3Bank: action vector length mismatch");
    for (int m = 0; m < num_agents(); ++m)
        if (actions[m] < 0 || actions[m] >= num_arms())
            throw std::invalid_argument("Exp3Bank: action out of range");
    const double y_hat = normalizer_.normalize(y_raw);
    for (int m = 0; m < num_agents(); ++m) {
        const Eigen::VectorXd q = action_probabilities(m);
        const int k = actions[m];
        const double estimate = y_hat / q(k);  // zero for unchosen arms
        log_w_(m, k) += gamma_ * estimate / num_arms();
    }
}

}  // namespace edgebo
