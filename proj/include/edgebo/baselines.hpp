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

#include "edgebo/agents.hpp"

namespace edgebo {

/// Discretized multi-agent EXP3: per WD, three independent EXP3 agents pick
/// the offloading target, a 5-level transmit power and a 5-level CPU
/// frequency; all are updated from the shared scalar reward.
class MabAgent : public Agent {
public:
    static constexpr int kLevels = 5;

    MabAgent(const MecConfig& mec, const MethodParams& params, std::uint64_t seed);

    std::string name() const override { return "mab"; }
    Decision propose(int slot, const std::optional<Eigen::VectorXd>& raw_context) override;
    void observe(double reward) override;

    const Exp3Bank& offload_bank() const { return offload_; }
    const Exp3Bank& power_bank() const { return power_; }
    const Exp3Bank& freq_bank() const { return freq_; }

    /// Upper-inclusive uniform grid {1/k, 2/k, ..., 1} * peak.
    static Eigen::VectorXd level_grid(double peak);

private:
    DecisionBounds bounds_;
    Exp3Bank offload_, power_, freq_;
    Rng rng_offload_, rng_power_, rng_freq_;
    std::vector<int> last_offload_, last_power_, last_freq_;
    bool has_pending_ = false;
};

/// Bandit convex optimization over the continuous variables with a one-point
/// spherical gradient estimate; the offloading decision still comes from
/// EXP3. The iterate and all steps live in normalized coordinates.
class BcoAgent : public Agent {
public:
    BcoAgent(const MecConfig& mec, const MethodParams& params, std::uint64_t seed);

    std::string name() const override { return "bco"; }
    Decision propose(int slot, const std::optional<Eigen::VectorXd>& raw_context) override;
    void observe(double reward) override;

    const Eigen::VectorXd& iterate() const { return x_hat_; }

private:
    DecisionBounds bounds_;
    double delta_, eta_;
    Exp3Bank bank_;
    Rng rng_exp3_, rng_sphere_;
    RewardNormalizer normalizer_;
    Eigen::VectorXd x_hat_;
    Eigen::VectorXd last_direction_;
    std::vector<int> last_offload_;
    bool has_pending_ = false;
};

}  // namespace edgebo
