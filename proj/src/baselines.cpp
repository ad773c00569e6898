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

#include "edgebo/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace edgebo {

Eigen::VectorXd MabAgent::level_grid(double peak) {
    Eigen::VectorXd g(kLevels);
    for (int i = 0; i < kLevels; ++i) g(i) = peak * (i + 1) / kLevels;
    return g;
}

MabAgent::MabAgent(const MecConfig& mec, const MethodParams& params, std::uint64_t seed)
    : bounds_(mec.bounds()),
      offload_(mec.num_wds, mec.num_bss + 1, params.gamma),
      power_(mec.num_wds, kLevels, params.gamma),
      freq_(mec.num_wds, kLevels, params.gamma),
      rng_offload_(substream_seed(seed, Stream::exp3)),
      rng_power_(substream_seed(seed, Stream::mab_power)),
      rng_freq_(substream_seed(seed, Stream::mab_freq)) {}

Decision MabAgent::propose(int /*slot*/, const std::optional<Eigen::VectorXd>& /*raw_context*/) {
    last_offload_ = offload_.sample_actions(rng_offload_);
    last_power_ = power_.sample_actions(rng_power_);
    last_freq_ = freq_.sample_actions(rng_freq_);
    has_pending_ = true;

    const Eigen::VectorXd p_grid = level_grid(bounds_.p_peak);
    const Eigen::VectorXd f_grid = level_grid(bounds_.f_peak);
    Decision d;
    d.offload = last_offload_;
    d.power.resize(bounds_.num_wds);
    d.freq.resize(bounds_.num_wds);
    for (int m = 0; m < bounds_.num_wds; ++m) {
        d.power(m) = p_grid(last_power_[m]);
        d.freq(m) = f_grid(last_freq_[m]);
    }
    return d;
}

void MabAgent::observe(double reward) {
    if (!has_pending_) throw std::logic_error("MabAgent: observe without a pending decision");
    offload_.update(last_offload_, reward);
    power_.update(last_power_, reward);
    freq_.update(last_freq_, reward);
    has_pending_ = false;
}

BcoAgent::BcoAgent(const MecConfig& mec, const MethodParams& params, std::uint64_t seed)
    : bounds_(mec.bounds()),
      delta_(params.bco_delta),
      eta_(params.bco_eta),
      bank_(mec.num_wds, mec.num_bss + 1, params.gamma),
      rng_exp3_(substream_seed(seed, Stream::exp3)),
      rng_sphere_(substream_seed(seed, Stream::bco)) {
    x_hat_ = Eigen::VectorXd::Constant(2 * mec.num_wds, 0.5);
}

Decision BcoAgent::propose(int /*slot*/, const std::optional<Eigen::VectorXd>& /*raw_context*/) {
    last_offload_ = bank_.sample_actions(rng_exp3_);

    const int dim = static_cast<int>(x_hat_.size());
    Eigen::VectorXd u(dim);
    double norm = 0.0;
    do {
        for (int i = 0; i < dim; ++i) u(i) = rng_sphere_.normal();
        norm = u.norm();
    } while (norm == 0.0);
    last_direction_ = u / norm;
    has_pending_ = true;

    const Eigen::VectorXd played =
        (x_hat_ + delta_ * last_direction_).cwiseMax(1e-6).cwiseMin(1.0);
    Decision d;
    d.offload = last_offload_;
    std::tie(d.power, d.freq) = bounds_.denormalize(played);
    return d;
}

void BcoAgent::observe(double reward) {
    if (!has_pending_) throw std::logic_error("BcoAgent: observe without a pending decision");
    bank_.update(last_offload_, reward);
    const double y_hat = normalizer_.normalize(reward);
    const double dim = static_cast<double>(x_hat_.size());
    const Eigen::VectorXd grad_estimate = (dim / delta_) * y_hat * last_direction_;
    x_hat_ = (x_hat_ + eta_ * grad_estimate).cwiseMax(1e-6).cwiseMin(1.0);
    has_pending_ = false;
}

}  // namespace edgebo
