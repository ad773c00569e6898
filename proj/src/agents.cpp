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

#include "edgebo/agents.hpp"

#include <stdexcept>

#include "edgebo/baselines.hpp"

namespace edgebo {

namespace {

KernelConfig make_kernel_config(const MethodParams& p, bool contextual, double rho) {
    KernelConfig cfg;
    cfg.l_x = p.init_l_x;
    cfg.omega = p.init_omega;
    cfg.sigma_o2 = p.init_sigma_o2;
    cfg.lambda = p.lambda;
    cfg.rho = rho;
    cfg.l_s = p.l_s;
    cfg.contextual = contextual;
    cfg.learn_ls = contextual && p.learn_ls;
    cfg.validate();
    return cfg;
}

}  // namespace

void MethodParams::validate() const {
    if (name != "tvbo" && name != "ctx-tvbo" && name != "ti-bo" && name != "mab" &&
        name != "bco" && name != "oracle")
        throw std::invalid_argument("MethodParams: unknown method '" + name + "'");
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("MethodParams: rho in [0,1]");
    if (!(l_s > 0.0)) throw std::invalid_argument("MethodParams: l_s must be positive");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("MethodParams: lambda in [0,1]");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("MethodParams: gamma in (0,1]");
    if (!(zeta >= 0.0)) throw std::invalid_argument("MethodParams: zeta must be non-negative");
    if (delta < 1) throw std::invalid_argument("MethodParams: delta must be >= 1");
    if (sigma_exponent != 1 && sigma_exponent != 2)
        throw std::invalid_argument("MethodParams: sigma_exponent must be 1 or 2");
    if (restarts < 0) throw std::invalid_argument("MethodParams: restarts must be >= 0");
    if (warm_start < 0) throw std::invalid_argument("MethodParams: warm_start must be >= 0");
    if (!(bco_delta > 0.0) || !(bco_eta > 0.0))
        throw std::invalid_argument("MethodParams: BCO parameters must be positive");
    if (!(init_l_x > 0.0) || !(init_omega > 0.0) || !(init_sigma_o2 > 0.0))
        throw std::invalid_argument("MethodParams: initial kernel parameters must be positive");
}

BoAgent::BoAgent(const MecConfig& mec, const MethodParams& params, bool contextual,
                 std::uint64_t seed)
    : name_(params.name),
      contextual_(contextual),
      bounds_(mec.bounds()),
      x_peak_(bounds_.x_peak()),
      params_(params),
      model_(make_kernel_config(params, contextual, params.name == "ti-bo" ? 0.0 : params.rho)),
      bank_(mec.num_wds, mec.num_bss + 1, params.gamma),
      rng_exp3_(substream_seed(seed, Stream::exp3)),
      rng_acq_(substream_seed(seed, Stream::acquisition)),
      rng_fit_(substream_seed(seed, Stream::hyperfit)) {
    params_.validate();
    acq_opt_.zeta = params.zeta;
    acq_opt_.sigma_exponent = params.sigma_exponent;
}

Decision BoAgent::propose(int slot, const std::optional<Eigen::VectorXd>& raw_context) {
    if (contextual_ != raw_context.has_value())
        throw std::invalid_argument("BoAgent: context presence does not match method");
    std::optional<Eigen::VectorXd> std_context;
    if (contextual_) std_context = standardize_context(*raw_context, bounds_.num_wds);

    const int data_size = model_.size();
    // Refit when t mod delta = 1, with t the dataset size; delta = 1 means
    // every slot.
    const bool refit_due =
        data_size >= 1 && (params_.delta == 1 || data_size % params_.delta == 1);
    if (refit_due && params_.restarts > 0) model_.fit_hyperparameters(params_.restarts, rng_fit_);

    std::vector<int> cats;
    Eigen::VectorXd x_phys;
    if (data_size < params_.warm_start) {
        cats = bank_.sample_actions(rng_exp3_);
        Eigen::VectorXd xn(x_peak_.size());
        for (int i = 0; i < xn.size(); ++i) xn(i) = rng_acq_.uniform(acq_opt_.box_epsilon, 1.0);
        x_phys = xn.cwiseProduct(x_peak_);
    } else {
        std::tie(cats, x_phys) = acquisition::propose(model_, bank_, slot, std_context, x_peak_,
                                                      acq_opt_, rng_exp3_, rng_acq_);
    }

    pending_ = MixedPoint{cats, x_phys.cwiseQuotient(x_peak_), slot, std_context};
    has_pending_ = true;

    Decision d;
    d.offload = cats;
    std::tie(d.power, d.freq) = bounds_.denormalize(pending_.x);
    return d;
}

void BoAgent::observe(double reward) {
    if (!has_pending_) throw std::logic_error("BoAgent: observe without a pending decision");
    model_.add_observation(pending_, reward);
    bank_.update(pending_.cats, reward);
    has_pending_ = false;
}

std::unique_ptr<Agent> make_agent(const MecConfig& mec, const MethodParams& params,
                                  std::uint64_t seed) {
    params.validate();
    if (params.name == "tvbo") return std::make_unique<BoAgent>(mec, params, false, seed);
    if (params.name == "ctx-tvbo") return std::make_unique<BoAgent>(mec, params, true, seed);
    if (params.name == "ti-bo") return std::make_unique<BoAgent>(mec, params, false, seed);
    if (params.name == "mab") return std::make_unique<MabAgent>(mec, params, seed);
    if (params.name == "bco") return std::make_unique<BcoAgent>(mec, params, seed);
    throw std::invalid_argument("make_agent: no agent for method '" + params.name + "'");
}

}  // namespace edgebo
