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

#include <set>
#include <stdexcept>

#include "edgebo/harness.hpp"
#include "edgebo/minitoml.hpp"

namespace edgebo {

namespace {

const std::set<std::string> kKnownKeys = {
    // [mec]
    "mec.M", "mec.N", "mec.distances", "mec.K_rician", "mec.eta", "mec.W", "mec.sigma2",
    "mec.xi", "mec.beta_d", "mec.beta_e", "mec.P_peak", "mec.f_peak", "mec.A_d", "mec.phi",
    "mec.PL", "mec.mean_fc", "mec.mean_L", "mec.mean_I", "mec.obs_noise_std",
    // [method]
    "method.name", "method.rho", "method.ctx_rho", "method.l_s", "method.learn_ls",
    "method.lambda", "method.gamma", "method.zeta", "method.delta", "method.sigma_exponent",
    "method.restarts", "method.warm_start", "method.bco_delta", "method.bco_eta",
    "method.init_l_x", "method.init_omega", "method.init_sigma_o2",
    // [run]
    "run.slots", "run.reps", "run.seed",
};

template <typename T, typename F>
void maybe(const minitoml::Table& t, const std::string& key, T& target, F get) {
    auto it = t.find(key);
    if (it != t.end()) target = get(it->second);
}

void set_double(const minitoml::Table& t, const std::string& key, double& target) {
    maybe(t, key, target, [](const minitoml::Value& v) { return v.as_double(); });
}

void set_int(const minitoml::Table& t, const std::string& key, int& target) {
    maybe(t, key, target, [](const minitoml::Value& v) { return static_cast<int>(v.as_int()); });
}

void set_bool(const minitoml::Table& t, const std::string& key, bool& target) {
    maybe(t, key, target, [](const minitoml::Value& v) { return v.as_bool(); });
}

}  // namespace

ExperimentSpec load_spec(const std::string& path) {
    const minitoml::Table t = minitoml::parse_file(path);
    for (const auto& [key, value] : t)
        if (!kKnownKeys.count(key))
            throw std::runtime_error("config: unknown key '" + key + "' in " + path);
    for (const std::string& required : {"mec.M", "mec.N", "mec.distances", "method.name"})
        if (!t.count(required))
            throw std::runtime_error("config: missing required key '" + required + "' in " + path);

    ExperimentSpec spec;
    spec.mec.num_wds = static_cast<int>(t.at("mec.M").as_int());
    spec.mec.num_bss = static_cast<int>(t.at("mec.N").as_int());
    const std::vector<double> d = t.at("mec.distances").as_double_array();
    if (static_cast<int>(d.size()) != spec.mec.num_wds * spec.mec.num_bss)
        throw std::runtime_error("config: mec.distances must have M*N entries (row-major)");
    spec.mec.distances.resize(spec.mec.num_wds, spec.mec.num_bss);
    for (int m = 0; m < spec.mec.num_wds; ++m)
        for (int n = 0; n < spec.mec.num_bss; ++n)
            spec.mec.distances(m, n) = d[m * spec.mec.num_bss + n];
    set_double(t, "mec.K_rician", spec.mec.rician_k);
    set_double(t, "mec.eta", spec.mec.eta);
    set_double(t, "mec.W", spec.mec.bandwidth);
    set_double(t, "mec.sigma2", spec.mec.noise_power);
    set_double(t, "mec.xi", spec.mec.kappa_switch);
    set_double(t, "mec.beta_d", spec.mec.beta_delay);
    set_double(t, "mec.beta_e", spec.mec.beta_energy);
    set_double(t, "mec.P_peak", spec.mec.p_peak);
    set_double(t, "mec.f_peak", spec.mec.f_peak);
    set_double(t, "mec.A_d", spec.mec.antenna_gain);
    set_double(t, "mec.phi", spec.mec.carrier_hz);
    set_double(t, "mec.PL", spec.mec.path_loss_exp);
    set_double(t, "mec.mean_fc", spec.mec.mean_fc);
    set_double(t, "mec.mean_L", spec.mec.mean_workload);
    set_double(t, "mec.mean_I", spec.mec.mean_input);
    set_double(t, "mec.obs_noise_std", spec.mec.obs_noise_std);

    spec.method.name = t.at("method.name").as_string();
    set_double(t, "method.rho", spec.method.rho);
    // Contextual runs use their own (smaller) temporal level when provided.
    if (spec.method.name == "ctx-tvbo" && t.count("method.ctx_rho"))
        spec.method.rho = t.at("method.ctx_rho").as_double();
    set_double(t, "method.l_s", spec.method.l_s);
    set_bool(t, "method.learn_ls", spec.method.learn_ls);
    set_double(t, "method.lambda", spec.method.lambda);
    set_double(t, "method.gamma", spec.method.gamma);
    set_double(t, "method.zeta", spec.method.zeta);
    set_int(t, "method.delta", spec.method.delta);
    set_int(t, "method.sigma_exponent", spec.method.sigma_exponent);
    set_int(t, "method.restarts", spec.method.restarts);
    set_int(t, "method.warm_start", spec.method.warm_start);
    set_double(t, "method.bco_delta", spec.method.bco_delta);
    set_double(t, "method.bco_eta", spec.method.bco_eta);
    set_double(t, "method.init_l_x", spec.method.init_l_x);
    set_double(t, "method.init_omega", spec.method.init_omega);
    set_double(t, "method.init_sigma_o2", spec.method.init_sigma_o2);

    set_int(t, "run.slots", spec.slots);
    set_int(t, "run.reps", spec.reps);
    if (t.count("run.seed")) spec.base_seed = static_cast<std::uint64_t>(t.at("run.seed").as_int());

    spec.validate();
    return spec;
}

}  // namespace edgebo
