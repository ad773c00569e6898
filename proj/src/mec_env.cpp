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

#include "edgebo/mec_env.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace edgebo {

namespace {

constexpr double kResidualStd = 1.7320508075688772;  // sqrt(3): innovations are N(0, 3)
constexpr int kMaxRedraws = 10000;

/// Innovation draw with a positivity guard: redrawn if it would push
/// `mean + value` non-positive.
double guarded_residual(double prev_scaled, double sqrt_eta, double mean, Rng& rng) {
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        const double v = prev_scaled + sqrt_eta * rng.normal(0.0, kResidualStd);
        if (mean + v > 0.0) return v;
    }
    throw std::runtime_error("mec_env: residual redraw limit exceeded");
}

void draw_channels(const MecConfig& cfg, MecState& s, Rng& rng) {
    const double k = cfg.rician_k;
    const double los_w = std::sqrt(k / (k + 1.0));
    const double nlos_w = std::sqrt(1.0 / (k + 1.0));
    for (int m = 0; m < cfg.num_wds; ++m) {
        for (int n = 0; n < cfg.num_bss; ++n) {
            const double amp = std::sqrt(cfg.mean_gain(m, n));
            const std::complex<double> los =
                amp * std::polar(1.0, s.los_phase(m, n));
            // Unit-power complex NLoS scatter, anchored to the same average gain.
            const std::complex<double> nlos =
                amp * std::complex<double>(rng.normal(), rng.normal()) / std::sqrt(2.0);
            s.channel(m, n) = los_w * los + nlos_w * nlos;
        }
    }
}

void assemble(const MecConfig& cfg, MecState& s) {
    s.edge_freq = (cfg.mean_fc + s.res_fc.array()) * 1e9;
    s.workload = (cfg.mean_workload + s.res_workload.array()) * 1e6;
    s.input_bits = (cfg.mean_input + s.res_input.array()) * 1e4 * 8.0;
}

void check_feasible(const MecConfig& cfg, const Decision& d) {
    if (static_cast<int>(d.offload.size()) != cfg.num_wds || d.power.size() != cfg.num_wds ||
        d.freq.size() != cfg.num_wds)
        throw std::invalid_argument("mec_env: decision dimensions do not match config");
    for (int m = 0; m < cfg.num_wds; ++m) {
        if (d.offload[m] < 0 || d.offload[m] > cfg.num_bss)
            throw std::invalid_argument("mec_env: offloading decision out of range");
        if (!(d.power(m) > 0.0 && d.power(m) <= cfg.p_peak * (1.0 + 1e-12)))
            throw std::invalid_argument("mec_env: transmit power outside (0, P_peak]");
        if (!(d.freq(m) > 0.0 && d.freq(m) <= cfg.f_peak * (1.0 + 1e-12)))
            throw std::invalid_argument("mec_env: CPU frequency outside (0, f_peak]");
    }
}

double uplink_rate(const MecConfig& cfg, double power, double gain) {
    return cfg.bandwidth * std::log2(1.0 + power * gain / cfg.noise_power);
}

/// Transmission part of the offloading cost, beta_d I/R + beta_e p I/R.
double transmit_cost(const MecConfig& cfg, double input_bits, double power, double gain) {
    const double tau_u = input_bits / uplink_rate(cfg, power, gain);
    return (cfg.beta_delay + cfg.beta_energy * power) * tau_u;
}

}  // namespace

void MecConfig::validate() const {
    if (num_wds < 1 || num_bss < 1)
        throw std::invalid_argument("MecConfig: need at least one WD and one BS");
    if (distances.rows() != num_wds || distances.cols() != num_bss)
        throw std::invalid_argument("MecConfig: distance matrix must be M x N");
    if ((distances.array() <= 0.0).any())
        throw std::invalid_argument("MecConfig: distances must be positive");
    if (!(rician_k >= 0.0)) throw std::invalid_argument("MecConfig: Rician factor must be >= 0");
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("MecConfig: eta must lie in [0,1]");
    const double positives[] = {bandwidth, noise_power, kappa_switch, beta_delay,  beta_energy,
                                p_peak,    f_peak,      antenna_gain, carrier_hz,  path_loss_exp,
                                mean_fc,   mean_workload, mean_input};
    for (double v : positives)
        if (!(v > 0.0)) throw std::invalid_argument("MecConfig: physical quantities must be positive");
    if (!(obs_noise_std >= 0.0))
        throw std::invalid_argument("MecConfig: obs_noise_std must be non-negative");
}

double MecConfig::mean_gain(int m, int n) const {
    const double c = 3e8;
    return antenna_gain *
           std::pow(c / (4.0 * std::numbers::pi * carrier_hz * distances(m, n)), path_loss_exp);
}

MecState init_state(const MecConfig& cfg, Rng& rng) {
    cfg.validate();
    MecState s;
    s.channel.resize(cfg.num_wds, cfg.num_bss);
    s.los_phase.resize(cfg.num_wds, cfg.num_bss);
    for (int m = 0; m < cfg.num_wds; ++m)
        for (int n = 0; n < cfg.num_bss; ++n)
            s.los_phase(m, n) = rng.uniform(0.0, 2.0 * std::numbers::pi);

    s.res_fc.resize(cfg.num_bss);
    s.res_workload.resize(cfg.num_wds);
    s.res_input.resize(cfg.num_wds);
    for (int n = 0; n < cfg.num_bss; ++n)
        s.res_fc(n) = guarded_residual(0.0, 1.0, cfg.mean_fc, rng);
    for (int m = 0; m < cfg.num_wds; ++m)
        s.res_workload(m) = guarded_residual(0.0, 1.0, cfg.mean_workload, rng);
    for (int m = 0; m < cfg.num_wds; ++m)
        s.res_input(m) = guarded_residual(0.0, 1.0, cfg.mean_input, rng);

    draw_channels(cfg, s, rng);
    assemble(cfg, s);
    return s;
}

MecState advance(const MecConfig& cfg, const MecState& state, Rng& rng) {
    MecState s = state;
    const double keep = std::sqrt(1.0 - cfg.eta);
    const double inject = std::sqrt(cfg.eta);
    for (int n = 0; n < cfg.num_bss; ++n)
        s.res_fc(n) = guarded_residual(keep * state.res_fc(n), inject, cfg.mean_fc, rng);
    for (int m = 0; m < cfg.num_wds; ++m)
        s.res_workload(m) =
            guarded_residual(keep * state.res_workload(m), inject, cfg.mean_workload, rng);
    for (int m = 0; m < cfg.num_wds; ++m)
        s.res_input(m) = guarded_residual(keep * state.res_input(m), inject, cfg.mean_input, rng);
    draw_channels(cfg, s, rng);
    assemble(cfg, s);
    return s;
}

EdcBreakdown edc(const MecConfig& cfg, const MecState& state, const Decision& d) {
    check_feasible(cfg, d);
    // Edge VM partition counts per BS.
    Eigen::VectorXi share = Eigen::VectorXi::Zero(cfg.num_bss);
    for (int m = 0; m < cfg.num_wds; ++m)
        if (d.offload[m] > 0) share(d.offload[m] - 1) += 1;

    EdcBreakdown out;
    out.per_wd.resize(cfg.num_wds);
    for (int m = 0; m < cfg.num_wds; ++m) {
        double delay, energy;
        if (d.offload[m] == 0) {
            delay = state.workload(m) / d.freq(m);
            energy = cfg.kappa_switch * state.workload(m) * d.freq(m) * d.freq(m);
        } else {
            const int n = d.offload[m] - 1;
            const double gain = std::norm(state.channel(m, n));
            const double tau_u = state.input_bits(m) / uplink_rate(cfg, d.power(m), gain);
            const double tau_c = state.workload(m) * share(n) / state.edge_freq(n);
            delay = tau_u + tau_c;
            energy = d.power(m) * tau_u;
        }
        out.per_wd(m) = cfg.beta_delay * delay + cfg.beta_energy * energy;
    }
    out.total = out.per_wd.sum();
    out.reward = -out.total;
    return out;
}

double observe(const MecConfig& cfg, const MecState& state, const Decision& d, Rng& rng) {
    const double reward = edc(cfg, state, d).reward;
    if (cfg.obs_noise_std > 0.0) return reward + rng.normal(0.0, cfg.obs_noise_std);
    return reward;
}

OracleResult oracle_optimum(const MecConfig& cfg, const MecState& state) {
    const int m_count = cfg.num_wds;
    const int arm_count = cfg.num_bss + 1;

    // Optimal local frequency: stationary point of beta_d L/f + beta_e xi L f^2
    // (the workload cancels in the argmin), clipped to the box.
    const double f_star = std::min(
        cfg.f_peak, std::cbrt(cfg.beta_delay / (2.0 * cfg.beta_energy * cfg.kappa_switch)));
    Eigen::VectorXd local_cost(m_count);
    for (int m = 0; m < m_count; ++m)
        local_cost(m) = cfg.beta_delay * state.workload(m) / f_star +
                        cfg.beta_energy * cfg.kappa_switch * state.workload(m) * f_star * f_star;

    // Per (m, n): transmission cost minimized over p, independent of the rest
    // of the assignment (dedicated spectrum per WD).
    constexpr int kGrid = 200;
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    Eigen::MatrixXd tx_cost(m_count, cfg.num_bss);
    Eigen::MatrixXd tx_power(m_count, cfg.num_bss);
    for (int m = 0; m < m_count; ++m) {
        for (int n = 0; n < cfg.num_bss; ++n) {
            const double gain = std::norm(state.channel(m, n));
            const double bits = state.input_bits(m);
            int best_k = 1;
            double best_c = std::numeric_limits<double>::infinity();
            for (int k = 1; k <= kGrid; ++k) {
                const double p = cfg.p_peak * k / kGrid;
                const double c = transmit_cost(cfg, bits, p, gain);
                if (c < best_c) {
                    best_c = c;
                    best_k = k;
                }
            }
            const double h = cfg.p_peak / kGrid;
            double lo = std::max(cfg.p_peak * best_k / kGrid - h, cfg.p_peak * 1e-9);
            double hi = std::min(cfg.p_peak * best_k / kGrid + h, cfg.p_peak);
            double x1 = hi - golden * (hi - lo);
            double x2 = lo + golden * (hi - lo);
            double f1 = transmit_cost(cfg, bits, x1, gain);
            double f2 = transmit_cost(cfg, bits, x2, gain);
            for (int it = 0; it < 80; ++it) {
                if (f1 < f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - golden * (hi - lo);
                    f1 = transmit_cost(cfg, bits, x1, gain);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + golden * (hi - lo);
                    f2 = transmit_cost(cfg, bits, x2, gain);
                }
            }
            const double p_opt = (f1 < f2) ? x1 : x2;
            const double c_opt = std::min(std::min(f1, f2), best_c);
            tx_power(m, n) = (c_opt == best_c) ? cfg.p_peak * best_k / kGrid : p_opt;
            tx_cost(m, n) = c_opt;
        }
    }

    // Lexicographic enumeration of all (N+1)^M assignments; strict improvement
    // keeps the lowest assignment on ties.
    std::vector<int> assignment(m_count, 0);
    std::vector<int> best_assignment(m_count, 0);
    double best_total = std::numeric_limits<double>::infinity();
    Eigen::VectorXi share(cfg.num_bss);
    for (;;) {
        share.setZero();
        for (int m = 0; m < m_count; ++m)
            if (assignment[m] > 0) share(assignment[m] - 1) += 1;
        double total = 0.0;
        for (int m = 0; m < m_count; ++m) {
            if (assignment[m] == 0) {
                total += local_cost(m);
            } else {
                const int n = assignment[m] - 1;
                total += tx_cost(m, n) +
                         cfg.beta_delay * state.workload(m) * share(n) / state.edge_freq(n);
            }
        }
        if (total < best_total) {
            best_total = total;
            best_assignment = assignment;
        }
        // Odometer with the last WD fastest keeps the enumeration lexicographic.
        int pos = m_count - 1;
        while (pos >= 0 && assignment[pos] == arm_count - 1) assignment[pos--] = 0;
        if (pos < 0) break;
        ++assignment[pos];
    }

    OracleResult out;
    out.decision.offload = best_assignment;
    out.decision.power.resize(m_count);
    out.decision.freq.resize(m_count);
    for (int m = 0; m < m_count; ++m) {
        if (best_assignment[m] == 0) {
            out.decision.freq(m) = f_star;
            out.decision.power(m) = cfg.p_peak;  // inert for local computing
        } else {
            out.decision.power(m) = tx_power(m, best_assignment[m] - 1);
            out.decision.freq(m) = cfg.f_peak;  // inert for offloading
        }
    }
    out.value = -best_total;
    return out;
}

Eigen::VectorXd context_vector(const MecState& state) {
    Eigen::VectorXd s(state.input_bits.size() + state.workload.size());
    s << state.input_bits, state.workload;
    return s;
}

void write_state_csv_header(std::ostream& os, const MecConfig& cfg) {
    os << "slot";
    for (int m = 0; m < cfg.num_wds; ++m) os << ",L_" << (m + 1);
    for (int m = 0; m < cfg.num_wds; ++m) os << ",I_" << (m + 1);
    for (int n = 0; n < cfg.num_bss; ++n) os << ",f_c_" << (n + 1);
    for (int m = 0; m < cfg.num_wds; ++m)
        for (int n = 0; n < cfg.num_bss; ++n) os << ",gain_" << (m + 1) << "_" << (n + 1);
    os << "\n";
}

void write_state_csv_row(std::ostream& os, int slot, const MecState& state) {
    os << slot;
    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        os << ',' << buf;
    };
    for (int m = 0; m < state.workload.size(); ++m) put(state.workload(m));
    for (int m = 0; m < state.input_bits.size(); ++m) put(state.input_bits(m));
    for (int n = 0; n < state.edge_freq.size(); ++n) put(state.edge_freq(n));
    for (int m = 0; m < state.channel.rows(); ++m)
        for (int n = 0; n < state.channel.cols(); ++n) put(std::norm(state.channel(m, n)));
    os << "\n";
}

}  // namespace edgebo
