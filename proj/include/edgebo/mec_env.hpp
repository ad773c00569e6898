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
#include <complex>
#include <iosfwd>

#include "edgebo/rng.hpp"
#include "edgebo/types.hpp"

namespace edgebo {

/// Static parameters of the simulated multi-user multi-server MEC system.
struct MecConfig {
    int num_wds = 2;               ///< M
    int num_bss = 2;               ///< N
    Eigen::MatrixXd distances;     ///< M x N, meters
    double rician_k = 4.0;         ///< LoS/NLoS power ratio, >= 0
    double eta = 0.2;              ///< temporal variation of the hidden state, [0,1]
    double bandwidth = 2e6;        ///< W, Hz
    double noise_power = 1e-10;    ///< sigma^2, watts
    double kappa_switch = 1e-26;   ///< switched capacitance xi
    double beta_delay = 0.5;
    double beta_energy = 0.5;
    double p_peak = 0.1;           ///< watts
    double f_peak = 1e8;           ///< hertz
    double antenna_gain = 4.11;    ///< A_d
    double carrier_hz = 915e6;     ///< phi
    double path_loss_exp = 3.0;    ///< PL
    double mean_fc = 26.0;         ///< edge CPU frequency mean, in 1e9 Hz
    double mean_workload = 125.0;  ///< task workload mean, in 1e6 cycles
    double mean_input = 125.0;     ///< task input size mean, in 1e4 bytes
    double obs_noise_std = 0.0;    ///< observation noise on the reward

    void validate() const;
    /// Free-space average channel gain |h-bar|^2 between WD m and BS n.
    double mean_gain(int m, int n) const;
    DecisionBounds bounds() const { return {num_wds, p_peak, f_peak}; }
};

/// Hidden per-slot system state.
struct MecState {
    Eigen::MatrixXcd channel;    ///< M x N coefficients, redrawn each slot
    Eigen::VectorXd edge_freq;   ///< f_c, Hz, length N
    Eigen::VectorXd workload;    ///< L, cycles, length M
    Eigen::VectorXd input_bits;  ///< I, bits, length M
    // AR(1) residuals in generation units, carried across slots.
    Eigen::VectorXd res_fc, res_workload, res_input;
    Eigen::MatrixXd los_phase;   ///< fixed per-pair LoS phase, M x N
};

MecState init_state(const MecConfig& cfg, Rng& rng);
MecState advance(const MecConfig& cfg, const MecState& state, Rng& rng);

struct EdcBreakdown {
    Eigen::VectorXd per_wd;  ///< energy-delay cost per WD
    double total;            ///< sum over WDs
    double reward;           ///< -total
};

/// Energy-delay cost of a feasible decision under the given state.
EdcBreakdown edc(const MecConfig& cfg, const MecState& state, const Decision& d);

/// Bandit feedback: the reward plus optional Gaussian observation noise.
double observe(const MecConfig& cfg, const MecState& state, const Decision& d, Rng& rng);

struct OracleResult {
    Decision decision;
    double value;  ///< reward of the optimal decision
};

/// Clairvoyant per-slot optimum: enumerates every categorical assignment;
/// local WDs use the closed-form frequency stationary point, offloading WDs
/// minimize transmission cost by grid-seeded golden-section search.
OracleResult oracle_optimum(const MecConfig& cfg, const MecState& state);

/// Raw context vector [I^1..I^M (bits), L^1..L^M (cycles)].
Eigen::VectorXd context_vector(const MecState& state);

/// Debug CSV export of state trajectories.
void write_state_csv_header(std::ostream& os, const MecConfig& cfg);
void write_state_csv_row(std::ostream& os, int slot, const MecState& state);

}  // namespace edgebo
