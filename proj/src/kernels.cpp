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

#include "edgebo/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace edgebo::kernels {

namespace {

constexpr double kSqrt5 = 2.2360679774997896;

void check_same_mode(const MixedPoint& z, const MixedPoint& zprime, const KernelConfig& cfg) {
    if (z.contextual() != cfg.contextual || zprime.contextual() != cfg.contextual)
        throw std::invalid_argument("kernel: context mode of points does not match config");
}

}  // namespace

double matern52_radial(double r, double lengthscale) {
    if (!(lengthscale > 0.0)) throw std::invalid_argument("matern52: lengthscale must be positive");
    if (!std::isfinite(r) || r < 0.0) throw std::invalid_argument("matern52: invalid distance");
    const double z = kSqrt5 * r / lengthscale;
    return (1.0 + z + z * z / 3.0) * std::exp(-z);
}

double matern52_radial_grad_log_l(double r, double lengthscale) {
    // d/d log l of (1 + z + z^2/3) e^{-z} with z = sqrt(5) r / l equals
    // (z^2/3)(1 + z) e^{-z}.
    const double z = kSqrt5 * r / lengthscale;
    return (z * z / 3.0) * (1.0 + z) * std::exp(-z);
}

double matern52(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double lengthscale) {
    if (a.size() != b.size()) throw std::invalid_argument("matern52: vector lengths differ");
    if (!a.allFinite() || !b.allFinite()) throw std::invalid_argument("matern52: non-finite input");
    return matern52_radial((a - b).norm(), lengthscale);
}

double categorical(const std::vector<int>& c, const std::vector<int>& cprime, double omega) {
    if (c.size() != cprime.size())
        throw std::invalid_argument("categorical: vector lengths differ");
    if (c.empty()) throw std::invalid_argument("categorical: empty categorical vector");
    int matches = 0;
    for (std::size_t m = 0; m < c.size(); ++m) matches += (c[m] == cprime[m]) ? 1 : 0;
    return omega * static_cast<double>(matches) / static_cast<double>(c.size());
}

double mixed(const MixedPoint& z, const MixedPoint& zprime, const KernelConfig& cfg) {
    const double kc = categorical(z.cats, zprime.cats, cfg.omega);
    const double kx = matern52(z.x, zprime.x, cfg.l_x);
    return (1.0 - cfg.lambda) * (kc + kx) + cfg.lambda * kc * kx;
}

double temporal(int t, int tprime, double rho) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("temporal: rho must lie in [0,1]");
    if (t < 1 || tprime < 1) throw std::invalid_argument("temporal: slot indices must be >= 1");
    if (t == tprime) return 1.0;
    return std::pow(1.0 - rho, std::abs(t - tprime) / 2.0);
}

double full(const MixedPoint& z, const MixedPoint& zprime, const KernelConfig& cfg) {
    check_same_mode(z, zprime, cfg);
    double k = temporal(z.slot, zprime.slot, cfg.rho) * mixed(z, zprime, cfg);
    if (cfg.contextual) k *= matern52(*z.context, *zprime.context, cfg.l_s);
    return k;
}

Eigen::MatrixXd gram(std::span<const MixedPoint> points, const KernelConfig& cfg) {
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    if (n == 0) throw std::invalid_argument("gram: empty point list");
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            K(i, j) = full(points[i], points[j], cfg);
            K(j, i) = K(i, j);
        }
    }
    return K;
}

std::vector<Eigen::MatrixXd> gram_gradients(std::span<const MixedPoint> points,
                                            const KernelConfig& cfg) {
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    if (n == 0) throw std::invalid_argument("gram_gradients: empty point list");
    const int np = cfg.free_hyperparameter_count();
    std::vector<Eigen::MatrixXd> grads(np, Eigen::MatrixXd::Zero(n, n));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const MixedPoint& a = points[i];
            const MixedPoint& b = points[j];
            check_same_mode(a, b, cfg);
            const double kt = temporal(a.slot, b.slot, cfg.rho);
            const double kc = categorical(a.cats, b.cats, cfg.omega);
            const double rx = (a.x - b.x).norm();
            const double kx = matern52_radial(rx, cfg.l_x);
            double ks = 1.0, dks = 0.0, rs = 0.0;
            if (cfg.contextual) {
                rs = (*a.context - *b.context).norm();
                ks = matern52_radial(rs, cfg.l_s);
                dks = matern52_radial_grad_log_l(rs, cfg.l_s);
            }
            const double outer = kt * ks;
            // d kappa_{x,c} / d kappa_x and / d kappa_c.
            const double dk_dkx = (1.0 - cfg.lambda) + cfg.lambda * kc;
            const double dk_dkc = (1.0 - cfg.lambda) + cfg.lambda * kx;
            const double kxc = (1.0 - cfg.lambda) * (kc + kx) + cfg.lambda * kc * kx;

            const double g_lx = outer * dk_dkx * matern52_radial_grad_log_l(rx, cfg.l_x);
            const double g_omega = outer * dk_dkc * kc;  // d kappa_c / d log omega = kappa_c
            grads[kLogLx](i, j) = grads[kLogLx](j, i) = g_lx;
            grads[kLogOmega](i, j) = grads[kLogOmega](j, i) = g_omega;
            if (cfg.contextual) {
                const double g_ls = kt * kxc * dks;
                grads[kLogLs](i, j) = grads[kLogLs](j, i) = g_ls;
            }
        }
    }
    // Noise enters only on the diagonal of K + sigma_o2 I.
    grads[kLogSigmaO2] = cfg.sigma_o2 * Eigen::MatrixXd::Identity(n, n);
    return grads;
}

}  // namespace edgebo::kernels
