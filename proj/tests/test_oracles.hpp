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
//
// Test-only reference implementations, kept independent of the library's
// cached-factorization code paths: the posterior and LML are evaluated with
// explicit dense inverses, gradients with central finite differences.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "edgebo/kernels.hpp"
#include "edgebo/rng.hpp"
#include "edgebo/types.hpp"

namespace edgebo::testing {

/// Random valid MixedPoint for the given problem shape.
inline MixedPoint random_point(Rng& rng, int num_wds, int num_bss, int max_slot,
                               bool contextual) {
    MixedPoint z;
    z.cats.resize(num_wds);
    for (int m = 0; m < num_wds; ++m)
        z.cats[m] = static_cast<int>(rng.uniform_index(num_bss + 1));
    z.x.resize(2 * num_wds);
    for (int i = 0; i < 2 * num_wds; ++i) z.x(i) = rng.uniform(1e-3, 1.0);
    z.slot = 1 + static_cast<int>(rng.uniform_index(max_slot));
    if (contextual) {
        Eigen::VectorXd s(2 * num_wds);
        for (int i = 0; i < 2 * num_wds; ++i) s(i) = rng.normal();
        z.context = s;
    }
    return z;
}

inline std::vector<MixedPoint> random_points(Rng& rng, int count, int num_wds, int num_bss,
                                             int max_slot, bool contextual) {
    std::vector<MixedPoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i)
        pts.push_back(random_point(rng, num_wds, num_bss, max_slot, contextual));
    return pts;
}

/// Posterior mean/variance via the closed forms with an explicit dense
/// inverse of K + sigma_o2 I.
inline std::pair<double, double> dense_posterior(const std::vector<MixedPoint>& points,
                                                 const Eigen::VectorXd& y,
                                                 const KernelConfig& cfg, const MixedPoint& z) {
    const int n = static_cast<int>(points.size());
    Eigen::MatrixXd A = kernels::gram(points, cfg);
    A.diagonal().array() += cfg.sigma_o2;
    const Eigen::MatrixXd Ainv = A.inverse();
    Eigen::VectorXd k(n);
    for (int i = 0; i < n; ++i) k(i) = kernels::full(points[i], z, cfg);
    const double mean = k.dot(Ainv * y);
    const double variance = kernels::full(z, z, cfg) - k.dot(Ainv * k);
    return {mean, variance};
}

/// LML via explicit dense inverse and log-determinant.
inline double dense_lml(const std::vector<MixedPoint>& points, const Eigen::VectorXd& y,
                        const KernelConfig& cfg) {
    const int n = static_cast<int>(points.size());
    Eigen::MatrixXd A = kernels::gram(points, cfg);
    A.diagonal().array() += cfg.sigma_o2;
    const double logdet = std::log(A.determinant());
    return -0.5 * y.dot(A.inverse() * y) - 0.5 * logdet -
           0.5 * n * std::log(2.0 * M_PI);
}

/// Applies exp(step) scaling to one free hyperparameter (log-space step).
inline KernelConfig nudge_log_param(KernelConfig cfg, int param, double step) {
    switch (param) {
        case kernels::kLogLx: cfg.l_x *= std::exp(step); break;
        case kernels::kLogOmega: cfg.omega *= std::exp(step); break;
        case kernels::kLogSigmaO2: cfg.sigma_o2 *= std::exp(step); break;
        case kernels::kLogLs: cfg.l_s *= std::exp(step); break;
        default: throw std::invalid_argument("nudge_log_param: bad index");
    }
    return cfg;
}

}  // namespace edgebo::testing
