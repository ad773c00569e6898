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
#include <span>
#include <vector>

#include "edgebo/types.hpp"

namespace edgebo::kernels {

/// Matern-5/2 over continuous vectors:
///   (1 + sqrt(5) r/l + 5 r^2 / (3 l^2)) exp(-sqrt(5) r/l),  r = ||a - b||.
double matern52(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double lengthscale);

/// Matern-5/2 as a function of the distance r.
double matern52_radial(double r, double lengthscale);

/// d matern52(r) / d log(lengthscale).
double matern52_radial_grad_log_l(double r, double lengthscale);

/// Categorical overlap kernel (omega / M) * sum_m 1(c_m == c'_m).
double categorical(const std::vector<int>& c, const std::vector<int>& cprime, double omega);

/// Mixture of sum and product compositions of the categorical and continuous
/// kernels: (1-lambda)(kappa_c + kappa_x) + lambda kappa_c kappa_x.
double mixed(const MixedPoint& z, const MixedPoint& zprime, const KernelConfig& cfg);

/// Temporal discount (1-rho)^{|t-t'|/2}; equals 1 when t == t'.
double temporal(int t, int tprime, double rho);

/// The overall covariance: kappa_temp * kappa_{x,c}, additionally multiplied
/// by a Matern-5/2 over standardized contexts in contextual mode.
double full(const MixedPoint& z, const MixedPoint& zprime, const KernelConfig& cfg);

/// Gram matrix K with K(i,j) = full(points[i], points[j]).
Eigen::MatrixXd gram(std::span<const MixedPoint> points, const KernelConfig& cfg);

/// Index of each free hyperparameter in gradient vectors/matrix lists.
/// Order: log l_x, log omega, log sigma_o2 (, log l_s in contextual mode).
enum FreeParam : int { kLogLx = 0, kLogOmega = 1, kLogSigmaO2 = 2, kLogLs = 3 };

/// Analytic d(K + sigma_o2 I)/d theta for each free hyperparameter.
std::vector<Eigen::MatrixXd> gram_gradients(std::span<const MixedPoint> points,
                                            const KernelConfig& cfg);

}  // namespace edgebo::kernels
