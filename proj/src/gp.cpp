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

#include "edgebo/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace edgebo {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;
constexpr double kJitterStart = 1e-10;
constexpr double kJitterMax = 1e-6;

// Log-space box keeping the hyperparameter search numerically sane.
struct LogBounds {
    double lo, hi;
};
LogBounds bounds_for(int param) {
    switch (param) {
        case kernels::kLogLx:
        case kernels::kLogLs:
            return {std::log(1e-3), std::log(1e3)};
        case kernels::kLogOmega:
            return {std::log(1e-4), std::log(1e4)};
        case kernels::kLogSigmaO2:
        default:
            return {std::log(1e-8), std::log(1e2)};
    }
}

Eigen::VectorXd free_log_params(const KernelConfig& cfg) {
    Eigen::VectorXd theta(cfg.free_hyperparameter_count());
    theta(kernels::kLogLx) = std::log(cfg.l_x);
    theta(kernels::kLogOmega) = std::log(cfg.omega);
    theta(kernels::kLogSigmaO2) = std::log(std::max(cfg.sigma_o2, 1e-300));
    if (cfg.contextual) theta(kernels::kLogLs) = std::log(cfg.l_s);
    return theta;
}

KernelConfig with_log_params(KernelConfig cfg, const Eigen::VectorXd& theta) {
    cfg.l_x = std::exp(theta(kernels::kLogLx));
    cfg.omega = std::exp(theta(kernels::kLogOmega));
    cfg.sigma_o2 = std::exp(theta(kernels::kLogSigmaO2));
    if (cfg.contextual) cfg.l_s = std::exp(theta(kernels::kLogLs));
    return cfg;
}

Eigen::VectorXd clamp_to_bounds(Eigen::VectorXd theta) {
    for (int i = 0; i < theta.size(); ++i) {
        const auto b = bounds_for(i);
        theta(i) = std::clamp(theta(i), b.lo, b.hi);
    }
    return theta;
}

}  // namespace

GpModel::GpModel(KernelConfig cfg) : cfg_(cfg) {
    cfg_.validate();
    chol_.resize(0, 0);
    alpha_.resize(0);
}

void GpModel::check_mode(const MixedPoint& z) const {
    if (z.contextual() != cfg_.contextual)
        throw std::invalid_argument("GpModel: point context mode does not match model");
    if (!points_.empty()) {
        if (z.cats.size() != points_.front().cats.size() || z.x.size() != points_.front().x.size())
            throw std::invalid_argument("GpModel: point dimensions do not match dataset");
    }
}

Eigen::VectorXd GpModel::kernel_vector(const MixedPoint& z) const {
    Eigen::VectorXd k(size());
    for (int i = 0; i < size(); ++i) k(i) = kernels::full(points_[i], z, cfg_);
    return k;
}

GpModel::Posterior GpModel::posterior(const MixedPoint& z) const {
    check_mode(z);
    const double prior = kernels::full(z, z, cfg_);
    if (points_.empty()) return {0.0, prior};
    const Eigen::VectorXd k = kernel_vector(z);
    const double mean = k.dot(alpha_);
    const Eigen::VectorXd v = chol_.triangularView<Eigen::Lower>().solve(k);
    const double variance = std::max(0.0, prior - v.squaredNorm());
    return {mean, variance};
}

void GpModel::refactorize() {
    const int n = size();
    if (n == 0) {
        chol_.resize(0, 0);
        alpha_.resize(0);
        jitter_ = 0.0;
        return;
    }
    Eigen::MatrixXd K = kernels::gram(points_, cfg_);
    K.diagonal().array() += cfg_.sigma_o2;
    double jitter = 0.0;
    for (;;) {
        Eigen::MatrixXd A = K;
        if (jitter > 0.0) A.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(A);
        if (llt.info() == Eigen::Success) {
            chol_ = llt.matrixL();
            jitter_ = jitter;
            if (jitter > 0.0)
                notes_.push_back("jitter " + std::to_string(jitter) + " applied at n=" +
                                 std::to_string(n));
            recompute_alpha();
            return;
        }
        jitter = (jitter == 0.0) ? kJitterStart : jitter * 10.0;
        if (jitter > kJitterMax)
            throw std::runtime_error("GpModel: factorization failed after jitter escalation");
    }
}

void GpModel::recompute_alpha() {
    alpha_ = chol_.triangularView<Eigen::Lower>().solve(y_);
    chol_.triangularView<Eigen::Lower>().transpose().solveInPlace(alpha_);
}

void GpModel::add_observation(const MixedPoint& z, double y) {
    check_mode(z);
    if (!std::isfinite(y)) throw std::invalid_argument("GpModel: non-finite observation");
    if (!z.x.allFinite()) throw std::invalid_argument("GpModel: non-finite point");

    const int n = size();
    points_.push_back(z);
    y_.conservativeResize(n + 1);
    y_(n) = y;

    if (n == 0) {
        refactorize();
        return;
    }
    // Rank-1 extension of the lower factor; fall back to a full refactorize
    // when the Schur complement is not safely positive.
    Eigen::VectorXd k(n);
    for (int i = 0; i < n; ++i) k(i) = kernels::full(points_[i], z, cfg_);
    const double diag = kernels::full(z, z, cfg_) + cfg_.sigma_o2 + jitter_;
    const Eigen::VectorXd l12 = chol_.triangularView<Eigen::Lower>().solve(k);
    const double schur = diag - l12.squaredNorm();
    if (schur > 1e-12 * diag) {
        chol_.conservativeResize(n + 1, n + 1);
        chol_.row(n).head(n) = l12.transpose();
        chol_.col(n).head(n).setZero();
        chol_(n, n) = std::sqrt(schur);
        recompute_alpha();
    } else {
        refactorize();
    }
}

double GpModel::log_marginal_likelihood() const {
    if (points_.empty()) throw std::invalid_argument("GpModel: LML undefined on empty dataset");
    const double fit = y_.dot(alpha_);
    const double logdet = 2.0 * chol_.diagonal().array().log().sum();
    return -0.5 * fit - 0.5 * logdet - 0.5 * size() * kLog2Pi;
}

Eigen::VectorXd GpModel::lml_gradient() const {
    if (points_.empty()) throw std::invalid_argument("GpModel: gradient undefined on empty dataset");
    const auto grads = kernels::gram_gradients(points_, cfg_);
    const int n = size();
    // A^{-1} via triangular solves on the cached factor.
    Eigen::MatrixXd Ainv = Eigen::MatrixXd::Identity(n, n);
    chol_.triangularView<Eigen::Lower>().solveInPlace(Ainv);
    chol_.triangularView<Eigen::Lower>().transpose().solveInPlace(Ainv);
    Eigen::VectorXd g(grads.size());
    for (std::size_t j = 0; j < grads.size(); ++j) {
        const Eigen::MatrixXd& G = grads[j];
        const double data_term = alpha_.dot(G * alpha_);
        const double trace_term = Ainv.cwiseProduct(G).sum();
        g(static_cast<int>(j)) = 0.5 * (data_term - trace_term);
    }
    return g;
}

GpModel::LmlEval GpModel::evaluate_candidate(const KernelConfig& cfg) const {
    LmlEval out;
    const int n = size();
    Eigen::MatrixXd K = kernels::gram(points_, cfg);
    K.diagonal().array() += cfg.sigma_o2;
    Eigen::LLT<Eigen::MatrixXd> llt(K);
    double jitter = 0.0;
    while (llt.info() != Eigen::Success) {
        jitter = (jitter == 0.0) ? kJitterStart : jitter * 10.0;
        if (jitter > kJitterMax) return out;  // not factorizable
        Eigen::MatrixXd A = K;
        A.diagonal().array() += jitter;
        llt.compute(A);
    }
    const Eigen::MatrixXd L = llt.matrixL();
    Eigen::VectorXd alpha = L.triangularView<Eigen::Lower>().solve(y_);
    L.triangularView<Eigen::Lower>().transpose().solveInPlace(alpha);
    const double logdet = 2.0 * L.diagonal().array().log().sum();
    out.value = -0.5 * y_.dot(alpha) - 0.5 * logdet - 0.5 * n * kLog2Pi;
    if (!std::isfinite(out.value)) return out;

    const auto grads = kernels::gram_gradients(points_, cfg);
    Eigen::MatrixXd Ainv = Eigen::MatrixXd::Identity(n, n);
    L.triangularView<Eigen::Lower>().solveInPlace(Ainv);
    L.triangularView<Eigen::Lower>().transpose().solveInPlace(Ainv);
    out.gradient.resize(static_cast<int>(grads.size()));
    for (std::size_t j = 0; j < grads.size(); ++j)
        out.gradient(static_cast<int>(j)) =
            0.5 * (alpha.dot(grads[j] * alpha) - Ainv.cwiseProduct(grads[j]).sum());
    out.ok = out.gradient.allFinite();
    return out;
}

KernelConfig GpModel::fit_hyperparameters(int restarts, Rng& rng) {
    if (restarts <= 0) return cfg_;
    if (points_.empty()) throw std::invalid_argument("GpModel: cannot fit on empty dataset");

    const int np = cfg_.free_hyperparameter_count();
    Eigen::VectorXd mask = Eigen::VectorXd::Ones(np);
    if (cfg_.contextual && !cfg_.learn_ls) mask(kernels::kLogLs) = 0.0;

    const Eigen::VectorXd theta0 = free_log_params(cfg_);
    constexpr int kMaxIterations = 100;
    constexpr double kGradTol = 1e-5;
    constexpr double kInitialStep = 0.25;
    constexpr double kMinStep = 1e-7;
    constexpr double kPerturbStd = 0.5;

    double best_value = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_theta = theta0;
    bool found = false;

    for (int run = 0; run < restarts; ++run) {
        Eigen::VectorXd theta = theta0;
        if (run > 0) {
            for (int i = 0; i < np; ++i) {
                const double p = rng.normal(0.0, kPerturbStd);
                if (mask(i) != 0.0) theta(i) += p;
            }
            theta = clamp_to_bounds(theta);
        }
        LmlEval cur = evaluate_candidate(with_log_params(cfg_, theta));
        if (!cur.ok) continue;
        for (int iter = 0; iter < kMaxIterations; ++iter) {
            const Eigen::VectorXd dir = cur.gradient.cwiseProduct(mask);
            if (dir.lpNorm<Eigen::Infinity>() < kGradTol) break;
            double step = kInitialStep;
            bool improved = false;
            while (step >= kMinStep) {
                const Eigen::VectorXd trial = clamp_to_bounds(theta + step * dir);
                LmlEval cand = evaluate_candidate(with_log_params(cfg_, trial));
                if (cand.ok && cand.value > cur.value) {
                    theta = trial;
                    cur = cand;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!improved) break;
        }
        if (cur.ok && cur.value > best_value) {
            best_value = cur.value;
            best_theta = theta;
            found = true;
        }
    }

    if (!found) {
        notes_.push_back("hyperparameter fit failed at n=" + std::to_string(size()) +
                         "; keeping previous config");
        return cfg_;
    }
    cfg_ = with_log_params(cfg_, best_theta);
    refactorize();
    return cfg_;
}

void GpModel::set_config(const KernelConfig& cfg) {
    cfg.validate();
    if (!points_.empty() && cfg.contextual != cfg_.contextual)
        throw std::invalid_argument("GpModel: cannot switch context mode with data present");
    cfg_ = cfg;
    refactorize();
}

}  // namespace edgebo
