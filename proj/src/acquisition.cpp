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

#include "edgebo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edgebo/kernels.hpp"

namespace edgebo::acquisition {

namespace {

constexpr double kSqrt5 = 2.2360679774997896;

Eigen::VectorXd to_normalized(const Eigen::VectorXd& x_physical, const Eigen::VectorXd& x_peak,
                              double box_epsilon) {
    if (x_physical.size() != x_peak.size())
        throw std::invalid_argument("acquisition: x dimension mismatch");
    Eigen::VectorXd xn = x_physical.cwiseQuotient(x_peak);
    for (int i = 0; i < xn.size(); ++i) {
        if (!(xn(i) > 0.0 && xn(i) <= 1.0 + 1e-12))
            throw std::invalid_argument("acquisition: x outside (0, x_peak]");
        xn(i) = std::min(std::max(xn(i), box_epsilon), 1.0);
    }
    return xn;
}

MixedPoint make_query(const std::vector<int>& cats, Eigen::VectorXd x_norm, int slot,
                      const std::optional<Eigen::VectorXd>& context) {
    MixedPoint z;
    z.cats = cats;
    z.x = std::move(x_norm);
    z.slot = slot;
    z.context = context;
    return z;
}

}  // namespace

UcbEvaluator::UcbEvaluator(const GpModel& model, const std::vector<int>& cats, int slot,
                           const std::optional<Eigen::VectorXd>& context, const Options& opt)
    : model_(model), zeta_(opt.zeta), sigma_exponent_(opt.sigma_exponent) {
    const KernelConfig& cfg = model.config();
    l_x_ = cfg.l_x;
    if (cfg.contextual != context.has_value())
        throw std::invalid_argument("acquisition: context mode mismatch");

    // kappa(z, z): kappa_x = 1 and kappa_temp = kappa_s = 1 at zero distance.
    const double kc_self = cfg.omega;
    prior_ = (1.0 - cfg.lambda) * (kc_self + 1.0) + cfg.lambda * kc_self;

    const int n = model.size();
    data_x_.resize(n, n > 0 ? model.points().front().x.size() : 0);
    base_.resize(n);
    scale_.resize(n);
    for (int i = 0; i < n; ++i) {
        const MixedPoint& p = model.points()[i];
        data_x_.row(i) = p.x.transpose();
        double outer = kernels::temporal(p.slot, slot, cfg.rho);
        if (cfg.contextual) outer *= kernels::matern52(*p.context, *context, cfg.l_s);
        const double kc = kernels::categorical(p.cats, cats, cfg.omega);
        // kappa(z_i, z) = outer * [(1-lambda)(kc + kx) + lambda kc kx]
        //              = base + scale * kx.
        base_(i) = outer * (1.0 - cfg.lambda) * kc;
        scale_(i) = outer * ((1.0 - cfg.lambda) + cfg.lambda * kc);
    }
    data_sqnorm_ = data_x_.rowwise().squaredNorm();
}

Eigen::VectorXd UcbEvaluator::batch(const Eigen::MatrixXd& q_cols) const {
    const int nq = static_cast<int>(q_cols.cols());
    const int n = static_cast<int>(data_x_.rows());
    if (n == 0) {
        const double sigma = std::sqrt(prior_);
        const double bonus =
            std::sqrt(zeta_) * (sigma_exponent_ == 2 ? prior_ : sigma);
        return Eigen::VectorXd::Constant(nq, bonus);
    }
    // Pairwise distances via ||a-b||^2 = ||a||^2 + ||b||^2 - 2 a.b.
    Eigen::MatrixXd d2 = (-2.0 * data_x_ * q_cols).colwise() + data_sqnorm_;
    d2.rowwise() += q_cols.colwise().squaredNorm();
    Eigen::MatrixXd k = (d2.cwiseMax(0.0).cwiseSqrt() * (kSqrt5 / l_x_)).eval();
    k = ((k.array() + 1.0 + k.array().square() / 3.0) * (-k.array()).exp()).matrix();
    k.array().colwise() *= scale_.array();
    k.array().colwise() += base_.array();

    const Eigen::VectorXd mean = k.transpose() * model_.alpha();
    const Eigen::MatrixXd v = model_.cholesky_factor().triangularView<Eigen::Lower>().solve(k);
    Eigen::VectorXd out(nq);
    for (int j = 0; j < nq; ++j) {
        const double var = std::max(0.0, prior_ - v.col(j).squaredNorm());
        const double bonus = std::sqrt(zeta_) * (sigma_exponent_ == 2 ? var : std::sqrt(var));
        out(j) = mean(j) + bonus;
    }
    return out;
}

double UcbEvaluator::operator()(const Eigen::VectorXd& x_norm) const { return batch(x_norm)(0); }

double ucb(const GpModel& model, const Eigen::VectorXd& x_physical, const std::vector<int>& cats,
           int slot, const std::optional<Eigen::VectorXd>& context, const Eigen::VectorXd& x_peak,
           const Options& opt) {
    if (!(opt.zeta >= 0.0)) throw std::invalid_argument("acquisition: zeta must be non-negative");
    const Eigen::VectorXd xn = to_normalized(x_physical, x_peak, opt.box_epsilon);
    const auto post = model.posterior(make_query(cats, xn, slot, context));
    const double sigma = std::sqrt(post.variance);
    return post.mean +
           std::sqrt(opt.zeta) * (opt.sigma_exponent == 2 ? post.variance : sigma);
}

Eigen::VectorXd maximize_ucb(const GpModel& model, const std::vector<int>& cats, int slot,
                             const std::optional<Eigen::VectorXd>& context,
                             const Eigen::VectorXd& x_peak, const Options& opt, Rng& rng) {
    if (!(opt.zeta >= 0.0)) throw std::invalid_argument("acquisition: zeta must be non-negative");
    const int dim = static_cast<int>(x_peak.size());
    const double lo = opt.box_epsilon;
    const UcbEvaluator eval(model, cats, slot, context, opt);

    std::vector<Eigen::VectorXd> starts;
    starts.reserve(opt.num_starts + 1);
    for (int s = 0; s < opt.num_starts; ++s) {
        Eigen::VectorXd x(dim);
        for (int i = 0; i < dim; ++i) x(i) = rng.uniform(lo, 1.0);
        starts.push_back(x);
    }
    if (model.size() > 0) {
        // Seed with the incumbent: the stored x of the best observation.
        int best_i = 0;
        model.targets().maxCoeff(&best_i);
        starts.push_back(model.points()[best_i].x.cwiseMax(lo).cwiseMin(1.0));
    }

    const double h = opt.gradient_step;
    Eigen::VectorXd best_x = starts.front();
    double best_f = -std::numeric_limits<double>::infinity();

    Eigen::MatrixXd stencil(dim, 2 * dim);
    for (const Eigen::VectorXd& start : starts) {
        Eigen::VectorXd x = start;
        double f = eval(x);
        for (int iter = 0; iter < opt.max_iterations; ++iter) {
            // Central differences with boundary-clamped stencil points.
            for (int i = 0; i < dim; ++i) {
                stencil.col(2 * i) = x;
                stencil.col(2 * i + 1) = x;
                stencil(i, 2 * i) = std::min(x(i) + h, 1.0);
                stencil(i, 2 * i + 1) = std::max(x(i) - h, lo);
            }
            const Eigen::VectorXd fs = eval.batch(stencil);
            Eigen::VectorXd grad(dim);
            for (int i = 0; i < dim; ++i) {
                const double spread = stencil(i, 2 * i) - stencil(i, 2 * i + 1);
                grad(i) = spread > 0.0 ? (fs(2 * i) - fs(2 * i + 1)) / spread : 0.0;
            }
            if (grad.lpNorm<Eigen::Infinity>() < 1e-7) break;
            // Backtracking from a fixed initial step.
            double step = 0.25;
            bool improved = false;
            while (step >= 1e-7) {
                const Eigen::VectorXd trial = (x + step * grad).cwiseMax(lo).cwiseMin(1.0);
                const double ft = eval(trial);
                if (ft > f) {
                    x = trial;
                    f = ft;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!improved) break;
        }
        if (f > best_f) {
            best_f = f;
            best_x = x;
        }
    }
    return best_x.cwiseProduct(x_peak);
}

std::pair<std::vector<int>, Eigen::VectorXd> propose(const GpModel& model, const Exp3Bank& bank,
                                                     int slot,
                                                     const std::optional<Eigen::VectorXd>& context,
                                                     const Eigen::VectorXd& x_peak,
                                                     const Options& opt, Rng& exp3_rng,
                                                     Rng& acq_rng) {
    std::vector<int> cats = bank.sample_actions(exp3_rng);
    Eigen::VectorXd x = maximize_ucb(model, cats, slot, context, x_peak, opt, acq_rng);
    return {std::move(cats), std::move(x)};
}

}  // namespace edgebo::acquisition
