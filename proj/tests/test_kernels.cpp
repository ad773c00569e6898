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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "edgebo/kernels.hpp"
#include "test_oracles.hpp"

using namespace edgebo;
using namespace edgebo::kernels;
using edgebo::testing::random_point;
using edgebo::testing::random_points;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<int>(v.size()));
    int i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

KernelConfig basic_config(bool contextual = false) {
    KernelConfig cfg;
    cfg.l_x = 0.7;
    cfg.omega = 1.3;
    cfg.lambda = 0.5;
    cfg.rho = 0.048;
    cfg.l_s = 0.4;
    cfg.sigma_o2 = 1e-3;
    cfg.contextual = contextual;
    return cfg;
}

}  // namespace

TEST_CASE("matern52 spot values") {
    const auto a = vec({0.3, 0.4});
    CHECK(matern52(a, a, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    // unit distance at unit lengthscale
    CHECK(matern52(vec({0.0}), vec({1.0}), 1.0) ==
          doctest::Approx(0.5239941088318203).epsilon(1e-12));
    // asymptotic decay
    CHECK(matern52(vec({0.0}), vec({100.0}), 1.0) < 1e-10);
}

TEST_CASE("matern52 rejects bad input") {
    CHECK_THROWS_AS(matern52(vec({0.0}), vec({1.0}), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(matern52(vec({0.0}), vec({1.0}), -1.0), std::invalid_argument);
    CHECK_THROWS_AS(matern52(vec({0.0, 0.0}), vec({1.0}), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(matern52(vec({std::nan("")}), vec({1.0}), 1.0), std::invalid_argument);
}

TEST_CASE("categorical kernel") {
    CHECK(categorical({1, 2}, {1, 2}, 2.0) == doctest::Approx(2.0));
    CHECK(categorical({1, 0}, {2, 2}, 2.0) == doctest::Approx(0.0));
    CHECK(categorical({1, 0}, {1, 2}, 2.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(categorical({1}, {1, 2}, 1.0), std::invalid_argument);
}

TEST_CASE("temporal kernel") {
    CHECK(temporal(3, 17, 0.0) == doctest::Approx(1.0));
    CHECK(temporal(1, 2, 1.0) == doctest::Approx(0.0));
    CHECK(temporal(5, 5, 1.0) == doctest::Approx(1.0));
    CHECK(temporal(4, 6, 0.048) == doctest::Approx(0.952).epsilon(1e-14));
    CHECK_THROWS_AS(temporal(1, 2, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(temporal(0, 2, 0.1), std::invalid_argument);
}

TEST_CASE("temporal kernel monotone in rho and in |t - t'|") {
    double prev = 1.0;
    for (double rho : {0.0, 0.1, 0.3, 0.7, 1.0}) {
        const double v = temporal(1, 4, rho);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
    prev = 1.0;
    for (int dt = 0; dt <= 10; ++dt) {
        const double v = temporal(1, 1 + dt, 0.2);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("mixed kernel compositions") {
    KernelConfig cfg = basic_config();
    MixedPoint a, b;
    a.cats = {1, 0};
    b.cats = {1, 2};
    a.x = vec({0.2, 0.3, 0.5, 0.9});
    b.x = vec({0.4, 0.1, 0.6, 0.8});
    a.slot = b.slot = 1;

    const double kc = categorical(a.cats, b.cats, cfg.omega);
    const double kx = matern52(a.x, b.x, cfg.l_x);

    cfg.lambda = 0.0;  // pure sum
    CHECK(mixed(a, b, cfg) == doctest::Approx(kc + kx).epsilon(1e-14));

    cfg.lambda = 1.0;  // pure product vanishes on disjoint categories
    b.cats = {2, 2};
    CHECK(mixed(a, b, cfg) == doctest::Approx(0.0));

    // lambda = 0.5 with kc = 1 (via omega = 2, one match of two)
    cfg.lambda = 0.5;
    cfg.omega = 2.0;
    cfg.l_x = 1.0;
    b.cats = {1, 2};
    Eigen::VectorXd unit = a.x;
    unit(0) += 1.0;
    b.x = unit;  // distance exactly 1
    const double kx1 = 0.5239941088318203;
    CHECK(mixed(a, b, cfg) == doctest::Approx(0.5 * (1.0 + kx1) + 0.5 * kx1).epsilon(1e-12));
}

TEST_CASE("full kernel at coincident points and zero temporal factor") {
    KernelConfig cfg = basic_config();
    cfg.lambda = 0.5;
    cfg.omega = 1.0;
    Rng rng(11);
    MixedPoint z = random_point(rng, 2, 2, 10, false);
    CHECK(full(z, z, cfg) == doctest::Approx(1.5).epsilon(1e-14));

    MixedPoint z2 = z;
    z2.slot = z.slot + 3;
    cfg.rho = 1.0;
    CHECK(full(z, z2, cfg) == doctest::Approx(0.0));
}

TEST_CASE("contextual kernel reduces to non-contextual at equal contexts") {
    KernelConfig ctx_cfg = basic_config(true);
    KernelConfig plain_cfg = ctx_cfg;
    plain_cfg.contextual = false;

    Rng rng(5);
    MixedPoint a = random_point(rng, 2, 2, 10, true);
    MixedPoint b = random_point(rng, 2, 2, 10, true);
    b.context = a.context;

    MixedPoint ap = a, bp = b;
    ap.context.reset();
    bp.context.reset();
    CHECK(full(a, b, ctx_cfg) == doctest::Approx(full(ap, bp, plain_cfg)).epsilon(1e-14));
}

TEST_CASE("full kernel context-mode mismatch is an error") {
    KernelConfig cfg = basic_config(false);
    Rng rng(7);
    MixedPoint a = random_point(rng, 2, 2, 10, false);
    MixedPoint b = random_point(rng, 2, 2, 10, true);
    CHECK_THROWS_AS(full(a, b, cfg), std::invalid_argument);
    cfg.contextual = true;
    CHECK_THROWS_AS(full(b, b, KernelConfig(basic_config(false))), std::invalid_argument);
}

TEST_CASE("full kernel symmetry and boundedness on random pairs") {
    for (bool contextual : {false, true}) {
        KernelConfig cfg = basic_config(contextual);
        Rng rng(contextual ? 23 : 29);
        for (int trial = 0; trial < 200; ++trial) {
            MixedPoint a = random_point(rng, 3, 2, 30, contextual);
            MixedPoint b = random_point(rng, 3, 2, 30, contextual);
            const double kab = full(a, b, cfg);
            const double kba = full(b, a, cfg);
            const double kaa = full(a, a, cfg);
            CHECK(kab == doctest::Approx(kba).epsilon(1e-14));
            CHECK(kab >= 0.0);
            CHECK(kab <= kaa + 1e-12);
            CHECK(kaa == doctest::Approx(full(b, b, cfg)).epsilon(1e-12));  // stationary diagonal
        }
    }
}

TEST_CASE("gram basics") {
    KernelConfig cfg = basic_config();
    Rng rng(3);
    auto pts = random_points(rng, 1, 2, 2, 10, false);
    Eigen::MatrixXd K = gram(pts, cfg);
    CHECK(K.rows() == 1);
    CHECK(K(0, 0) == doctest::Approx(full(pts[0], pts[0], cfg)));

    // duplicated point: rank-1 2x2 matrix
    pts.push_back(pts[0]);
    K = gram(pts, cfg);
    CHECK(K.determinant() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("gram is positive semidefinite on random point sets") {
    for (bool contextual : {false, true}) {
        KernelConfig cfg = basic_config(contextual);
        Rng rng(contextual ? 101 : 103);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 5 + static_cast<int>(rng.uniform_index(46));  // up to 50
            auto pts = random_points(rng, n, 2, 2, 40, contextual);
            const Eigen::MatrixXd K = gram(pts, cfg);
            CHECK((K - K.transpose()).cwiseAbs().maxCoeff() < 1e-12);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
            CHECK(es.eigenvalues().minCoeff() >= -1e-8);
        }
    }
}

TEST_CASE("gram gradients match finite differences") {
    for (bool contextual : {false, true}) {
        KernelConfig cfg = basic_config(contextual);
        Rng rng(contextual ? 41 : 43);
        const double h = 1e-5;
        for (int trial = 0; trial < 3; ++trial) {
            auto pts = random_points(rng, 10, 2, 2, 20, contextual);
            const auto grads = gram_gradients(pts, cfg);
            REQUIRE(static_cast<int>(grads.size()) == cfg.free_hyperparameter_count());
            for (int p = 0; p < cfg.free_hyperparameter_count(); ++p) {
                auto noisy_gram = [&](const KernelConfig& c) {
                    Eigen::MatrixXd K = gram(pts, c);
                    K.diagonal().array() += c.sigma_o2;
                    return K;
                };
                const Eigen::MatrixXd up = noisy_gram(testing::nudge_log_param(cfg, p, h));
                const Eigen::MatrixXd dn = noisy_gram(testing::nudge_log_param(cfg, p, -h));
                const Eigen::MatrixXd fd = (up - dn) / (2.0 * h);
                const double scale = std::max(1e-12, fd.cwiseAbs().maxCoeff());
                CHECK((grads[p] - fd).cwiseAbs().maxCoeff() / scale < 1e-4);
                CHECK((grads[p] - grads[p].transpose()).cwiseAbs().maxCoeff() < 1e-14);
            }
        }
    }
}

TEST_CASE("noise gradient is sigma_o2 on the diagonal") {
    KernelConfig cfg = basic_config();
    Rng rng(77);
    auto pts = random_points(rng, 6, 2, 2, 10, false);
    const auto grads = gram_gradients(pts, cfg);
    const Eigen::MatrixXd expected =
        cfg.sigma_o2 * Eigen::MatrixXd::Identity(pts.size(), pts.size());
    CHECK((grads[kLogSigmaO2] - expected).cwiseAbs().maxCoeff() < 1e-15);
}
