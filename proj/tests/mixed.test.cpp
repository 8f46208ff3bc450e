// Copyright 2026 The qest Authors
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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "qest/bound.hpp"
#include "qest/errors.hpp"
#include "qest/mixed.hpp"
#include "test_helpers.hpp"

using namespace qest;
using namespace qest::testing;

namespace {

// Rank-r mixed model with derivatives generated from Hermitian operators,
// guaranteeing the SLD equation is solvable.
MixedModel random_mixed(int d, int rank, std::uint64_t seed) {
    SplitMix64 rng(seed);
    CMat u = random_unitary(d, rng);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
    double total = 0.0;
    for (int i = 0; i < rank; ++i) total += (p(i) = rng.uniform() + 0.1);
    p /= total;
    MixedModel m;
    m.rho = CMat::Zero(d, d);
    for (int i = 0; i < rank; ++i) m.rho += p(i) * (u.col(i) * u.col(i).adjoint());

    for (auto& dr : m.drho) {
        CMat h(d, d);
        for (Eigen::Index a = 0; a < d; ++a) {
            for (Eigen::Index b = 0; b < d; ++b) h(a, b) = rng.complex_gaussian();
        }
        h = 0.5 * (h + h.adjoint()).eval();
        h -= (m.rho * h).trace().real() * CMat::Identity(d, d);
        dr = 0.5 * (m.rho * h + h * m.rho);
    }
    Mat2 g;
    g << rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian();
    m.weight = g.transpose() * g + 0.1 * Mat2::Identity();
    return m;
}

MixedModel from_pure(const PureModel& g) {
    MixedModel m;
    m.rho = g.psi0 * g.psi0.adjoint();
    for (int j = 0; j < 2; ++j) {
        m.drho[static_cast<std::size_t>(j)] =
            g.dpsi[static_cast<std::size_t>(j)] * g.psi0.adjoint() +
            g.psi0 * g.dpsi[static_cast<std::size_t>(j)].adjoint();
    }
    m.weight = g.weight;
    return m;
}

} // namespace

TEST_CASE("sld_mixed", "[mixed]") {
    SECTION("pure density matrices reduce to the pure-state SLD") {
        const PureModel g = gauge_fix(oracle::random_model(3, 33));
        const MixedModel m = from_pure(g);
        for (int j = 0; j < 2; ++j) {
            const CMat expect = sld_pure(g, j).matrix;
            const CMat got = sld_mixed(m, j).matrix;
            REQUIRE(max_abs(CMat(got - expect)) < 1e-10);
        }
    }

    SECTION("maximally mixed qubit with a Pauli derivative") {
        MixedModel m;
        m.rho = 0.5 * CMat::Identity(2, 2);
        CMat sx = CMat::Zero(2, 2), sy = CMat::Zero(2, 2);
        sx(0, 1) = 1.0;
        sx(1, 0) = 1.0;
        sy(0, 1) = Cplx(0.0, -1.0);
        sy(1, 0) = Cplx(0.0, 1.0);
        m.drho = {0.5 * sx, 0.5 * sy};
        const CMat l = sld_mixed(m, 0).matrix;
        REQUIRE(max_abs(CMat(l - sx)) < 1e-12);
    }

    SECTION("Lyapunov residual vanishes on random full-rank models") {
        for (int trial = 0; trial < 10; ++trial) {
            const MixedModel m = random_mixed(3, 3, 700 + trial);
            for (int j = 0; j < 2; ++j) {
                const CMat l = sld_mixed(m, j).matrix;
                const CMat resid =
                    m.drho[static_cast<std::size_t>(j)] - 0.5 * (m.rho * l + l * m.rho);
                REQUIRE(max_abs(resid) < 1e-10);
            }
        }
    }

    SECTION("derivatives leaking outside the support are rejected") {
        MixedModel m;
        m.rho = CMat::Zero(3, 3);
        m.rho(0, 0) = 1.0; // pure, kernel spans e2, e3
        CMat leak = CMat::Zero(3, 3);
        leak(1, 2) = 1.0;
        leak(2, 1) = 1.0; // entirely kernel-kernel
        m.drho = {leak, leak};
        REQUIRE_THROWS_AS(sld_mixed(m, 0), ModelNotRegularError);
    }
}

TEST_CASE("purify", "[mixed]") {
    SECTION("a pure state purifies to itself") {
        const PureModel g = gauge_fix(oracle::random_model(3, 44));
        const PureModel p = purify(from_pure(g));
        REQUIRE(p.dim() == 3); // rank 1 environment
        const CMat rho = p.psi0 * p.psi0.adjoint();
        REQUIRE(max_abs(CMat(rho - g.psi0 * g.psi0.adjoint())) < 1e-10);
    }

    SECTION("maximally mixed qubit purifies to a Bell-type state") {
        MixedModel m;
        m.rho = 0.5 * CMat::Identity(2, 2);
        m.drho = {CMat::Zero(2, 2), CMat::Zero(2, 2)};
        CMat sx = CMat::Zero(2, 2);
        sx(0, 1) = 1.0;
        sx(1, 0) = 1.0;
        m.drho[0] = 0.5 * sx;
        CMat sz = CMat::Zero(2, 2);
        sz(0, 0) = 1.0;
        sz(1, 1) = -1.0;
        m.drho[1] = 0.5 * sz;
        const PureModel p = purify(m);
        REQUIRE(p.dim() == 4);
        REQUIRE(std::abs(p.psi0.norm() - 1.0) < 1e-12);
    }

    SECTION("partial traces reproduce the state and its derivatives") {
        for (int trial = 0; trial < 8; ++trial) {
            const MixedModel m = random_mixed(3, 2, 800 + trial);
            const PureModel p = purify(m);
            const Eigen::Index d = m.dim();
            const Eigen::Index r = p.dim() / d;
            REQUIRE(r == 2);
            const CMat rho_rec = partial_trace_env(p.psi0 * p.psi0.adjoint(), d, r);
            REQUIRE(max_abs(CMat(rho_rec - m.rho)) < 1e-10);
            for (int j = 0; j < 2; ++j) {
                const CMat dr_rec = partial_trace_env(
                    p.dpsi[static_cast<std::size_t>(j)] * p.psi0.adjoint() +
                        p.psi0 * p.dpsi[static_cast<std::size_t>(j)].adjoint(),
                    d, r);
                REQUIRE(max_abs(CMat(dr_rec - m.drho[static_cast<std::size_t>(j)])) <
                        1e-10);
            }
        }
    }

    SECTION("the purification carries the same Fisher pair") {
        for (int trial = 0; trial < 8; ++trial) {
            const MixedModel m = random_mixed(3, 2, 810 + trial);
            const FisherPair mixed_fp = fisher_pair(m);
            const FisherPair pure_fp = fisher_pair(purify(m));
            REQUIRE(max_abs(Mat2(mixed_fp.qfi - pure_fp.qfi)) <
                    1e-9 * (1.0 + max_abs(mixed_fp.qfi)));
            REQUIRE(mixed_fp.beta == Catch::Approx(pure_fp.beta).margin(1e-9));
        }
    }
}

TEST_CASE("cstar", "[mixed]") {
    SECTION("pure inputs reduce to the pure-state bound") {
        PureModel g = gauge_fix(oracle::random_model(4, 55));
        const MixedModel m = from_pure(g);
        const BoundResult mixed_bound = cstar(m);
        const BoundResult pure_bound = cmi_for_model(g);
        REQUIRE(mixed_bound.value ==
                Catch::Approx(pure_bound.value).margin(1e-10 * (1.0 + pure_bound.value)));
    }

    SECTION("real matrix elements give the SLD bound") {
        MixedModel m;
        m.rho = 0.5 * CMat::Identity(2, 2);
        CMat sx = CMat::Zero(2, 2), sz = CMat::Zero(2, 2);
        sx(0, 1) = 1.0;
        sx(1, 0) = 1.0;
        sz(0, 0) = 1.0;
        sz(1, 1) = -1.0;
        m.drho = {0.5 * sx, 0.5 * sz};
        const BoundResult r = cstar(m);
        const FisherPair fp = fisher_pair(m);
        REQUIRE(fp.beta < 1e-12);
        const double expect = (m.weight * fp.qfi.inverse()).trace();
        REQUIRE(r.value == Catch::Approx(expect).margin(1e-10));
        REQUIRE(r.branch == BoundBranch::beta_zero);
    }

    SECTION("matches the pure pipeline on the explicit purification") {
        for (int trial = 0; trial < 10; ++trial) {
            const MixedModel m = random_mixed(3, 2, 820 + trial);
            const BoundResult via_mixed = cstar(m);
            const BoundResult via_purification = cmi_for_model(purify(m));
            REQUIRE(via_mixed.value ==
                    Catch::Approx(via_purification.value)
                        .margin(1e-9 * (1.0 + via_purification.value)));
        }
    }
}
