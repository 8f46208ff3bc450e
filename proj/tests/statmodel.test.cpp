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

#include "qest/errors.hpp"
#include "qest/statmodel.hpp"
#include "test_helpers.hpp"

using namespace qest;
using namespace qest::testing;

TEST_CASE("gauge_fix removes the probe component", "[statmodel]") {
    SplitMix64 rng(11);

    SECTION("already orthogonal derivatives are unchanged") {
        PureModel m = oracle::random_model(4, 5);
        const PureModel g = gauge_fix(m);
        const PureModel g2 = gauge_fix(g);
        REQUIRE(max_abs(CVec(g2.dpsi[0] - g.dpsi[0])) < 1e-15);
        REQUIRE(max_abs(CVec(g2.dpsi[1] - g.dpsi[1])) < 1e-15);
    }

    SECTION("a derivative equal to the probe projects to zero") {
        PureModel m;
        m.psi0 = random_unit(3, rng);
        m.dpsi = {m.psi0, random_unit(3, rng)};
        const PureModel g = gauge_fix(m);
        REQUIRE(g.dpsi[0].norm() < 1e-12);
    }

    SECTION("the Fisher pair is gauge invariant") {
        for (int trial = 0; trial < 10; ++trial) {
            const PureModel m = oracle::random_model(4, 100 + trial);
            const FisherPair before = fisher_pair(m);
            const FisherPair after = fisher_pair(gauge_fix(m));
            REQUIRE(max_abs(Mat2(before.qfi - after.qfi)) < 1e-10);
            REQUIRE(max_abs(Mat2(before.skew - after.skew)) < 1e-10);
        }
    }

    SECTION("overlaps vanish after fixing") {
        const PureModel g = gauge_fix(oracle::random_model(5, 77));
        REQUIRE(std::abs(g.psi0.dot(g.dpsi[0])) < 1e-12);
        REQUIRE(std::abs(g.psi0.dot(g.dpsi[1])) < 1e-12);
    }
}

TEST_CASE("sld_pure", "[statmodel]") {
    SECTION("zero derivative gives the zero operator") {
        PureModel m;
        m.psi0 = CVec::Zero(3);
        m.psi0(0) = 1.0;
        m.dpsi = {CVec::Zero(3), CVec::Zero(3)};
        REQUIRE(max_abs(sld_pure(m, 0).matrix) == 0.0);
    }

    SECTION("standard-form SLD matches the canonical derivative") {
        const double eta = 0.31;
        const StandardForm form = make_standard_form(eta, 3);
        const PureModel m = model_from_standard_form(form);
        const CMat l1 = sld_pure(m, 0).matrix;
        const CMat expect =
            2.0 * (form.deriv[0] * form.probe.adjoint() + form.probe * form.deriv[0].adjoint());
        REQUIRE(max_abs(CMat(l1 - expect)) < 1e-15);
    }

    SECTION("Lyapunov residual vanishes for random models") {
        const PureModel g = gauge_fix(oracle::random_model(3, 42));
        const CMat rho = g.psi0 * g.psi0.adjoint();
        for (int j = 0; j < 2; ++j) {
            const CMat l = sld_pure(g, j).matrix;
            const CMat drho = g.dpsi[static_cast<std::size_t>(j)] * g.psi0.adjoint() +
                              g.psi0 * g.dpsi[static_cast<std::size_t>(j)].adjoint();
            const CMat resid = drho - 0.5 * (rho * l + l * rho);
            REQUIRE(max_abs(resid) < 1e-12);
            REQUIRE(hermiticity_defect(l) < 1e-12);
            REQUIRE(std::abs((rho * l).trace()) < 1e-10);
        }
    }

    SECTION("rejects a model that is not gauge-fixed") {
        SplitMix64 rng(3);
        PureModel m;
        m.psi0 = random_unit(3, rng);
        m.dpsi = {m.psi0 * 0.5, random_unit(3, rng)};
        REQUIRE_THROWS_AS(sld_pure(m, 0), DomainError);
    }
}

TEST_CASE("fisher_pair", "[statmodel]") {
    SplitMix64 rng(21);

    SECTION("real amplitudes give beta = 0") {
        PureModel m;
        CVec psi(3), d1(3), d2(3);
        psi << 0.6, 0.8, 0.0;
        d1 << 0.3, -0.1, 0.7;
        d2 << -0.2, 0.5, 0.4;
        m.psi0 = psi;
        m.dpsi = {d1, d2};
        const FisherPair fp = fisher_pair(m);
        REQUIRE(fp.beta == 0.0);
        REQUIRE(max_abs(fp.skew) < 1e-14);
    }

    SECTION("every qubit model has beta = 1") {
        for (int trial = 0; trial < 25; ++trial) {
            const PureModel m = oracle::random_model(2, 900 + trial);
            REQUIRE(std::abs(fisher_pair(m).beta - 1.0) < 1e-10);
        }
    }

    SECTION("standard form gives the identity and beta = sin(2 eta)") {
        const double eta = 0.22;
        const PureModel m = model_from_standard_form(make_standard_form(eta, 3));
        const FisherPair fp = fisher_pair(m);
        REQUIRE(max_abs(Mat2(fp.qfi - Mat2::Identity())) < 1e-10);
        REQUIRE(fp.beta == Catch::Approx(std::sin(2.0 * eta)).margin(1e-12));
        REQUIRE(fp.eta == Catch::Approx(eta).margin(1e-12));
    }

    SECTION("invariant under a global phase") {
        const PureModel m = oracle::random_model(4, 17);
        PureModel rotated = m;
        const Cplx phase = std::polar(1.0, 1.234);
        rotated.psi0 *= phase;
        rotated.dpsi[0] *= phase;
        rotated.dpsi[1] *= phase;
        const FisherPair a = fisher_pair(m);
        const FisherPair b = fisher_pair(rotated);
        REQUIRE(max_abs(Mat2(a.qfi - b.qfi)) < 1e-10);
        REQUIRE(max_abs(Mat2(a.skew - b.skew)) < 1e-10);
    }

    SECTION("beta never exceeds 1 on random models") {
        for (int trial = 0; trial < 50; ++trial) {
            const int d = 2 + static_cast<int>(rng.next() % 4);
            const FisherPair fp = fisher_pair(oracle::random_model(d, 3000 + trial));
            REQUIRE(fp.beta >= 0.0);
            REQUIRE(fp.beta <= 1.0);
            REQUIRE(fp.eta >= 0.0);
            REQUIRE(fp.eta <= 0.25 * M_PI + 1e-12);
        }
    }

    SECTION("singular models are rejected") {
        PureModel m;
        m.psi0 = CVec::Zero(3);
        m.psi0(0) = 1.0;
        CVec d1 = CVec::Zero(3);
        d1(1) = 1.0;
        m.dpsi = {d1, 2.0 * d1}; // real-proportional derivatives
        REQUIRE_THROWS_AS(fisher_pair(m), SingularModelError);
    }

    SECTION("rejects an unnormalized probe") {
        PureModel m;
        m.psi0 = CVec::Ones(3);
        m.dpsi = {CVec::Zero(3), CVec::Zero(3)};
        REQUIRE_THROWS_AS(fisher_pair(m), DomainError);
    }
}

TEST_CASE("weakly_commuting_check agrees with the Fisher pair", "[statmodel]") {
    SECTION("real model commutes") {
        PureModel m;
        CVec psi(3), d1(3), d2(3);
        psi << 1.0, 0.0, 0.0;
        d1 << 0.0, 0.5, 0.0;
        d2 << 0.0, 0.0, 0.5;
        m.psi0 = psi;
        m.dpsi = {d1, d2};
        REQUIRE(std::abs(weakly_commuting_check(m)) < 1e-14);
    }

    SECTION("standard form gives -sin(2 eta)") {
        const double eta = 0.19;
        const PureModel m = model_from_standard_form(make_standard_form(eta, 3));
        REQUIRE(weakly_commuting_check(m) ==
                Catch::Approx(-std::sin(2.0 * eta)).margin(1e-12));
    }

    SECTION("matches skew(0,1) on random gauge-fixed models") {
        for (int trial = 0; trial < 10; ++trial) {
            const PureModel g = gauge_fix(oracle::random_model(4, 50 + trial));
            const FisherPair fp = fisher_pair(g);
            REQUIRE(weakly_commuting_check(g) ==
                    Catch::Approx(fp.skew(0, 1)).margin(1e-10));
        }
    }
}
